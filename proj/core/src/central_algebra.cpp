#include "polyclone/central_algebra.hpp"

#include <algorithm>

#include "parallel.hpp"

namespace polyclone {

namespace {

Element binop(const OpTable& table, Element x, Element y) {
  const Element point[2] = {x, y};
  return table(point);
}

void validate_lattice(const LatticeSpec& lattice) {
  const int q = lattice.q;
  if (lattice.bottom != 0) {
    throw Error("lattice bottom must be element 0, got " + std::to_string(lattice.bottom));
  }
  if (lattice.meet.q() != q || lattice.join.q() != q) throw Error("lattice tables carrier mismatch");
  if (lattice.meet.arity() != 2 || lattice.join.arity() != 2) {
    throw Error("lattice meet and join must be binary");
  }
  std::vector<std::string> violations;
  auto note = [&](std::string message) {
    if (violations.size() < 8) violations.push_back(std::move(message));
  };
  const auto& meet = lattice.meet;
  const auto& join = lattice.join;
  for (Element x = 0; x < q; ++x) {
    if (binop(meet, 0, x) != 0 || binop(meet, x, 0) != 0) {
      note("meet(0," + std::to_string(x) + ") must be 0");
    }
    if (binop(meet, x, x) != x) note("meet not idempotent at " + std::to_string(x));
    if (binop(join, x, x) != x) note("join not idempotent at " + std::to_string(x));
    for (Element y = 0; y < q; ++y) {
      if (binop(meet, x, y) != binop(meet, y, x)) {
        note("meet not commutative at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
      if (binop(join, x, y) != binop(join, y, x)) {
        note("join not commutative at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
      if (binop(meet, x, binop(join, x, y)) != x) {
        note("absorption meet(x,join(x,y)) fails at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
      if (binop(join, x, binop(meet, x, y)) != x) {
        note("absorption join(x,meet(x,y)) fails at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
      for (Element z = 0; z < q; ++z) {
        if (binop(meet, binop(meet, x, y), z) != binop(meet, x, binop(meet, y, z))) {
          note("meet not associative at (" + std::to_string(x) + "," + std::to_string(y) + "," +
               std::to_string(z) + ")");
        }
        if (binop(join, binop(join, x, y), z) != binop(join, x, binop(join, y, z))) {
          note("join not associative at (" + std::to_string(x) + "," + std::to_string(y) + "," +
               std::to_string(z) + ")");
        }
      }
    }
  }
  if (!violations.empty()) {
    std::string message = "invalid lattice:";
    for (const auto& v : violations) message += "\n  " + v;
    throw Error(message);
  }
}

}  // namespace

LatticeSpec LatticeSpec::chain(int q) {
  const std::uint64_t n = point_count(q, 2);
  std::vector<Element> meet(static_cast<std::size_t>(n));
  std::vector<Element> join(static_cast<std::size_t>(n));
  for (Element x = 0; x < q; ++x) {
    for (Element y = 0; y < q; ++y) {
      meet[static_cast<std::size_t>(x * q + y)] = std::min(x, y);
      join[static_cast<std::size_t>(x * q + y)] = std::max(x, y);
    }
  }
  return LatticeSpec{q, OpTable(q, 2, std::move(meet)), OpTable(q, 2, std::move(join)), 0};
}

LatticeSpec LatticeSpec::from_tables(OpTable meet, OpTable join) {
  LatticeSpec lattice{meet.q(), std::move(meet), std::move(join), 0};
  validate_lattice(lattice);
  return lattice;
}

OpTable strict_join_table(const LatticeSpec& lattice) {
  const int q = lattice.q;
  std::vector<Element> entries(static_cast<std::size_t>(point_count(q, 2)));
  for (Element x = 0; x < q; ++x) {
    for (Element y = 0; y < q; ++y) {
      entries[static_cast<std::size_t>(x * q + y)] =
          (x != 0 && y != 0) ? binop(lattice.join, x, y) : 0;
    }
  }
  return OpTable(q, 2, std::move(entries));
}

OpTable lift_unary(int q, std::span<const Element> values_on_nonzero) {
  if (static_cast<int>(values_on_nonzero.size()) != q - 1) {
    throw Error("lifted unary over carrier " + std::to_string(q) + " needs " +
                std::to_string(q - 1) + " values on the nonzero elements, got " +
                std::to_string(values_on_nonzero.size()));
  }
  std::vector<Element> entries;
  entries.reserve(static_cast<std::size_t>(q));
  entries.push_back(0);
  entries.insert(entries.end(), values_on_nonzero.begin(), values_on_nonzero.end());
  return OpTable(q, 1, std::move(entries));
}

std::string lift_name(int q, std::span<const Element> values_on_nonzero) {
  return "f" + std::to_string(tuple_index(values_on_nonzero, q));
}

Algebra build_r_algebra(const LatticeSpec& lattice, bool include_all_lifted_unaries,
                        const std::vector<std::vector<Element>>& explicit_lifts,
                        std::uint64_t max_lifted_unaries) {
  validate_lattice(lattice);
  const int q = lattice.q;
  std::vector<std::pair<std::string, OpTable>> ops;
  ops.emplace_back("meet", lattice.meet);
  ops.emplace_back("vee", strict_join_table(lattice));

  if (include_all_lifted_unaries) {
    const std::uint64_t count = point_count(q, q - 1);
    if (count > max_lifted_unaries) {
      throw Error("carrier of size " + std::to_string(q) + " has " + std::to_string(count) +
                  " lifted unaries, above the cap of " + std::to_string(max_lifted_unaries));
    }
    std::vector<Element> values(static_cast<std::size_t>(q - 1), 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      ops.emplace_back("f" + std::to_string(i), lift_unary(q, values));
      next_point(values, q);
    }
  } else {
    for (const auto& values : explicit_lifts) {
      ops.emplace_back(lift_name(q, values), lift_unary(q, values));
    }
  }
  return Algebra(Carrier(q), 0, std::move(ops));
}

Algebra pattern_algebra(int q) {
  std::vector<Element> entries(static_cast<std::size_t>(point_count(q, 2)));
  for (Element x = 0; x < q; ++x) {
    for (Element y = 0; y < q; ++y) {
      entries[static_cast<std::size_t>(x * q + y)] = x;
    }
  }
  return Algebra(Carrier(q), 0, {{"circ", OpTable(q, 2, std::move(entries))}});
}

std::vector<IdentityEquation> pattern_axioms() {
  const Term x = Term::var(1);
  const Term y = Term::var(2);
  const Term z = Term::var(3);
  auto circ = [](const Term& a, const Term& b) { return Term::apply("circ", {a, b}); };
  return {
      {circ(x, x), x},
      {circ(circ(x, y), z), circ(x, circ(y, z))},
      {circ(circ(x, y), z), circ(x, z)},
  };
}

Term indicator_term(const Algebra& algebra, std::span<const Element> point, Element value) {
  const int q = algebra.q();
  const int n = static_cast<int>(point.size());
  if (n < 1) throw Error("indicator point must have at least one coordinate");
  if (!algebra.carrier().contains(value)) {
    throw Error("indicator value " + std::to_string(value) + " out of range for carrier of size " +
                std::to_string(q));
  }
  bool zero = value == 0;
  for (Element a : point) {
    if (!algebra.carrier().contains(a)) {
      throw Error("indicator coordinate " + std::to_string(a) +
                  " out of range for carrier of size " + std::to_string(q));
    }
    zero = zero || a == 0;
  }
  if (zero) return Term::constant(0);

  auto lift_factor = [&](int position) {
    std::vector<Element> values(static_cast<std::size_t>(q - 1), 0);
    values[static_cast<std::size_t>(point[static_cast<std::size_t>(position)] - 1)] = value;
    const OpTable table = lift_unary(q, values);
    for (const auto& [name, op] : algebra.ops()) {
      if (op == table) return Term::apply(name, {Term::var(position + 1)});
    }
    throw Error("required lifted unary sending " +
                std::to_string(point[static_cast<std::size_t>(position)]) + " to " +
                std::to_string(value) + " is not present in the algebra");
  };

  Term term = lift_factor(n - 1);
  if (n > 1 && !algebra.has_op("vee")) {
    throw Error("indicator synthesis needs the strict join operation 'vee'");
  }
  for (int i = n - 2; i >= 0; --i) {
    term = Term::apply("vee", {lift_factor(i), term});
  }
  return term;
}

DecompositionReport decompose(const Algebra& algebra, const OpTable& f, DecompositionMode mode) {
  const int q = algebra.q();
  const int n = f.arity();
  if (n < 1) throw Error("decomposition needs arity at least 1");
  if (f.q() != q) {
    throw Error("function over carrier " + std::to_string(f.q()) +
                " decomposed over an algebra with carrier " + std::to_string(q));
  }

  std::string join_name = "vee";
  Algebra eval_algebra = algebra;
  if (mode == DecompositionMode::Repaired) {
    // Zero-neutral join derived from the algebra's own strict join. Not part
    // of the signature; used only to evaluate the repaired combination.
    const OpTable& vee = algebra.op("vee");
    std::vector<Element> entries(static_cast<std::size_t>(point_count(q, 2)));
    for (Element x = 0; x < q; ++x) {
      for (Element y = 0; y < q; ++y) {
        entries[static_cast<std::size_t>(x * q + y)] = x == 0 ? y : (y == 0 ? x : binop(vee, x, y));
      }
    }
    join_name = "vee0";
    eval_algebra = algebra.with_op(join_name, OpTable(q, 2, std::move(entries)));
  }

  // Indicator summands over the support inside {1..q-1}^n, in lexicographic
  // tuple order, combined right-associatively.
  std::vector<Term> summands;
  if (q > 1) {
    std::vector<Element> point(static_cast<std::size_t>(n), 1);
    for (;;) {
      const Element v = f(point);
      if (v != 0) summands.push_back(indicator_term(algebra, point, v));
      int k = n - 1;
      for (; k >= 0; --k) {
        if (point[static_cast<std::size_t>(k)] + 1 < q) {
          ++point[static_cast<std::size_t>(k)];
          break;
        }
        point[static_cast<std::size_t>(k)] = 1;
      }
      if (k < 0) break;
    }
  }

  DecompositionReport report{f, Term::constant(0), mode, false, {}};
  if (!summands.empty()) {
    Term term = summands.back();
    for (std::size_t i = summands.size() - 1; i-- > 0;) {
      term = Term::apply(join_name, {summands[i], term});
    }
    report.term = std::move(term);
  }

  const OpTable realized = table_of_term(eval_algebra, report.term, n);
  std::vector<Element> point(static_cast<std::size_t>(n), 0);
  const std::uint64_t points = point_count(q, n);
  for (std::uint64_t i = 0; i < points; ++i) {
    if (realized.at(i) != f.at(i)) {
      report.mismatches.push_back({point, f.at(i), realized.at(i)});
    }
    next_point(point, q);
  }
  report.verified = report.mismatches.empty();
  return report;
}

namespace {

std::uint64_t checked_function_space(int q, int arity, const EnumerationCaps& caps, bool& feasible) {
  const std::uint64_t points = point_count(q, arity);
  std::uint64_t space = 1;
  for (std::uint64_t i = 0; i < points; ++i) {
    if (space > caps.max_results / static_cast<std::uint64_t>(q) + 1) {
      feasible = false;
      return 0;
    }
    space *= static_cast<std::uint64_t>(q);
  }
  feasible = space <= caps.max_results;
  return space;
}

}  // namespace

ClaimAuditReport audit_claims(int q, int max_arity, const EnumerationCaps& caps, int workers) {
  if (max_arity < 1) throw Error("audit needs max arity at least 1, got " + std::to_string(max_arity));
  ClaimAuditReport report;
  report.q = q;
  report.max_arity = max_arity;
  report.trusted = true;

  const Algebra algebra = build_r_algebra(LatticeSpec::chain(q), true);
  const Relation rho = build_central_minimal(q, 2, {0});

  for (int n = 1; n <= max_arity; ++n) {
    const auto pol = enumerate_compatible(q, rho, n, caps, workers);
    const auto level = generate_clone_level(algebra, n, caps, workers);
    const auto verdict = completeness_from(pol, level);

    ArityAudit audit;
    audit.arity = n;
    audit.trusted = verdict.trusted;
    audit.pol_count = verdict.pol_count;
    audit.clone_count = verdict.clone_count;
    audit.holds = verdict.holds;
    audit.gap = verdict.gap;
    audit.extra_count = verdict.extra_members.size();
    audit.compatible_count = verdict.pol_count;

    // Literal decomposition sweep over the compatible functions.
    audit.decomposition_trusted = pol.complete();
    std::vector<std::uint64_t> verified_per_chunk;
    const auto ranges = detail::chunk_ranges(pol.tables.size(), static_cast<std::size_t>(workers) * 4);
    verified_per_chunk.assign(ranges.size(), 0);
    detail::for_blocks(ranges.size(), workers, [&](std::size_t b) {
      for (std::size_t i = ranges[b].first; i < ranges[b].second; ++i) {
        if (decompose(algebra, pol.tables[i]).verified) ++verified_per_chunk[b];
      }
    });
    for (std::uint64_t v : verified_per_chunk) audit.literal_decomposable += v;

    report.trusted = report.trusted && audit.trusted && audit.decomposition_trusted;
    report.arities.push_back(std::move(audit));
  }

  // Pattern algebra versus the diagonal relations (arities 2 and 3).
  const Algebra pattern = pattern_algebra(q);
  report.pattern_axioms_hold = check_identities(pattern, pattern_axioms()).holds;
  std::vector<Relation> diagonals = diagonal_relations(q, 2);
  for (auto& rel : diagonal_relations(q, 3)) diagonals.push_back(std::move(rel));

  for (int n = 1; n <= max_arity; ++n) {
    PatternAudit audit;
    audit.arity = n;
    const auto level = generate_clone_level(pattern, n, caps, workers);
    audit.clone_count = level.members.size();
    audit.trusted = level.complete_fixpoint;

    bool feasible = false;
    const std::uint64_t space = checked_function_space(q, n, caps, feasible);
    if (feasible) {
      const std::uint64_t points = point_count(q, n);
      const auto ranges = detail::chunk_ranges(static_cast<std::size_t>(space),
                                               static_cast<std::size_t>(workers) * 4);
      std::vector<std::uint64_t> counts(ranges.size(), 0);
      detail::for_blocks(ranges.size(), workers, [&](std::size_t b) {
        std::vector<Element> entries =
            tuple_decode(static_cast<std::uint64_t>(ranges[b].first), q, static_cast<int>(points));
        for (std::size_t t = ranges[b].first; t < ranges[b].second; ++t) {
          const OpTable table(q, n, entries);
          bool preserves_all = true;
          for (const Relation& rel : diagonals) {
            if (!is_compatible(table, rel).compatible) {
              preserves_all = false;
              break;
            }
          }
          if (preserves_all) ++counts[b];
          next_point(entries, q);
        }
      });
      std::uint64_t pol_count = 0;
      for (std::uint64_t c : counts) pol_count += c;
      audit.pol_diagonal_count = pol_count;
      audit.holds = audit.trusted && pol_count == audit.clone_count;
    } else {
      audit.trusted = false;
    }
    report.trusted = report.trusted && audit.trusted;
    report.pattern.push_back(std::move(audit));
  }

  // Findings are comparisons of computed numbers, phrased as outcomes.
  for (const auto& audit : report.arities) {
    if (audit.trusted && !audit.holds) {
      report.findings.push_back(
          "arity-" + std::to_string(audit.arity) + " completeness fails at q=" + std::to_string(q) +
          ": " + std::to_string(audit.pol_count) + " compatible vs " +
          std::to_string(audit.clone_count) + " polynomial (" + std::to_string(audit.gap.size()) +
          " gap witnesses)");
    }
    if (audit.decomposition_trusted && audit.literal_decomposable < audit.compatible_count) {
      report.findings.push_back(
          "literal indicator join verifies for only " + std::to_string(audit.literal_decomposable) +
          " of " + std::to_string(audit.compatible_count) + " compatible functions at arity " +
          std::to_string(audit.arity) + " (strict join vanishes on zero summands)");
    }
  }
  for (const auto& audit : report.pattern) {
    if (audit.trusted && !audit.holds && audit.pol_diagonal_count) {
      report.findings.push_back(
          "pattern algebra is not diagonal-polynomially complete at q=" + std::to_string(q) +
          ", arity " + std::to_string(audit.arity) + ": clone has " +
          std::to_string(audit.clone_count) + " members vs " +
          std::to_string(*audit.pol_diagonal_count) + " diagonal-compatible functions");
    }
  }
  return report;
}

}  // namespace polyclone
