#include "polyclone/clone.hpp"

#include <algorithm>
#include <numeric>

#include "closure.hpp"

namespace polyclone {

std::optional<std::size_t> CloneLevel::find(const OpTable& table) const {
  auto it = std::lower_bound(members.begin(), members.end(), table,
                             [](const OpTable& a, const OpTable& b) {
                               return a.entries() < b.entries();
                             });
  if (it == members.end() || !(*it == table)) return std::nullopt;
  return static_cast<std::size_t>(it - members.begin());
}

CloneLevel generate_clone_level(const Algebra& algebra, int arity, const EnumerationCaps& caps,
                                int workers) {
  if (arity < 1) {
    throw Error("clone levels are defined for arity at least 1, got " + std::to_string(arity));
  }
  auto closed = detail::witness_closure(algebra.q(), arity, algebra.ops(),
                                        /*with_constants=*/true, caps, workers);

  // Canonical member order: lexicographic by entries.
  std::vector<std::size_t> order(closed.members.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return closed.members[a] < closed.members[b];
  });

  CloneLevel level;
  level.algebra = std::make_shared<Algebra>(algebra);
  level.arity = arity;
  level.complete_fixpoint = closed.complete;
  level.members.reserve(order.size());
  level.witnesses.reserve(order.size());
  for (std::size_t i : order) {
    level.members.emplace_back(algebra.q(), arity, std::move(closed.members[i]));
    level.witnesses.push_back(std::move(closed.witnesses[i]));
  }
  return level;
}

std::optional<Term> membership(const CloneLevel& level, const OpTable& table) {
  if (table.q() != level.algebra->q()) {
    throw Error("membership query over carrier " + std::to_string(table.q()) +
                " against a clone level over carrier " + std::to_string(level.algebra->q()));
  }
  if (table.arity() != level.arity) {
    throw Error("membership query of arity " + std::to_string(table.arity()) +
                " against a clone level of arity " + std::to_string(level.arity));
  }
  const auto index = level.find(table);
  if (!index) return std::nullopt;
  return level.witnesses[*index];
}

CompletenessVerdict completeness_from(const EnumerationResult& pol, const CloneLevel& level) {
  CompletenessVerdict verdict;
  verdict.arity = level.arity;
  verdict.trusted = pol.complete() && level.complete_fixpoint;
  verdict.pol_count = pol.count;
  verdict.clone_count = level.members.size();

  // Both sides are sorted lexicographically by entries.
  auto entry_less = [](const OpTable& a, const OpTable& b) { return a.entries() < b.entries(); };
  std::set_difference(pol.tables.begin(), pol.tables.end(), level.members.begin(),
                      level.members.end(), std::back_inserter(verdict.gap), entry_less);
  std::set_difference(level.members.begin(), level.members.end(), pol.tables.begin(),
                      pol.tables.end(), std::back_inserter(verdict.extra_members), entry_less);
  verdict.holds = verdict.gap.empty();
  return verdict;
}

CompletenessVerdict completeness_verdict(const Algebra& algebra, const Relation& rel, int arity,
                                         const EnumerationCaps& caps, int workers) {
  if (rel.q() != algebra.q()) {
    throw Error("relation over carrier " + std::to_string(rel.q()) +
                " against an algebra over carrier " + std::to_string(algebra.q()));
  }
  const auto pol = enumerate_compatible(algebra.q(), rel, arity, caps, workers);
  const auto level = generate_clone_level(algebra, arity, caps, workers);
  return completeness_from(pol, level);
}

Term specialize(const Term& term, int var_index, Element value) {
  switch (term.kind()) {
    case Term::Kind::Var:
      return term.var_index() == var_index ? Term::constant(value) : term;
    case Term::Kind::Const:
      return term;
    case Term::Kind::Apply: {
      std::vector<Term> args;
      args.reserve(term.args().size());
      bool changed = false;
      for (const Term& arg : term.args()) {
        Term replaced = specialize(arg, var_index, value);
        changed = changed || !(replaced == arg);
        args.push_back(std::move(replaced));
      }
      if (!changed) return term;
      return Term::apply(term.op_name(), std::move(args));
    }
  }
  throw Error("unreachable term kind");
}

IdentityCheckResult check_identities(const Algebra& algebra,
                                     const std::vector<IdentityEquation>& equations) {
  const int q = algebra.q();
  for (std::size_t e = 0; e < equations.size(); ++e) {
    const auto& eq = equations[e];
    const int vars = std::max(eq.lhs.max_var(), eq.rhs.max_var());
    std::vector<Element> env(static_cast<std::size_t>(vars), 0);
    const std::uint64_t assignments = point_count(q, vars);
    for (std::uint64_t i = 0; i < assignments; ++i) {
      const Element lhs = eval_term(algebra, eq.lhs, env);
      const Element rhs = eval_term(algebra, eq.rhs, env);
      if (lhs != rhs) {
        IdentityCheckResult result;
        result.holds = false;
        result.failed_equation = e;
        result.assignment = env;
        result.lhs_value = lhs;
        result.rhs_value = rhs;
        return result;
      }
      next_point(env, q);
    }
  }
  return IdentityCheckResult{};
}

namespace {

std::uint64_t all_functions_count(int q, int arity) {
  const std::uint64_t points = point_count(q, arity);
  std::uint64_t target = 1;
  for (std::uint64_t i = 0; i < points; ++i) {
    if (target > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(q)) {
      throw Error("function space of arity " + std::to_string(arity) + " over carrier " +
                  std::to_string(q) + " is too large to count");
    }
    target *= static_cast<std::uint64_t>(q);
  }
  return target;
}

}  // namespace

MaximalityReport maximality_probe(const std::vector<std::pair<std::string, OpTable>>& generators,
                                  const OpTable& candidate, int probe_arity,
                                  const EnumerationCaps& caps) {
  const int q = candidate.q();
  std::vector<OpTable> ops;
  ops.reserve(generators.size() + 1);
  for (const auto& [name, table] : generators) {
    if (table.q() != q) {
      throw Error("generator '" + name + "' is over carrier " + std::to_string(table.q()) +
                  ", candidate is over carrier " + std::to_string(q));
    }
    ops.push_back(table);
  }
  ops.push_back(candidate);

  MaximalityReport report;
  report.target = all_functions_count(q, probe_arity);
  const auto closure = detail::set_closure_count(q, probe_arity, ops, /*with_constants=*/false,
                                                 caps, report.target);
  report.reached = closure.count;
  report.generates_all = closure.reached_target;
  report.trusted = closure.complete;
  return report;
}

PrepolynomialReport prepolynomial_probe(const Algebra& algebra, int missing_arity_cap,
                                        int probe_arity, const EnumerationCaps& caps) {
  if (missing_arity_cap < 1) {
    throw Error("missing-arity cap must be at least 1, got " + std::to_string(missing_arity_cap));
  }
  const int q = algebra.q();
  PrepolynomialReport report;
  report.missing_arity_cap = missing_arity_cap;
  report.probe_arity = probe_arity;
  report.trusted = true;
  const std::uint64_t target = all_functions_count(q, probe_arity);

  std::vector<OpTable> base_ops;
  base_ops.reserve(algebra.ops().size());
  for (const auto& [name, table] : algebra.ops()) base_ops.push_back(table);

  for (int d = 1; d <= missing_arity_cap; ++d) {
    const auto level = generate_clone_level(algebra, d, caps);
    report.trusted = report.trusted && level.complete_fixpoint;

    const std::uint64_t table_space = all_functions_count(q, d);
    if (table_space > caps.max_results) {
      report.trusted = false;
      continue;
    }
    const std::uint64_t points = point_count(q, d);
    std::vector<Element> entries(static_cast<std::size_t>(points), 0);
    for (std::uint64_t t = 0; t < table_space; ++t) {
      OpTable g(q, d, entries);
      if (!level.find(g)) {
        ++report.missing_count;
        auto ops = base_ops;
        ops.push_back(g);
        const auto closure = detail::set_closure_count(q, probe_arity, ops,
                                                       /*with_constants=*/true, caps, target);
        report.trusted = report.trusted && closure.complete;
        if (!closure.reached_target) report.failures.push_back(std::move(g));
      }
      if (!next_point(entries, q)) break;
    }
  }
  return report;
}

}  // namespace polyclone
