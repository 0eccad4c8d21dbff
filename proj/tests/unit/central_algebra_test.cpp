#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "polyclone/central_algebra.hpp"
#include "polyclone/clone.hpp"
#include "polyclone/pol.hpp"

using namespace polyclone;

namespace {

Algebra r3() { return build_r_algebra(LatticeSpec::chain(3), true); }

// All functions on the free square {1..q-1}^n, extended by zero elsewhere.
std::vector<OpTable> cross_vanishing_tables(int q, int n) {
  std::vector<OpTable> out;
  const int side = q - 1;
  const std::uint64_t free_points = point_count(side, n);
  const std::uint64_t assignments = point_count(q, static_cast<int>(free_points));
  for (std::uint64_t a = 0; a < assignments; ++a) {
    const auto values = tuple_decode(a, q, static_cast<int>(free_points));
    std::vector<Element> entries(static_cast<std::size_t>(point_count(q, n)), 0);
    std::vector<Element> inner(static_cast<std::size_t>(n), 0);
    for (std::uint64_t i = 0; i < free_points; ++i) {
      const auto offset = tuple_decode(i, side, n);
      for (int k = 0; k < n; ++k) inner[static_cast<std::size_t>(k)] = offset[static_cast<std::size_t>(k)] + 1;
      entries[static_cast<std::size_t>(tuple_index(inner, q))] = values[static_cast<std::size_t>(i)];
    }
    out.emplace_back(q, n, std::move(entries));
  }
  return out;
}

}  // namespace

TEST_CASE("the chain lattice validates and the strict join matches its table") {
  const LatticeSpec chain = LatticeSpec::chain(3);
  CHECK(strict_join_table(chain).entries() == std::vector<Element>{0, 0, 0, 0, 1, 2, 0, 2, 2});
  CHECK(chain.meet.entries() == std::vector<Element>{0, 0, 0, 0, 1, 1, 0, 1, 2});

  // from_tables round-trips a valid lattice and rejects a broken one.
  CHECK(LatticeSpec::from_tables(chain.meet, chain.join).q == 3);
  CHECK_THROWS_AS(LatticeSpec::from_tables(chain.meet, OpTable(3, 2, std::vector<Element>(9, 2))),
                  Error);
  CHECK_THROWS_AS(LatticeSpec::from_tables(chain.join, chain.meet), Error);  // 0 not meet-absorbing
}

TEST_CASE("the strict join is commutative, associative, and idempotent") {
  for (int q = 2; q <= 4; ++q) {
    const OpTable vee = strict_join_table(LatticeSpec::chain(q));
    for (Element x = 0; x < q; ++x) {
      CHECK(eval_op(vee, std::vector<Element>{x, x}) == x);
      for (Element y = 0; y < q; ++y) {
        const Element xy = eval_op(vee, std::vector<Element>{x, y});
        CHECK(xy == eval_op(vee, std::vector<Element>{y, x}));
        for (Element z = 0; z < q; ++z) {
          const Element left = eval_op(vee, std::vector<Element>{xy, z});
          const Element right = eval_op(
              vee, std::vector<Element>{x, eval_op(vee, std::vector<Element>{y, z})});
          CHECK(left == right);
        }
      }
    }
  }
}

TEST_CASE("lifted unaries extend maps on the nonzero elements by zero") {
  CHECK(lift_unary(3, std::vector<Element>{2, 0}).entries() == std::vector<Element>{0, 2, 0});
  CHECK(lift_unary(3, std::vector<Element>{1, 2}).entries() == std::vector<Element>{0, 1, 2});
  CHECK_THROWS_AS(lift_unary(3, std::vector<Element>{1}), Error);
  CHECK(lift_name(3, std::vector<Element>{0, 0}) == "f0");
  CHECK(lift_name(3, std::vector<Element>{2, 1}) == "f7");
}

TEST_CASE("the full central-relation algebra over three elements") {
  const Algebra algebra = r3();
  CHECK(algebra.ops().size() == 11);  // meet, vee, nine lifts
  CHECK(algebra.zero() == 0);
  CHECK(algebra.op("vee").entries() == std::vector<Element>{0, 0, 0, 0, 1, 2, 0, 2, 2});
  int unaries = 0;
  for (const auto& [name, table] : algebra.ops()) {
    if (table.arity() == 1) {
      ++unaries;
      CHECK(table.at(0) == 0);
    }
  }
  CHECK(unaries == 9);
}

TEST_CASE("the lifted-unary count cap is enforced") {
  CHECK_THROWS_AS(build_r_algebra(LatticeSpec::chain(3), true, {}, 4), Error);
  CHECK(build_r_algebra(LatticeSpec::chain(4), true).ops().size() == 2 + 64);
}

TEST_CASE("meet, strict join, and every lift preserve the central relation") {
  for (int q = 3; q <= 4; ++q) {
    const Algebra algebra = build_r_algebra(LatticeSpec::chain(q), true);
    const Relation rho = build_central_minimal(q, 2, {0});
    for (const auto& [name, table] : algebra.ops()) {
      CHECK(is_compatible(table, rho).compatible);
    }
  }
}

TEST_CASE("indicator terms match the piecewise definition") {
  const Algebra algebra = r3();

  const Term base = indicator_term(algebra, std::vector<Element>{2}, 1);
  CHECK(base == Term::apply("f1", {Term::var(1)}));
  CHECK(table_of_term(algebra, base, 1).entries() == std::vector<Element>{0, 0, 1});

  const Term pair = indicator_term(algebra, std::vector<Element>{1, 2}, 2);
  const OpTable table = table_of_term(algebra, pair, 2);
  CHECK(table.entries() == oracles::indicator_entries(3, {1, 2}, 2));
  CHECK(table.at(tuple_index(std::vector<Element>{1, 2}, 3)) == 2);

  CHECK(indicator_term(algebra, std::vector<Element>{0, 2}, 1) == Term::constant(0));
  CHECK(indicator_term(algebra, std::vector<Element>{1, 2}, 0) == Term::constant(0));

  // Exhaustive agreement with the piecewise oracle.
  for (int n = 1; n <= 2; ++n) {
    std::vector<Element> point(static_cast<std::size_t>(n), 0);
    const std::uint64_t points = point_count(3, n);
    for (std::uint64_t i = 0; i < points; ++i) {
      for (Element v = 0; v < 3; ++v) {
        const Term term = indicator_term(algebra, point, v);
        CHECK(table_of_term(algebra, term, n).entries() == oracles::indicator_entries(3, point, v));
      }
      next_point(point, 3);
    }
  }
}

TEST_CASE("indicator synthesis needs the right lifted unaries") {
  // Only the zero lift is present, so the needed map 2 -> 1 is missing.
  const Algebra sparse = build_r_algebra(LatticeSpec::chain(3), false, {{0, 0}});
  CHECK_THROWS_AS(indicator_term(sparse, std::vector<Element>{2}, 1), Error);
  CHECK_THROWS_AS(indicator_term(r3(), std::vector<Element>{}, 1), Error);
  CHECK_THROWS_AS(indicator_term(r3(), std::vector<Element>{3}, 1), Error);
}

TEST_CASE("indicator tables are polynomial") {
  const Algebra algebra = r3();
  const CloneLevel level = generate_clone_level(algebra, 2);
  for (Element a = 1; a < 3; ++a) {
    for (Element b = 1; b < 3; ++b) {
      for (Element v = 1; v < 3; ++v) {
        const Term term = indicator_term(algebra, std::vector<Element>{a, b}, v);
        CHECK(level.find(table_of_term(algebra, term, 2)).has_value());
      }
    }
  }
}

TEST_CASE("literal decomposition verifies exactly the small supports") {
  const Algebra algebra = r3();

  // Single support: the indicator itself.
  std::vector<Element> single(9, 0);
  single[static_cast<std::size_t>(tuple_index(std::vector<Element>{1, 2}, 3))] = 2;
  const DecompositionReport ok = decompose(algebra, OpTable(3, 2, single));
  CHECK(ok.verified);
  CHECK(ok.mismatches.empty());
  CHECK(ok.mode == DecompositionMode::Literal);

  // Two disjoint supports annihilate under the strict join.
  std::vector<Element> twice(9, 0);
  twice[static_cast<std::size_t>(tuple_index(std::vector<Element>{1, 1}, 3))] = 1;
  twice[static_cast<std::size_t>(tuple_index(std::vector<Element>{2, 2}, 3))] = 2;
  const DecompositionReport bad = decompose(algebra, OpTable(3, 2, twice));
  CHECK_FALSE(bad.verified);
  REQUIRE(bad.mismatches.size() == 2);
  CHECK(bad.mismatches[0].point == std::vector<Element>{1, 1});
  CHECK(bad.mismatches[0].expected == 1);
  CHECK(bad.mismatches[0].got == 0);
  CHECK(bad.mismatches[1].point == std::vector<Element>{2, 2});

  // The zero function is the empty join.
  const DecompositionReport zero = decompose(algebra, OpTable::constant(3, 2, 0));
  CHECK(zero.verified);
  CHECK(zero.term == Term::constant(0));
}

TEST_CASE("literal decomposition agrees with the pointwise oracle") {
  const Algebra algebra = r3();
  for (const OpTable& f : cross_vanishing_tables(3, 2)) {
    const DecompositionReport report = decompose(algebra, f);
    const OpTable realized = table_of_term(algebra, report.term, 2);
    CHECK(realized.entries() == oracles::literal_decomposition_entries(3, f));
    CHECK(report.verified == (realized == f));
    if (report.verified) {
      CHECK(is_compatible(f, build_central_minimal(3, 2, {0})).compatible);
    }
    for (const auto& mismatch : report.mismatches) {
      CHECK(f(mismatch.point) == mismatch.expected);
      CHECK(realized(mismatch.point) == mismatch.got);
    }
  }
}

TEST_CASE("the repaired join recovers disjoint supports but not the cross") {
  const Algebra algebra = r3();
  std::vector<Element> twice(9, 0);
  twice[static_cast<std::size_t>(tuple_index(std::vector<Element>{1, 1}, 3))] = 1;
  twice[static_cast<std::size_t>(tuple_index(std::vector<Element>{2, 2}, 3))] = 2;
  const DecompositionReport repaired =
      decompose(algebra, OpTable(3, 2, twice), DecompositionMode::Repaired);
  CHECK(repaired.verified);
  CHECK(repaired.mode == DecompositionMode::Repaired);
  CHECK_FALSE(algebra.has_op("vee0"));

  // Values on the zero cross stay unreachable even for the repaired join.
  std::vector<Element> crossy(9, 0);
  crossy[static_cast<std::size_t>(tuple_index(std::vector<Element>{0, 1}, 3))] = 1;
  const DecompositionReport unrepairable =
      decompose(algebra, OpTable(3, 2, crossy), DecompositionMode::Repaired);
  CHECK_FALSE(unrepairable.verified);
  REQUIRE(unrepairable.mismatches.size() == 1);
  CHECK(unrepairable.mismatches[0].point == std::vector<Element>{0, 1});
}

TEST_CASE("the audit assembles verdicts, statistics, and findings") {
  const ClaimAuditReport report = audit_claims(3, 1);
  REQUIRE(report.trusted);
  REQUIRE(report.arities.size() == 1);
  const ArityAudit& unary = report.arities[0];
  CHECK(unary.pol_count == 17);
  CHECK(unary.clone_count == 11);
  CHECK_FALSE(unary.holds);
  CHECK(unary.gap.size() == 6);
  CHECK(unary.extra_count == 0);
  CHECK(unary.literal_decomposable == 5);  // zero, and one value at one nonzero point
  CHECK_FALSE(report.findings.empty());

  REQUIRE(report.pattern.size() == 1);
  CHECK(report.pattern[0].clone_count == 4);
  REQUIRE(report.pattern[0].pol_diagonal_count.has_value());
  CHECK(*report.pattern[0].pol_diagonal_count == 27);
  CHECK_FALSE(report.pattern[0].holds);
  CHECK(report.pattern_axioms_hold);

  const ClaimAuditReport q2 = audit_claims(2, 1);
  REQUIRE(q2.trusted);
  REQUIRE(q2.arities[0].gap.size() == 1);
  CHECK(q2.arities[0].gap[0] == OpTable(2, 1, {1, 0}));
}

TEST_CASE("audits under a tiny cap are flagged untrusted") {
  const ClaimAuditReport report = audit_claims(3, 1, EnumerationCaps{4, 0.0});
  CHECK_FALSE(report.trusted);
  CHECK_FALSE(report.arities[0].trusted);
}

TEST_CASE("audit numbers are reproducible from the underlying engines") {
  const ClaimAuditReport report = audit_claims(3, 2, {}, 4);
  REQUIRE(report.trusted);
  REQUIRE(report.arities.size() == 2);
  const Relation rho = build_central_minimal(3, 2, {0});
  const Algebra algebra = r3();
  for (const ArityAudit& audit : report.arities) {
    CHECK(audit.pol_count == enumerate_compatible(3, rho, audit.arity).count);
    CHECK(audit.clone_count == generate_clone_level(algebra, audit.arity).members.size());
    CHECK(audit.holds == (audit.gap.empty()));
    CHECK(audit.extra_count == 0);
  }
  CHECK(report.arities[1].pol_count == 1361);
  CHECK(report.arities[1].clone_count == 99);
  REQUIRE(report.pattern.size() == 2);
  CHECK(report.pattern[1].clone_count == 5);
  REQUIRE(report.pattern[1].pol_diagonal_count.has_value());
  CHECK(*report.pattern[1].pol_diagonal_count == 19683);
}
