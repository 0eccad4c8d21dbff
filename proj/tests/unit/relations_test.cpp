#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "polyclone/pol.hpp"
#include "polyclone/relations.hpp"

using namespace polyclone;

TEST_CASE("the minimal binary central relation over three elements") {
  const Relation rho = build_central_minimal(3, 2, {0});
  const std::vector<std::vector<Element>> expected{
      {0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}, {2, 2}};
  CHECK(rho.tuples() == expected);
  CHECK(rho.size() == 7);
  CHECK(rho.contains(std::vector<Element>{2, 0}));
  CHECK_FALSE(rho.contains(std::vector<Element>{1, 2}));
}

TEST_CASE("small carriers collapse to the full relation") {
  CHECK(build_central_minimal(2, 2, {0}).size() == 4);
  CHECK(build_central_minimal(2, 3, {0}).size() == 8);
}

TEST_CASE("center validation") {
  CHECK_THROWS_AS(build_central_minimal(3, 2, {}), Error);
  CHECK_THROWS_AS(build_central_minimal(3, 2, {0, 1, 2}), Error);
  CHECK_THROWS_AS(build_central_minimal(3, 2, {3}), Error);
  CHECK_THROWS_AS(build_central_minimal(3, 0, {0}), Error);
}

TEST_CASE("classify the central relation over three elements") {
  const RelationProfile profile = classify(build_central_minimal(3, 2, {0}));
  CHECK(profile.reflexive);
  CHECK(profile.totally_reflexive);
  CHECK(profile.symmetric);
  CHECK(profile.proper);
  REQUIRE(profile.transitive.has_value());
  CHECK_FALSE(*profile.transitive);
  REQUIRE(profile.transitivity_counterexample.has_value());
  CHECK((*profile.transitivity_counterexample)[0] == std::vector<Element>{1, 0});
  CHECK((*profile.transitivity_counterexample)[1] == std::vector<Element>{0, 2});
  CHECK(profile.centers == std::vector<Element>{0});
  CHECK(profile.is_central);
}

TEST_CASE("classify equality and full relations") {
  const RelationProfile eq = classify(Relation::equality(3, 2));
  CHECK(eq.centers.empty());
  CHECK_FALSE(eq.is_central);
  CHECK(eq.reflexive);
  REQUIRE(eq.transitive.has_value());
  CHECK(*eq.transitive);
  CHECK(eq.totally_reflexive);  // for h=2 the repeated-coordinate tuples are the diagonal

  const RelationProfile full = classify(Relation::full(3, 2));
  CHECK_FALSE(full.proper);
  CHECK_FALSE(full.is_central);
  CHECK(full.centers == std::vector<Element>{0, 1, 2});

  const RelationProfile ternary = classify(Relation::full(2, 3));
  CHECK_FALSE(ternary.transitive.has_value());
  CHECK_FALSE(ternary.transitivity_counterexample.has_value());
}

TEST_CASE("central construction is totally reflexive and symmetric for all proper centers") {
  for (int q = 2; q <= 4; ++q) {
    for (int h = 1; h <= 3; ++h) {
      for (int mask = 1; mask < (1 << q) - 1; ++mask) {
        std::vector<Element> center;
        for (Element a = 0; a < q; ++a) {
          if (mask & (1 << a)) center.push_back(a);
        }
        const Relation rel = build_central_minimal(q, h, center);
        const RelationProfile profile = classify(rel);
        CHECK(profile.totally_reflexive);
        CHECK(profile.symmetric);
        // The extracted center set is maximal, so it contains the request.
        CHECK(std::includes(profile.centers.begin(), profile.centers.end(), center.begin(),
                            center.end()));
      }
    }
  }
}

TEST_CASE("binary central relations with center {0} are never transitive for q >= 3") {
  for (int q = 3; q <= 5; ++q) {
    const Relation rel = build_central_minimal(q, 2, {0});
    const RelationProfile profile = classify(rel);
    REQUIRE(profile.transitive.has_value());
    CHECK_FALSE(*profile.transitive);
    REQUIRE(profile.transitivity_counterexample.has_value());
    const auto& [first, second] = *profile.transitivity_counterexample;
    CHECK(rel.contains(first));
    CHECK(rel.contains(second));
    CHECK(first[1] == second[0]);
    CHECK_FALSE(rel.contains(std::vector<Element>{first[0], second[1]}));
  }
}

TEST_CASE("diagonal relation counts follow the partition counts") {
  CHECK(diagonal_relations(3, 1).size() == 1);
  CHECK(diagonal_relations(3, 2).size() == 2);
  CHECK(diagonal_relations(3, 3).size() == 5);
  CHECK(diagonal_relations(2, 4).size() == 15);

  const auto rels = diagonal_relations(3, 2);
  CHECK(rels[0] == Relation::equality(3, 2));
  CHECK(rels[1] == Relation::full(3, 2));

  const auto partitions = set_partitions(3);
  CHECK(partitions.front() == std::vector<int>{0, 0, 0});
  CHECK(partitions.back() == std::vector<int>{0, 1, 2});
}

TEST_CASE("every operation preserves every diagonal relation") {
  std::mt19937 rng(20240811);
  for (int q = 2; q <= 3; ++q) {
    std::uniform_int_distribution<int> value(0, q - 1);
    for (int h = 1; h <= 3; ++h) {
      const auto diagonals = diagonal_relations(q, h);
      for (int arity = 1; arity <= 2; ++arity) {
        for (int trial = 0; trial < 12; ++trial) {
          std::vector<Element> entries(static_cast<std::size_t>(point_count(q, arity)));
          for (auto& e : entries) e = value(rng);
          const OpTable table(q, arity, std::move(entries));
          for (const Relation& rel : diagonals) {
            CHECK(is_compatible(table, rel).compatible);
          }
        }
      }
    }
  }
}

TEST_CASE("relation constructor validation") {
  CHECK_THROWS_AS(Relation(3, 2, {{0, 0}, {0, 0}}), Error);
  CHECK_THROWS_AS(Relation(3, 2, {{0, 0, 0}}), Error);
  CHECK_THROWS_AS(Relation(3, 2, {{0, 3}}), Error);
  const Relation rel(3, 2, {{1, 0}, {0, 0}});
  CHECK(rel.tuples() == std::vector<std::vector<Element>>{{0, 0}, {1, 0}});
  CHECK_THROWS_AS(rel.contains(std::vector<Element>{0}), Error);
}
