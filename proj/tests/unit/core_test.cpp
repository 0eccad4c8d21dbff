#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "polyclone/central_algebra.hpp"
#include "polyclone/core.hpp"

using namespace polyclone;

namespace {

Algebra r3() { return build_r_algebra(LatticeSpec::chain(3), true); }

const std::vector<Element> kMeet3{0, 0, 0, 0, 1, 1, 0, 1, 2};
const std::vector<Element> kVee3{0, 0, 0, 0, 1, 2, 0, 2, 2};

}  // namespace

TEST_CASE("tuple_index encodes row-major with the first coordinate most significant") {
  CHECK(tuple_index(std::vector<Element>{0, 0}, 3) == 0);
  CHECK(tuple_index(std::vector<Element>{1, 2}, 3) == 5);
  CHECK(tuple_index(std::vector<Element>{2, 2, 2}, 3) == 26);
  CHECK(tuple_index(std::vector<Element>{}, 3) == 0);
  CHECK_THROWS_AS(tuple_index(std::vector<Element>{3}, 3), Error);
  CHECK_THROWS_AS(tuple_index(std::vector<Element>{-1}, 3), Error);
}

TEST_CASE("tuple_index and tuple_decode are mutually inverse") {
  for (int q = 1; q <= 5; ++q) {
    for (int n = 0; n <= 3; ++n) {
      const std::uint64_t total = point_count(q, n);
      for (std::uint64_t i = 0; i < total; ++i) {
        const auto point = tuple_decode(i, q, n);
        CHECK(tuple_index(point, q) == i);
      }
    }
  }
  CHECK_THROWS_AS(tuple_decode(9, 3, 2), Error);
}

TEST_CASE("next_point walks all points in index order") {
  std::vector<Element> point(2, 0);
  for (std::uint64_t i = 0;; ++i) {
    CHECK(tuple_index(point, 3) == i);
    if (!next_point(point, 3)) {
      CHECK(i == 8);
      break;
    }
  }
  CHECK(point == std::vector<Element>{0, 0});
}

TEST_CASE("OpTable validates its shape") {
  CHECK_THROWS_AS(OpTable(3, 2, std::vector<Element>(8, 0)), Error);
  CHECK_THROWS_AS(OpTable(3, 1, {0, 3, 0}), Error);
  CHECK_THROWS_AS(OpTable(0, 1, {}), Error);
  const OpTable constant(3, 0, {2});
  CHECK(constant.arity() == 0);
  CHECK(constant(std::vector<Element>{}) == 2);
  CHECK(OpTable::projection(3, 2, 1).entries() == std::vector<Element>{0, 0, 0, 1, 1, 1, 2, 2, 2});
  CHECK(OpTable::projection(3, 2, 2).entries() == std::vector<Element>{0, 1, 2, 0, 1, 2, 0, 1, 2});
  CHECK(OpTable::constant(3, 1, 1).entries() == std::vector<Element>{1, 1, 1});
  CHECK_THROWS_AS(OpTable::projection(3, 2, 3), Error);
  CHECK_THROWS_AS(OpTable::constant(3, 1, 3), Error);
}

TEST_CASE("eval_op matches the chain meet and strict join") {
  const OpTable meet(3, 2, kMeet3);
  const OpTable vee(3, 2, kVee3);
  CHECK(eval_op(meet, std::vector<Element>{0, 2}) == 0);
  CHECK(eval_op(vee, std::vector<Element>{1, 2}) == 2);
  CHECK(eval_op(vee, std::vector<Element>{0, 2}) == 0);
  CHECK_THROWS_AS(eval_op(meet, std::vector<Element>{1}), Error);
}

TEST_CASE("eval_term handles variables, constants, and applications") {
  const Algebra algebra = r3();
  CHECK(eval_term(algebra, Term::var(1), std::vector<Element>{2}) == 2);
  CHECK(eval_term(algebra, Term::constant(1), std::vector<Element>{0, 0}) == 1);
  const Term t = Term::apply("vee", {Term::var(1), Term::constant(2)});
  CHECK(eval_term(algebra, t, std::vector<Element>{1}) == 2);

  CHECK_THROWS_AS(eval_term(algebra, Term::var(2), std::vector<Element>{1}), Error);
  CHECK_THROWS_AS(eval_term(algebra, Term::apply("nope", {Term::var(1)}), std::vector<Element>{1}),
                  Error);
  CHECK_THROWS_AS(eval_term(algebra, Term::constant(5), std::vector<Element>{1}), Error);
  CHECK_THROWS_AS(eval_term(algebra, Term::apply("meet", {Term::var(1)}), std::vector<Element>{1}),
                  Error);
}

TEST_CASE("table_of_term extensionalizes terms") {
  const Algebra algebra = r3();
  CHECK(table_of_term(algebra, Term::var(1), 1).entries() == std::vector<Element>{0, 1, 2});
  const Term meet_term = Term::apply("meet", {Term::var(1), Term::var(2)});
  CHECK(table_of_term(algebra, meet_term, 2).entries() == kMeet3);
  const Term vee_term = Term::apply("vee", {Term::var(1), Term::var(2)});
  CHECK(table_of_term(algebra, vee_term, 2).entries() == kVee3);
  CHECK_THROWS_AS(table_of_term(algebra, Term::var(3), 2), Error);
}

TEST_CASE("a single-operation term reproduces that operation's table") {
  const Algebra algebra = r3();
  for (const auto& [name, table] : algebra.ops()) {
    std::vector<Term> vars;
    for (int i = 1; i <= table.arity(); ++i) vars.push_back(Term::var(i));
    CHECK(table_of_term(algebra, Term::apply(name, vars), table.arity()) == table);
  }
}

TEST_CASE("compose is pointwise superposition") {
  const OpTable meet(3, 2, kMeet3);
  const OpTable e1 = OpTable::projection(3, 2, 1);
  const OpTable e2 = OpTable::projection(3, 2, 2);
  const OpTable c0 = OpTable::constant(3, 2, 0);

  CHECK(compose(meet, std::vector<OpTable>{e1, e1}) == e1);
  CHECK(compose(meet, std::vector<OpTable>{c0, e2}) == c0);
  const OpTable id(3, 1, {0, 1, 2});
  CHECK(compose(id, std::vector<OpTable>{meet}) == meet);

  CHECK_THROWS_AS(compose(meet, std::vector<OpTable>{e1}), Error);
  CHECK_THROWS_AS(compose(meet, std::vector<OpTable>{e1, OpTable::projection(2, 2, 1)}), Error);
  CHECK_THROWS_AS(compose(OpTable(3, 0, {1}), std::vector<OpTable>{}), Error);
}

TEST_CASE("compose with projections agrees with direct term evaluation") {
  const Algebra algebra = r3();
  for (const std::string name : {"meet", "vee"}) {
    const OpTable& op = algebra.op(name);
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        const OpTable direct = table_of_term(
            algebra, Term::apply(name, {Term::var(i), Term::var(j)}), 2);
        const OpTable composed = compose(
            op, std::vector<OpTable>{OpTable::projection(3, 2, i), OpTable::projection(3, 2, j)});
        CHECK(direct == composed);
      }
    }
  }
}

TEST_CASE("slice_table fixes one coordinate") {
  const OpTable meet(3, 2, kMeet3);
  CHECK(slice_table(meet, 1, 2).entries() == std::vector<Element>{0, 1, 2});
  CHECK(slice_table(meet, 2, 0).entries() == std::vector<Element>{0, 0, 0});
  CHECK(slice_table(meet, 2, 1).entries() == std::vector<Element>{0, 1, 1});
  CHECK_THROWS_AS(slice_table(meet, 3, 0), Error);
  CHECK_THROWS_AS(slice_table(meet, 1, 3), Error);
}

TEST_CASE("terms order canonically and render in prefix notation") {
  const Term x1 = Term::var(1);
  const Term x2 = Term::var(2);
  const Term c0 = Term::constant(0);
  const Term app = Term::apply("meet", {x1, c0});

  CHECK(Term::compare(x1, x1) == 0);
  CHECK(Term::compare(x1, x2) < 0);
  CHECK(Term::compare(x2, c0) < 0);
  CHECK(Term::compare(c0, app) < 0);
  CHECK(Term::compare(Term::apply("meet", {x1, x1}), Term::apply("vee", {x1, x1})) < 0);
  CHECK(Term::compare(Term::apply("meet", {x1, c0}), Term::apply("meet", {x1, x1})) > 0);

  CHECK(app.node_count() == 3);
  CHECK(app.max_var() == 1);
  const Term nested = Term::apply("vee", {Term::apply("meet", {x1, Term::constant(2)}),
                                          Term::apply("f3", {x2})});
  CHECK(to_string(nested) == "vee(meet(x1,c2),f3(x2))");
  CHECK(nested.node_count() == 6);
  CHECK(nested.max_var() == 2);
}

TEST_CASE("algebra construction validates operations") {
  const OpTable meet(3, 2, kMeet3);
  CHECK_THROWS_AS(Algebra(Carrier(3), 3, {}), Error);
  CHECK_THROWS_AS(Algebra(Carrier(3), 0, {{"a", meet}, {"a", meet}}), Error);
  CHECK_THROWS_AS(Algebra(Carrier(2), 0, {{"a", meet}}), Error);

  const Algebra algebra(Carrier(3), 0, {{"meet", meet}});
  CHECK(algebra.has_op("meet"));
  CHECK_FALSE(algebra.has_op("vee"));
  CHECK_THROWS_AS(algebra.op("vee"), Error);
  const Algebra extended = algebra.with_op("vee", OpTable(3, 2, kVee3));
  CHECK(extended.ops().size() == 2);
  CHECK_THROWS_AS(extended.with_op("vee", OpTable(3, 2, kVee3)), Error);
}
