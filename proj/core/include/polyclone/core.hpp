#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyclone {

/// Elements of a finite carrier are dense integers 0..q-1.
using Element = int;

/// Thrown on domain violations: out-of-range elements, arity mismatches,
/// unknown operations, malformed inputs.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finite carrier {0, 1, ..., q-1}.
struct Carrier {
  int q;

  explicit Carrier(int size) : q(size) {
    if (q < 1) {
      throw Error("carrier size must be at least 1, got " + std::to_string(q));
    }
  }

  bool contains(Element a) const noexcept { return a >= 0 && a < q; }
};

/// q^arity with an overflow guard (tables beyond 2^48 entries are rejected).
std::uint64_t point_count(int q, int arity);

/// Row-major encoding of a point of {0..q-1}^n: the first coordinate is the
/// most significant digit. Bijective with tuple_decode.
std::uint64_t tuple_index(std::span<const Element> point, int q);

/// Inverse of tuple_index.
std::vector<Element> tuple_decode(std::uint64_t index, int q, int arity);

/// Advances a point through {0..q-1}^n in tuple_index order.
/// Returns false once the point has wrapped past the last tuple.
bool next_point(std::vector<Element>& point, int q);

/// An n-ary operation on {0..q-1} stored as a flat value array of length
/// q^n, indexed by tuple_index. Arity 0 is a constant with a single entry.
class OpTable {
 public:
  OpTable(int q, int arity, std::vector<Element> entries);

  /// e_i^n, with a 1-based coordinate index.
  static OpTable projection(int q, int arity, int var_index);
  static OpTable constant(int q, int arity, Element value);

  int q() const noexcept { return q_; }
  int arity() const noexcept { return arity_; }
  const std::vector<Element>& entries() const noexcept { return entries_; }

  /// Checked evaluation at a point.
  Element operator()(std::span<const Element> point) const;

  /// Unchecked lookup by tuple index.
  Element at(std::uint64_t index) const { return entries_[static_cast<std::size_t>(index)]; }

  friend bool operator==(const OpTable& a, const OpTable& b) noexcept {
    return a.q_ == b.q_ && a.arity_ == b.arity_ && a.entries_ == b.entries_;
  }

 private:
  int q_;
  int arity_;
  std::vector<Element> entries_;
};

/// Checked table lookup realizing f(a_1,...,a_n).
Element eval_op(const OpTable& table, std::span<const Element> point);

/// An applicative term over an algebra's signature: a 1-based variable,
/// a constant element, or an operation applied to argument terms.
/// Terms are immutable trees with shared subterms; copies are cheap.
class Term {
 public:
  enum class Kind { Var, Const, Apply };

  static Term var(int index);
  static Term constant(Element value);
  static Term apply(std::string op_name, std::vector<Term> args);

  Kind kind() const noexcept;
  int var_index() const;
  Element const_value() const;
  const std::string& op_name() const;
  const std::vector<Term>& args() const;

  int node_count() const noexcept;
  int max_var() const noexcept;

  /// Canonical total order: Var < Const < Apply; variables by index,
  /// constants by value, applications by (op name, arguments).
  static int compare(const Term& a, const Term& b) noexcept;

  friend bool operator==(const Term& a, const Term& b) noexcept {
    return compare(a, b) == 0;
  }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Prefix functional rendering: variables as x1, x2, ...; constants as
/// c0, c1, ...; applications as name(arg1,arg2).
std::string to_string(const Term& term);

/// A finite algebra: carrier, a distinguished zero element, and an ordered
/// map of named basic operations over the same carrier.
class Algebra {
 public:
  Algebra(Carrier carrier, Element zero, std::vector<std::pair<std::string, OpTable>> ops);

  int q() const noexcept { return carrier_.q; }
  const Carrier& carrier() const noexcept { return carrier_; }
  Element zero() const noexcept { return zero_; }

  const std::vector<std::pair<std::string, OpTable>>& ops() const noexcept { return ops_; }
  bool has_op(const std::string& name) const noexcept;
  const OpTable& op(const std::string& name) const;

  /// A copy of this algebra extended by one more named operation.
  Algebra with_op(std::string name, OpTable table) const;

 private:
  Carrier carrier_;
  Element zero_;
  std::vector<std::pair<std::string, OpTable>> ops_;
};

/// Recursive evaluation of a term under an environment of variable values.
Element eval_term(const Algebra& algebra, const Term& term, std::span<const Element> env);

/// Extensionalizes a term into an OpTable of the given arity. The term may
/// use at most `arity` variables.
OpTable table_of_term(const Algebra& algebra, const Term& term, int arity);

/// Pointwise superposition outer(inner_1(x), ..., inner_m(x)). All inner
/// tables must share one arity and the outer's carrier.
OpTable compose(const OpTable& outer, std::span<const OpTable> inners);

/// Fixes one coordinate (1-based) of a table, dropping it from the arity.
OpTable slice_table(const OpTable& table, int var_index, Element value);

}  // namespace polyclone
