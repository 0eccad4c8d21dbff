#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "polyclone/core.hpp"

namespace polyclone {

/// An h-ary relation on {0..q-1}: an explicit tuple set plus a bitset over
/// all q^h tuple indices for constant-time membership.
class Relation {
 public:
  Relation(int q, int arity, std::vector<std::vector<Element>> tuples);

  int q() const noexcept { return q_; }
  int arity() const noexcept { return arity_; }

  /// Tuples in lexicographic order.
  const std::vector<std::vector<Element>>& tuples() const noexcept { return tuples_; }
  std::uint64_t size() const noexcept { return tuples_.size(); }

  bool contains(std::span<const Element> tuple) const;
  bool contains_index(std::uint64_t index) const { return membership_[static_cast<std::size_t>(index)]; }

  static Relation full(int q, int arity);
  static Relation equality(int q, int arity);

  friend bool operator==(const Relation& a, const Relation& b) noexcept {
    return a.q_ == b.q_ && a.arity_ == b.arity_ && a.tuples_ == b.tuples_;
  }

 private:
  int q_;
  int arity_;
  std::vector<std::vector<Element>> tuples_;
  std::vector<bool> membership_;
};

/// Exhaustively computed structural profile of a relation.
struct RelationProfile {
  bool reflexive = false;          // every diagonal tuple (a,...,a) is in
  bool totally_reflexive = false;  // every tuple with two equal coordinates is in
  bool symmetric = false;          // invariant under all coordinate permutations
  bool proper = false;             // not the full relation
  std::optional<bool> transitive;  // binary relations only
  std::optional<std::array<std::vector<Element>, 2>> transitivity_counterexample;
  std::vector<Element> centers;    // elements whose every containing tuple is in
  bool is_central = false;
};

/// The smallest h-ary relation containing every tuple that meets the center
/// set Z and every tuple with a repeated coordinate. Z must be a nonempty
/// proper subset of the carrier.
Relation build_central_minimal(int q, int arity, const std::vector<Element>& center);

RelationProfile classify(const Relation& rel);

/// Restricted growth strings for the set partitions of {1..h}, in
/// lexicographic order.
std::vector<std::vector<int>> set_partitions(int h);

/// One relation per partition of the coordinate set: x_i = x_j whenever i
/// and j share a block. Ordered like set_partitions.
std::vector<Relation> diagonal_relations(int q, int arity);

}  // namespace polyclone
