#pragma once

#include <cstdint>
#include <vector>

#include "polyclone/core.hpp"
#include "polyclone/relations.hpp"

namespace polyclone {

/// Hard limits for enumeration and closure engines. Results computed under a
/// hit cap are reported as such, never as definitive answers.
struct EnumerationCaps {
  std::uint64_t max_results = 1'000'000;
  double time_budget_seconds = 0.0;  // 0 disables the time budget

  void validate() const {
    if (max_results == 0) throw Error("max_results cap must be positive");
    if (time_budget_seconds < 0) throw Error("time budget must be nonnegative");
  }
};

/// Result of a single preservation check. When the operation violates the
/// relation, the lexicographically least violating argument matrix is
/// reported: one column per operation argument, each column a tuple of the
/// relation, whose coordinatewise image row lies outside the relation.
struct CompatReport {
  bool compatible = true;
  std::vector<std::vector<Element>> counterexample_columns;
  std::vector<Element> violating_image;
};

/// Does the operation preserve the relation? Exhausts all choices of
/// argument tuples in canonical order.
CompatReport is_compatible(const OpTable& table, const Relation& rel);

enum class EnumerationStatus { Complete, MaxResultsExceeded, TimeBudgetExceeded };

struct EnumerationResult {
  std::vector<OpTable> tables;  // lexicographic by entries; truncated when capped
  std::uint64_t count = 0;      // number of tables produced before any cap
  EnumerationStatus status = EnumerationStatus::Complete;

  bool complete() const noexcept { return status == EnumerationStatus::Complete; }
};

/// All n-ary operations preserving the relation, by backtracking over table
/// entries in tuple-index order with incremental constraint checks. Output
/// order is lexicographic by entries and independent of the worker count.
EnumerationResult enumerate_compatible(int q, const Relation& rel, int arity,
                                       const EnumerationCaps& caps = {}, int workers = 1,
                                       bool keep_tables = true);

}  // namespace polyclone
