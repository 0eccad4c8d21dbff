#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polyclone/core.hpp"
#include "polyclone/pol.hpp"

namespace polyclone::detail {

struct WitnessClosureResult {
  // Members in settle order (increasing witness size); callers re-sort.
  std::vector<std::vector<Element>> members;
  std::vector<Term> witnesses;
  bool complete = false;
};

// Uniform-cost closure of the arity-n projections (plus all constants when
// with_constants is set) under the named operations. Every member carries a
// witness term that is minimal by node count, with ties broken by the
// canonical term order; the outcome is independent of worker count.
WitnessClosureResult witness_closure(int q, int arity,
                                     const std::vector<std::pair<std::string, OpTable>>& ops,
                                     bool with_constants, const EnumerationCaps& caps,
                                     int workers);

struct SetClosureResult {
  std::uint64_t count = 0;
  bool complete = false;        // fixpoint reached (or target hit first)
  bool reached_target = false;  // meaningful when a target was given
};

// Witness-free closure used by generation probes. Stops as soon as the
// member count reaches early_exit_target (0 disables the early exit).
SetClosureResult set_closure_count(int q, int arity, const std::vector<OpTable>& ops,
                                   bool with_constants, const EnumerationCaps& caps,
                                   std::uint64_t early_exit_target);

}  // namespace polyclone::detail
