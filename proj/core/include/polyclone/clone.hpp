#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyclone/core.hpp"
#include "polyclone/pol.hpp"
#include "polyclone/relations.hpp"

namespace polyclone {

/// The deduplicated n-ary polynomial functions P_n of an algebra, each with
/// a witness term that evaluates exactly to its table. Members are sorted
/// lexicographically by entries; witnesses are minimal by node count with
/// canonical tie-breaking, so the whole structure is reproducible.
struct CloneLevel {
  std::shared_ptr<const Algebra> algebra;
  int arity = 1;
  std::vector<OpTable> members;
  std::vector<Term> witnesses;
  bool complete_fixpoint = false;

  /// Index into members for a table, if present.
  std::optional<std::size_t> find(const OpTable& table) const;
};

/// Worklist fixpoint over the algebra's basic operations, seeded with the n
/// projections and all constants. Rejects arity 0.
CloneLevel generate_clone_level(const Algebra& algebra, int arity,
                                const EnumerationCaps& caps = {}, int workers = 1);

/// Witness term for a table's membership in the level. An empty result is a
/// trusted "not polynomial" only when the level reached its fixpoint.
std::optional<Term> membership(const CloneLevel& level, const OpTable& table);

/// Comparison of the n-ary compatible functions against the n-ary
/// polynomial functions. gap lists Pol \ P_n canonically; extra_members
/// lists P_n \ Pol, which must come out empty for any compatible algebra.
struct CompletenessVerdict {
  int arity = 1;
  bool holds = false;
  bool trusted = false;  // false when either side hit a cap
  std::uint64_t pol_count = 0;
  std::uint64_t clone_count = 0;
  std::vector<OpTable> gap;
  std::vector<OpTable> extra_members;
};

CompletenessVerdict completeness_verdict(const Algebra& algebra, const Relation& rel, int arity,
                                         const EnumerationCaps& caps = {}, int workers = 1);

/// Same verdict, assembled from results the caller already has.
CompletenessVerdict completeness_from(const EnumerationResult& pol, const CloneLevel& level);

/// Replaces every occurrence of one variable with a constant. Remaining
/// variable indices are left unchanged.
Term specialize(const Term& term, int var_index, Element value);

struct IdentityEquation {
  Term lhs;
  Term rhs;
};

struct IdentityCheckResult {
  bool holds = true;
  std::optional<std::size_t> failed_equation;
  std::vector<Element> assignment;  // first failing assignment, lexicographic
  Element lhs_value = 0;
  Element rhs_value = 0;
};

/// Exhaustive check of term equations over all variable assignments.
IdentityCheckResult check_identities(const Algebra& algebra,
                                     const std::vector<IdentityEquation>& equations);

/// Bounded evidence for maximality: does the clone generated by the
/// generators plus the candidate cover all k-ary functions? Clone-sense
/// closure: projections are seeded, constants are not.
struct MaximalityReport {
  bool generates_all = false;
  bool trusted = false;
  std::uint64_t reached = 0;
  std::uint64_t target = 0;
};

MaximalityReport maximality_probe(const std::vector<std::pair<std::string, OpTable>>& generators,
                                  const OpTable& candidate, int probe_arity,
                                  const EnumerationCaps& caps = {});

/// Bounded evidence for prepolynomial completeness: every table of arity up
/// to missing_arity_cap that is not polynomial is adjoined to the algebra,
/// and the polynomial closure (constants included) must then cover all
/// k-ary functions. failures lists the adjoined tables that do not.
struct PrepolynomialReport {
  bool trusted = false;
  int missing_arity_cap = 1;
  int probe_arity = 1;
  std::uint64_t missing_count = 0;
  std::vector<OpTable> failures;

  bool all_pass() const noexcept { return failures.empty(); }
};

PrepolynomialReport prepolynomial_probe(const Algebra& algebra, int missing_arity_cap,
                                        int probe_arity, const EnumerationCaps& caps = {});

}  // namespace polyclone
