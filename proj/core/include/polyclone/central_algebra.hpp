#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyclone/clone.hpp"
#include "polyclone/core.hpp"
#include "polyclone/pol.hpp"
#include "polyclone/relations.hpp"

namespace polyclone {

/// A finite lattice with bottom element 0, given by meet and join tables.
/// Construction validates commutativity, associativity, idempotence, the
/// absorption laws, and that 0 is absorbing for meet.
struct LatticeSpec {
  int q;
  OpTable meet;
  OpTable join;
  Element bottom = 0;

  /// The chain 0 < 1 < ... < q-1: meet is minimum, join is maximum.
  static LatticeSpec chain(int q);
  static LatticeSpec from_tables(OpTable meet, OpTable join);
};

/// The strict join: join(x, y) when both arguments are nonzero, else 0.
OpTable strict_join_table(const LatticeSpec& lattice);

/// Extends a map on {1..q-1} to the full carrier by sending 0 to 0.
/// values_on_nonzero[i] is the image of element i+1.
OpTable lift_unary(int q, std::span<const Element> values_on_nonzero);

/// Canonical name of a lifted unary: "f" followed by the lexicographic rank
/// of its value sequence on {1..q-1}.
std::string lift_name(int q, std::span<const Element> values_on_nonzero);

/// The algebra (R; meet, vee, 0, lifted unaries): meet from the lattice,
/// vee the strict join, and one lifted unary per map {1..q-1} -> {0..q-1}
/// when include_all_lifted_unaries is set, otherwise only the listed lifts.
Algebra build_r_algebra(const LatticeSpec& lattice, bool include_all_lifted_unaries,
                        const std::vector<std::vector<Element>>& explicit_lifts = {},
                        std::uint64_t max_lifted_unaries = 4096);

/// The algebra (A; circ) with x circ y = x.
Algebra pattern_algebra(int q);

/// circ(x,x)=x, associativity, and circ(circ(x,y),z)=circ(x,z).
std::vector<IdentityEquation> pattern_axioms();

/// The term u_1(x_1) vee u_2(x_2) vee ... vee u_n(x_n) whose table is the
/// indicator of the point: value at the point, 0 elsewhere. Returns
/// Const(0) when the value is 0 or the point has a zero coordinate. The
/// algebra must contain the required lifted unaries.
Term indicator_term(const Algebra& algebra, std::span<const Element> point, Element value);

enum class DecompositionMode { Literal, Repaired };

/// Outcome of rebuilding a function as a join of indicator terms over its
/// support inside {1..q-1}^n, verified against the input by exhaustive
/// evaluation. Failure is data, not an error.
struct DecompositionReport {
  OpTable input;
  Term term;
  DecompositionMode mode = DecompositionMode::Literal;
  bool verified = false;

  struct Mismatch {
    std::vector<Element> point;
    Element expected;
    Element got;
  };
  std::vector<Mismatch> mismatches;
};

/// Literal mode joins the indicators with the algebra's own strict join.
/// Repaired mode uses a zero-neutral join instead (0 acts as identity);
/// that operation is not part of the algebra's signature and is used for
/// diagnostic comparison only.
DecompositionReport decompose(const Algebra& algebra, const OpTable& f,
                              DecompositionMode mode = DecompositionMode::Literal);

/// Per-arity completeness audit of the chain-lattice algebra against the
/// binary central relation with center {0}.
struct ArityAudit {
  int arity = 1;
  bool trusted = false;
  std::uint64_t pol_count = 0;
  std::uint64_t clone_count = 0;
  bool holds = false;
  std::vector<OpTable> gap;
  std::uint64_t extra_count = 0;          // |P_n \ Pol|, must be 0
  std::uint64_t compatible_count = 0;     // = pol_count
  std::uint64_t literal_decomposable = 0; // compatible f whose literal term verifies
  bool decomposition_trusted = false;
};

/// Clone-versus-diagonal-relations audit of the pattern algebra.
struct PatternAudit {
  int arity = 1;
  bool trusted = false;
  std::uint64_t clone_count = 0;
  std::optional<std::uint64_t> pol_diagonal_count;
  bool holds = false;
};

struct ClaimAuditReport {
  int q = 2;
  int max_arity = 1;
  bool trusted = false;
  std::vector<ArityAudit> arities;
  std::vector<PatternAudit> pattern;
  bool pattern_axioms_hold = false;
  std::vector<std::string> findings;  // derived from the computed numbers
};

/// Assembles completeness verdicts, counts, gap witnesses, decomposition
/// statistics, and the pattern-algebra comparison. Everything is computed;
/// no verdict is assumed.
ClaimAuditReport audit_claims(int q, int max_arity, const EnumerationCaps& caps = {},
                              int workers = 1);

}  // namespace polyclone
