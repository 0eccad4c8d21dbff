#pragma once

#include <vector>

#include "polyclone/core.hpp"
#include "polyclone/relations.hpp"

// Plain brute-force reimplementations used as ground truth. They stay
// independent of the library's enumeration and closure engines: everything
// here is direct loops over explicit tables.
namespace oracles {

using polyclone::Algebra;
using polyclone::Element;
using polyclone::OpTable;
using polyclone::Relation;

bool compatible(const OpTable& table, const Relation& rel);

// All q^(q^n) tables filtered through oracles::compatible, in lexicographic
// order by entries.
std::vector<OpTable> enumerate_compatible(int q, const Relation& rel, int arity);

// Round-based closure of projections and constants under the algebra's
// operations; returns the sorted entry vectors.
std::vector<std::vector<Element>> polynomial_closure(const Algebra& algebra, int arity);

// Same without constants, over a plain list of operations.
std::vector<std::vector<Element>> clone_closure(const std::vector<OpTable>& ops, int q, int arity);

// The piecewise indicator: value at the point, 0 elsewhere, and identically
// 0 when the value is 0 or the point touches 0.
std::vector<Element> indicator_entries(int q, const std::vector<Element>& point, Element value);

// Pointwise fold of chain-lattice strict joins of the indicators over the
// support of f inside {1..q-1}^n. The all-zero table when the support is
// empty.
std::vector<Element> literal_decomposition_entries(int q, const OpTable& f);

}  // namespace oracles
