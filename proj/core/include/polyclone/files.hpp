#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyclone/central_algebra.hpp"
#include "polyclone/clone.hpp"
#include "polyclone/core.hpp"
#include "polyclone/relations.hpp"

namespace polyclone {

/// One named operation as stored on disk.
struct NamedOp {
  std::string name;
  int arity = 0;
  std::vector<Element> entries;
};

struct LatticeBlock {
  std::vector<Element> meet;
  std::vector<Element> join;
};

/// On-disk description of an algebra. A lattice block contributes the
/// operations "meet" and "vee" (the strict join); the flag adds every
/// lifted unary; explicit operations are appended after both.
struct AlgebraFile {
  int q = 1;
  Element zero = 0;
  std::optional<LatticeBlock> lattice;
  bool all_lifted_unaries = false;
  std::vector<NamedOp> operations;

  Algebra to_algebra() const;
};

/// Parsers validate the whole document and report every offending field in
/// one Error.
AlgebraFile parse_algebra_file(const std::string& text);
AlgebraFile load_algebra_file(const std::string& path);
std::string to_text(const AlgebraFile& file);
void save_algebra_file(const AlgebraFile& file, const std::string& path);
Algebra load_algebra(const std::string& path);

Relation parse_relation(const std::string& text);
Relation load_relation(const std::string& path);
std::string to_text(const Relation& rel);
void save_relation(const Relation& rel, const std::string& path);

OpTable parse_table(const std::string& text);
OpTable load_table(const std::string& path);
std::string to_text(const OpTable& table);
void save_table(const OpTable& table, const std::string& path);

/// Terms serialize as {"var":i}, {"const":a}, or {"op":name,"args":[...]}.
Term parse_term(const std::string& text);
std::string term_text(const Term& term);

std::vector<IdentityEquation> parse_equations(const std::string& text);
std::vector<IdentityEquation> load_equations(const std::string& path);

}  // namespace polyclone
