#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "polyclone/core.hpp"
#include "polyclone/relations.hpp"

namespace polyclone::detail {

using json = nlohmann::json;

inline json table_json(const OpTable& table) {
  return json{{"arity", table.arity()}, {"entries", table.entries()}, {"q", table.q()}};
}

inline json relation_json(const Relation& rel) {
  return json{{"arity", rel.arity()}, {"q", rel.q()}, {"tuples", rel.tuples()}};
}

inline json term_json(const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Var:
      return json{{"var", term.var_index()}};
    case Term::Kind::Const:
      return json{{"const", term.const_value()}};
    case Term::Kind::Apply: {
      json args = json::array();
      for (const Term& arg : term.args()) args.push_back(term_json(arg));
      return json{{"op", term.op_name()}, {"args", std::move(args)}};
    }
  }
  throw Error("unreachable term kind");
}

// Collects schema problems instead of failing on the first one.
struct FieldErrors {
  std::vector<std::string> messages;

  void add(const std::string& where, const std::string& what) {
    if (messages.size() < 64) messages.push_back(where + ": " + what);
  }
  bool ok() const { return messages.empty(); }
  [[noreturn]] void raise(const std::string& context) const {
    std::string text = context + ":";
    for (const auto& m : messages) text += "\n  " + m;
    throw Error(text);
  }
  void raise_if_any(const std::string& context) const {
    if (!ok()) raise(context);
  }
};

inline bool expect_int(const json& j, const std::string& where, FieldErrors& errors, long long& out) {
  if (!j.is_number_integer()) {
    errors.add(where, "expected an integer");
    return false;
  }
  out = j.get<long long>();
  return true;
}

// Element array of an exact length with range checks; reports each bad slot.
inline bool read_elements(const json& j, const std::string& where, std::size_t expected, int q,
                          FieldErrors& errors, std::vector<Element>& out) {
  if (!j.is_array()) {
    errors.add(where, "expected an array");
    return false;
  }
  if (j.size() != expected) {
    errors.add(where, "expected " + std::to_string(expected) + " entries, got " +
                          std::to_string(j.size()));
    return false;
  }
  out.clear();
  out.reserve(expected);
  bool ok = true;
  for (std::size_t i = 0; i < j.size(); ++i) {
    long long value = 0;
    if (!expect_int(j[i], where + "[" + std::to_string(i) + "]", errors, value)) {
      ok = false;
      continue;
    }
    if (value < 0 || value >= q) {
      errors.add(where + "[" + std::to_string(i) + "]",
                 "element " + std::to_string(value) + " out of range for carrier of size " +
                     std::to_string(q));
      ok = false;
      continue;
    }
    out.push_back(static_cast<Element>(value));
  }
  return ok;
}

Term term_from_json(const json& j, const std::string& where);

}  // namespace polyclone::detail
