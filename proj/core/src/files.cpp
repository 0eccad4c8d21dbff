#include "polyclone/files.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace polyclone {

using detail::FieldErrors;
using detail::json;

namespace {

json parse_document(const std::string& text, const std::string& context) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw Error(context + ": not valid JSON");
  if (!j.is_object()) throw Error(context + ": expected a JSON object");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

int read_carrier(const json& j, FieldErrors& errors) {
  long long q = 0;
  if (!j.contains("q")) {
    errors.add("q", "missing");
    return 0;
  }
  if (!detail::expect_int(j["q"], "q", errors, q)) return 0;
  if (q < 1 || q > 1'000'000) {
    errors.add("q", "carrier size " + std::to_string(q) + " out of range");
    return 0;
  }
  return static_cast<int>(q);
}

}  // namespace

Algebra AlgebraFile::to_algebra() const {
  std::vector<std::pair<std::string, OpTable>> ops;
  if (lattice) {
    auto spec = LatticeSpec::from_tables(OpTable(q, 2, lattice->meet), OpTable(q, 2, lattice->join));
    ops.emplace_back("meet", spec.meet);
    ops.emplace_back("vee", strict_join_table(spec));
  }
  if (all_lifted_unaries) {
    const std::uint64_t count = point_count(q, q - 1);
    if (count > 4096) {
      throw Error("carrier of size " + std::to_string(q) + " has " + std::to_string(count) +
                  " lifted unaries, above the cap of 4096");
    }
    std::vector<Element> values(static_cast<std::size_t>(q - 1), 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      ops.emplace_back("f" + std::to_string(i), lift_unary(q, values));
      next_point(values, q);
    }
  }
  for (const auto& op : operations) {
    ops.emplace_back(op.name, OpTable(q, op.arity, op.entries));
  }
  return Algebra(Carrier(q), zero, std::move(ops));
}

AlgebraFile parse_algebra_file(const std::string& text) {
  const json j = parse_document(text, "algebra file");
  FieldErrors errors;
  AlgebraFile file;

  file.q = read_carrier(j, errors);
  if (file.q == 0) errors.raise("algebra file");

  if (j.contains("zero")) {
    long long zero = 0;
    if (detail::expect_int(j["zero"], "zero", errors, zero)) {
      if (zero < 0 || zero >= file.q) {
        errors.add("zero", "element " + std::to_string(zero) + " out of range for carrier of size " +
                               std::to_string(file.q));
      } else {
        file.zero = static_cast<Element>(zero);
      }
    }
  }

  if (j.contains("lattice")) {
    const json& lat = j["lattice"];
    if (!lat.is_object()) {
      errors.add("lattice", "expected an object with meet and join");
    } else {
      LatticeBlock block;
      const std::size_t expected = static_cast<std::size_t>(file.q) * static_cast<std::size_t>(file.q);
      bool ok = true;
      if (lat.contains("meet")) {
        ok = detail::read_elements(lat["meet"], "lattice.meet", expected, file.q, errors, block.meet) && ok;
      } else {
        errors.add("lattice.meet", "missing");
        ok = false;
      }
      if (lat.contains("join")) {
        ok = detail::read_elements(lat["join"], "lattice.join", expected, file.q, errors, block.join) && ok;
      } else {
        errors.add("lattice.join", "missing");
        ok = false;
      }
      if (ok) file.lattice = std::move(block);
    }
  }

  if (j.contains("all_lifted_unaries")) {
    if (!j["all_lifted_unaries"].is_boolean()) {
      errors.add("all_lifted_unaries", "expected a boolean");
    } else {
      file.all_lifted_unaries = j["all_lifted_unaries"].get<bool>();
    }
  }

  if (j.contains("operations")) {
    const json& ops = j["operations"];
    if (!ops.is_array()) {
      errors.add("operations", "expected an array");
    } else {
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const std::string where = "operations[" + std::to_string(i) + "]";
        const json& op = ops[i];
        if (!op.is_object()) {
          errors.add(where, "expected an object");
          continue;
        }
        NamedOp named;
        if (!op.contains("name") || !op["name"].is_string() || op["name"].get<std::string>().empty()) {
          errors.add(where + ".name", "expected a nonempty string");
        } else {
          named.name = op["name"].get<std::string>();
          for (const auto& other : file.operations) {
            if (other.name == named.name) {
              errors.add(where + ".name", "duplicate operation name '" + named.name + "'");
            }
          }
        }
        long long arity = 0;
        if (!op.contains("arity") || !detail::expect_int(op["arity"], where + ".arity", errors, arity) ||
            arity < 0 || arity > 16) {
          errors.add(where + ".arity", "expected an integer in [0,16]");
          continue;
        }
        named.arity = static_cast<int>(arity);
        const std::uint64_t expected = point_count(file.q, named.arity);
        if (!op.contains("entries")) {
          errors.add(where + ".entries", "missing");
          continue;
        }
        detail::read_elements(op["entries"], where + ".entries",
                              static_cast<std::size_t>(expected), file.q, errors, named.entries);
        if (!named.name.empty() && named.entries.size() == expected) {
          file.operations.push_back(std::move(named));
        }
      }
    }
  }

  errors.raise_if_any("algebra file");
  return file;
}

AlgebraFile load_algebra_file(const std::string& path) {
  try {
    return parse_algebra_file(read_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string to_text(const AlgebraFile& file) {
  json j;
  j["q"] = file.q;
  j["zero"] = file.zero;
  j["all_lifted_unaries"] = file.all_lifted_unaries;
  if (file.lattice) {
    j["lattice"] = json{{"join", file.lattice->join}, {"meet", file.lattice->meet}};
  }
  json ops = json::array();
  for (const auto& op : file.operations) {
    ops.push_back(json{{"arity", op.arity}, {"entries", op.entries}, {"name", op.name}});
  }
  j["operations"] = std::move(ops);
  return j.dump(2) + "\n";
}

void save_algebra_file(const AlgebraFile& file, const std::string& path) {
  write_file(path, to_text(file));
}

Algebra load_algebra(const std::string& path) { return load_algebra_file(path).to_algebra(); }

Relation parse_relation(const std::string& text) {
  const json j = parse_document(text, "relation file");
  FieldErrors errors;
  const int q = read_carrier(j, errors);
  if (q == 0) errors.raise("relation file");

  long long arity = 0;
  if (!j.contains("arity") || !detail::expect_int(j["arity"], "arity", errors, arity) || arity < 1 ||
      arity > 16) {
    errors.add("arity", "expected an integer in [1,16]");
    errors.raise("relation file");
  }

  std::vector<std::vector<Element>> tuples;
  if (!j.contains("tuples") || !j["tuples"].is_array()) {
    errors.add("tuples", "expected an array of tuples");
  } else {
    const json& ts = j["tuples"];
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::vector<Element> tuple;
      if (detail::read_elements(ts[i], "tuples[" + std::to_string(i) + "]",
                                static_cast<std::size_t>(arity), q, errors, tuple)) {
        tuples.push_back(std::move(tuple));
      }
    }
  }
  errors.raise_if_any("relation file");
  try {
    return Relation(q, static_cast<int>(arity), std::move(tuples));
  } catch (const Error& e) {
    throw Error(std::string("relation file: ") + e.what());
  }
}

Relation load_relation(const std::string& path) {
  try {
    return parse_relation(read_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string to_text(const Relation& rel) { return detail::relation_json(rel).dump(2) + "\n"; }

void save_relation(const Relation& rel, const std::string& path) { write_file(path, to_text(rel)); }

OpTable parse_table(const std::string& text) {
  const json j = parse_document(text, "table file");
  FieldErrors errors;
  const int q = read_carrier(j, errors);
  if (q == 0) errors.raise("table file");

  long long arity = 0;
  if (!j.contains("arity") || !detail::expect_int(j["arity"], "arity", errors, arity) || arity < 0 ||
      arity > 16) {
    errors.add("arity", "expected an integer in [0,16]");
    errors.raise("table file");
  }
  std::vector<Element> entries;
  if (!j.contains("entries")) {
    errors.add("entries", "missing");
  } else {
    detail::read_elements(j["entries"], "entries",
                          static_cast<std::size_t>(point_count(q, static_cast<int>(arity))), q,
                          errors, entries);
  }
  errors.raise_if_any("table file");
  return OpTable(q, static_cast<int>(arity), std::move(entries));
}

OpTable load_table(const std::string& path) {
  try {
    return parse_table(read_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string to_text(const OpTable& table) { return detail::table_json(table).dump(2) + "\n"; }

void save_table(const OpTable& table, const std::string& path) { write_file(path, to_text(table)); }

namespace detail {

Term term_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw Error(where + ": expected a term object");
  if (j.contains("var")) {
    if (!j["var"].is_number_integer() || j["var"].get<long long>() < 1) {
      throw Error(where + ".var: expected a positive integer");
    }
    return Term::var(j["var"].get<int>());
  }
  if (j.contains("const")) {
    if (!j["const"].is_number_integer() || j["const"].get<long long>() < 0) {
      throw Error(where + ".const: expected a nonnegative integer");
    }
    return Term::constant(j["const"].get<Element>());
  }
  if (j.contains("op")) {
    if (!j["op"].is_string() || j["op"].get<std::string>().empty()) {
      throw Error(where + ".op: expected a nonempty string");
    }
    std::vector<Term> args;
    if (j.contains("args")) {
      if (!j["args"].is_array()) throw Error(where + ".args: expected an array");
      std::size_t i = 0;
      for (const json& a : j["args"]) {
        args.push_back(term_from_json(a, where + ".args[" + std::to_string(i) + "]"));
        ++i;
      }
    }
    return Term::apply(j["op"].get<std::string>(), std::move(args));
  }
  throw Error(where + ": term needs one of var, const, op");
}

}  // namespace detail

Term parse_term(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw Error("term: not valid JSON");
  return detail::term_from_json(j, "term");
}

std::string term_text(const Term& term) { return detail::term_json(term).dump(); }

std::vector<IdentityEquation> parse_equations(const std::string& text) {
  const json j = parse_document(text, "equations file");
  if (!j.contains("equations") || !j["equations"].is_array()) {
    throw Error("equations file: expected an 'equations' array");
  }
  std::vector<IdentityEquation> equations;
  std::size_t i = 0;
  for (const json& eq : j["equations"]) {
    const std::string where = "equations[" + std::to_string(i) + "]";
    if (!eq.is_object() || !eq.contains("lhs") || !eq.contains("rhs")) {
      throw Error(where + ": expected an object with lhs and rhs terms");
    }
    equations.push_back(IdentityEquation{detail::term_from_json(eq["lhs"], where + ".lhs"),
                                         detail::term_from_json(eq["rhs"], where + ".rhs")});
    ++i;
  }
  return equations;
}

std::vector<IdentityEquation> load_equations(const std::string& path) {
  try {
    return parse_equations(read_file(path));
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace polyclone
