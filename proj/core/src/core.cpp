#include "polyclone/core.hpp"

#include <algorithm>
#include <sstream>

namespace polyclone {

namespace {
constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 48;
}  // namespace

std::uint64_t point_count(int q, int arity) {
  if (q < 1) throw Error("carrier size must be at least 1, got " + std::to_string(q));
  if (arity < 0) throw Error("arity must be nonnegative, got " + std::to_string(arity));
  std::uint64_t count = 1;
  for (int i = 0; i < arity; ++i) {
    count *= static_cast<std::uint64_t>(q);
    if (count > kMaxTableSize) {
      throw Error("table of arity " + std::to_string(arity) + " over carrier " +
                  std::to_string(q) + " is too large");
    }
  }
  return count;
}

std::uint64_t tuple_index(std::span<const Element> point, int q) {
  std::uint64_t index = 0;
  for (Element a : point) {
    if (a < 0 || a >= q) {
      throw Error("invalid element " + std::to_string(a) + " for carrier of size " +
                  std::to_string(q));
    }
    index = index * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(a);
  }
  return index;
}

std::vector<Element> tuple_decode(std::uint64_t index, int q, int arity) {
  if (index >= point_count(q, arity)) {
    throw Error("tuple index " + std::to_string(index) + " out of range");
  }
  std::vector<Element> point(static_cast<std::size_t>(arity));
  for (int k = arity - 1; k >= 0; --k) {
    point[static_cast<std::size_t>(k)] = static_cast<Element>(index % static_cast<std::uint64_t>(q));
    index /= static_cast<std::uint64_t>(q);
  }
  return point;
}

bool next_point(std::vector<Element>& point, int q) {
  for (auto it = point.rbegin(); it != point.rend(); ++it) {
    if (*it + 1 < q) {
      ++*it;
      return true;
    }
    *it = 0;
  }
  return false;
}

OpTable::OpTable(int q, int arity, std::vector<Element> entries)
    : q_(q), arity_(arity), entries_(std::move(entries)) {
  const std::uint64_t expected = point_count(q, arity);
  if (entries_.size() != expected) {
    throw Error("operation table of arity " + std::to_string(arity) + " over carrier " +
                std::to_string(q) + " needs " + std::to_string(expected) + " entries, got " +
                std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 0 || entries_[i] >= q) {
      throw Error("entry " + std::to_string(i) + " has invalid element " +
                  std::to_string(entries_[i]) + " for carrier of size " + std::to_string(q));
    }
  }
}

OpTable OpTable::projection(int q, int arity, int var_index) {
  if (var_index < 1 || var_index > arity) {
    throw Error("projection index " + std::to_string(var_index) + " out of range for arity " +
                std::to_string(arity));
  }
  const std::uint64_t n = point_count(q, arity);
  std::vector<Element> entries(static_cast<std::size_t>(n));
  std::vector<Element> point(static_cast<std::size_t>(arity), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    entries[static_cast<std::size_t>(i)] = point[static_cast<std::size_t>(var_index - 1)];
    next_point(point, q);
  }
  return OpTable(q, arity, std::move(entries));
}

OpTable OpTable::constant(int q, int arity, Element value) {
  if (value < 0 || value >= q) {
    throw Error("constant value " + std::to_string(value) + " out of range for carrier of size " +
                std::to_string(q));
  }
  const std::uint64_t n = point_count(q, arity);
  return OpTable(q, arity, std::vector<Element>(static_cast<std::size_t>(n), value));
}

Element OpTable::operator()(std::span<const Element> point) const {
  if (static_cast<int>(point.size()) != arity_) {
    throw Error("operation of arity " + std::to_string(arity_) + " applied to " +
                std::to_string(point.size()) + " arguments");
  }
  return entries_[static_cast<std::size_t>(tuple_index(point, q_))];
}

Element eval_op(const OpTable& table, std::span<const Element> point) {
  return table(point);
}

struct Term::Node {
  Kind kind;
  int var_index = 0;
  Element value = 0;
  std::string op;
  std::vector<Term> args;
  int nodes = 1;
  int maxvar = 0;
};

Term Term::var(int index) {
  if (index < 1) throw Error("variable index must be 1-based, got " + std::to_string(index));
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->var_index = index;
  node->maxvar = index;
  return Term(std::move(node));
}

Term Term::constant(Element value) {
  if (value < 0) throw Error("constant element must be nonnegative, got " + std::to_string(value));
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->value = value;
  return Term(std::move(node));
}

Term Term::apply(std::string op_name, std::vector<Term> args) {
  if (op_name.empty()) throw Error("operation name must be nonempty");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Apply;
  node->op = std::move(op_name);
  node->nodes = 1;
  node->maxvar = 0;
  for (const Term& t : args) {
    node->nodes += t.node_count();
    node->maxvar = std::max(node->maxvar, t.max_var());
  }
  node->args = std::move(args);
  return Term(std::move(node));
}

Term::Kind Term::kind() const noexcept { return node_->kind; }

int Term::var_index() const {
  if (node_->kind != Kind::Var) throw Error("term is not a variable");
  return node_->var_index;
}

Element Term::const_value() const {
  if (node_->kind != Kind::Const) throw Error("term is not a constant");
  return node_->value;
}

const std::string& Term::op_name() const {
  if (node_->kind != Kind::Apply) throw Error("term is not an application");
  return node_->op;
}

const std::vector<Term>& Term::args() const {
  if (node_->kind != Kind::Apply) throw Error("term is not an application");
  return node_->args;
}

int Term::node_count() const noexcept { return node_->nodes; }
int Term::max_var() const noexcept { return node_->maxvar; }

int Term::compare(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return 0;
  const int ka = static_cast<int>(a.node_->kind);
  const int kb = static_cast<int>(b.node_->kind);
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.node_->kind) {
    case Kind::Var:
      if (a.node_->var_index != b.node_->var_index) {
        return a.node_->var_index < b.node_->var_index ? -1 : 1;
      }
      return 0;
    case Kind::Const:
      if (a.node_->value != b.node_->value) return a.node_->value < b.node_->value ? -1 : 1;
      return 0;
    case Kind::Apply: {
      if (int c = a.node_->op.compare(b.node_->op); c != 0) return c < 0 ? -1 : 1;
      const auto& aa = a.node_->args;
      const auto& ba = b.node_->args;
      const std::size_t common = std::min(aa.size(), ba.size());
      for (std::size_t i = 0; i < common; ++i) {
        if (int c = compare(aa[i], ba[i]); c != 0) return c;
      }
      if (aa.size() != ba.size()) return aa.size() < ba.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

namespace {
void print_term(const Term& term, std::string& out) {
  switch (term.kind()) {
    case Term::Kind::Var:
      out += 'x';
      out += std::to_string(term.var_index());
      return;
    case Term::Kind::Const:
      out += 'c';
      out += std::to_string(term.const_value());
      return;
    case Term::Kind::Apply: {
      out += term.op_name();
      out += '(';
      bool first = true;
      for (const Term& arg : term.args()) {
        if (!first) out += ',';
        first = false;
        print_term(arg, out);
      }
      out += ')';
      return;
    }
  }
}
}  // namespace

std::string to_string(const Term& term) {
  std::string out;
  print_term(term, out);
  return out;
}

Algebra::Algebra(Carrier carrier, Element zero, std::vector<std::pair<std::string, OpTable>> ops)
    : carrier_(carrier), zero_(zero), ops_(std::move(ops)) {
  if (!carrier_.contains(zero_)) {
    throw Error("zero element " + std::to_string(zero_) + " out of range for carrier of size " +
                std::to_string(carrier_.q));
  }
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const auto& [name, table] = ops_[i];
    if (name.empty()) throw Error("operation " + std::to_string(i) + " has an empty name");
    if (table.q() != carrier_.q) {
      throw Error("operation '" + name + "' is over carrier " + std::to_string(table.q()) +
                  ", algebra carrier is " + std::to_string(carrier_.q));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (ops_[j].first == name) throw Error("duplicate operation name '" + name + "'");
    }
  }
}

bool Algebra::has_op(const std::string& name) const noexcept {
  for (const auto& [n, t] : ops_) {
    if (n == name) return true;
  }
  return false;
}

const OpTable& Algebra::op(const std::string& name) const {
  for (const auto& [n, t] : ops_) {
    if (n == name) return t;
  }
  throw Error("unknown operation '" + name + "'");
}

Algebra Algebra::with_op(std::string name, OpTable table) const {
  auto ops = ops_;
  ops.emplace_back(std::move(name), std::move(table));
  return Algebra(carrier_, zero_, std::move(ops));
}

Element eval_term(const Algebra& algebra, const Term& term, std::span<const Element> env) {
  switch (term.kind()) {
    case Term::Kind::Var: {
      const int i = term.var_index();
      if (i > static_cast<int>(env.size())) {
        throw Error("variable x" + std::to_string(i) + " out of range for environment of size " +
                    std::to_string(env.size()));
      }
      return env[static_cast<std::size_t>(i - 1)];
    }
    case Term::Kind::Const: {
      const Element a = term.const_value();
      if (!algebra.carrier().contains(a)) {
        throw Error("constant c" + std::to_string(a) + " out of range for carrier of size " +
                    std::to_string(algebra.q()));
      }
      return a;
    }
    case Term::Kind::Apply: {
      const OpTable& table = algebra.op(term.op_name());
      const auto& args = term.args();
      if (static_cast<int>(args.size()) != table.arity()) {
        throw Error("operation '" + term.op_name() + "' of arity " +
                    std::to_string(table.arity()) + " applied to " + std::to_string(args.size()) +
                    " arguments");
      }
      std::vector<Element> values(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) {
        values[i] = eval_term(algebra, args[i], env);
      }
      return table(values);
    }
  }
  throw Error("unreachable term kind");
}

OpTable table_of_term(const Algebra& algebra, const Term& term, int arity) {
  if (arity < 0) throw Error("arity must be nonnegative, got " + std::to_string(arity));
  if (term.max_var() > arity) {
    throw Error("term uses variable x" + std::to_string(term.max_var()) +
                " beyond requested arity " + std::to_string(arity));
  }
  const int q = algebra.q();
  const std::uint64_t n = point_count(q, arity);
  std::vector<Element> entries(static_cast<std::size_t>(n));
  std::vector<Element> point(static_cast<std::size_t>(arity), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    entries[static_cast<std::size_t>(i)] = eval_term(algebra, term, point);
    next_point(point, q);
  }
  return OpTable(q, arity, std::move(entries));
}

OpTable compose(const OpTable& outer, std::span<const OpTable> inners) {
  if (static_cast<int>(inners.size()) != outer.arity()) {
    throw Error("outer operation of arity " + std::to_string(outer.arity()) + " composed with " +
                std::to_string(inners.size()) + " inner operations");
  }
  if (inners.empty()) {
    throw Error("composition with zero inner operations needs an explicit arity; use OpTable::constant");
  }
  const int q = outer.q();
  const int arity = inners[0].arity();
  for (const OpTable& inner : inners) {
    if (inner.q() != q) throw Error("carrier mismatch in composition");
    if (inner.arity() != arity) throw Error("inner operations must share one arity");
  }
  const std::uint64_t n = point_count(q, arity);
  std::vector<Element> entries(static_cast<std::size_t>(n));
  std::vector<Element> mid(inners.size());
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < inners.size(); ++k) {
      mid[k] = inners[k].at(i);
    }
    entries[static_cast<std::size_t>(i)] = outer(mid);
  }
  return OpTable(q, arity, std::move(entries));
}

OpTable slice_table(const OpTable& table, int var_index, Element value) {
  const int arity = table.arity();
  if (var_index < 1 || var_index > arity) {
    throw Error("slice coordinate " + std::to_string(var_index) + " out of range for arity " +
                std::to_string(arity));
  }
  const int q = table.q();
  if (value < 0 || value >= q) {
    throw Error("slice value " + std::to_string(value) + " out of range for carrier of size " +
                std::to_string(q));
  }
  const std::uint64_t n = point_count(q, arity - 1);
  std::vector<Element> entries(static_cast<std::size_t>(n));
  std::vector<Element> reduced(static_cast<std::size_t>(arity - 1), 0);
  std::vector<Element> full(static_cast<std::size_t>(arity));
  for (std::uint64_t i = 0; i < n; ++i) {
    for (int k = 0, j = 0; k < arity; ++k) {
      full[static_cast<std::size_t>(k)] =
          (k == var_index - 1) ? value : reduced[static_cast<std::size_t>(j++)];
    }
    entries[static_cast<std::size_t>(i)] = table(full);
    next_point(reduced, q);
  }
  return OpTable(q, arity - 1, std::move(entries));
}

}  // namespace polyclone
