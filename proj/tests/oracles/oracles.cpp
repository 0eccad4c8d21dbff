#include "oracles.hpp"

#include <algorithm>
#include <set>

namespace oracles {

namespace {

// Recursive choice of one relation tuple per operation argument.
bool compatible_from(const OpTable& table, const Relation& rel,
                     std::vector<const std::vector<Element>*>& chosen, int slot) {
  const int n = table.arity();
  if (slot == n) {
    const int h = rel.arity();
    std::vector<Element> image(static_cast<std::size_t>(h));
    std::vector<Element> row(static_cast<std::size_t>(n));
    for (int r = 0; r < h; ++r) {
      for (int k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = (*chosen[static_cast<std::size_t>(k)])[static_cast<std::size_t>(r)];
      image[static_cast<std::size_t>(r)] = table(row);
    }
    return rel.contains(image);
  }
  for (const auto& tuple : rel.tuples()) {
    chosen[static_cast<std::size_t>(slot)] = &tuple;
    if (!compatible_from(table, rel, chosen, slot + 1)) return false;
  }
  return true;
}

}  // namespace

bool compatible(const OpTable& table, const Relation& rel) {
  std::vector<const std::vector<Element>*> chosen(static_cast<std::size_t>(table.arity()));
  return compatible_from(table, rel, chosen, 0);
}

std::vector<OpTable> enumerate_compatible(int q, const Relation& rel, int arity) {
  const std::uint64_t points = polyclone::point_count(q, arity);
  std::vector<OpTable> result;
  std::vector<Element> entries(static_cast<std::size_t>(points), 0);
  for (;;) {
    OpTable table(q, arity, entries);
    if (compatible(table, rel)) result.push_back(std::move(table));
    int k = static_cast<int>(points) - 1;
    for (; k >= 0; --k) {
      if (++entries[static_cast<std::size_t>(k)] < q) break;
      entries[static_cast<std::size_t>(k)] = 0;
    }
    if (k < 0) break;
  }
  return result;
}

namespace {

std::vector<std::vector<Element>> closure_rounds(const std::vector<OpTable>& ops, int q, int arity,
                                                 bool with_constants) {
  const std::uint64_t points = polyclone::point_count(q, arity);
  std::set<std::vector<Element>> members;

  for (int i = 1; i <= arity; ++i) {
    std::vector<Element> proj(static_cast<std::size_t>(points));
    for (std::uint64_t p = 0; p < points; ++p) {
      proj[static_cast<std::size_t>(p)] = polyclone::tuple_decode(p, q, arity)[static_cast<std::size_t>(i - 1)];
    }
    members.insert(std::move(proj));
  }
  if (with_constants) {
    for (Element a = 0; a < q; ++a) {
      members.insert(std::vector<Element>(static_cast<std::size_t>(points), a));
    }
  }
  for (const OpTable& op : ops) {
    if (op.arity() == 0) {
      members.insert(std::vector<Element>(static_cast<std::size_t>(points), op.at(0)));
    }
  }

  for (;;) {
    std::set<std::vector<Element>> fresh;
    const std::vector<std::vector<Element>> snapshot(members.begin(), members.end());
    for (const OpTable& op : ops) {
      const int m = op.arity();
      if (m == 0) continue;
      std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
      for (;;) {
        std::vector<Element> result(static_cast<std::size_t>(points));
        std::vector<Element> args(static_cast<std::size_t>(m));
        for (std::uint64_t p = 0; p < points; ++p) {
          for (int j = 0; j < m; ++j) {
            args[static_cast<std::size_t>(j)] = snapshot[pick[static_cast<std::size_t>(j)]][static_cast<std::size_t>(p)];
          }
          result[static_cast<std::size_t>(p)] = op(args);
        }
        if (!members.contains(result)) fresh.insert(std::move(result));
        int j = m - 1;
        for (; j >= 0; --j) {
          if (++pick[static_cast<std::size_t>(j)] < snapshot.size()) break;
          pick[static_cast<std::size_t>(j)] = 0;
        }
        if (j < 0) break;
      }
    }
    if (fresh.empty()) break;
    members.insert(fresh.begin(), fresh.end());
  }
  return {members.begin(), members.end()};
}

}  // namespace

std::vector<std::vector<Element>> polynomial_closure(const Algebra& algebra, int arity) {
  std::vector<OpTable> ops;
  for (const auto& [name, table] : algebra.ops()) ops.push_back(table);
  return closure_rounds(ops, algebra.q(), arity, /*with_constants=*/true);
}

std::vector<std::vector<Element>> clone_closure(const std::vector<OpTable>& ops, int q, int arity) {
  return closure_rounds(ops, q, arity, /*with_constants=*/false);
}

std::vector<Element> indicator_entries(int q, const std::vector<Element>& point, Element value) {
  const int n = static_cast<int>(point.size());
  const std::uint64_t points = polyclone::point_count(q, n);
  std::vector<Element> entries(static_cast<std::size_t>(points), 0);
  bool zero = value == 0;
  for (Element a : point) zero = zero || a == 0;
  if (!zero) {
    entries[static_cast<std::size_t>(polyclone::tuple_index(point, q))] = value;
  }
  return entries;
}

std::vector<Element> literal_decomposition_entries(int q, const OpTable& f) {
  const int n = f.arity();
  const std::uint64_t points = polyclone::point_count(q, n);
  auto strict_join = [](Element x, Element y) { return (x != 0 && y != 0) ? std::max(x, y) : 0; };

  std::vector<std::vector<Element>> summands;
  std::vector<Element> point(static_cast<std::size_t>(n), 1);
  if (q > 1) {
    for (;;) {
      const Element v = f(point);
      if (v != 0) summands.push_back(indicator_entries(q, point, v));
      int k = n - 1;
      for (; k >= 0; --k) {
        if (point[static_cast<std::size_t>(k)] + 1 < q) {
          ++point[static_cast<std::size_t>(k)];
          break;
        }
        point[static_cast<std::size_t>(k)] = 1;
      }
      if (k < 0) break;
    }
  }

  std::vector<Element> folded(static_cast<std::size_t>(points), 0);
  if (summands.empty()) return folded;
  folded = summands.back();
  for (std::size_t i = summands.size() - 1; i-- > 0;) {
    for (std::uint64_t p = 0; p < points; ++p) {
      folded[static_cast<std::size_t>(p)] = strict_join(summands[i][static_cast<std::size_t>(p)], folded[static_cast<std::size_t>(p)]);
    }
  }
  return folded;
}

}  // namespace oracles
