#include "closure.hpp"

#include <algorithm>
#include <chrono>
#include <queue>
#include <unordered_map>

#include "parallel.hpp"

namespace polyclone::detail {

namespace {

struct EntriesHash {
  std::size_t operator()(const std::vector<Element>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Element e : v) {
      h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct Candidate {
  std::vector<Element> entries;
  Term witness;
  int size;
};

// True when a should pop after b: order by witness size, then canonical
// term order, then entries. The order is total, so the pop sequence never
// depends on push order.
struct PopsLater {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.size != b.size) return a.size > b.size;
    if (int c = Term::compare(a.witness, b.witness); c != 0) return c > 0;
    return a.entries > b.entries;
  }
};

class Deadline {
 public:
  explicit Deadline(double seconds) : active_(seconds > 0) {
    if (active_) {
      at_ = std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(seconds));
    }
  }
  bool passed() const {
    return active_ && std::chrono::steady_clock::now() >= at_;
  }

 private:
  bool active_;
  std::chrono::steady_clock::time_point at_;
};

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

WitnessClosureResult witness_closure(int q, int arity,
                                     const std::vector<std::pair<std::string, OpTable>>& ops,
                                     bool with_constants, const EnumerationCaps& caps,
                                     int workers) {
  caps.validate();
  if (arity < 1) throw Error("closure arity must be at least 1, got " + std::to_string(arity));
  for (const auto& [name, table] : ops) {
    if (table.q() != q) {
      throw Error("operation '" + name + "' is over carrier " + std::to_string(table.q()) +
                  ", closure carrier is " + std::to_string(q));
    }
  }
  const std::uint64_t points = point_count(q, arity);
  Deadline deadline(caps.time_budget_seconds);

  std::priority_queue<Candidate, std::vector<Candidate>, PopsLater> frontier;
  for (int i = 1; i <= arity; ++i) {
    frontier.push(Candidate{OpTable::projection(q, arity, i).entries(), Term::var(i), 1});
  }
  if (with_constants) {
    for (Element a = 0; a < q; ++a) {
      frontier.push(Candidate{OpTable::constant(q, arity, a).entries(), Term::constant(a), 1});
    }
  }
  for (const auto& [name, table] : ops) {
    if (table.arity() == 0) {
      frontier.push(Candidate{OpTable::constant(q, arity, table.at(0)).entries(),
                              Term::apply(name, {}), 1});
    }
  }

  std::unordered_map<std::vector<Element>, std::size_t, EntriesHash> index;
  std::vector<std::vector<Element>> members;
  std::vector<Term> witnesses;
  std::vector<int> sizes;

  bool capped = false;
  while (!frontier.empty()) {
    if (members.size() >= caps.max_results || deadline.passed()) {
      capped = true;
      break;
    }
    Candidate cand = frontier.top();
    frontier.pop();
    if (index.contains(cand.entries)) continue;

    const std::size_t settled = members.size();
    index.emplace(cand.entries, settled);
    members.push_back(std::move(cand.entries));
    witnesses.push_back(std::move(cand.witness));
    sizes.push_back(cand.size);

    // Combine the new member with everything settled so far; each argument
    // tuple is visited exactly once, at the settle step of its largest index.
    for (const auto& [name, table] : ops) {
      const int m = table.arity();
      if (m == 0) continue;
      const std::uint64_t tuple_count = pow_u64(settled + 1, m);
      const std::uint64_t without_new = pow_u64(settled, m);
      const std::uint64_t productive = tuple_count - without_new;

      auto expand_rank = [&](std::uint64_t rank, std::vector<Candidate>& out) {
        std::vector<std::size_t> tuple(static_cast<std::size_t>(m));
        std::uint64_t r = rank;
        bool has_new = false;
        for (int j = m - 1; j >= 0; --j) {
          tuple[static_cast<std::size_t>(j)] = static_cast<std::size_t>(r % (settled + 1));
          r /= (settled + 1);
          has_new = has_new || tuple[static_cast<std::size_t>(j)] == settled;
        }
        if (!has_new) return;
        std::vector<Element> entries(static_cast<std::size_t>(points));
        for (std::uint64_t p = 0; p < points; ++p) {
          std::uint64_t idx = 0;
          for (int j = 0; j < m; ++j) {
            idx = idx * static_cast<std::uint64_t>(q) +
                  static_cast<std::uint64_t>(members[tuple[static_cast<std::size_t>(j)]][static_cast<std::size_t>(p)]);
          }
          entries[static_cast<std::size_t>(p)] = table.at(idx);
        }
        if (index.contains(entries)) return;
        std::vector<Term> args;
        args.reserve(static_cast<std::size_t>(m));
        int size = 1;
        for (int j = 0; j < m; ++j) {
          args.push_back(witnesses[tuple[static_cast<std::size_t>(j)]]);
          size += sizes[tuple[static_cast<std::size_t>(j)]];
        }
        out.push_back(Candidate{std::move(entries), Term::apply(name, std::move(args)), size});
      };

      if (workers > 1 && productive >= 4096) {
        const auto ranges = chunk_ranges(static_cast<std::size_t>(tuple_count),
                                         static_cast<std::size_t>(workers));
        std::vector<std::vector<Candidate>> found(ranges.size());
        for_blocks(ranges.size(), workers, [&](std::size_t b) {
          for (std::uint64_t rank = ranges[b].first; rank < ranges[b].second; ++rank) {
            expand_rank(rank, found[b]);
          }
        });
        for (auto& block : found) {
          for (auto& candidate : block) frontier.push(std::move(candidate));
        }
      } else {
        std::vector<Candidate> found;
        for (std::uint64_t rank = 0; rank < tuple_count; ++rank) {
          expand_rank(rank, found);
        }
        for (auto& candidate : found) frontier.push(std::move(candidate));
      }
    }
  }

  WitnessClosureResult result;
  result.members = std::move(members);
  result.witnesses = std::move(witnesses);
  result.complete = !capped;
  return result;
}

SetClosureResult set_closure_count(int q, int arity, const std::vector<OpTable>& ops,
                                   bool with_constants, const EnumerationCaps& caps,
                                   std::uint64_t early_exit_target) {
  caps.validate();
  if (arity < 1) throw Error("closure arity must be at least 1, got " + std::to_string(arity));
  const std::uint64_t points = point_count(q, arity);
  Deadline deadline(caps.time_budget_seconds);

  std::unordered_map<std::vector<Element>, std::size_t, EntriesHash> index;
  std::vector<std::vector<Element>> members;
  auto add = [&](std::vector<Element> entries) {
    if (index.contains(entries)) return;
    index.emplace(entries, members.size());
    members.push_back(std::move(entries));
  };

  for (int i = 1; i <= arity; ++i) add(OpTable::projection(q, arity, i).entries());
  if (with_constants) {
    for (Element a = 0; a < q; ++a) add(OpTable::constant(q, arity, a).entries());
  }
  for (const OpTable& table : ops) {
    if (table.arity() == 0) add(std::vector<Element>(static_cast<std::size_t>(points), table.at(0)));
  }

  auto hit_target = [&]() {
    return early_exit_target > 0 && members.size() >= early_exit_target;
  };

  SetClosureResult result;
  if (hit_target()) {
    result.count = members.size();
    result.complete = true;
    result.reached_target = true;
    return result;
  }

  std::vector<Element> entries(static_cast<std::size_t>(points));
  for (std::size_t t = 0; t < members.size(); ++t) {
    if (members.size() > caps.max_results || deadline.passed()) {
      result.count = members.size();
      result.complete = false;
      return result;
    }
    for (const OpTable& table : ops) {
      const int m = table.arity();
      if (m == 0) continue;
      std::vector<std::size_t> tuple(static_cast<std::size_t>(m), 0);
      const std::uint64_t tuple_count = pow_u64(t + 1, m);
      for (std::uint64_t rank = 0; rank < tuple_count; ++rank) {
        std::uint64_t r = rank;
        bool has_new = false;
        for (int j = m - 1; j >= 0; --j) {
          tuple[static_cast<std::size_t>(j)] = static_cast<std::size_t>(r % (t + 1));
          r /= (t + 1);
          has_new = has_new || tuple[static_cast<std::size_t>(j)] == t;
        }
        if (!has_new) continue;
        for (std::uint64_t p = 0; p < points; ++p) {
          std::uint64_t idx = 0;
          for (int j = 0; j < m; ++j) {
            idx = idx * static_cast<std::uint64_t>(q) +
                  static_cast<std::uint64_t>(members[tuple[static_cast<std::size_t>(j)]][static_cast<std::size_t>(p)]);
          }
          entries[static_cast<std::size_t>(p)] = table.at(idx);
        }
        add(entries);
        if (hit_target()) {
          result.count = members.size();
          result.complete = true;
          result.reached_target = true;
          return result;
        }
      }
    }
  }

  result.count = members.size();
  result.complete = true;
  result.reached_target = hit_target();
  return result;
}

}  // namespace polyclone::detail
