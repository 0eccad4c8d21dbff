#include "polyclone/pol.hpp"

#include <algorithm>
#include <chrono>

#include "parallel.hpp"

namespace polyclone {

CompatReport is_compatible(const OpTable& table, const Relation& rel) {
  if (table.q() != rel.q()) {
    throw Error("operation over carrier " + std::to_string(table.q()) +
                " checked against relation over carrier " + std::to_string(rel.q()));
  }
  const int n = table.arity();
  const int h = rel.arity();
  const auto& tuples = rel.tuples();

  // Odometer over n choices of relation tuples, first column most
  // significant, so the first violation is the lexicographically least one.
  std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
  std::vector<Element> row(static_cast<std::size_t>(n));
  std::vector<Element> image(static_cast<std::size_t>(h));
  for (;;) {
    for (int r = 0; r < h; ++r) {
      for (int k = 0; k < n; ++k) {
        row[static_cast<std::size_t>(k)] = tuples[choice[static_cast<std::size_t>(k)]][static_cast<std::size_t>(r)];
      }
      image[static_cast<std::size_t>(r)] = table(row);
    }
    if (!rel.contains(image)) {
      CompatReport report;
      report.compatible = false;
      report.counterexample_columns.reserve(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        report.counterexample_columns.push_back(tuples[choice[static_cast<std::size_t>(k)]]);
      }
      report.violating_image = image;
      return report;
    }
    int k = n - 1;
    for (; k >= 0; --k) {
      if (++choice[static_cast<std::size_t>(k)] < tuples.size()) break;
      choice[static_cast<std::size_t>(k)] = 0;
    }
    if (k < 0) break;
  }
  return CompatReport{};
}

namespace {

struct Instance {
  std::vector<std::uint32_t> rows;  // h point indices; max(rows) groups the instance
};

// All h-row argument matrices whose columns are relation tuples, grouped by
// the largest referenced table index. An instance becomes checkable as soon
// as that entry is assigned.
std::vector<std::vector<Instance>> build_instances(int q, const Relation& rel, int arity) {
  const std::uint64_t points = point_count(q, arity);
  const int h = rel.arity();
  std::uint64_t combos = 1;
  for (int r = 0; r < h; ++r) {
    combos *= points;
    if (combos > (std::uint64_t{1} << 27)) {
      throw Error("constraint table for arity " + std::to_string(arity) + " over carrier " +
                  std::to_string(q) + " against an arity-" + std::to_string(h) +
                  " relation is too large");
    }
  }

  std::vector<std::vector<Element>> decoded;
  decoded.reserve(static_cast<std::size_t>(points));
  {
    std::vector<Element> point(static_cast<std::size_t>(arity), 0);
    for (std::uint64_t i = 0; i < points; ++i) {
      decoded.push_back(point);
      next_point(point, q);
    }
  }

  std::vector<std::vector<Instance>> by_max(static_cast<std::size_t>(points));
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(h), 0);
  std::vector<Element> column(static_cast<std::size_t>(h));
  for (;;) {
    bool valid = true;
    for (int k = 0; k < arity && valid; ++k) {
      for (int r = 0; r < h; ++r) {
        column[static_cast<std::size_t>(r)] = decoded[rows[static_cast<std::size_t>(r)]][static_cast<std::size_t>(k)];
      }
      valid = rel.contains(column);
    }
    if (valid) {
      const std::uint32_t top = *std::max_element(rows.begin(), rows.end());
      by_max[top].push_back(Instance{rows});
    }
    int r = h - 1;
    for (; r >= 0; --r) {
      if (++rows[static_cast<std::size_t>(r)] < points) break;
      rows[static_cast<std::size_t>(r)] = 0;
    }
    if (r < 0) break;
  }
  return by_max;
}

struct BlockOutcome {
  std::vector<OpTable> tables;
  std::uint64_t found = 0;
  bool hit_max = false;
  bool hit_time = false;
};

class BlockSearch {
 public:
  BlockSearch(int q, const Relation& rel, int arity,
              const std::vector<std::vector<Instance>>& by_max, const EnumerationCaps& caps,
              bool keep_tables)
      : q_(q),
        rel_(rel),
        arity_(arity),
        by_max_(by_max),
        caps_(caps),
        keep_tables_(keep_tables),
        total_(point_count(q, arity)),
        entries_(static_cast<std::size_t>(total_), 0) {
    q_powers_.resize(static_cast<std::size_t>(rel.arity()));
    std::uint64_t p = 1;
    for (int r = rel.arity() - 1; r >= 0; --r) {
      q_powers_[static_cast<std::size_t>(r)] = p;
      p *= static_cast<std::uint64_t>(q);
    }
    deadline_active_ = caps.time_budget_seconds > 0;
    if (deadline_active_) {
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(caps.time_budget_seconds));
    }
  }

  BlockOutcome run(Element first_entry) {
    outcome_ = BlockOutcome{};
    entries_[0] = first_entry;
    if (total_ == 1) {
      if (consistent_at(0)) record();
    } else if (consistent_at(0)) {
      descend(1);
    }
    return std::move(outcome_);
  }

 private:
  bool consistent_at(std::uint64_t t) {
    for (const Instance& inst : by_max_[static_cast<std::size_t>(t)]) {
      std::uint64_t index = 0;
      for (std::size_t r = 0; r < inst.rows.size(); ++r) {
        index += static_cast<std::uint64_t>(entries_[inst.rows[r]]) * q_powers_[r];
      }
      if (!rel_.contains_index(index)) return false;
    }
    return true;
  }

  void record() {
    ++outcome_.found;
    if (keep_tables_) {
      outcome_.tables.emplace_back(q_, arity_, entries_);
    }
    if (outcome_.found > caps_.max_results) outcome_.hit_max = true;
  }

  bool out_of_time() {
    if (!deadline_active_) return false;
    if (++tick_ % 1024 != 0) return false;
    return std::chrono::steady_clock::now() >= deadline_;
  }

  void descend(std::uint64_t t) {
    if (outcome_.hit_max || outcome_.hit_time) return;
    if (out_of_time()) {
      outcome_.hit_time = true;
      return;
    }
    for (Element v = 0; v < q_; ++v) {
      entries_[static_cast<std::size_t>(t)] = v;
      if (!consistent_at(t)) continue;
      if (t + 1 == total_) {
        record();
        if (outcome_.hit_max) return;
      } else {
        descend(t + 1);
        if (outcome_.hit_max || outcome_.hit_time) return;
      }
    }
  }

  int q_;
  const Relation& rel_;
  int arity_;
  const std::vector<std::vector<Instance>>& by_max_;
  EnumerationCaps caps_;
  bool keep_tables_;
  std::uint64_t total_;
  std::vector<Element> entries_;
  std::vector<std::uint64_t> q_powers_;
  BlockOutcome outcome_;
  bool deadline_active_ = false;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t tick_ = 0;
};

}  // namespace

EnumerationResult enumerate_compatible(int q, const Relation& rel, int arity,
                                       const EnumerationCaps& caps, int workers,
                                       bool keep_tables) {
  caps.validate();
  if (rel.q() != q) {
    throw Error("relation over carrier " + std::to_string(rel.q()) +
                " in an enumeration over carrier " + std::to_string(q));
  }
  if (arity < 0) throw Error("arity must be nonnegative, got " + std::to_string(arity));

  const auto by_max = build_instances(q, rel, arity);

  // One block per value of the first table entry; blocks merge in value
  // order, which keeps the output lexicographic regardless of scheduling.
  std::vector<BlockOutcome> outcomes(static_cast<std::size_t>(q));
  detail::for_blocks(static_cast<std::size_t>(q), workers, [&](std::size_t b) {
    BlockSearch search(q, rel, arity, by_max, caps, keep_tables);
    outcomes[b] = search.run(static_cast<Element>(b));
  });

  EnumerationResult result;
  bool any_time = false;
  bool any_max = false;
  std::uint64_t total = 0;
  for (const auto& outcome : outcomes) {
    total += outcome.found;
    any_time = any_time || outcome.hit_time;
    any_max = any_max || outcome.hit_max;
  }
  if (total > caps.max_results) any_max = true;

  result.count = std::min(total, caps.max_results);
  if (keep_tables) {
    result.tables.reserve(static_cast<std::size_t>(result.count));
    for (auto& outcome : outcomes) {
      for (auto& table : outcome.tables) {
        if (result.tables.size() == result.count) break;
        result.tables.push_back(std::move(table));
      }
    }
  }
  result.status = any_max      ? EnumerationStatus::MaxResultsExceeded
                  : any_time   ? EnumerationStatus::TimeBudgetExceeded
                               : EnumerationStatus::Complete;
  return result;
}

}  // namespace polyclone
