#include "polyclone/relations.hpp"

#include <algorithm>
#include <numeric>

namespace polyclone {

Relation::Relation(int q, int arity, std::vector<std::vector<Element>> tuples)
    : q_(q), arity_(arity), tuples_(std::move(tuples)) {
  if (q < 1) throw Error("carrier size must be at least 1, got " + std::to_string(q));
  if (arity < 1) throw Error("relation arity must be at least 1, got " + std::to_string(arity));
  const std::uint64_t n = point_count(q, arity);
  membership_.assign(static_cast<std::size_t>(n), false);
  for (const auto& tuple : tuples_) {
    if (static_cast<int>(tuple.size()) != arity) {
      throw Error("relation tuple has " + std::to_string(tuple.size()) + " coordinates, expected " +
                  std::to_string(arity));
    }
    const std::uint64_t index = tuple_index(tuple, q);
    if (membership_[static_cast<std::size_t>(index)]) {
      throw Error("duplicate relation tuple at index " + std::to_string(index));
    }
    membership_[static_cast<std::size_t>(index)] = true;
  }
  std::sort(tuples_.begin(), tuples_.end());
}

bool Relation::contains(std::span<const Element> tuple) const {
  if (static_cast<int>(tuple.size()) != arity_) {
    throw Error("membership query with " + std::to_string(tuple.size()) +
                " coordinates on a relation of arity " + std::to_string(arity_));
  }
  return membership_[static_cast<std::size_t>(tuple_index(tuple, q_))];
}

Relation Relation::full(int q, int arity) {
  const std::uint64_t n = point_count(q, arity);
  std::vector<std::vector<Element>> tuples;
  tuples.reserve(static_cast<std::size_t>(n));
  std::vector<Element> point(static_cast<std::size_t>(arity), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    tuples.push_back(point);
    next_point(point, q);
  }
  return Relation(q, arity, std::move(tuples));
}

Relation Relation::equality(int q, int arity) {
  std::vector<std::vector<Element>> tuples;
  tuples.reserve(static_cast<std::size_t>(q));
  for (Element a = 0; a < q; ++a) {
    tuples.emplace_back(static_cast<std::size_t>(arity), a);
  }
  return Relation(q, arity, std::move(tuples));
}

Relation build_central_minimal(int q, int arity, const std::vector<Element>& center) {
  if (q < 1) throw Error("carrier size must be at least 1, got " + std::to_string(q));
  if (arity < 1) throw Error("relation arity must be at least 1, got " + std::to_string(arity));
  std::vector<bool> in_center(static_cast<std::size_t>(q), false);
  int distinct = 0;
  for (Element a : center) {
    if (a < 0 || a >= q) {
      throw Error("center element " + std::to_string(a) + " out of range for carrier of size " +
                  std::to_string(q));
    }
    if (!in_center[static_cast<std::size_t>(a)]) {
      in_center[static_cast<std::size_t>(a)] = true;
      ++distinct;
    }
  }
  if (distinct == 0) throw Error("center must be a nonempty proper subset of the carrier: it is empty");
  if (distinct == q) throw Error("center must be a nonempty proper subset of the carrier: it is everything");

  const std::uint64_t n = point_count(q, arity);
  std::vector<std::vector<Element>> tuples;
  std::vector<Element> point(static_cast<std::size_t>(arity), 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    bool keep = false;
    for (Element a : point) {
      if (in_center[static_cast<std::size_t>(a)]) {
        keep = true;
        break;
      }
    }
    if (!keep) {
      for (std::size_t s = 0; s < point.size() && !keep; ++s) {
        for (std::size_t t = s + 1; t < point.size(); ++t) {
          if (point[s] == point[t]) {
            keep = true;
            break;
          }
        }
      }
    }
    if (keep) tuples.push_back(point);
    next_point(point, q);
  }
  return Relation(q, arity, std::move(tuples));
}

namespace {

bool check_symmetric(const Relation& rel) {
  const int h = rel.arity();
  std::vector<int> perm(static_cast<std::size_t>(h));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Element> image(static_cast<std::size_t>(h));
  do {
    for (const auto& tuple : rel.tuples()) {
      for (int k = 0; k < h; ++k) {
        image[static_cast<std::size_t>(k)] = tuple[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
      }
      if (!rel.contains(image)) return false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

}  // namespace

RelationProfile classify(const Relation& rel) {
  const int q = rel.q();
  const int h = rel.arity();
  RelationProfile profile;

  profile.reflexive = true;
  for (Element a = 0; a < q; ++a) {
    const std::vector<Element> diag(static_cast<std::size_t>(h), a);
    if (!rel.contains(diag)) {
      profile.reflexive = false;
      break;
    }
  }

  profile.totally_reflexive = true;
  {
    std::vector<Element> point(static_cast<std::size_t>(h), 0);
    const std::uint64_t n = point_count(q, h);
    for (std::uint64_t i = 0; i < n && profile.totally_reflexive; ++i) {
      bool repeated = false;
      for (std::size_t s = 0; s < point.size() && !repeated; ++s) {
        for (std::size_t t = s + 1; t < point.size(); ++t) {
          if (point[s] == point[t]) {
            repeated = true;
            break;
          }
        }
      }
      if (repeated && !rel.contains(point)) profile.totally_reflexive = false;
      next_point(point, q);
    }
  }

  profile.symmetric = check_symmetric(rel);
  profile.proper = rel.size() != point_count(q, h);

  if (h == 2) {
    bool transitive = true;
    // Canonical counterexample: lexicographically least pair ((a,b),(b,c)).
    for (const auto& first : rel.tuples()) {
      for (const auto& second : rel.tuples()) {
        if (second[0] != first[1]) continue;
        const std::vector<Element> closure{first[0], second[1]};
        if (!rel.contains(closure)) {
          transitive = false;
          profile.transitivity_counterexample = {first, second};
          break;
        }
      }
      if (!transitive) break;
    }
    profile.transitive = transitive;
  }

  for (Element a = 0; a < q; ++a) {
    bool central_element = true;
    std::vector<Element> point(static_cast<std::size_t>(h), 0);
    const std::uint64_t n = point_count(q, h);
    for (std::uint64_t i = 0; i < n && central_element; ++i) {
      if (std::find(point.begin(), point.end(), a) != point.end() && !rel.contains(point)) {
        central_element = false;
      }
      next_point(point, q);
    }
    if (central_element) profile.centers.push_back(a);
  }

  profile.is_central = profile.proper && profile.totally_reflexive && profile.symmetric &&
                       !profile.centers.empty();
  return profile;
}

std::vector<std::vector<int>> set_partitions(int h) {
  if (h < 1) throw Error("partition size must be at least 1, got " + std::to_string(h));
  std::vector<std::vector<int>> result;
  std::vector<int> rgs(static_cast<std::size_t>(h), 0);
  // Lexicographic enumeration of restricted growth strings.
  auto emit = [&](auto&& self, int pos, int max_used) -> void {
    if (pos == h) {
      result.push_back(rgs);
      return;
    }
    for (int b = 0; b <= max_used + 1; ++b) {
      rgs[static_cast<std::size_t>(pos)] = b;
      self(self, pos + 1, std::max(max_used, b));
    }
  };
  rgs[0] = 0;
  emit(emit, 1, 0);
  return result;
}

std::vector<Relation> diagonal_relations(int q, int arity) {
  std::vector<Relation> result;
  for (const auto& rgs : set_partitions(arity)) {
    std::vector<std::vector<Element>> tuples;
    std::vector<Element> point(static_cast<std::size_t>(arity), 0);
    const std::uint64_t n = point_count(q, arity);
    for (std::uint64_t i = 0; i < n; ++i) {
      bool ok = true;
      for (std::size_t s = 0; s < point.size() && ok; ++s) {
        for (std::size_t t = s + 1; t < point.size(); ++t) {
          if (rgs[s] == rgs[t] && point[s] != point[t]) {
            ok = false;
            break;
          }
        }
      }
      if (ok) tuples.push_back(point);
      next_point(point, q);
    }
    result.emplace_back(q, arity, std::move(tuples));
  }
  return result;
}

}  // namespace polyclone
