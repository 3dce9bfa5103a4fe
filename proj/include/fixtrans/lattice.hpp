//  Copyright 2026 The fixtrans Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "fixtrans/error.hpp"
#include "fixtrans/item_set.hpp"

namespace fixtrans {

/// Exhaustive scans over 2^n states refuse universes larger than this.
inline constexpr std::size_t kEnumerationBound = 16;
/// Cross-module oracle suites stay at or below this size.
inline constexpr std::size_t kOracleBound = 12;

/// Ordered, duplicate-free list of item identifiers. The position of an item
/// is its bit index in every ItemSet over this universe.
class Universe {
 public:
  Universe() = default;
  explicit Universe(std::vector<std::string> items) : items_(std::move(items)) {
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (!index_.emplace(items_[i], i).second)
        throw DomainError("duplicate item identifier '" + items_[i] + "'");
    }
  }

  /// Universe with items named prefix0, prefix1, ...
  static Universe numbered(std::size_t n, const std::string& prefix = "i") {
    std::vector<std::string> items;
    items.reserve(n);
    for (std::size_t i = 0; i < n; ++i) items.push_back(prefix + std::to_string(i));
    return Universe(std::move(items));
  }

  std::size_t size() const noexcept { return items_.size(); }
  const std::vector<std::string>& items() const noexcept { return items_; }
  const std::string& name(std::size_t i) const { return items_.at(i); }

  std::size_t index_of(const std::string& item) const {
    auto it = index_.find(item);
    if (it == index_.end()) throw DomainError("item '" + item + "' is not in the universe");
    return it->second;
  }
  bool contains(const std::string& item) const { return index_.count(item) != 0; }

  ItemSet empty_set() const { return ItemSet(size()); }
  ItemSet full_set() const { return ItemSet::full(size()); }

  ItemSet set_of(const std::vector<std::string>& names) const {
    ItemSet s(size());
    for (const auto& n : names) s.insert(index_of(n));
    return s;
  }

  std::vector<std::string> names_of(const ItemSet& s) const {
    check(s);
    std::vector<std::string> out;
    for (auto i : s.indices()) out.push_back(items_[i]);
    return out;
  }

  void check(const ItemSet& s) const {
    if (s.width() != size())
      throw DomainError("state of width " + std::to_string(s.width()) +
                        " does not belong to a universe of size " + std::to_string(size()));
  }

  friend bool operator==(const Universe& a, const Universe& b) { return a.items_ == b.items_; }

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

using LatticeElement = ItemSet;

/// Horn rule: when `premise` is contained in the current state, `conclusions`
/// is disclosed. An empty premise fires unconditionally.
struct Rule {
  ItemSet premise;
  ItemSet conclusions;
};

/// A transparency operator T on the powerset of a universe.
///
/// Three representations are supported:
///  - rule lists, T(x) = (x if inflationary) ∪ ⋃{c | (p, c) rule, p ⊆ x},
///    which are monotone by construction;
///  - explicit lookup tables with a fallback image for unlisted states,
///    whose monotonicity has to be checked;
///  - arbitrary callables, mostly for tests and derived operators.
class Operator {
 public:
  struct RuleList {
    std::vector<Rule> rules;
    bool inflationary = true;
  };
  struct Table {
    std::map<ItemSet, ItemSet> entries;
    ItemSet fallback;
  };
  using Function = std::function<ItemSet(const ItemSet&)>;

  static Operator from_rules(Universe u, std::vector<Rule> rules, bool inflationary = true) {
    for (const auto& r : rules) {
      u.check(r.premise);
      u.check(r.conclusions);
    }
    return Operator(std::move(u), RuleList{std::move(rules), inflationary});
  }

  /// Rule list given by item names; unknown names raise DomainError.
  static Operator from_named_rules(
      Universe u,
      const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& rules,
      bool inflationary = true) {
    std::vector<Rule> rs;
    rs.reserve(rules.size());
    for (const auto& [p, c] : rules) rs.push_back({u.set_of(p), u.set_of(c)});
    return from_rules(std::move(u), std::move(rs), inflationary);
  }

  static Operator from_table(Universe u, std::map<ItemSet, ItemSet> entries,
                             std::optional<ItemSet> fallback = std::nullopt) {
    for (const auto& [k, v] : entries) {
      u.check(k);
      u.check(v);
    }
    ItemSet fb = fallback ? *fallback : u.empty_set();
    u.check(fb);
    return Operator(std::move(u), Table{std::move(entries), std::move(fb)});
  }

  /// T(x) = c for every x.
  static Operator constant(Universe u, ItemSet c) { return from_table(std::move(u), {}, std::move(c)); }

  static Operator identity(Universe u) { return from_rules(std::move(u), {}, true); }

  static Operator from_function(Universe u, Function fn) {
    return Operator(std::move(u), std::move(fn));
  }

  const Universe& universe() const noexcept { return universe_; }

  bool is_rule_based() const noexcept { return std::holds_alternative<RuleList>(repr_); }
  bool is_table() const noexcept { return std::holds_alternative<Table>(repr_); }
  bool inflationary_flag() const noexcept {
    auto* r = std::get_if<RuleList>(&repr_);
    return r && r->inflationary;
  }
  /// Rule lists are monotone whatever the inflationary flag.
  bool monotone_by_construction() const noexcept { return is_rule_based(); }

  const RuleList* rules() const noexcept { return std::get_if<RuleList>(&repr_); }
  const Table* table() const noexcept { return std::get_if<Table>(&repr_); }

  ItemSet operator()(const ItemSet& x) const {
    universe_.check(x);
    if (auto* r = std::get_if<RuleList>(&repr_)) {
      ItemSet out = r->inflationary ? x : universe_.empty_set();
      for (const auto& rule : r->rules)
        if (rule.premise.is_subset_of(x)) out |= rule.conclusions;
      return out;
    }
    if (auto* t = std::get_if<Table>(&repr_)) {
      auto it = t->entries.find(x);
      return it == t->entries.end() ? t->fallback : it->second;
    }
    ItemSet out = std::get<Function>(repr_)(x);
    universe_.check(out);
    return out;
  }

 private:
  Operator(Universe u, std::variant<RuleList, Table, Function> repr)
      : universe_(std::move(u)), repr_(std::move(repr)) {}

  Universe universe_;
  std::variant<RuleList, Table, Function> repr_;
};

inline ItemSet apply(const Operator& op, const ItemSet& x) { return op(x); }

inline bool is_fixed_point(const Operator& op, const ItemSet& x) { return op(x) == x; }
/// T(x) ⊆ x.
inline bool is_post_fixed(const Operator& op, const ItemSet& x) { return op(x).is_subset_of(x); }

enum class FixpointStatus { Converged, FuelExhausted };

inline const char* to_string(FixpointStatus s) {
  return s == FixpointStatus::Converged ? "converged" : "fuel_exhausted";
}

/// Outcome of a Kleene iteration. `trace` holds the distinct iterates in
/// order (the final repeated iterate is not duplicated); `steps` counts
/// operator applications.
struct FixpointResult {
  ItemSet value;
  std::vector<ItemSet> trace;
  FixpointStatus status = FixpointStatus::FuelExhausted;
  std::size_t steps = 0;

  bool converged() const noexcept { return status == FixpointStatus::Converged; }
};

namespace detail {

enum class Direction { Up, Down };

inline FixpointResult kleene_iterate(const Operator& op, std::size_t fuel, Direction dir) {
  if (fuel == 0) throw DomainError("fuel must be at least 1");
  const auto& u = op.universe();
  FixpointResult r;
  ItemSet x = dir == Direction::Up ? u.empty_set() : u.full_set();
  r.trace.push_back(x);
  for (std::size_t step = 1; step <= fuel; ++step) {
    ItemSet next = op(x);
    r.steps = step;
    if (next == x) {
      r.value = std::move(x);
      r.status = FixpointStatus::Converged;
      return r;
    }
    bool ordered = dir == Direction::Up ? x.is_subset_of(next) : next.is_subset_of(x);
    if (!ordered)
      throw MonotonicityError(std::string("iteration chain is not ") +
                              (dir == Direction::Up ? "ascending" : "descending") + " at step " +
                              std::to_string(step) + ": operator is not monotone");
    x = std::move(next);
    r.trace.push_back(x);
  }
  r.value = std::move(x);
  r.status = FixpointStatus::FuelExhausted;
  return r;
}

}  // namespace detail

/// Least fixed point by ascending iteration from the empty state.
inline FixpointResult lfp(const Operator& op, std::size_t fuel) {
  return detail::kleene_iterate(op, fuel, detail::Direction::Up);
}

/// Greatest fixed point by descending iteration from the full state.
inline FixpointResult gfp(const Operator& op, std::size_t fuel) {
  return detail::kleene_iterate(op, fuel, detail::Direction::Down);
}

struct MonotoneCheckOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::size_t exhaustive_bound = kEnumerationBound;
};

struct MonotonicityReport {
  /// Pairs (x, y) with x ⊆ y and T(x) ⊄ T(y).
  std::vector<std::pair<ItemSet, ItemSet>> violations;
  bool exhaustive = true;
  /// Set only for sampled runs.
  std::optional<std::uint64_t> seed;
  std::size_t pairs_checked = 0;

  bool ok() const noexcept { return violations.empty(); }
};

/// Precomputes T on every state of a universe of at most 64 items, indexed by mask.
inline std::vector<std::uint64_t> image_table(const Operator& op) {
  const std::size_t n = op.universe().size();
  if (n > kEnumerationBound)
    throw CapacityError("universe of " + std::to_string(n) + " items exceeds the enumeration bound of " +
                        std::to_string(kEnumerationBound));
  std::vector<std::uint64_t> images(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < images.size(); ++m) images[m] = op(ItemSet::from_mask(n, m)).to_mask();
  return images;
}

/// Searches for witnesses against monotonicity. Universes up to the
/// exhaustive bound are scanned pair by pair; larger ones are sampled with
/// the recorded seed.
inline MonotonicityReport check_monotone(const Operator& op, const MonotoneCheckOptions& opts = {}) {
  MonotonicityReport rep;
  const std::size_t n = op.universe().size();
  if (n <= std::min(opts.exhaustive_bound, kEnumerationBound)) {
    const auto images = image_table(op);
    const std::uint64_t states = images.size();
    for (std::uint64_t y = 0; y < states; ++y) {
      // every submask x of y, including y itself and 0
      for (std::uint64_t x = y;; x = (x - 1) & y) {
        ++rep.pairs_checked;
        if (images[x] & ~images[y])
          rep.violations.emplace_back(ItemSet::from_mask(n, x), ItemSet::from_mask(n, y));
        if (x == 0) break;
      }
    }
    std::sort(rep.violations.begin(), rep.violations.end());
    return rep;
  }
  rep.exhaustive = false;
  rep.seed = opts.seed;
  std::mt19937_64 rng(opts.seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t k = 0; k < opts.samples; ++k) {
    ItemSet x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      bool in_x = coin(rng);
      bool in_y = in_x || coin(rng);
      if (in_x) x.insert(i);
      if (in_y) y.insert(i);
    }
    ++rep.pairs_checked;
    if (!op(x).is_subset_of(op(y))) rep.violations.emplace_back(std::move(x), std::move(y));
  }
  return rep;
}

/// Every x with T(x) = x, by full scan. Result is sorted by mask.
inline std::vector<ItemSet> enumerate_fixpoints(const Operator& op, std::size_t bound = kEnumerationBound) {
  const std::size_t n = op.universe().size();
  if (n > std::min(bound, kEnumerationBound))
    throw CapacityError("universe of " + std::to_string(n) + " items exceeds the enumeration bound of " +
                        std::to_string(std::min(bound, kEnumerationBound)));
  std::vector<ItemSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    auto x = ItemSet::from_mask(n, m);
    if (op(x) == x) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace fixtrans
