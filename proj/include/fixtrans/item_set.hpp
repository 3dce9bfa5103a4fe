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

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fixtrans/error.hpp"

namespace fixtrans {

/// A subset of a fixed-width index range [0, width), stored as packed words.
///
/// This is the element type of every powerset lattice in the library:
/// disclosure states, μ-calculus denotations, and state sets all use it.
/// Ordering (operator<=>) is a total order on the packed words, suitable for
/// ordered containers; it is unrelated to the inclusion order.
class ItemSet {
 public:
  ItemSet() = default;
  explicit ItemSet(std::size_t width) : width_(width), words_(word_count(width), 0) {}

  static ItemSet full(std::size_t width) {
    ItemSet s(width);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static ItemSet from_mask(std::size_t width, std::uint64_t mask) {
    if (width > 64) throw CapacityError("from_mask: width exceeds 64");
    ItemSet s(width);
    if (width > 0) s.words_[0] = mask;
    s.trim();
    return s;
  }

  static ItemSet of(std::size_t width, std::initializer_list<std::size_t> indices) {
    ItemSet s(width);
    for (auto i : indices) s.insert(i);
    return s;
  }

  std::uint64_t to_mask() const {
    if (width_ > 64) throw CapacityError("to_mask: width exceeds 64");
    return words_.empty() ? 0 : words_[0];
  }

  std::size_t width() const noexcept { return width_; }

  bool contains(std::size_t i) const {
    return i < width_ && ((words_[i / 64] >> (i % 64)) & 1u);
  }
  void insert(std::size_t i) {
    check_index(i);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  void erase(std::size_t i) {
    check_index(i);
    words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }

  bool is_subset_of(const ItemSet& other) const {
    check_width(other);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }

  ItemSet& operator|=(const ItemSet& o) {
    check_width(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  ItemSet& operator&=(const ItemSet& o) {
    check_width(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  ItemSet& operator-=(const ItemSet& o) {
    check_width(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend ItemSet operator|(ItemSet a, const ItemSet& b) { return a |= b; }
  friend ItemSet operator&(ItemSet a, const ItemSet& b) { return a &= b; }
  friend ItemSet operator-(ItemSet a, const ItemSet& b) { return a -= b; }

  ItemSet complement() const {
    ItemSet c(width_);
    for (std::size_t k = 0; k < words_.size(); ++k) c.words_[k] = ~words_[k];
    c.trim();
    return c;
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for (std::size_t k = 0; k < words_.size(); ++k) {
      auto w = words_[k];
      while (w) {
        out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  friend bool operator==(const ItemSet&, const ItemSet&) = default;
  friend auto operator<=>(const ItemSet& a, const ItemSet& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.words_.rbegin(), a.words_.rend(),
                                                  b.words_.rbegin(), b.words_.rend());
  }

  std::size_t hash() const noexcept {
    std::size_t h = std::hash<std::size_t>{}(width_);
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  static std::size_t word_count(std::size_t width) { return (width + 63) / 64; }

  void trim() {
    if (width_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (width_ % 64)) - 1;
  }
  void check_index(std::size_t i) const {
    if (i >= width_) throw DomainError("item index " + std::to_string(i) + " outside width " + std::to_string(width_));
  }
  void check_width(const ItemSet& o) const {
    if (o.width_ != width_) throw DomainError("item sets over different universes");
  }

  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace fixtrans

template <>
struct std::hash<fixtrans::ItemSet> {
  std::size_t operator()(const fixtrans::ItemSet& s) const noexcept { return s.hash(); }
};
