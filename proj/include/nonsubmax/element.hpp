// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NONSUBMAX_ELEMENT_HPP_
#define NONSUBMAX_ELEMENT_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nonsubmax {

// One ground-set element, identified by its block and its position within
// that block (both 0-based). The total order is lexicographic on
// (block, local); it is the tie-break order used by all solvers.
struct Element {
  int block = 0;
  int local = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

std::string to_string(const Element& e);

// The ground set: a disjoint union of blocks S_0, ..., S_{n-1}. Elements
// are addressed either as (block, local) pairs or as flat ids that
// enumerate the elements in (block, local) order.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<int> block_sizes);

  int block_count() const { return static_cast<int>(sizes_.size()); }
  int block_size(int block) const;
  int size() const { return total_; }

  bool contains(Element e) const;
  int flat_id(Element e) const;
  Element element_at(int flat_id) const;

  const std::vector<int>& block_sizes() const { return sizes_; }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
};

// A subset of the ground set, stored as a bitset over flat element ids.
// This is the canonical subset encoding: equal sets compare equal and hash
// equally no matter how they were built, and iteration always yields
// ascending flat ids.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(int universe);

  static ElementSet from_ids(int universe, const std::vector<int>& ids);

  int universe() const { return universe_; }
  int size() const;
  bool empty() const;
  bool contains(int flat_id) const;

  void insert(int flat_id);
  void erase(int flat_id);

  ElementSet with(int flat_id) const;
  ElementSet without(int flat_id) const;

  bool is_subset_of(const ElementSet& other) const;
  std::vector<int> ids() const;

  ElementSet& operator|=(const ElementSet& other);
  ElementSet& operator&=(const ElementSet& other);
  ElementSet& operator-=(const ElementSet& other);

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  void check_id(int flat_id) const;

  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

ElementSet set_union(ElementSet a, const ElementSet& b);
ElementSet set_intersection(ElementSet a, const ElementSet& b);
ElementSet set_difference(ElementSet a, const ElementSet& b);

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const;
};

}  // namespace nonsubmax

#endif  // NONSUBMAX_ELEMENT_HPP_
