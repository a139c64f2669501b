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

#include "nonsubmax/element.hpp"

#include <bit>

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

std::string to_string(const Element& e) {
  return "(" + std::to_string(e.block) + "," + std::to_string(e.local) + ")";
}

GroundSet::GroundSet(std::vector<int> block_sizes) : sizes_(std::move(block_sizes)) {
  offsets_.reserve(sizes_.size());
  for (int s : sizes_) {
    if (s < 0) throw InvalidInputError("block sizes must be nonnegative");
    offsets_.push_back(total_);
    total_ += s;
  }
}

int GroundSet::block_size(int block) const {
  if (block < 0 || block >= block_count()) throw InvalidInputError("block index out of range");
  return sizes_[block];
}

bool GroundSet::contains(Element e) const {
  return e.block >= 0 && e.block < block_count() && e.local >= 0 && e.local < sizes_[e.block];
}

int GroundSet::flat_id(Element e) const {
  if (!contains(e)) throw InvalidInputError("element " + to_string(e) + " outside the ground set");
  return offsets_[e.block] + e.local;
}

Element GroundSet::element_at(int flat_id) const {
  if (flat_id < 0 || flat_id >= total_) throw InvalidInputError("flat element id out of range");
  int block = static_cast<int>(sizes_.size()) - 1;
  while (offsets_[block] > flat_id) --block;
  return Element{block, flat_id - offsets_[block]};
}

ElementSet::ElementSet(int universe) : universe_(universe) {
  if (universe < 0) throw InvalidInputError("universe size must be nonnegative");
  words_.assign((universe + 63) / 64, 0);
}

ElementSet ElementSet::from_ids(int universe, const std::vector<int>& ids) {
  ElementSet s(universe);
  for (int id : ids) s.insert(id);
  return s;
}

void ElementSet::check_id(int flat_id) const {
  if (flat_id < 0 || flat_id >= universe_)
    throw InvalidInputError("element id " + std::to_string(flat_id) +
                            " outside the ground set of size " + std::to_string(universe_));
}

int ElementSet::size() const {
  int n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool ElementSet::empty() const {
  for (std::uint64_t w : words_)
    if (w != 0) return false;
  return true;
}

bool ElementSet::contains(int flat_id) const {
  if (flat_id < 0 || flat_id >= universe_) return false;
  return (words_[flat_id >> 6] >> (flat_id & 63)) & 1u;
}

void ElementSet::insert(int flat_id) {
  check_id(flat_id);
  words_[flat_id >> 6] |= std::uint64_t{1} << (flat_id & 63);
}

void ElementSet::erase(int flat_id) {
  check_id(flat_id);
  words_[flat_id >> 6] &= ~(std::uint64_t{1} << (flat_id & 63));
}

ElementSet ElementSet::with(int flat_id) const {
  ElementSet s = *this;
  s.insert(flat_id);
  return s;
}

ElementSet ElementSet::without(int flat_id) const {
  ElementSet s = *this;
  s.erase(flat_id);
  return s;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  if (universe_ != other.universe_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::vector<int> ElementSet::ids() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      int b = std::countr_zero(bits);
      out.push_back(static_cast<int>(w * 64) + b);
      bits &= bits - 1;
    }
  }
  return out;
}

namespace {

void require_same_universe(const ElementSet& a, const ElementSet& b) {
  if (a.universe() != b.universe())
    throw InvalidInputError("set operation across different ground sets");
}

}  // namespace

ElementSet& ElementSet::operator|=(const ElementSet& other) {
  require_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& other) {
  require_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& other) {
  require_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

ElementSet set_union(ElementSet a, const ElementSet& b) { return a |= b; }

ElementSet set_intersection(ElementSet a, const ElementSet& b) { return a &= b; }

ElementSet set_difference(ElementSet a, const ElementSet& b) { return a -= b; }

std::size_t ElementSetHash::operator()(const ElementSet& s) const {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(s.universe());
  for (std::uint64_t w : s.words()) {
    h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace nonsubmax
