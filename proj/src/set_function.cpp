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

#include "nonsubmax/set_function.hpp"

#include <algorithm>
#include <mutex>

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

double SetFunction::value(const ElementSet& a) const {
  if (a.universe() != universe())
    throw InvalidInputError("subset drawn from a different ground set (size " +
                            std::to_string(a.universe()) + " vs " + std::to_string(universe()) +
                            ")");
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
  }
  double v = eval(a);
  {
    std::unique_lock lock(mutex_);
    cache_.emplace(a, v);
  }
  return v;
}

double SetFunction::value_uncached(const ElementSet& a) const {
  if (a.universe() != universe())
    throw InvalidInputError("subset drawn from a different ground set");
  return eval(a);
}

double clamp_marginal(double raw) {
  if (raw >= 0) return raw;
  if (raw >= -kMonotoneTol) return 0.0;
  throw MonotonicityError("marginal return " + std::to_string(raw) +
                          " below tolerance: function is not monotone nondecreasing");
}

double SetFunction::marginal(const ElementSet& a, const ElementSet& b) const {
  return clamp_marginal(value(set_union(a, b)) - value(a));
}

ModularFunction::ModularFunction(std::vector<double> weights) : weights_(std::move(weights)) {}

double ModularFunction::eval(const ElementSet& a) const {
  double sum = 0;
  for (int id : a.ids()) sum += weights_[id];
  return sum;
}

double CardinalityFunction::eval(const ElementSet& a) const {
  return static_cast<double>(a.size());
}

CoverageFunction::CoverageFunction(std::vector<std::vector<int>> covers)
    : covers_(std::move(covers)) {
  for (const auto& u : covers_)
    for (int item : u) {
      if (item < 0) throw InvalidInputError("coverage items must be nonnegative");
      item_count_ = std::max(item_count_, item + 1);
    }
}

double CoverageFunction::eval(const ElementSet& a) const {
  std::vector<bool> seen(item_count_, false);
  int covered = 0;
  for (int id : a.ids())
    for (int item : covers_[id])
      if (!seen[item]) {
        seen[item] = true;
        ++covered;
      }
  return static_cast<double>(covered);
}

TableFunction::TableFunction(int universe, std::vector<double> values)
    : universe_(universe), values_(std::move(values)) {
  if (universe < 0 || universe > kMaxUniverse)
    throw SizeLimitError("table functions are capped at " + std::to_string(kMaxUniverse) +
                         " elements");
  if (values_.size() != (std::size_t{1} << universe))
    throw InvalidInputError("table function needs exactly 2^universe values");
}

double TableFunction::eval(const ElementSet& a) const {
  std::uint64_t mask = a.words().empty() ? 0 : a.words()[0];
  return values_[mask];
}

RestrictedFunction::RestrictedFunction(std::shared_ptr<const SetFunction> base,
                                       std::vector<int> scope_ids)
    : base_(std::move(base)), scope_ids_(std::move(scope_ids)) {
  for (int id : scope_ids_)
    if (id < 0 || id >= base_->universe())
      throw InvalidInputError("restriction id outside the base ground set");
}

double RestrictedFunction::eval(const ElementSet& a) const {
  ElementSet mapped(base_->universe());
  for (int local : a.ids()) mapped.insert(scope_ids_[local]);
  return base_->value(mapped);
}

EmbeddedFunction::EmbeddedFunction(int universe, std::vector<int> scope_ids,
                                   std::shared_ptr<const SetFunction> local)
    : universe_(universe), local_of_(universe, -1), local_(std::move(local)) {
  if (static_cast<int>(scope_ids.size()) != local_->universe())
    throw InvalidInputError("scope size must match the embedded function's universe");
  for (int i = 0; i < static_cast<int>(scope_ids.size()); ++i) {
    int id = scope_ids[i];
    if (id < 0 || id >= universe) throw InvalidInputError("scope id out of range");
    if (local_of_[id] >= 0) throw InvalidInputError("scope lists an element twice");
    local_of_[id] = i;
  }
}

double EmbeddedFunction::eval(const ElementSet& a) const {
  ElementSet local(local_->universe());
  for (int id : a.ids()) {
    if (local_of_[id] < 0)
      throw InvalidInputError("embedded function evaluated outside its scope");
    local.insert(local_of_[id]);
  }
  return local_->value(local);
}

RemappedFunction::RemappedFunction(std::shared_ptr<const SetFunction> base,
                                   std::vector<int> logical_of, int universe)
    : base_(std::move(base)), logical_of_(std::move(logical_of)), universe_(universe) {
  if (static_cast<int>(logical_of_.size()) != universe_)
    throw InvalidInputError("identity map must cover every element");
  for (int logical : logical_of_)
    if (logical < 0 || logical >= base_->universe())
      throw InvalidInputError("identity map target outside the logical ground set");
}

double RemappedFunction::eval(const ElementSet& a) const {
  ElementSet logical(base_->universe());
  for (int id : a.ids()) logical.insert(logical_of_[id]);
  return base_->value(logical);
}

}  // namespace nonsubmax
