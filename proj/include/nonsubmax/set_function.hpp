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

#ifndef NONSUBMAX_SET_FUNCTION_HPP_
#define NONSUBMAX_SET_FUNCTION_HPP_

#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "nonsubmax/element.hpp"

namespace nonsubmax {

// Marginal returns in [-kMonotoneTol, 0) clamp to zero; anything lower is a
// monotonicity violation and throws.
inline constexpr double kMonotoneTol = 1e-12;

// A monotone nondecreasing map from subsets of the ground set to nonnegative
// reals. Evaluation is memoized on the canonical subset encoding; the cache
// allows concurrent readers and serializes insertion, and cached results are
// bit-identical to uncached ones.
class SetFunction {
 public:
  virtual ~SetFunction() = default;

  virtual int universe() const = 0;

  // Short kind tag used in instance files ("modular", "coverage", ...).
  virtual std::string kind() const = 0;

  double value(const ElementSet& a) const;
  double value_uncached(const ElementSet& a) const;

  // Marginal return of adding b to a: value(a | b) - value(a), clamped at
  // zero within kMonotoneTol. Throws MonotonicityError below the tolerance.
  double marginal(const ElementSet& a, const ElementSet& b) const;

 protected:
  virtual double eval(const ElementSet& a) const = 0;

 private:
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<ElementSet, double, ElementSetHash> cache_;
};

double clamp_marginal(double raw);

// f(A) = sum of per-element weights.
class ModularFunction : public SetFunction {
 public:
  explicit ModularFunction(std::vector<double> weights);

  int universe() const override { return static_cast<int>(weights_.size()); }
  std::string kind() const override { return "modular"; }
  const std::vector<double>& weights() const { return weights_; }

 protected:
  double eval(const ElementSet& a) const override;

 private:
  std::vector<double> weights_;
};

// f(A) = |A|.
class CardinalityFunction : public SetFunction {
 public:
  explicit CardinalityFunction(int universe) : universe_(universe) {}

  int universe() const override { return universe_; }
  std::string kind() const override { return "cardinality"; }

 protected:
  double eval(const ElementSet& a) const override;

 private:
  int universe_;
};

// f(A) = number of distinct items covered by the elements of A.
class CoverageFunction : public SetFunction {
 public:
  explicit CoverageFunction(std::vector<std::vector<int>> covers);

  int universe() const override { return static_cast<int>(covers_.size()); }
  std::string kind() const override { return "coverage"; }
  const std::vector<std::vector<int>>& covers() const { return covers_; }

 protected:
  double eval(const ElementSet& a) const override;

 private:
  std::vector<std::vector<int>> covers_;
  int item_count_ = 0;
};

// Explicit lookup table over all 2^universe subsets, indexed by the subset
// bitmask. The universal representation for the exhaustive ratio oracle;
// capped at 20 elements.
class TableFunction : public SetFunction {
 public:
  static constexpr int kMaxUniverse = 20;

  TableFunction(int universe, std::vector<double> values);

  int universe() const override { return universe_; }
  std::string kind() const override { return "table"; }
  const std::vector<double>& values() const { return values_; }

 protected:
  double eval(const ElementSet& a) const override;

 private:
  int universe_;
  std::vector<double> values_;
};

// View of another function on a sub-universe: element i of the view is
// scope_ids[i] of the base function. Used to compute constraint ratios over
// the constraint's own scope.
class RestrictedFunction : public SetFunction {
 public:
  RestrictedFunction(std::shared_ptr<const SetFunction> base, std::vector<int> scope_ids);

  int universe() const override { return static_cast<int>(scope_ids_.size()); }
  std::string kind() const override { return base_->kind(); }

 protected:
  double eval(const ElementSet& a) const override;

 private:
  std::shared_ptr<const SetFunction> base_;
  std::vector<int> scope_ids_;
};

// Lifts a function defined on scope-local indices 0..|scope|-1 to the full
// ground set: flat id scope_ids[i] maps to local index i. Queries must stay
// within the scope (constraints intersect with their scope first).
class EmbeddedFunction : public SetFunction {
 public:
  EmbeddedFunction(int universe, std::vector<int> scope_ids,
                   std::shared_ptr<const SetFunction> local);

  int universe() const override { return universe_; }
  std::string kind() const override { return local_->kind(); }
  const SetFunction& local() const { return *local_; }

 protected:
  double eval(const ElementSet& a) const override;

 private:
  int universe_;
  std::vector<int> local_of_;
  std::shared_ptr<const SetFunction> local_;
};

// Composes a base function with a many-to-one identity map: elements mapping
// to the same logical item are interchangeable copies. This is how ground
// sets with overlapping constraint scopes are modeled while the objective
// keeps seeing logical items.
class RemappedFunction : public SetFunction {
 public:
  RemappedFunction(std::shared_ptr<const SetFunction> base, std::vector<int> logical_of,
                   int universe);

  int universe() const override { return universe_; }
  std::string kind() const override { return base_->kind(); }
  const std::vector<int>& logical_of() const { return logical_of_; }
  const SetFunction& base() const { return *base_; }

 protected:
  double eval(const ElementSet& a) const override;

 private:
  std::shared_ptr<const SetFunction> base_;
  std::vector<int> logical_of_;
  int universe_;
};

}  // namespace nonsubmax

#endif  // NONSUBMAX_SET_FUNCTION_HPP_
