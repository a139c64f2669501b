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

#ifndef NONSUBMAX_PROBLEM_HPP_
#define NONSUBMAX_PROBLEM_HPP_

#include <memory>
#include <string>
#include <vector>

#include "nonsubmax/element.hpp"
#include "nonsubmax/set_function.hpp"

namespace nonsubmax {

// One constraint h_i(A n S_i) <= H_i. The scope intersection is applied
// here, so h never sees elements outside its scope.
struct ConstraintSpec {
  std::shared_ptr<const SetFunction> cost;
  ElementSet scope;
  double budget = 0;

  double value(const ElementSet& a) const { return cost->value(set_intersection(a, scope)); }

  // Marginal return of the constraint when adding b to a.
  double marginal(const ElementSet& a, const ElementSet& b) const {
    return clamp_marginal(value(set_union(a, b)) - value(a));
  }

  bool satisfied(const ElementSet& a) const { return value(a) <= budget; }
};

// The optimization instance: maximize objective(A) subject to
// constraints[i].cost(A n scope_i) <= budget_i for every i.
//
// Ground sets with overlapping constraint scopes are represented with one
// element per (scope, shared item) pair plus shared_identity mapping those
// copies to a common logical item; the objective is then wrapped so it sees
// logical items while the constraints see their own copies. In that case
// disjoint_blocks must be false and only the general solver applies.
struct ProblemInstance {
  GroundSet ground;
  std::shared_ptr<const SetFunction> objective;
  std::vector<ConstraintSpec> constraints;
  bool disjoint_blocks = true;
  // Optional flat id -> logical item map; empty means every element is its
  // own logical item.
  std::vector<int> shared_identity;

  ElementSet empty_set() const { return ElementSet(ground.size()); }
  ElementSet full_set() const;

  double objective_value(const ElementSet& a) const { return objective->value(a); }
  double objective_marginal(const ElementSet& a, const ElementSet& b) const {
    return objective->marginal(a, b);
  }
};

bool is_feasible(const ProblemInstance& instance, const ElementSet& a);

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const;
};

// Checks the normalization and structural assumptions: objective(empty) = 0,
// cost(empty) = 0, positive singleton costs, scopes covering the ground set,
// and pairwise-disjoint scopes when disjoint_blocks is asserted. Violations
// are reported as data, not thrown.
ValidationReport validate_instance(const ProblemInstance& instance);

}  // namespace nonsubmax

#endif  // NONSUBMAX_PROBLEM_HPP_
