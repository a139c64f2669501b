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

#include "nonsubmax/problem.hpp"

#include <algorithm>

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

ElementSet ProblemInstance::full_set() const {
  ElementSet s(ground.size());
  for (int id = 0; id < ground.size(); ++id) s.insert(id);
  return s;
}

bool is_feasible(const ProblemInstance& instance, const ElementSet& a) {
  for (const ConstraintSpec& c : instance.constraints)
    if (!c.satisfied(a)) return false;
  return true;
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

ValidationReport validate_instance(const ProblemInstance& instance) {
  ValidationReport report;
  auto add = [&](std::string code, std::string message) {
    report.violations.push_back({std::move(code), std::move(message)});
  };

  const int n = instance.ground.size();
  if (instance.constraints.empty()) add("no-constraints", "constraint list is empty");
  if (instance.objective == nullptr) {
    add("no-objective", "objective function is missing");
    return report;
  }
  if (instance.objective->universe() != n)
    add("size-mismatch", "objective universe does not match the ground set");

  ElementSet empty(n);
  if (instance.objective->universe() == n && instance.objective->value(empty) != 0.0)
    add("objective-empty-nonzero", "objective of the empty set is not zero");

  ElementSet covered(n);
  for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
    const ConstraintSpec& c = instance.constraints[i];
    const std::string tag = "constraint " + std::to_string(i);
    if (c.cost == nullptr || c.cost->universe() != n) {
      add("size-mismatch", tag + " cost universe does not match the ground set");
      continue;
    }
    if (c.scope.universe() != n) {
      add("size-mismatch", tag + " scope drawn from a different ground set");
      continue;
    }
    if (c.budget < 0) add("negative-budget", tag + " has a negative budget");
    if (c.value(empty) != 0.0) add("constraint-empty-nonzero", tag + " cost of the empty set is not zero");
    for (int id : c.scope.ids()) {
      if (c.value(empty.with(id)) <= 0.0)
        add("zero-singleton-cost",
            tag + " assigns a nonpositive cost to element " +
                to_string(instance.ground.element_at(id)));
    }
    if (instance.disjoint_blocks && !set_intersection(covered, c.scope).empty())
      add("overlap", tag + " scope overlaps an earlier scope while disjoint_blocks is asserted");
    covered |= c.scope;
  }

  if (covered.size() != n) {
    for (int id = 0; id < n; ++id)
      if (!covered.contains(id)) {
        add("uncovered-block", "element " + to_string(instance.ground.element_at(id)) +
                                   " is outside every constraint scope");
        break;
      }
  }

  if (!instance.shared_identity.empty()) {
    if (static_cast<int>(instance.shared_identity.size()) != n) {
      add("size-mismatch", "shared identity map must cover every element");
    } else if (instance.disjoint_blocks) {
      // Two copies of one logical item in different blocks is an overlap of
      // the logical scopes.
      std::vector<int> seen_block(n, -1);
      for (int id = 0; id < n; ++id) {
        int logical = instance.shared_identity[id];
        int block = instance.ground.element_at(id).block;
        if (logical < 0 || logical >= n) continue;
        if (seen_block[logical] >= 0 && seen_block[logical] != block) {
          add("overlap", "shared identity duplicates a logical item across blocks while "
                         "disjoint_blocks is asserted");
          break;
        }
        seen_block[logical] = block;
      }
    }
  }

  return report;
}

}  // namespace nonsubmax
