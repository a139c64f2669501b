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

#include "nonsubmax/oracle.hpp"

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

namespace {

void check_size(const ProblemInstance& instance, int size_cap) {
  if (instance.ground.size() > size_cap)
    throw SizeLimitError("exhaustive enumeration is capped at " + std::to_string(size_cap) +
                         " elements, got " + std::to_string(instance.ground.size()));
}

void enumerate(const ProblemInstance& instance, ElementSet& current, int next,
               const std::function<void(const ElementSet&)>& visit) {
  visit(current);
  for (int id = next; id < instance.ground.size(); ++id) {
    current.insert(id);
    if (is_feasible(instance, current))
      enumerate(instance, current, id + 1, visit);
    // Infeasible: every superset along this branch is infeasible too.
    current.erase(id);
  }
}

}  // namespace

void for_each_feasible(const ProblemInstance& instance,
                       const std::function<void(const ElementSet&)>& visit, int size_cap) {
  check_size(instance, size_cap);
  ElementSet current = instance.empty_set();
  enumerate(instance, current, 0, visit);
}

OracleResult brute_force_opt(const ProblemInstance& instance, int size_cap) {
  OracleResult result;
  result.optimum = instance.empty_set();
  bool first = true;
  for_each_feasible(
      instance,
      [&](const ElementSet& a) {
        double value = instance.objective_value(a);
        ++result.enumerated;
        if (first || value > result.value) {
          result.value = value;
          result.optimum = a;
          result.ties = 1;
          first = false;
        } else if (value == result.value) {
          ++result.ties;
        }
      },
      size_cap);
  return result;
}

std::vector<ElementSet> exhaustive_feasible(const ProblemInstance& instance, int size_cap) {
  std::vector<ElementSet> out;
  for_each_feasible(
      instance, [&](const ElementSet& a) { out.push_back(a); }, size_cap);
  return out;
}

}  // namespace nonsubmax
