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

#ifndef NONSUBMAX_ORACLE_HPP_
#define NONSUBMAX_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "nonsubmax/problem.hpp"

namespace nonsubmax {

inline constexpr int kOracleSizeCap = 20;

struct OracleResult {
  ElementSet optimum;
  double value = 0;
  std::uint64_t enumerated = 0;  // feasible sets visited
  std::uint64_t ties = 0;        // feasible sets attaining the optimal value
};

// Exhaustive exact solver. Enumerates feasible sets depth-first in
// lexicographic order on sorted element lists; a branch is cut as soon as a
// set violates a constraint, which is sound because monotone costs make
// feasibility downward closed. Returns the first-found maximum, so ties
// resolve to the lexicographically smallest optimum.
OracleResult brute_force_opt(const ProblemInstance& instance, int size_cap = kOracleSizeCap);

// Visits every feasible set exactly once, in the same order.
void for_each_feasible(const ProblemInstance& instance,
                       const std::function<void(const ElementSet&)>& visit,
                       int size_cap = kOracleSizeCap);

std::vector<ElementSet> exhaustive_feasible(const ProblemInstance& instance,
                                            int size_cap = kOracleSizeCap);

}  // namespace nonsubmax

#endif  // NONSUBMAX_ORACLE_HPP_
