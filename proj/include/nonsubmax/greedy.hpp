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

#ifndef NONSUBMAX_GREEDY_HPP_
#define NONSUBMAX_GREEDY_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "nonsubmax/problem.hpp"

namespace nonsubmax {

// One processed candidate. `ratio` is objective_marginal / constraint_marginal
// under the degenerate-input rules: +infinity when the constraint marginal is
// zero but the objective marginal is not, and 0 when both vanish.
struct StepRecord {
  int step = 0;
  Element candidate;
  double ratio = 0;
  double objective_marginal = 0;
  double constraint_marginal = 0;
  int constraint_index = 0;
  bool accepted = false;
};

// Decision record of one block of the parallel solver.
struct BlockTrace {
  int constraint_index = 0;
  std::vector<StepRecord> steps;
  std::vector<Element> accepted;  // acceptance order
  std::vector<Element> rejected;  // rejection order; every rejection is a budget violation
  // Number of accepted elements before the first rejection, and the first
  // rejected candidate (absent when the scope was exhausted without one).
  int truncation_index = 0;
  std::optional<Element> first_rejected;
  // Best singleton of the scope by objective value, and whether the final
  // per-block choice swapped to it. The singleton is adopted only when it is
  // itself feasible.
  std::optional<Element> best_singleton;
  bool chose_best_singleton = false;
  ElementSet block_solution;
};

struct ParallelGreedyResult {
  ElementSet solution;
  std::vector<BlockTrace> traces;
};

// Runs the per-scope greedy on every constraint independently (concurrently
// when threads != 1) and returns the union of the per-scope solutions.
// Requires disjoint_blocks; results are identical for every thread count.
ParallelGreedyResult parallel_greedy(const ProblemInstance& instance, int threads = 0);

// Decision record of the general solver.
struct GeneralTrace {
  std::vector<StepRecord> steps;
  std::vector<Element> accepted;
  std::vector<int> accepted_constraint;  // winning constraint index per accepted element
  // Number of accepted elements before the first rejection.
  int prefix_length = 0;
};

struct GeneralGreedyResult {
  ElementSet solution;
  GeneralTrace trace;
};

// Single greedy pass over the whole ground set, maximizing the marginal
// ratio jointly over candidates and constraints; keeps a candidate only if
// the grown solution stays feasible for every constraint. Does not require
// disjoint scopes.
GeneralGreedyResult general_greedy(const ProblemInstance& instance);

// Per block: the length of the budget-respecting greedy prefix and the first
// budget-violating candidate, if any.
std::vector<std::pair<int, std::optional<Element>>> truncation_points(
    const std::vector<BlockTrace>& traces);

}  // namespace nonsubmax

#endif  // NONSUBMAX_GREEDY_HPP_
