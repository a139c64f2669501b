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

#include "nonsubmax/greedy.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <thread>

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

namespace {

struct Candidate {
  int id = -1;
  int constraint = -1;
  double num = 0;  // objective marginal
  double den = 0;  // constraint marginal

  bool infinite() const { return den == 0 && num > 0; }
  double ratio() const {
    if (infinite()) return std::numeric_limits<double>::infinity();
    return den > 0 ? num / den : 0.0;
  }
};

// Argmax order: higher ratio first; infinite ties resolved by larger
// objective marginal. Remaining ties keep the earlier candidate, which is
// the lower (block, local) element and then the lower constraint index
// because callers scan in that order.
bool better(const Candidate& a, const Candidate& b) {
  if (b.id < 0) return true;
  if (a.infinite() || b.infinite()) {
    if (a.infinite() != b.infinite()) return a.infinite();
    return a.num > b.num;
  }
  return a.ratio() > b.ratio();
}

BlockTrace run_block(const ProblemInstance& instance, int constraint_index) {
  const ConstraintSpec& constraint = instance.constraints[constraint_index];
  const SetFunction& objective = *instance.objective;

  BlockTrace trace;
  trace.constraint_index = constraint_index;
  trace.block_solution = instance.empty_set();

  std::vector<int> pool = constraint.scope.ids();

  // Best singleton of the scope by objective value, feasibility ignored here.
  ElementSet empty = instance.empty_set();
  double best_single = -1;
  int best_single_id = -1;
  for (int id : pool) {
    double v = objective.value(empty.with(id));
    if (v > best_single) {
      best_single = v;
      best_single_id = id;
    }
  }
  if (best_single_id >= 0)
    trace.best_singleton = instance.ground.element_at(best_single_id);

  ElementSet current = instance.empty_set();
  bool rejection_seen = false;
  int step = 0;
  while (!pool.empty()) {
    Candidate best;
    for (int id : pool) {
      Candidate c{id, constraint_index, objective.marginal(current, empty.with(id)),
                  constraint.marginal(current, empty.with(id))};
      if (better(c, best)) best = c;
    }

    ElementSet grown = current.with(best.id);
    bool accept = constraint.value(grown) <= constraint.budget;
    Element elem = instance.ground.element_at(best.id);
    trace.steps.push_back(
        {step++, elem, best.ratio(), best.num, best.den, constraint_index, accept});
    if (accept) {
      current = std::move(grown);
      trace.accepted.push_back(elem);
      if (!rejection_seen) ++trace.truncation_index;
    } else {
      trace.rejected.push_back(elem);
      if (!rejection_seen) {
        rejection_seen = true;
        trace.first_rejected = elem;
      }
    }
    pool.erase(std::find(pool.begin(), pool.end(), best.id));
  }

  // Final per-block choice: swap to the best singleton when it is feasible
  // and strictly better than the greedy set.
  trace.block_solution = current;
  if (best_single_id >= 0) {
    ElementSet single = empty.with(best_single_id);
    if (is_feasible(instance, single) && best_single > objective.value(current)) {
      trace.block_solution = single;
      trace.chose_best_singleton = true;
    }
  }
  return trace;
}

}  // namespace

ParallelGreedyResult parallel_greedy(const ProblemInstance& instance, int threads) {
  if (!instance.disjoint_blocks)
    throw InvalidInputError(
        "the parallel solver requires pairwise-disjoint constraint scopes "
        "(disjoint_blocks); use the general solver instead");
  if (instance.constraints.empty()) throw InvalidInputError("constraint list is empty");

  const int n = static_cast<int>(instance.constraints.size());
  std::vector<BlockTrace> traces(n);

  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) traces[i] = run_block(instance, i);
  } else {
    std::vector<std::future<BlockTrace>> futures;
    futures.reserve(n);
    for (int i = 0; i < n; ++i)
      futures.push_back(
          std::async(std::launch::async, [&instance, i] { return run_block(instance, i); }));
    for (int i = 0; i < n; ++i) traces[i] = futures[i].get();
  }

  ParallelGreedyResult result;
  result.solution = instance.empty_set();
  for (const BlockTrace& t : traces) result.solution |= t.block_solution;
  result.traces = std::move(traces);
  return result;
}

GeneralGreedyResult general_greedy(const ProblemInstance& instance) {
  if (instance.constraints.empty()) throw InvalidInputError("constraint list is empty");
  const SetFunction& objective = *instance.objective;
  const int n = static_cast<int>(instance.constraints.size());

  GeneralTrace trace;
  ElementSet current = instance.empty_set();
  ElementSet empty = instance.empty_set();

  std::vector<int> pool(instance.ground.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<int>(i);

  bool rejection_seen = false;
  int step = 0;
  while (!pool.empty()) {
    Candidate best;
    for (int id : pool) {
      double num = objective.marginal(current, empty.with(id));
      bool covered = false;
      for (int i = 0; i < n; ++i) {
        if (!instance.constraints[i].scope.contains(id)) continue;
        covered = true;
        Candidate c{id, i, num, instance.constraints[i].marginal(current, empty.with(id))};
        if (better(c, best)) best = c;
      }
      if (!covered)
        throw InvalidInputError("element " + to_string(instance.ground.element_at(id)) +
                                " is outside every constraint scope");
    }

    ElementSet grown = current.with(best.id);
    bool accept = is_feasible(instance, grown);
    Element elem = instance.ground.element_at(best.id);
    trace.steps.push_back(
        {step++, elem, best.ratio(), best.num, best.den, best.constraint, accept});
    if (accept) {
      current = std::move(grown);
      trace.accepted.push_back(elem);
      trace.accepted_constraint.push_back(best.constraint);
      if (!rejection_seen) ++trace.prefix_length;
    } else {
      rejection_seen = true;
    }
    pool.erase(std::find(pool.begin(), pool.end(), best.id));
  }

  return GeneralGreedyResult{std::move(current), std::move(trace)};
}

std::vector<std::pair<int, std::optional<Element>>> truncation_points(
    const std::vector<BlockTrace>& traces) {
  std::vector<std::pair<int, std::optional<Element>>> out;
  out.reserve(traces.size());
  for (const BlockTrace& t : traces) out.emplace_back(t.truncation_index, t.first_rejected);
  return out;
}

}  // namespace nonsubmax
