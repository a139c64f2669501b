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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "nonsubmax/errors.hpp"
#include "nonsubmax/greedy.hpp"
#include "nonsubmax/oracle.hpp"
#include "support.hpp"

using namespace nonsubmax;
using nonsubmax::testing::mask_set;

namespace {

ProblemInstance budget_abc(double budget) {
  ProblemInstance inst;
  inst.ground = GroundSet({3});
  inst.objective = std::make_shared<ModularFunction>(std::vector<double>{3.0, 2.0, 1.0});
  ConstraintSpec c;
  c.cost = std::make_shared<ModularFunction>(std::vector<double>{2.0, 1.0, 1.0});
  c.scope = ElementSet::from_ids(3, {0, 1, 2});
  c.budget = budget;
  inst.constraints.push_back(std::move(c));
  return inst;
}

}  // namespace

TEST_CASE("first-found maximum with tie count") {
  OracleResult r = brute_force_opt(budget_abc(2.0));
  CHECK(r.value == 3.0);
  CHECK(r.optimum == mask_set(3, 0b001));  // {a} precedes {b,c}
  CHECK(r.ties == 2);
  CHECK(r.enumerated == 5);  // {}, {a}, {b}, {b,c}, {c}
}

TEST_CASE("zero budgets leave only the empty set") {
  OracleResult r = brute_force_opt(budget_abc(0.0));
  CHECK(r.optimum.empty());
  CHECK(r.value == 0.0);
  CHECK(r.enumerated == 1);
}

TEST_CASE("unconstrained monotone objective takes everything") {
  OracleResult r = brute_force_opt(budget_abc(1e9));
  CHECK(r.optimum == mask_set(3, 0b111));
  CHECK(r.enumerated == 8);
}

TEST_CASE("enumeration is lexicographic on sorted id lists") {
  std::vector<ElementSet> sets = exhaustive_feasible(budget_abc(1e9));
  REQUIRE(sets.size() == 8);
  std::vector<std::vector<int>> expected = {{},        {0},    {0, 1}, {0, 1, 2},
                                            {0, 2},    {1},    {1, 2}, {2}};
  for (std::size_t i = 0; i < sets.size(); ++i) CHECK(sets[i].ids() == expected[i]);

  std::vector<ElementSet> pruned = exhaustive_feasible(budget_abc(2.0));
  std::vector<std::vector<int>> expected_pruned = {{}, {0}, {1}, {1, 2}, {2}};
  REQUIRE(pruned.size() == expected_pruned.size());
  for (std::size_t i = 0; i < pruned.size(); ++i) CHECK(pruned[i].ids() == expected_pruned[i]);
}

TEST_CASE("size cap") {
  ProblemInstance inst;
  inst.ground = GroundSet({21});
  inst.objective = std::make_shared<CardinalityFunction>(21);
  ConstraintSpec c;
  c.cost = std::make_shared<CardinalityFunction>(21);
  c.scope = inst.full_set();
  c.budget = 3;
  inst.constraints.push_back(std::move(c));
  CHECK_THROWS_AS(brute_force_opt(inst), SizeLimitError);
}

TEST_CASE("pruned enumeration matches the unpruned scan") {
  SplitMix64 rng = SplitMix64::stream(61, {0});
  for (int it = 0; it < 80; ++it) {
    ProblemInstance inst = nonsubmax::testing::random_general_instance(rng);
    const int n = inst.ground.size();

    OracleResult fast = brute_force_opt(inst);

    // Unpruned reference: test every subset.
    double best = -1;
    std::uint64_t feasible = 0;
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      ElementSet s = mask_set(n, m);
      if (!is_feasible(inst, s)) continue;
      ++feasible;
      best = std::max(best, inst.objective_value(s));
    }
    CHECK(fast.value == best);
    CHECK(fast.enumerated == feasible);
    CHECK(is_feasible(inst, fast.optimum));
  }
}

TEST_CASE("the oracle dominates both greedy solvers") {
  SplitMix64 rng = SplitMix64::stream(62, {0});
  for (int it = 0; it < 60; ++it) {
    ProblemInstance inst = nonsubmax::testing::random_disjoint_instance(rng);
    OracleResult opt = brute_force_opt(inst);
    CHECK(opt.value >= inst.objective_value(parallel_greedy(inst).solution) - 1e-12);
    CHECK(opt.value >= inst.objective_value(general_greedy(inst).solution) - 1e-12);
  }
}
