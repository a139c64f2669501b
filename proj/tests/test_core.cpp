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

#include "nonsubmax/errors.hpp"
#include "nonsubmax/latency.hpp"
#include "nonsubmax/oracle.hpp"
#include "nonsubmax/problem.hpp"
#include "support.hpp"

using namespace nonsubmax;
using nonsubmax::testing::mask_set;

namespace {

// Two elements a=0, b=1 with weights 3, 2.
std::shared_ptr<ModularFunction> ab_modular() {
  return std::make_shared<ModularFunction>(std::vector<double>{3.0, 2.0});
}

// Coverage with U_a = {1,2}, U_b = {2,3}.
std::shared_ptr<CoverageFunction> ab_coverage() {
  return std::make_shared<CoverageFunction>(std::vector<std::vector<int>>{{1, 2}, {2, 3}});
}

}  // namespace

TEST_CASE("ground set addressing") {
  GroundSet g({2, 1, 3});
  CHECK(g.size() == 6);
  CHECK(g.block_count() == 3);
  CHECK(g.flat_id({0, 1}) == 1);
  CHECK(g.flat_id({2, 0}) == 3);
  CHECK(g.element_at(4) == Element{2, 1});
  CHECK(!g.contains({0, 2}));
  CHECK_THROWS_AS(g.flat_id({3, 0}), InvalidInputError);
}

TEST_CASE("element sets are canonical and ordered") {
  ElementSet s(70);
  s.insert(3);
  s.insert(69);
  s.insert(3);
  CHECK(s.size() == 2);
  CHECK(s.ids() == std::vector<int>{3, 69});
  ElementSet t = ElementSet::from_ids(70, {69, 3});
  CHECK(s == t);
  CHECK(ElementSetHash{}(s) == ElementSetHash{}(t));
  CHECK_THROWS_AS(s.insert(70), InvalidInputError);
  CHECK(set_difference(s, t).empty());
  CHECK(set_union(s, ElementSet(70)).size() == 2);
  CHECK(ElementSet(70).is_subset_of(s));
}

TEST_CASE("evaluate: normalization and worked values") {
  auto f = ab_modular();
  ElementSet empty(2);
  CHECK(f->value(empty) == 0.0);
  CHECK(f->value(mask_set(2, 0b11)) == 5.0);

  auto cov = ab_coverage();
  CHECK(cov->value(mask_set(2, 0b11)) == 3.0);
  CHECK(cov->value(empty) == 0.0);

  ElementSet wrong(3);
  CHECK_THROWS_AS(f->value(wrong), InvalidInputError);
}

TEST_CASE("marginal gains") {
  auto f = ab_modular();
  ElementSet empty(2), a = mask_set(2, 0b01), b = mask_set(2, 0b10);
  CHECK(f->marginal(a, empty) == 0.0);
  CHECK(f->marginal(a, b) == 2.0);
  CHECK(ab_coverage()->marginal(a, b) == 1.0);
}

TEST_CASE("marginal clamp and monotonicity guard") {
  // f(a) = 1, f(ab) slightly below: inside the tolerance clamps to 0.
  TableFunction near(2, {0.0, 1.0, 0.5, 1.0 - 5e-13});
  CHECK(near.marginal(mask_set(2, 0b01), mask_set(2, 0b10)) == 0.0);

  TableFunction bad(2, {0.0, 1.0, 0.5, 1.0 - 1e-6});
  CHECK_THROWS_AS(bad.marginal(mask_set(2, 0b01), mask_set(2, 0b10)), MonotonicityError);
}

TEST_CASE("marginal equals the value difference exactly") {
  SplitMix64 rng = SplitMix64::stream(11, {0});
  for (int it = 0; it < 20; ++it) {
    auto f = nonsubmax::testing::random_monotone_table(rng, 6);
    std::uint32_t am = rng.next() & 63, bm = rng.next() & 63;
    ElementSet a = mask_set(6, am), b = mask_set(6, bm);
    CHECK(f->marginal(a, b) == f->value(set_union(a, b)) - f->value(a));
  }
}

TEST_CASE("cache transparency is bit-identical") {
  SplitMix64 rng = SplitMix64::stream(12, {0});
  auto f = nonsubmax::testing::random_coverage(rng, 8);
  for (std::uint32_t m = 0; m < 256; ++m) {
    ElementSet s = mask_set(8, m);
    double cached_cold = f->value(s);
    double cached_warm = f->value(s);
    CHECK(cached_cold == f->value_uncached(s));
    CHECK(cached_cold == cached_warm);
  }
}

TEST_CASE("constraint marginal applies the scope internally") {
  // Ground set {a, b}; constraint scoped to {a} with budget weights.
  GroundSet g({2});
  ConstraintSpec c;
  c.cost = std::make_shared<ModularFunction>(std::vector<double>{2.0, 1.0});
  c.scope = ElementSet::from_ids(2, {0});
  c.budget = 2.0;

  ElementSet empty(2), a = mask_set(2, 0b01), b = mask_set(2, 0b10);
  CHECK(c.marginal(empty, b) == 0.0);  // b outside the scope
  CHECK(c.marginal(b, a) == 2.0);
  CHECK(c.value(mask_set(2, 0b11)) == 2.0);
}

TEST_CASE("latency constraint marginal matches the recursion") {
  // c = (1, 3), t = (5, 4): h_c({0,1}) = 10, h_c({1}) = 7.
  GroundSet g({2});
  ConstraintSpec c;
  c.cost = std::make_shared<LatencyCost>(2, std::vector<int>{0, 1},
                                         LatencyProfile{{1.0, 3.0}, {5.0, 4.0}});
  c.scope = ElementSet::from_ids(2, {0, 1});
  c.budget = 100.0;
  CHECK(c.value(mask_set(2, 0b10)) == 7.0);
  CHECK(c.value(mask_set(2, 0b11)) == 10.0);
  CHECK(c.marginal(mask_set(2, 0b10), mask_set(2, 0b01)) == 3.0);
}

namespace {

ProblemInstance budget_ab_instance(double budget) {
  ProblemInstance inst;
  inst.ground = GroundSet({2});
  inst.objective = ab_modular();
  ConstraintSpec c;
  c.cost = std::make_shared<ModularFunction>(std::vector<double>{2.0, 1.0});
  c.scope = ElementSet::from_ids(2, {0, 1});
  c.budget = budget;
  inst.constraints.push_back(std::move(c));
  return inst;
}

}  // namespace

TEST_CASE("feasibility") {
  ProblemInstance inst = budget_ab_instance(2.0);
  CHECK(is_feasible(inst, inst.empty_set()));
  CHECK(is_feasible(inst, mask_set(2, 0b01)));       // cost 2 <= 2
  CHECK_FALSE(is_feasible(inst, mask_set(2, 0b11)));  // cost 3 > 2
}

TEST_CASE("feasibility is downward closed") {
  SplitMix64 rng = SplitMix64::stream(13, {0});
  for (int it = 0; it < 50; ++it) {
    ProblemInstance inst = nonsubmax::testing::random_general_instance(rng);
    const int n = inst.ground.size();
    for (std::uint32_t bm = 0; bm < (1u << n); ++bm) {
      ElementSet b = mask_set(n, bm);
      if (!is_feasible(inst, b)) continue;
      for (std::uint32_t am = bm;; am = (am - 1) & bm) {
        CHECK(is_feasible(inst, mask_set(n, am)));
        if (am == 0) break;
      }
    }
  }
}

TEST_CASE("validate: clean instance") {
  CHECK(validate_instance(budget_ab_instance(2.0)).ok());
}

TEST_CASE("validate: zero singleton cost") {
  ProblemInstance inst = budget_ab_instance(2.0);
  inst.constraints[0].cost = std::make_shared<ModularFunction>(std::vector<double>{2.0, 0.0});
  ValidationReport report = validate_instance(inst);
  CHECK(report.has("zero-singleton-cost"));
}

TEST_CASE("validate: overlap under disjoint_blocks") {
  ProblemInstance inst = budget_ab_instance(2.0);
  ConstraintSpec dup = inst.constraints[0];
  inst.constraints.push_back(dup);
  CHECK(validate_instance(inst).has("overlap"));
  inst.disjoint_blocks = false;
  CHECK(validate_instance(inst).ok());
}

TEST_CASE("validate: objective normalization and coverage of scopes") {
  ProblemInstance inst = budget_ab_instance(2.0);
  inst.objective = std::make_shared<TableFunction>(2, std::vector<double>{0.5, 1.0, 1.0, 2.0});
  CHECK(validate_instance(inst).has("objective-empty-nonzero"));

  ProblemInstance uncovered = budget_ab_instance(2.0);
  uncovered.constraints[0].scope = ElementSet::from_ids(2, {0});
  CHECK(validate_instance(uncovered).has("uncovered-block"));
}

TEST_CASE("validated random instances are normalized and monotone") {
  SplitMix64 rng = SplitMix64::stream(14, {0});
  int checked = 0;
  for (int it = 0; it < 40; ++it) {
    ProblemInstance inst = nonsubmax::testing::random_general_instance(rng);
    if (inst.ground.size() > 10) continue;
    if (!validate_instance(inst).ok()) continue;
    CHECK(inst.objective_value(inst.empty_set()) == 0.0);
    CHECK(nonsubmax::testing::exhaustively_monotone(*inst.objective));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("remapped objective sees logical items") {
  // Elements 0 and 2 are copies of one logical item.
  auto base = std::make_shared<ModularFunction>(std::vector<double>{4.0, 1.0});
  RemappedFunction f(base, {0, 1, 0}, 3);
  CHECK(f.value(mask_set(3, 0b001)) == 4.0);
  CHECK(f.value(mask_set(3, 0b101)) == 4.0);  // both copies still one item
  CHECK(f.value(mask_set(3, 0b111)) == 5.0);
}

TEST_CASE("restricted view maps locals to base ids") {
  auto base = std::make_shared<ModularFunction>(std::vector<double>{1.0, 2.0, 4.0});
  RestrictedFunction r(base, {2, 0});
  CHECK(r.universe() == 2);
  CHECK(r.value(mask_set(2, 0b01)) == 4.0);
  CHECK(r.value(mask_set(2, 0b11)) == 5.0);
}
