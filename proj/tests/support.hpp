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

// Test-only helpers: random instance generators and the naive reference
// implementations that the production scans are checked against. Everything
// here works straight off the definitions; none of it shares code with the
// optimized paths under test.

#ifndef NONSUBMAX_TESTS_SUPPORT_HPP_
#define NONSUBMAX_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "nonsubmax/kalman.hpp"
#include "nonsubmax/latency.hpp"
#include "nonsubmax/problem.hpp"
#include "nonsubmax/rng.hpp"

namespace nonsubmax::testing {

inline ElementSet mask_set(int universe, std::uint32_t mask) {
  ElementSet s(universe);
  for (int v = 0; v < universe; ++v)
    if (mask & (std::uint32_t{1} << v)) s.insert(v);
  return s;
}

inline std::vector<double> full_table(const SetFunction& f) {
  std::vector<double> vals(std::size_t{1} << f.universe());
  for (std::uint32_t m = 0; m < vals.size(); ++m) vals[m] = f.value(mask_set(f.universe(), m));
  return vals;
}

// Exhaustive monotonicity check: every single-element extension gains at
// least -tol.
inline bool exhaustively_monotone(const SetFunction& f, double tol = 1e-9) {
  const int n = f.universe();
  std::vector<double> vals = full_table(f);
  for (std::uint32_t m = 0; m < vals.size(); ++m)
    for (int v = 0; v < n; ++v)
      if (!(m & (std::uint32_t{1} << v)) && vals[m | (std::uint32_t{1} << v)] < vals[m] - tol)
        return false;
  return true;
}

// Exhaustive diminishing-returns check; `tol` is the additive slack a
// violation must exceed.
inline bool exhaustively_submodular(const SetFunction& f, double tol = 0.0) {
  const int n = f.universe();
  std::vector<double> vals = full_table(f);
  for (std::uint32_t b = 0; b < vals.size(); ++b) {
    for (std::uint32_t a = b;; a = (a - 1) & b) {  // all A subseteq B
      for (int v = 0; v < n; ++v) {
        std::uint32_t bit = std::uint32_t{1} << v;
        if (b & bit) continue;
        if (vals[a | bit] - vals[a] < vals[b | bit] - vals[b] - tol) return false;
      }
      if (a == 0) break;
    }
  }
  return true;
}

struct NaiveRatios {
  double gamma = 1, kappa = 1, alpha = 0, alpha_ext = 0;
};

// Straightforward quantifier sweep per the definitions; the production scans
// must agree with this bit for bit.
inline NaiveRatios naive_ratios(const SetFunction& f) {
  const int n = f.universe();
  const std::vector<double> vals = full_table(f);
  const std::uint32_t count = std::uint32_t{1} << n;
  const double tol = 1e-12;
  constexpr double inf = std::numeric_limits<double>::infinity();

  auto snap = [](double x) {
    if (std::abs(x) <= 1e-9) return 0.0;
    if (std::abs(x - 1.0) <= 1e-9) return 1.0;
    return x;
  };

  double gamma = inf, kappa = inf, alpha_ratio = inf, alpha_ext_ratio = inf;
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      double den = vals[a | b] - vals[b];
      if (den > tol) {
        double num = 0;
        for (int v = 0; v < n; ++v) {
          std::uint32_t bit = std::uint32_t{1} << v;
          if ((a & bit) && !(b & bit)) num += vals[b | bit] - vals[b];
        }
        gamma = std::min(gamma, num / den);
      }
      for (int v = 0; v < n; ++v) {
        std::uint32_t bit = std::uint32_t{1} << v;
        if ((a & bit) || (b & bit)) continue;
        double dva = vals[a | bit] - vals[a];
        double dvb = vals[b | bit] - vals[b];
        if ((a & ~b) == 0 && dvb > tol) kappa = std::min(kappa, dva / dvb);        // A subseteq B
        if ((b & ~a) == 0 && dvb > tol) alpha_ratio = std::min(alpha_ratio, dva / dvb);  // B subseteq A
        if (dvb > tol) alpha_ext_ratio = std::min(alpha_ext_ratio, dva / dvb);
      }
    }
  }

  NaiveRatios out;
  out.gamma = gamma == inf ? 1.0 : snap(gamma);
  out.kappa = kappa == inf ? 1.0 : snap(kappa);
  out.alpha = alpha_ratio == inf ? 0.0 : snap(1.0 - alpha_ratio);
  out.alpha_ext = alpha_ext_ratio == inf ? 0.0 : snap(1.0 - alpha_ext_ratio);
  return out;
}

// Random monotone table function: each value is the max over one-removed
// subsets plus a nonnegative increment (zero with some probability, so
// degenerate marginals occur).
inline std::shared_ptr<TableFunction> random_monotone_table(SplitMix64& rng, int n,
                                                            bool positive_singletons = false) {
  std::vector<double> vals(std::size_t{1} << n, 0.0);
  for (std::uint32_t m = 1; m < vals.size(); ++m) {
    double base = 0;
    for (int v = 0; v < n; ++v)
      if (m & (std::uint32_t{1} << v))
        base = std::max(base, vals[m ^ (std::uint32_t{1} << v)]);
    double inc = rng.uniform() < 0.25 ? 0.0 : rng.uniform();
    if (positive_singletons && std::popcount(m) == 1 && inc <= 0.05) inc = 0.05 + rng.uniform();
    vals[m] = base + inc;
  }
  return std::make_shared<TableFunction>(n, std::move(vals));
}

inline std::shared_ptr<CoverageFunction> random_coverage(SplitMix64& rng, int n) {
  int items = n + rng.uniform_int(1, 3);
  std::vector<std::vector<int>> covers(n);
  for (int v = 0; v < n; ++v) {
    int k = rng.uniform_int(1, 3);
    for (int j = 0; j < k; ++j) covers[v].push_back(rng.uniform_int(0, items - 1));
  }
  return std::make_shared<CoverageFunction>(std::move(covers));
}

inline std::shared_ptr<ModularFunction> random_modular(SplitMix64& rng, int n) {
  std::vector<double> w(n);
  for (double& x : w) x = 0.1 + 5.0 * rng.uniform();
  return std::make_shared<ModularFunction>(std::move(w));
}

inline std::shared_ptr<const SetFunction> random_objective(SplitMix64& rng, int n) {
  switch (rng.uniform_int(0, 2)) {
    case 0: return random_modular(rng, n);
    case 1: return random_coverage(rng, n);
    default: return random_monotone_table(rng, n);
  }
}

inline LatencyProfile random_slack_profile(SplitMix64& rng, int n) {
  while (true) {
    LatencyProfile p;
    for (int i = 0; i < n; ++i) p.compute.push_back(rng.exponential(0.5));
    for (int i = 0; i < n; ++i) p.transmit.push_back(1e-6 + rng.exponential(0.2));
    if (slack_report(p).satisfied) return p;
  }
}

// One constraint on the given block: a positive-cost budget, a latency
// profile with positive slack, or a cardinality cap.
inline ConstraintSpec random_constraint(SplitMix64& rng, const GroundSet& ground, int block) {
  const int n = ground.size();
  std::vector<int> scope_ids;
  for (int local = 0; local < ground.block_size(block); ++local)
    scope_ids.push_back(ground.flat_id(Element{block, local}));
  ConstraintSpec c;
  c.scope = ElementSet::from_ids(n, scope_ids);
  switch (rng.uniform_int(0, 2)) {
    case 0: {
      std::vector<double> w(n, 0.0);
      double total = 0;
      for (int id : scope_ids) {
        w[id] = 0.2 + 2.0 * rng.uniform();
        total += w[id];
      }
      c.cost = std::make_shared<ModularFunction>(std::move(w));
      c.budget = (0.2 + 0.75 * rng.uniform()) * total;
      break;
    }
    case 1: {
      LatencyProfile p = random_slack_profile(rng, static_cast<int>(scope_ids.size()));
      std::vector<int> all(scope_ids.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
      c.budget = (0.2 + 0.75 * rng.uniform()) * h_c(all, p);
      c.cost = std::make_shared<LatencyCost>(n, scope_ids, std::move(p));
      break;
    }
    default: {
      c.cost = std::make_shared<CardinalityFunction>(n);
      c.budget = rng.uniform_int(0, static_cast<int>(scope_ids.size()));
      break;
    }
  }
  return c;
}

// Disjoint-block instance: one constraint per block, mixed objective kinds.
inline ProblemInstance random_disjoint_instance(SplitMix64& rng, int max_blocks = 3,
                                                int max_block_size = 4) {
  int blocks = rng.uniform_int(1, max_blocks);
  std::vector<int> sizes;
  for (int b = 0; b < blocks; ++b) sizes.push_back(rng.uniform_int(1, max_block_size));
  ProblemInstance inst;
  inst.ground = GroundSet(sizes);
  inst.objective = random_objective(rng, inst.ground.size());
  for (int b = 0; b < blocks; ++b)
    inst.constraints.push_back(random_constraint(rng, inst.ground, b));
  inst.disjoint_blocks = true;
  return inst;
}

// General instance: every block is covered, and additional constraints may
// share a block, so scopes can coincide.
inline ProblemInstance random_general_instance(SplitMix64& rng, int max_blocks = 3,
                                               int max_block_size = 4) {
  ProblemInstance inst = random_disjoint_instance(rng, max_blocks, max_block_size);
  int extra = rng.uniform_int(0, 2);
  for (int e = 0; e < extra; ++e) {
    int block = rng.uniform_int(0, inst.ground.block_count() - 1);
    inst.constraints.push_back(random_constraint(rng, inst.ground, block));
    inst.disjoint_blocks = false;
  }
  return inst;
}

inline KalmanInstance random_kalman(SplitMix64& rng, int state_dim, int sensors, int horizon,
                                    double sigma) {
  KalmanInstance inst;
  for (int k = 0; k < horizon; ++k) {
    Eigen::MatrixXd a(state_dim, state_dim);
    for (int r = 0; r < state_dim; ++r)
      for (int c = 0; c < state_dim; ++c) a(r, c) = rng.normal();
    inst.transitions.push_back(a);
  }
  for (int k = 0; k <= horizon; ++k) {
    Eigen::MatrixXd c(sensors, state_dim);
    for (int r = 0; r < sensors; ++r)
      for (int col = 0; col < state_dim; ++col) c(r, col) = rng.normal();
    inst.measurements.push_back(c);
    inst.sensor_std.push_back(std::vector<double>(sensors, sigma));
  }
  inst.process_noise = 2.0 * Eigen::MatrixXd::Identity(state_dim, state_dim);
  inst.initial_covariance = Eigen::MatrixXd::Identity(state_dim, state_dim);
  return inst;
}

}  // namespace nonsubmax::testing

#endif  // NONSUBMAX_TESTS_SUPPORT_HPP_
