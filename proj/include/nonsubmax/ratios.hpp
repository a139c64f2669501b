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

#ifndef NONSUBMAX_RATIOS_HPP_
#define NONSUBMAX_RATIOS_HPP_

#include <optional>
#include <vector>

#include "nonsubmax/greedy.hpp"
#include "nonsubmax/problem.hpp"

namespace nonsubmax {

// Denominators at or below this are treated as zero and their pairs skipped
// in the exhaustive ratio scans.
inline constexpr double kDenomTol = 1e-12;

// Computed ratios within this distance of 0 or 1 snap to the boundary.
inline constexpr double kBoundaryTol = 1e-9;

// Exhaustive scans are capped at this many elements (the submodularity-ratio
// scan is quadratic in the number of subsets).
inline constexpr int kExactScanCap = 12;

struct Witness {
  ElementSet a;
  ElementSet b;
  std::optional<int> v;  // flat id, present for the elementwise ratios
  bool valid = false;
};

// Exact structural ratios of a set function: how close it is to submodular
// (gamma, kappa, both 1 for submodular functions) and how far from modular
// (alpha over nested pairs, alpha_ext over arbitrary pairs; both 0 for
// modular functions). `exact` distinguishes exhaustive results from
// spectral/slack bounds reported through the same struct.
struct RatioReport {
  double gamma = 1;
  double kappa = 1;
  double alpha = 0;
  double alpha_ext = 0;
  bool exact = true;
  Witness gamma_witness;
  Witness kappa_witness;
  Witness alpha_witness;
  Witness alpha_ext_witness;
};

// Brute-force scan over all subset pairs per the defining inequalities.
// Pairs whose denominator is below kDenomTol are skipped; if nothing
// constrains a ratio it defaults to the information-free extreme (1 for
// gamma/kappa, 0 for the curvatures). Requires universe <= size_cap.
RatioReport exact_ratios(const SetFunction& f, int size_cap = kExactScanCap);

// Ratios of a constraint cost over the constraint's own scope.
RatioReport constraint_exact_ratios(const ConstraintSpec& constraint,
                                    int size_cap = kExactScanCap);

// Extended curvature of every constraint, exact over each scope.
std::vector<double> constraint_curvatures(const ProblemInstance& instance,
                                          int size_cap = kExactScanCap);

// Worst-case ratio between the best scope singleton and the first truncated
// marginal across the parallel solver's blocks. Blocks without a rejection
// or with a vanishing marginal impose no bound; if none contributes the
// ratio is unbounded (infinite), which downstream guarantees treat as 1
// after the min-with-1.
struct GreedySubmodRatio {
  double value = 0;
  bool infinite = true;
};

GreedySubmodRatio greedy_submodularity_ratio(const ProblemInstance& instance,
                                             const std::vector<BlockTrace>& traces);

// Suboptimality factor of the general solver's j-th accepted element
// relative to the best remaining candidate ratio. Infinite when nothing in
// the reference range constrains it.
struct PsiValue {
  double value = 0;
  bool infinite = false;
};

enum class PsiMode {
  kExact,       // reference candidates: optimal solution minus the prefix
  kLowerBound,  // reference candidates: whole ground set minus the prefix
};

// Exact mode requires the brute-forced optimal solution as reference and
// yields the tightest factors; lower-bound mode needs no reference and never
// exceeds the exact factors elementwise.
std::vector<PsiValue> greedy_choice_ratios(const ProblemInstance& instance,
                                           const GeneralTrace& trace, PsiMode mode,
                                           const ElementSet* reference = nullptr);

// Everything the guarantee formulas consume.
struct GuaranteeInputs {
  double gamma_f = 0;
  double kappa_f = 0;
  double alpha_f = 0;
  GreedySubmodRatio gamma_tilde_f;
  std::vector<double> alpha_tilde;           // per-constraint extended curvature
  std::vector<PsiValue> psi;                 // per accepted step of the general solver
  std::vector<double> constraint_marginals;  // winning-constraint marginal per accepted step
  std::vector<double> budgets;
  int prefix_length = 0;
  std::vector<double> prefix_loads;  // per-constraint load of the accepted prefix
};

// Guarantee factor of the parallel solver:
//   (1 - alpha_f) kappa_f min{1, gamma_tilde_f} / 2
//     * min_i (1 - exp(-(1 - alpha_tilde_i) gamma_f)).
double parallel_guarantee(const GuaranteeInputs& in);

// The sharper factor available when the objective is block-separable: drops
// the (1 - alpha_f) kappa_f merge penalty.
double parallel_guarantee_separable(const GuaranteeInputs& in);

struct GuaranteeBound {
  double b = 0;        // the accumulated budget-weighted quality mass
  double tight = 0;    // 1 - (1 - b/k)^k
  double exponential = 0;  // 1 - e^-b, never reported above `tight`
};

// Guarantee of the general solver from the greedy choice ratios:
//   b = (1 - min_i alpha_tilde_i) gamma_f / (sum_i H_i)
//       * sum_j psi_j * constraint_marginal_j.
GuaranteeBound general_guarantee(const GuaranteeInputs& in);

// The prefix-load variant, which needs only the accepted prefix and the
// per-constraint loads instead of the psi factors.
GuaranteeBound general_guarantee_prefix(const GuaranteeInputs& in);

// Specialization to per-block cardinality caps:
//   1 - (1 - gamma_f / sum_i H_i)^prefix_length.
double matroid_guarantee(const GuaranteeInputs& in);

}  // namespace nonsubmax

#endif  // NONSUBMAX_RATIOS_HPP_
