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

#include "nonsubmax/ratios.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double snap_unit(double x) {
  if (std::abs(x) <= kBoundaryTol) return 0.0;
  if (std::abs(x - 1.0) <= kBoundaryTol) return 1.0;
  return x;
}

ElementSet mask_to_set(int universe, std::uint32_t mask) {
  ElementSet s(universe);
  while (mask) {
    int b = std::countr_zero(mask);
    s.insert(b);
    mask &= mask - 1;
  }
  return s;
}

// All 2^n values of f, indexed by subset bitmask.
std::vector<double> value_table(const SetFunction& f) {
  const int n = f.universe();
  std::vector<double> vals(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < vals.size(); ++mask)
    vals[mask] = f.value(mask_to_set(n, mask));
  return vals;
}

struct RunningMin {
  double value = kInf;
  bool found = false;
  std::uint32_t a = 0, b = 0;
  int v = -1;

  void offer(double x, std::uint32_t wa, std::uint32_t wb, int wv) {
    if (!found || x < value) {
      value = x;
      a = wa;
      b = wb;
      v = wv;
      found = true;
    }
  }
};

Witness make_witness(int n, const RunningMin& m) {
  Witness w;
  if (!m.found) return w;
  w.a = mask_to_set(n, m.a);
  w.b = mask_to_set(n, m.b);
  if (m.v >= 0) w.v = m.v;
  w.valid = true;
  return w;
}

}  // namespace

RatioReport exact_ratios(const SetFunction& f, int size_cap) {
  const int n = f.universe();
  if (n > size_cap)
    throw SizeLimitError("exact ratio scan needs at most " + std::to_string(size_cap) +
                         " elements, got " + std::to_string(n));

  const std::vector<double> vals = value_table(f);
  const std::uint32_t full = (n == 0) ? 0 : ((std::uint32_t{1} << n) - 1);

  RunningMin gamma_min, kappa_min, alpha_min, alpha_ext_min;
  std::vector<double> delta(std::max(n, 1));        // singleton marginals at the current base
  std::vector<double> sums(std::size_t{1} << n);    // sum of delta over A\B, built per base

  for (std::uint32_t base = 0; base <= full; ++base) {
    for (int v = 0; v < n; ++v) {
      if (base & (std::uint32_t{1} << v)) continue;
      delta[v] = vals[base | (std::uint32_t{1} << v)] - vals[base];
    }

    // Submodularity ratio: compare the summed singleton gains of A\base with
    // the joint gain of A over base. The sum for each A strips the highest
    // set bit, which reproduces an ascending-order accumulation exactly.
    sums[0] = 0;
    for (std::uint32_t a = 1; a <= full; ++a) {
      int hb = std::bit_width(a) - 1;
      std::uint32_t rest = a ^ (std::uint32_t{1} << hb);
      sums[a] = (base >> hb) & 1 ? sums[rest] : sums[rest] + delta[hb];
      double den = vals[a | base] - vals[base];
      if (den > kDenomTol) gamma_min.offer(sums[a] / den, a, base, -1);
    }

    // DR ratio: nested pairs A inside base, candidate v outside base.
    for (int v = 0; v < n; ++v) {
      std::uint32_t bit = std::uint32_t{1} << v;
      if (base & bit) continue;
      double den = delta[v];
      if (den <= kDenomTol) continue;
      std::uint32_t a = base;
      while (true) {
        double num = vals[a | bit] - vals[a];
        kappa_min.offer(num / den, a, base, v);
        if (a == 0) break;
        a = (a - 1) & base;
      }
    }

    // Curvature: nested pairs with the roles flipped, the gain at the larger
    // set over the gain at the smaller one.
    for (int v = 0; v < n; ++v) {
      std::uint32_t bit = std::uint32_t{1} << v;
      if (base & bit) continue;
      double num = vals[base | bit] - vals[base];
      std::uint32_t b = base;
      while (true) {
        double den = vals[b | bit] - vals[b];
        if (den > kDenomTol) alpha_min.offer(num / den, base, b, v);
        if (b == 0) break;
        b = (b - 1) & base;
      }
    }
  }

  // Extended curvature: the two sets are unconstrained, so the extremal pair
  // per candidate is (argmin gain, argmax gain).
  for (int v = 0; v < n; ++v) {
    std::uint32_t bit = std::uint32_t{1} << v;
    double num = kInf, den = -kInf;
    std::uint32_t num_at = 0, den_at = 0;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      if (mask & bit) continue;
      double d = vals[mask | bit] - vals[mask];
      if (d < num) {
        num = d;
        num_at = mask;
      }
      if (d > den) {
        den = d;
        den_at = mask;
      }
    }
    if (den > kDenomTol) alpha_ext_min.offer(num / den, num_at, den_at, v);
  }

  RatioReport report;
  report.gamma = gamma_min.found ? snap_unit(gamma_min.value) : 1.0;
  report.kappa = kappa_min.found ? snap_unit(kappa_min.value) : 1.0;
  report.alpha = alpha_min.found ? snap_unit(1.0 - alpha_min.value) : 0.0;
  report.alpha_ext = alpha_ext_min.found ? snap_unit(1.0 - alpha_ext_min.value) : 0.0;
  report.gamma_witness = make_witness(n, gamma_min);
  report.kappa_witness = make_witness(n, kappa_min);
  report.alpha_witness = make_witness(n, alpha_min);
  report.alpha_ext_witness = make_witness(n, alpha_ext_min);
  return report;
}

RatioReport constraint_exact_ratios(const ConstraintSpec& constraint, int size_cap) {
  RestrictedFunction restricted(constraint.cost, constraint.scope.ids());
  return exact_ratios(restricted, size_cap);
}

std::vector<double> constraint_curvatures(const ProblemInstance& instance, int size_cap) {
  std::vector<double> out;
  out.reserve(instance.constraints.size());
  for (const ConstraintSpec& c : instance.constraints)
    out.push_back(constraint_exact_ratios(c, size_cap).alpha_ext);
  return out;
}

GreedySubmodRatio greedy_submodularity_ratio(const ProblemInstance& instance,
                                             const std::vector<BlockTrace>& traces) {
  GreedySubmodRatio out;
  ElementSet empty = instance.empty_set();
  for (const BlockTrace& t : traces) {
    if (!t.first_rejected || !t.best_singleton) continue;
    ElementSet prefix = empty;
    for (int k = 0; k < t.truncation_index; ++k)
      prefix.insert(instance.ground.flat_id(t.accepted[k]));
    double den =
        instance.objective_marginal(prefix, empty.with(instance.ground.flat_id(*t.first_rejected)));
    if (den <= kDenomTol) continue;
    double num = instance.objective_value(empty.with(instance.ground.flat_id(*t.best_singleton)));
    double ratio = num / den;
    if (out.infinite || ratio < out.value) {
      out.value = ratio;
      out.infinite = false;
    }
  }
  return out;
}

std::vector<PsiValue> greedy_choice_ratios(const ProblemInstance& instance,
                                           const GeneralTrace& trace, PsiMode mode,
                                           const ElementSet* reference) {
  if (mode == PsiMode::kExact && reference == nullptr)
    throw InvalidInputError("exact greedy choice ratios need the optimal solution as reference");

  const int n = static_cast<int>(instance.constraints.size());
  ElementSet empty = instance.empty_set();
  ElementSet state = instance.empty_set();
  std::vector<PsiValue> psi;
  psi.reserve(trace.accepted.size());

  for (std::size_t j = 0; j < trace.accepted.size(); ++j) {
    int qid = instance.ground.flat_id(trace.accepted[j]);
    int cidx = trace.accepted_constraint[j];
    double chosen_num = instance.objective_marginal(state, empty.with(qid));
    double chosen_den = instance.constraints[cidx].marginal(state, empty.with(qid));
    bool chosen_inf = chosen_den == 0 && chosen_num > 0;
    double chosen_val = chosen_den > 0 ? chosen_num / chosen_den : 0.0;

    ElementSet range = (mode == PsiMode::kExact) ? set_difference(*reference, state)
                                                 : set_difference(instance.full_set(), state);
    bool any_pair = false;
    bool ref_inf = false;
    double ref_max = 0;
    for (int id : range.ids()) {
      double num = instance.objective_marginal(state, empty.with(id));
      for (int i = 0; i < n; ++i) {
        if (!instance.constraints[i].scope.contains(id)) continue;
        any_pair = true;
        double den = instance.constraints[i].marginal(state, empty.with(id));
        if (den == 0 && num > 0)
          ref_inf = true;
        else if (den > 0)
          ref_max = std::max(ref_max, num / den);
      }
    }

    PsiValue p;
    if (chosen_inf) {
      p = {kInf, true};
    } else if (!any_pair) {
      p = {kInf, true};  // nothing left to compare against
    } else if (ref_inf) {
      p = {0.0, false};
    } else if (ref_max <= 0) {
      p = {kInf, true};
    } else {
      p = {chosen_val / ref_max, false};
    }
    psi.push_back(p);
    state.insert(qid);
  }
  return psi;
}

namespace {

double worst_constraint_factor(const GuaranteeInputs& in) {
  if (in.alpha_tilde.empty())
    throw InvalidInputError("guarantee inputs need at least one constraint curvature");
  double worst = kInf;
  for (double at : in.alpha_tilde)
    worst = std::min(worst, 1.0 - std::exp(-(1.0 - at) * in.gamma_f));
  return worst;
}

double budget_sum(const GuaranteeInputs& in) {
  double sum = std::accumulate(in.budgets.begin(), in.budgets.end(), 0.0);
  if (sum <= 0) throw InvalidInputError("degenerate budgets: the budget sum is zero");
  return sum;
}

double min_alpha_tilde(const GuaranteeInputs& in) {
  if (in.alpha_tilde.empty())
    throw InvalidInputError("guarantee inputs need at least one constraint curvature");
  return *std::min_element(in.alpha_tilde.begin(), in.alpha_tilde.end());
}

GuaranteeBound bound_forms(double b, int k) {
  GuaranteeBound out;
  out.b = b;
  if (k <= 0) return out;
  if (!std::isfinite(b)) {
    out.tight = 1.0;
    out.exponential = 1.0;
    return out;
  }
  // The tight form saturates once b reaches the solution size.
  double beff = std::min(b, static_cast<double>(k));
  out.tight = 1.0 - std::pow(1.0 - beff / k, k);
  out.exponential = std::min(1.0 - std::exp(-b), out.tight);
  return out;
}

}  // namespace

double parallel_guarantee(const GuaranteeInputs& in) {
  double gt = in.gamma_tilde_f.infinite ? 1.0 : std::min(1.0, in.gamma_tilde_f.value);
  return 0.5 * (1.0 - in.alpha_f) * in.kappa_f * gt * worst_constraint_factor(in);
}

double parallel_guarantee_separable(const GuaranteeInputs& in) {
  double gt = in.gamma_tilde_f.infinite ? 1.0 : std::min(1.0, in.gamma_tilde_f.value);
  return 0.5 * gt * worst_constraint_factor(in);
}

GuaranteeBound general_guarantee(const GuaranteeInputs& in) {
  const int k = static_cast<int>(in.psi.size());
  if (k == 0) return {};
  if (in.constraint_marginals.size() != in.psi.size())
    throw InvalidInputError("psi values and constraint marginals are misaligned");
  double scale = (1.0 - min_alpha_tilde(in)) * in.gamma_f / budget_sum(in);

  double b = 0;
  if (scale > 0) {
    bool unbounded = false;
    double mass = 0;
    for (std::size_t j = 0; j < in.psi.size(); ++j) {
      if (in.psi[j].infinite) {
        // An unconstrained step with real constraint mass pushes the bound to
        // its ceiling; with no mass it contributes nothing.
        if (in.constraint_marginals[j] > kDenomTol) unbounded = true;
      } else {
        mass += in.psi[j].value * in.constraint_marginals[j];
      }
    }
    b = unbounded ? kInf : scale * mass;
  }
  return bound_forms(b, k);
}

GuaranteeBound general_guarantee_prefix(const GuaranteeInputs& in) {
  const int l = in.prefix_length;
  if (l <= 0) return {};
  double scale = (1.0 - min_alpha_tilde(in)) * in.gamma_f / budget_sum(in);
  double load = std::accumulate(in.prefix_loads.begin(), in.prefix_loads.end(), 0.0);
  return bound_forms(scale > 0 ? scale * load : 0.0, l);
}

double matroid_guarantee(const GuaranteeInputs& in) {
  return 1.0 - std::pow(1.0 - in.gamma_f / budget_sum(in), in.prefix_length);
}

}  // namespace nonsubmax
