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

#ifndef NONSUBMAX_LATENCY_HPP_
#define NONSUBMAX_LATENCY_HPP_

#include <span>
#include <vector>

#include "nonsubmax/set_function.hpp"

namespace nonsubmax {

// Per-element compute and transmit latencies over a shared sequential
// channel. Entries are addressed by local index 0..size()-1.
struct LatencyProfile {
  std::vector<double> compute;   // c_v >= 0
  std::vector<double> transmit;  // t_v > 0

  int size() const { return static_cast<int>(compute.size()); }
  void check() const;  // throws InvalidInputError on bad shapes or t_v <= 0
};

// Total completion time of the given transmission order: each element first
// finishes computing at c_v, then transmits for t_v on the channel, which
// serves one element at a time.
double seq_latency(std::span<const int> order, const LatencyProfile& profile);

// Members of a sorted by nondecreasing compute latency, ties by index.
std::vector<int> latency_order(std::span<const int> members, const LatencyProfile& profile);

// Latency of the set under the sorted-by-compute order; for any profile this
// is the minimum of seq_latency over all orderings of a.
double h_c(std::span<const int> members, const LatencyProfile& profile);

// Slack r_v = min over u with c_u >= c_v of (c_v + t_v - c_u). All slacks
// positive means compute latency never dominates transmission, which makes
// h_c monotone and bounds its curvature.
struct SlackReport {
  std::vector<double> slack;
  bool satisfied = false;
  std::vector<int> violators;
};

SlackReport slack_report(const LatencyProfile& profile);

// Upper bound 1 - min_v (r_v / t_v) on the extended curvature of h_c.
// Requires slack_report(profile).satisfied.
double latency_curvature_bound(const LatencyProfile& profile);

// h_c as a constraint cost over the full ground set; defined on the listed
// scope elements (profile entry i belongs to scope_ids[i]).
class LatencyCost : public SetFunction {
 public:
  LatencyCost(int universe, std::vector<int> scope_ids, LatencyProfile profile);

  int universe() const override { return universe_; }
  std::string kind() const override { return "latency"; }
  const LatencyProfile& profile() const { return profile_; }

 protected:
  double eval(const ElementSet& a) const override;

 private:
  int universe_;
  std::vector<int> local_of_;  // flat id -> profile index, -1 outside scope
  LatencyProfile profile_;
};

}  // namespace nonsubmax

#endif  // NONSUBMAX_LATENCY_HPP_
