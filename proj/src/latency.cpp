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

#include "nonsubmax/latency.hpp"

#include <algorithm>
#include <limits>

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

void LatencyProfile::check() const {
  if (compute.size() != transmit.size())
    throw InvalidInputError("latency profile arrays must have equal length");
  for (double c : compute)
    if (!(c >= 0)) throw InvalidInputError("compute latencies must be nonnegative");
  for (double t : transmit)
    if (!(t > 0)) throw InvalidInputError("transmit latencies must be positive");
}

double seq_latency(std::span<const int> order, const LatencyProfile& profile) {
  std::vector<bool> seen(profile.size(), false);
  double finish = 0;
  for (int v : order) {
    if (v < 0 || v >= profile.size()) throw InvalidInputError("sequence element out of range");
    if (seen[v]) throw InvalidInputError("sequence contains a duplicate element");
    seen[v] = true;
    // The channel is busy until `finish`; element v is ready at c_v.
    if (profile.compute[v] < finish)
      finish += profile.transmit[v];
    else
      finish = profile.compute[v] + profile.transmit[v];
  }
  return finish;
}

std::vector<int> latency_order(std::span<const int> members, const LatencyProfile& profile) {
  std::vector<int> order(members.begin(), members.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (profile.compute[a] != profile.compute[b]) return profile.compute[a] < profile.compute[b];
    return a < b;
  });
  return order;
}

double h_c(std::span<const int> members, const LatencyProfile& profile) {
  std::vector<int> order = latency_order(members, profile);
  return seq_latency(order, profile);
}

SlackReport slack_report(const LatencyProfile& profile) {
  SlackReport report;
  report.slack.resize(profile.size());
  report.satisfied = true;
  for (int v = 0; v < profile.size(); ++v) {
    double r = std::numeric_limits<double>::infinity();
    for (int u = 0; u < profile.size(); ++u)
      if (profile.compute[u] >= profile.compute[v])
        r = std::min(r, profile.compute[v] + profile.transmit[v] - profile.compute[u]);
    report.slack[v] = r;  // u = v always qualifies, so r <= t_v and is finite
    if (!(r > 0)) {
      report.satisfied = false;
      report.violators.push_back(v);
    }
  }
  return report;
}

double latency_curvature_bound(const LatencyProfile& profile) {
  SlackReport report = slack_report(profile);
  if (!report.satisfied)
    throw InvalidInputError(
        "latency curvature bound needs positive slack for every element (compute latency "
        "dominates transmission for element " +
        std::to_string(report.violators.front()) + ")");
  double ratio = 1.0;
  for (int v = 0; v < profile.size(); ++v)
    ratio = std::min(ratio, report.slack[v] / profile.transmit[v]);
  return 1.0 - ratio;
}

LatencyCost::LatencyCost(int universe, std::vector<int> scope_ids, LatencyProfile profile)
    : universe_(universe), local_of_(universe, -1), profile_(std::move(profile)) {
  profile_.check();
  if (static_cast<int>(scope_ids.size()) != profile_.size())
    throw InvalidInputError("latency profile must align with the scope elements");
  for (int i = 0; i < static_cast<int>(scope_ids.size()); ++i) {
    int id = scope_ids[i];
    if (id < 0 || id >= universe) throw InvalidInputError("latency scope id out of range");
    if (local_of_[id] >= 0) throw InvalidInputError("latency scope lists an element twice");
    local_of_[id] = i;
  }
}

double LatencyCost::eval(const ElementSet& a) const {
  std::vector<int> members;
  for (int id : a.ids()) {
    if (local_of_[id] < 0)
      throw InvalidInputError("latency cost evaluated outside its scope");
    members.push_back(local_of_[id]);
  }
  return h_c(members, profile_);
}

}  // namespace nonsubmax
