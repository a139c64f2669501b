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

#ifndef NONSUBMAX_BENCH_HPP_
#define NONSUBMAX_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nonsubmax/problem.hpp"

namespace nonsubmax {

// Random sensor-scheduling benchmark family: a random linear system per
// trial, one sequential-latency constraint per step with budget
// budget_fraction * (cost of the whole step), and sensor noise swept over
// sigma_range. Every draw is a pure function of (seed, sigma, trial).
struct ExperimentConfig {
  int state_dim = 3;
  int sensors_per_step = 3;
  int horizon = 2;
  std::vector<double> sigma_range;  // defaults to 1..30 when empty
  int trials = 50;
  std::uint64_t seed = 1;
  double compute_rate = 0.5;   // exponential rate of the compute latencies
  double transmit_rate = 0.2;  // exponential rate of the transmit latencies
  double budget_fraction = 0.5;
  std::vector<int> sensor_sweep;  // runtime experiment m values; defaults to 20..30
  int runtime_trials = 5;
  double runtime_sigma = 1.0;
  int runtime_state_dim = 10;
  int exact_ratio_cap = 12;
  int threads = 0;  // 0 = hardware concurrency

  std::vector<double> sigmas() const;
  std::vector<int> sweep() const;
};

ExperimentConfig config_from_json_text(const std::string& text);

struct GeneratedInstance {
  ProblemInstance instance;
  std::string json_text;
};

GeneratedInstance gen_instance(const ExperimentConfig& config, double sigma_v, int trial);
GeneratedInstance gen_runtime_instance(const ExperimentConfig& config, int sensors, int trial);

struct TrialRecord {
  double sigma_v = 0;
  int trial = 0;
  double f_parallel = 0, f_general = 0, f_opt = 0;
  double ratio_parallel = 0, ratio_general = 0;
  double guarantee_parallel = 0, guarantee_general = 0;
  double time_parallel_s = 0, time_general_s = 0;
};

struct PerformanceResult {
  std::vector<TrialRecord> records;
  std::string csv;        // one row per trial
  std::string means_csv;  // one row per sigma value
};

// Runs both solvers plus the exhaustive oracle on every (sigma, trial)
// instance, computes exact ratios (or the spectral/slack bounds when the
// ground set exceeds the exact cap) and the corresponding guarantees.
// Wall times cover only the solver calls. Trials run on a worker pool;
// output order is (sigma, trial) regardless of scheduling.
PerformanceResult run_performance_experiment(const ExperimentConfig& config);

struct RuntimeRow {
  int sensors = 0;
  double mean_time_parallel_s = 0;
  double mean_time_general_s = 0;
  bool parallel_faster = false;
};

struct RuntimeResult {
  std::vector<RuntimeRow> rows;
  std::string csv;
};

// Times both solvers over the sensor-count sweep (no oracle, no ratios).
// Trials run sequentially so the timings are not distorted by each other.
RuntimeResult run_runtime_experiment(const ExperimentConfig& config);

// Renders a CSV produced by the experiments: the per-trial performance CSV
// yields ratios.svg and guarantees.svg (per-sigma means, two series each);
// the runtime CSV yields runtime.svg. Returns the written paths.
std::vector<std::string> emit_plots(const std::string& csv_path, const std::string& out_dir);

}  // namespace nonsubmax

#endif  // NONSUBMAX_BENCH_HPP_
