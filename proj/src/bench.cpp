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

#include "nonsubmax/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "nonsubmax/errors.hpp"
#include "nonsubmax/greedy.hpp"
#include "nonsubmax/instance_io.hpp"
#include "nonsubmax/kalman.hpp"
#include "nonsubmax/latency.hpp"
#include "nonsubmax/oracle.hpp"
#include "nonsubmax/ratios.hpp"
#include "nonsubmax/rng.hpp"
#include "svg_plot.hpp"

namespace nonsubmax {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double elapsed_s(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Stream tags so the per-instance streams of the two experiment families
// never collide.
constexpr std::uint64_t kPerfTag = 0x706572667631ull;     // "perfv1"
constexpr std::uint64_t kRuntimeTag = 0x72756e747631ull;  // "runtv1"

// Draw order per instance: transitions A_0.., then measurements C_0..
// (row-major), then per block the compute latencies followed by the
// transmit latencies.
GeneratedInstance generate(std::uint64_t tag, const ExperimentConfig& config, double sigma_v,
                           int trial, int state_dim, int sensors) {
  SplitMix64 rng = SplitMix64::stream(
      config.seed, {tag, std::bit_cast<std::uint64_t>(sigma_v),
                    static_cast<std::uint64_t>(sensors), static_cast<std::uint64_t>(trial)});
  const int steps = config.horizon + 1;

  ordered_json objective;
  objective["kind"] = "kalman";
  objective["state_dim"] = state_dim;
  ordered_json a_seq = ordered_json::array();
  for (int k = 0; k + 1 < steps; ++k) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < state_dim * state_dim; ++i) a.push_back(rng.normal());
    a_seq.push_back(std::move(a));
  }
  objective["A_seq"] = std::move(a_seq);
  ordered_json c_seq = ordered_json::array();
  for (int k = 0; k < steps; ++k) {
    ordered_json c = ordered_json::array();
    for (int i = 0; i < sensors * state_dim; ++i) c.push_back(rng.normal());
    c_seq.push_back(std::move(c));
  }
  objective["C_seq"] = std::move(c_seq);
  ordered_json w = ordered_json::array(), pi0 = ordered_json::array();
  for (int r = 0; r < state_dim; ++r)
    for (int c = 0; c < state_dim; ++c) {
      w.push_back(r == c ? 2.0 : 0.0);
      pi0.push_back(r == c ? 1.0 : 0.0);
    }
  objective["W"] = std::move(w);
  objective["Pi0"] = std::move(pi0);
  ordered_json sigma = ordered_json::array();
  for (int k = 0; k < steps; ++k) sigma.push_back(std::vector<double>(sensors, sigma_v));
  objective["sigma"] = std::move(sigma);

  ordered_json blocks = ordered_json::array();
  for (int k = 0; k < steps; ++k) {
    ordered_json block = ordered_json::array();
    for (int i = 0; i < sensors; ++i)
      block.push_back("s" + std::to_string(k) + "_" + std::to_string(i));
    blocks.push_back(std::move(block));
  }

  ordered_json constraints = ordered_json::array();
  for (int k = 0; k < steps; ++k) {
    LatencyProfile profile;
    for (int i = 0; i < sensors; ++i) {
      double c = rng.exponential(config.compute_rate);
      profile.compute.push_back(c);
    }
    for (int i = 0; i < sensors; ++i) {
      double t = rng.exponential(config.transmit_rate);
      while (t == 0.0) t = rng.exponential(config.transmit_rate);
      profile.transmit.push_back(t);
    }
    std::vector<int> all(sensors);
    for (int i = 0; i < sensors; ++i) all[i] = i;
    double budget = config.budget_fraction * h_c(all, profile);
    ordered_json c;
    c["kind"] = "latency";
    c["scope_block"] = k;
    c["budget"] = budget;
    c["payload"] = {{"compute", profile.compute}, {"transmit", profile.transmit}};
    constraints.push_back(std::move(c));
  }

  ordered_json doc;
  doc["blocks"] = std::move(blocks);
  doc["objective"] = std::move(objective);
  doc["constraints"] = std::move(constraints);
  doc["disjoint_blocks"] = true;

  GeneratedInstance out;
  out.json_text = doc.dump(2) + "\n";
  out.instance = parse_instance_text(out.json_text);
  return out;
}

}  // namespace

std::vector<double> ExperimentConfig::sigmas() const {
  if (!sigma_range.empty()) return sigma_range;
  std::vector<double> out;
  for (int s = 1; s <= 30; ++s) out.push_back(static_cast<double>(s));
  return out;
}

std::vector<int> ExperimentConfig::sweep() const {
  if (!sensor_sweep.empty()) return sensor_sweep;
  std::vector<int> out;
  for (int m = 20; m <= 30; ++m) out.push_back(m);
  return out;
}

ExperimentConfig config_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInputError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInputError("config root must be a JSON object");

  ExperimentConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "state_dim") config.state_dim = value.get<int>();
    else if (key == "sensors_per_step") config.sensors_per_step = value.get<int>();
    else if (key == "horizon") config.horizon = value.get<int>();
    else if (key == "sigma_range") config.sigma_range = value.get<std::vector<double>>();
    else if (key == "trials") config.trials = value.get<int>();
    else if (key == "seed") config.seed = value.get<std::uint64_t>();
    else if (key == "compute_rate") config.compute_rate = value.get<double>();
    else if (key == "transmit_rate") config.transmit_rate = value.get<double>();
    else if (key == "budget_fraction") config.budget_fraction = value.get<double>();
    else if (key == "sensor_sweep") config.sensor_sweep = value.get<std::vector<int>>();
    else if (key == "runtime_trials") config.runtime_trials = value.get<int>();
    else if (key == "runtime_sigma") config.runtime_sigma = value.get<double>();
    else if (key == "runtime_state_dim") config.runtime_state_dim = value.get<int>();
    else if (key == "exact_ratio_cap") config.exact_ratio_cap = value.get<int>();
    else if (key == "threads") config.threads = value.get<int>();
    else throw InvalidInputError("unknown config field '" + key + "'");
  }
  if (config.trials < 1 || config.runtime_trials < 1)
    throw InvalidInputError("trial counts must be at least 1");
  if (config.compute_rate <= 0 || config.transmit_rate <= 0)
    throw InvalidInputError("latency rates must be positive");
  if (config.budget_fraction <= 0 || config.budget_fraction > 1)
    throw InvalidInputError("budget_fraction must be in (0, 1]");
  return config;
}

GeneratedInstance gen_instance(const ExperimentConfig& config, double sigma_v, int trial) {
  return generate(kPerfTag, config, sigma_v, trial, config.state_dim, config.sensors_per_step);
}

GeneratedInstance gen_runtime_instance(const ExperimentConfig& config, int sensors, int trial) {
  return generate(kRuntimeTag, config, config.runtime_sigma, trial, config.runtime_state_dim,
                  sensors);
}

namespace {

// Exact ratios when the ground set allows it, otherwise the spectral bound
// for the objective and the slack bound for each latency constraint. Both
// sides of every guarantee stay conservative under the bounds.
void fill_ratio_inputs(const ProblemInstance& instance, int cap, GuaranteeInputs& in) {
  if (instance.ground.size() <= cap) {
    RatioReport r = exact_ratios(*instance.objective, cap);
    in.gamma_f = r.gamma;
    in.kappa_f = r.kappa;
    in.alpha_f = r.alpha;
    in.alpha_tilde = constraint_curvatures(instance, cap);
    return;
  }
  const auto* kalman = dynamic_cast<const KalmanObjective*>(instance.objective.get());
  if (kalman == nullptr)
    throw SizeLimitError("ground set exceeds the exact ratio cap and the objective has no bound");
  SpectralRatioBounds b = kalman_ratio_bounds(kalman->instance());
  in.gamma_f = b.gamma_lower;
  in.kappa_f = b.gamma_lower;
  in.alpha_f = b.alpha_upper;
  in.alpha_tilde.clear();
  for (const ConstraintSpec& c : instance.constraints) {
    const auto* latency = dynamic_cast<const LatencyCost*>(c.cost.get());
    if (latency == nullptr)
      throw SizeLimitError("ground set exceeds the exact ratio cap and a constraint has no bound");
    in.alpha_tilde.push_back(latency_curvature_bound(latency->profile()));
  }
}

TrialRecord analyze_trial(const ProblemInstance& instance, double sigma_v, int trial, int cap) {
  TrialRecord rec;
  rec.sigma_v = sigma_v;
  rec.trial = trial;

  auto t0 = std::chrono::steady_clock::now();
  ParallelGreedyResult par = parallel_greedy(instance, 1);
  rec.time_parallel_s = elapsed_s(t0);

  t0 = std::chrono::steady_clock::now();
  GeneralGreedyResult gen = general_greedy(instance);
  rec.time_general_s = elapsed_s(t0);

  OracleResult opt = brute_force_opt(instance);
  rec.f_parallel = instance.objective_value(par.solution);
  rec.f_general = instance.objective_value(gen.solution);
  rec.f_opt = opt.value;
  rec.ratio_parallel = opt.value > 0 ? rec.f_parallel / opt.value : 1.0;
  rec.ratio_general = opt.value > 0 ? rec.f_general / opt.value : 1.0;

  GuaranteeInputs in;
  fill_ratio_inputs(instance, cap, in);
  in.gamma_tilde_f = greedy_submodularity_ratio(instance, par.traces);
  in.psi = greedy_choice_ratios(instance, gen.trace, PsiMode::kExact, &opt.optimum);
  for (const StepRecord& s : gen.trace.steps)
    if (s.accepted) in.constraint_marginals.push_back(s.constraint_marginal);
  for (const ConstraintSpec& c : instance.constraints) in.budgets.push_back(c.budget);
  in.prefix_length = gen.trace.prefix_length;
  ElementSet prefix = instance.empty_set();
  for (int j = 0; j < gen.trace.prefix_length; ++j)
    prefix.insert(instance.ground.flat_id(gen.trace.accepted[j]));
  for (const ConstraintSpec& c : instance.constraints) in.prefix_loads.push_back(c.value(prefix));

  rec.guarantee_parallel = parallel_guarantee(in);
  rec.guarantee_general = general_guarantee(in).tight;
  return rec;
}

constexpr const char* kPerfHeader =
    "sigma_v,trial,f_parallel,f_general,f_opt,ratio_parallel,ratio_general,"
    "guarantee_parallel,guarantee_general";
constexpr const char* kMeansHeader =
    "sigma_v,mean_ratio_parallel,mean_ratio_general,mean_guarantee_parallel,"
    "mean_guarantee_general";
constexpr const char* kRuntimeHeader =
    "m,mean_time_parallel_s,mean_time_general_s,parallel_faster";

}  // namespace

PerformanceResult run_performance_experiment(const ExperimentConfig& config) {
  const std::vector<double> sigmas = config.sigmas();
  const int trials = config.trials;
  const std::size_t total = sigmas.size() * static_cast<std::size_t>(trials);

  PerformanceResult result;
  result.records.resize(total);

  int workers = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(total)));

  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= total) return;
      try {
        double sigma_v = sigmas[i / trials];
        int trial = static_cast<int>(i % trials);
        GeneratedInstance g = gen_instance(config, sigma_v, trial);
        result.records[i] = analyze_trial(g.instance, sigma_v, trial, config.exact_ratio_cap);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Wall times are deliberately kept out of the CSVs so identical seeds give
  // byte-identical files.
  std::ostringstream csv;
  csv << kPerfHeader << "\n";
  for (const TrialRecord& r : result.records)
    csv << num(r.sigma_v) << "," << r.trial << "," << num(r.f_parallel) << ","
        << num(r.f_general) << "," << num(r.f_opt) << "," << num(r.ratio_parallel) << ","
        << num(r.ratio_general) << "," << num(r.guarantee_parallel) << ","
        << num(r.guarantee_general) << "\n";
  result.csv = csv.str();

  std::ostringstream means;
  means << kMeansHeader << "\n";
  for (std::size_t si = 0; si < sigmas.size(); ++si) {
    double rp = 0, rg = 0, gp = 0, gg = 0;
    for (int t = 0; t < trials; ++t) {
      const TrialRecord& r = result.records[si * trials + t];
      rp += r.ratio_parallel;
      rg += r.ratio_general;
      gp += r.guarantee_parallel;
      gg += r.guarantee_general;
    }
    means << num(sigmas[si]) << "," << num(rp / trials) << "," << num(rg / trials) << ","
          << num(gp / trials) << "," << num(gg / trials) << "\n";
  }
  result.means_csv = means.str();
  return result;
}

RuntimeResult run_runtime_experiment(const ExperimentConfig& config) {
  RuntimeResult result;
  for (int m : config.sweep()) {
    RuntimeRow row;
    row.sensors = m;
    for (int trial = 0; trial < config.runtime_trials; ++trial) {
      GeneratedInstance g = gen_runtime_instance(config, m, trial);

      auto t0 = std::chrono::steady_clock::now();
      ParallelGreedyResult par = parallel_greedy(g.instance, config.threads);
      row.mean_time_parallel_s += elapsed_s(t0);

      t0 = std::chrono::steady_clock::now();
      GeneralGreedyResult gen = general_greedy(g.instance);
      row.mean_time_general_s += elapsed_s(t0);

      if (!is_feasible(g.instance, par.solution) || !is_feasible(g.instance, gen.solution))
        throw NumericalError("a solver returned an infeasible solution");
    }
    row.mean_time_parallel_s /= config.runtime_trials;
    row.mean_time_general_s /= config.runtime_trials;
    row.parallel_faster = row.mean_time_parallel_s < row.mean_time_general_s;
    result.rows.push_back(row);
  }

  std::ostringstream csv;
  csv << kRuntimeHeader << "\n";
  for (const RuntimeRow& r : result.rows)
    csv << r.sensors << "," << num(r.mean_time_parallel_s) << "," << num(r.mean_time_general_s)
        << "," << (r.parallel_faster ? 1 : 0) << "\n";
  result.csv = csv.str();
  return result;
}

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open CSV file '" + path + "'");
  CsvTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line_no == 1) {
      table.header = cells;
      continue;
    }
    if (cells.size() != table.header.size())
      throw InvalidInputError("CSV line " + std::to_string(line_no) + ": expected " +
                              std::to_string(table.header.size()) + " fields, got " +
                              std::to_string(cells.size()));
    std::vector<double> row;
    for (const std::string& c : cells) {
      char* end = nullptr;
      double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0')
        throw InvalidInputError("CSV line " + std::to_string(line_no) + ": '" + c +
                                "' is not a number");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw InvalidInputError("CSV file '" + path + "' is empty");
  if (table.rows.empty()) throw InvalidInputError("CSV file '" + path + "' has no data rows");
  return table;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& csv_path, const std::string& out_dir) {
  CsvTable table = parse_csv(csv_path);
  const std::string header = join(table.header);
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;

  auto write_plot = [&](const std::string& name, SvgLinePlot& plot) {
    std::string path = (std::filesystem::path(out_dir) / name).string();
    write_text_file(path, plot.render());
    written.push_back(path);
  };

  if (header == kPerfHeader || header == kMeansHeader) {
    // Per-sigma means in x order of appearance.
    std::vector<double> xs;
    std::vector<double> rp, rg, gp, gg;
    std::map<double, std::size_t> index;
    std::vector<int> counts;
    const bool raw = header == kPerfHeader;
    for (const auto& row : table.rows) {
      double sigma = row[0];
      auto [it, inserted] = index.emplace(sigma, xs.size());
      if (inserted) {
        xs.push_back(sigma);
        rp.push_back(0);
        rg.push_back(0);
        gp.push_back(0);
        gg.push_back(0);
        counts.push_back(0);
      }
      std::size_t at = it->second;
      rp[at] += row[raw ? 5 : 1];
      rg[at] += row[raw ? 6 : 2];
      gp[at] += row[raw ? 7 : 3];
      gg[at] += row[raw ? 8 : 4];
      counts[at] += 1;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      rp[i] /= counts[i];
      rg[i] /= counts[i];
      gp[i] /= counts[i];
      gg[i] /= counts[i];
    }

    SvgLinePlot ratios("Mean solution quality relative to the exhaustive optimum",
                       "sensor noise level", "f(solution) / f(optimum)");
    ratios.set_x(xs);
    ratios.add_series("parallel greedy", rp);
    ratios.add_series("general greedy", rg);
    write_plot("ratios.svg", ratios);

    SvgLinePlot guarantees("Mean a-priori guarantees", "sensor noise level", "guarantee factor");
    guarantees.set_x(xs);
    guarantees.add_series("parallel greedy", gp);
    guarantees.add_series("general greedy", gg);
    write_plot("guarantees.svg", guarantees);
    return written;
  }

  if (header == kRuntimeHeader) {
    std::vector<double> xs, tp, tg;
    for (const auto& row : table.rows) {
      xs.push_back(row[0]);
      tp.push_back(row[1]);
      tg.push_back(row[2]);
    }
    SvgLinePlot runtime("Mean solver wall time", "sensors per step", "seconds");
    runtime.set_x(xs);
    runtime.add_series("parallel greedy", tp);
    runtime.add_series("general greedy", tg);
    write_plot("runtime.svg", runtime);
    return written;
  }

  throw InvalidInputError("unrecognized CSV header: " + header);
}

}  // namespace nonsubmax
