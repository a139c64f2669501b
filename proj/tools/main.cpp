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

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "nonsubmax/bench.hpp"
#include "nonsubmax/errors.hpp"
#include "nonsubmax/greedy.hpp"
#include "nonsubmax/instance_io.hpp"
#include "nonsubmax/kalman.hpp"
#include "nonsubmax/latency.hpp"
#include "nonsubmax/oracle.hpp"
#include "nonsubmax/ratios.hpp"

namespace {

using nlohmann::ordered_json;
using namespace nonsubmax;

ordered_json element_json(const Element& e) { return ordered_json::array({e.block, e.local}); }

ordered_json set_json(const GroundSet& ground, const ElementSet& s) {
  ordered_json out = ordered_json::array();
  for (int id : s.ids()) out.push_back(element_json(ground.element_at(id)));
  return out;
}

ordered_json ratio_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

ordered_json steps_json(const std::vector<StepRecord>& steps) {
  ordered_json out = ordered_json::array();
  for (const StepRecord& s : steps) {
    ordered_json rec;
    rec["step"] = s.step;
    rec["candidate"] = element_json(s.candidate);
    rec["ratio"] = ratio_or_null(s.ratio);
    rec["objective_marginal"] = s.objective_marginal;
    rec["constraint_marginal"] = s.constraint_marginal;
    rec["constraint_index"] = s.constraint_index;
    rec["accepted"] = s.accepted;
    out.push_back(std::move(rec));
  }
  return out;
}

void require_valid(const ProblemInstance& instance) {
  ValidationReport report = validate_instance(instance);
  if (report.ok()) return;
  std::string message = "instance failed validation:";
  for (const Violation& v : report.violations) message += "\n  [" + v.code + "] " + v.message;
  throw InvalidInputError(message);
}

int cmd_solve(const std::string& path, const std::string& algorithm,
              const std::string& trace_path) {
  ProblemInstance instance = load_instance_file(path);
  require_valid(instance);

  ordered_json out;
  out["algorithm"] = algorithm;
  if (algorithm == "parallel") {
    ParallelGreedyResult result = parallel_greedy(instance);
    out["solution"] = set_json(instance.ground, result.solution);
    out["value"] = instance.objective_value(result.solution);
    if (!trace_path.empty()) {
      ordered_json blocks = ordered_json::array();
      for (const BlockTrace& t : result.traces) {
        ordered_json b;
        b["constraint_index"] = t.constraint_index;
        b["steps"] = steps_json(t.steps);
        b["truncation_index"] = t.truncation_index;
        b["first_rejected"] =
            t.first_rejected ? element_json(*t.first_rejected) : ordered_json(nullptr);
        b["best_singleton"] =
            t.best_singleton ? element_json(*t.best_singleton) : ordered_json(nullptr);
        b["chose_best_singleton"] = t.chose_best_singleton;
        b["block_solution"] = set_json(instance.ground, t.block_solution);
        blocks.push_back(std::move(b));
      }
      ordered_json trace;
      trace["algorithm"] = "parallel";
      trace["blocks"] = std::move(blocks);
      write_text_file(trace_path, trace.dump(2) + "\n");
    }
  } else {
    GeneralGreedyResult result = general_greedy(instance);
    out["solution"] = set_json(instance.ground, result.solution);
    out["value"] = instance.objective_value(result.solution);
    if (!trace_path.empty()) {
      ordered_json trace;
      trace["algorithm"] = "general";
      trace["steps"] = steps_json(result.trace.steps);
      trace["prefix_length"] = result.trace.prefix_length;
      write_text_file(trace_path, trace.dump(2) + "\n");
    }
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_oracle(const std::string& path) {
  ProblemInstance instance = load_instance_file(path);
  require_valid(instance);
  OracleResult result = brute_force_opt(instance);
  ordered_json out;
  out["optimum"] = set_json(instance.ground, result.optimum);
  out["value"] = result.value;
  out["enumerated"] = result.enumerated;
  out["ties"] = result.ties;
  std::cout << out.dump(2) << "\n";
  return 0;
}

ordered_json witness_json(const GroundSet& ground, const Witness& w) {
  if (!w.valid) return nullptr;
  ordered_json out;
  out["a"] = set_json(ground, w.a);
  out["b"] = set_json(ground, w.b);
  if (w.v) out["v"] = element_json(ground.element_at(*w.v));
  return out;
}

int cmd_ratios(const std::string& path, bool bounds, bool witnesses) {
  ProblemInstance instance = load_instance_file(path);
  require_valid(instance);

  ordered_json out;
  if (!bounds) {
    RatioReport r = exact_ratios(*instance.objective);
    out["method"] = "exact";
    out["objective"] = {{"gamma", r.gamma},
                        {"kappa", r.kappa},
                        {"alpha", r.alpha},
                        {"alpha_ext", r.alpha_ext}};
    if (witnesses)
      out["objective"]["witnesses"] = {{"gamma", witness_json(instance.ground, r.gamma_witness)},
                                       {"kappa", witness_json(instance.ground, r.kappa_witness)},
                                       {"alpha", witness_json(instance.ground, r.alpha_witness)},
                                       {"alpha_ext",
                                        witness_json(instance.ground, r.alpha_ext_witness)}};
    ordered_json constraints = ordered_json::array();
    for (const ConstraintSpec& c : instance.constraints) {
      RatioReport cr = constraint_exact_ratios(c);
      constraints.push_back({{"gamma", cr.gamma},
                             {"kappa", cr.kappa},
                             {"alpha", cr.alpha},
                             {"alpha_ext", cr.alpha_ext}});
    }
    out["constraints"] = std::move(constraints);

    std::printf("objective ratios (exact): gamma=%.6g kappa=%.6g alpha=%.6g alpha_ext=%.6g\n",
                r.gamma, r.kappa, r.alpha, r.alpha_ext);
  } else {
    const auto* kalman = dynamic_cast<const KalmanObjective*>(instance.objective.get());
    if (kalman == nullptr)
      throw InvalidInputError("--bounds needs a kalman objective (spectral bounds)");
    SpectralRatioBounds b = kalman_ratio_bounds(kalman->instance());
    out["method"] = "bounds";
    out["objective"] = {{"gamma_lower", b.gamma_lower}, {"alpha_upper", b.alpha_upper}};
    ordered_json constraints = ordered_json::array();
    for (const ConstraintSpec& c : instance.constraints) {
      const auto* latency = dynamic_cast<const LatencyCost*>(c.cost.get());
      if (latency == nullptr)
        throw InvalidInputError("--bounds needs latency constraints (slack bounds)");
      constraints.push_back(
          {{"alpha_ext_upper", latency_curvature_bound(latency->profile())}});
    }
    out["constraints"] = std::move(constraints);
    std::printf("objective ratio bounds: gamma_lower=%.6g alpha_upper=%.6g\n", b.gamma_lower,
                b.alpha_upper);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_gen(const std::string& preset, std::uint64_t seed, const std::string& out_dir,
            int trials_override) {
  ExperimentConfig config;
  config.seed = seed;
  std::filesystem::create_directories(out_dir);
  int written = 0;
  if (preset == "paper-fig1") {
    int trials = trials_override > 0 ? trials_override : config.trials;
    for (double sigma : config.sigmas()) {
      for (int trial = 0; trial < trials; ++trial) {
        GeneratedInstance g = gen_instance(config, sigma, trial);
        char name[64];
        std::snprintf(name, sizeof(name), "fig1_sigma%02d_trial%02d.json",
                      static_cast<int>(sigma), trial);
        write_text_file((std::filesystem::path(out_dir) / name).string(), g.json_text);
        ++written;
      }
    }
  } else if (preset == "paper-fig2") {
    int trials = trials_override > 0 ? trials_override : config.runtime_trials;
    for (int m : config.sweep()) {
      for (int trial = 0; trial < trials; ++trial) {
        GeneratedInstance g = gen_runtime_instance(config, m, trial);
        char name[64];
        std::snprintf(name, sizeof(name), "fig2_m%02d_trial%02d.json", m, trial);
        write_text_file((std::filesystem::path(out_dir) / name).string(), g.json_text);
        ++written;
      }
    }
  } else {
    throw InvalidInputError("unknown preset '" + preset + "' (paper-fig1 or paper-fig2)");
  }
  std::printf("wrote %d instance files to %s\n", written, out_dir.c_str());
  return 0;
}

ExperimentConfig load_config(const std::string& path) {
  if (path.empty()) return ExperimentConfig{};
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return config_from_json_text(buffer.str());
}

int cmd_bench(const std::string& mode, const std::string& config_path, const std::string& out) {
  ExperimentConfig config = load_config(config_path);
  if (mode == "perf") {
    PerformanceResult result = run_performance_experiment(config);
    write_text_file(out, result.csv);
    std::filesystem::path means = std::filesystem::path(out);
    means.replace_filename(means.stem().string() + "_means" + means.extension().string());
    write_text_file(means.string(), result.means_csv);
    std::printf("wrote %zu trial rows to %s and per-sigma means to %s\n", result.records.size(),
                out.c_str(), means.string().c_str());
  } else if (mode == "runtime") {
    RuntimeResult result = run_runtime_experiment(config);
    write_text_file(out, result.csv);
    std::printf("wrote %zu sweep rows to %s\n", result.rows.size(), out.c_str());
    for (const RuntimeRow& row : result.rows)
      std::printf("  m=%d parallel %.4fs general %.4fs %s\n", row.sensors,
                  row.mean_time_parallel_s, row.mean_time_general_s,
                  row.parallel_faster ? "(parallel faster)" : "(general faster)");
  } else {
    throw InvalidInputError("unknown bench mode '" + mode + "' (perf or runtime)");
  }
  return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& out_dir) {
  std::vector<std::string> written = emit_plots(csv_path, out_dir);
  for (const std::string& path : written) std::printf("wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy maximization of monotone set functions under multiple "
               "monotone set-function constraints"};
  app.require_subcommand(1);

  std::string instance_path, trace_path, algorithm = "parallel";
  auto* solve = app.add_subcommand("solve", "Run a greedy solver on an instance file");
  solve->add_option("instance", instance_path, "instance JSON file")->required();
  solve->add_option("--alg", algorithm, "parallel or general")
      ->check(CLI::IsMember({"parallel", "general"}));
  solve->add_option("--trace", trace_path, "write the decision trace to this file");

  std::string oracle_path;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive exact solver (small instances)");
  oracle->add_option("instance", oracle_path, "instance JSON file")->required();

  std::string ratios_path;
  bool ratios_bounds = false, ratios_exact = false, ratios_witnesses = false;
  auto* ratios = app.add_subcommand("ratios", "Structural ratios of the instance functions");
  ratios->add_option("instance", ratios_path, "instance JSON file")->required();
  ratios->add_flag("--exact", ratios_exact, "exhaustive scan (default)");
  ratios->add_flag("--bounds", ratios_bounds, "spectral/slack bounds instead of the scan");
  ratios->add_flag("--witnesses", ratios_witnesses, "include witness sets");

  std::string preset, gen_dir;
  std::uint64_t gen_seed = 1;
  int gen_trials = 0;
  auto* gen = app.add_subcommand("gen", "Write benchmark instance files");
  gen->add_option("--preset", preset, "paper-fig1 or paper-fig2")->required();
  gen->add_option("--seed", gen_seed, "stream seed");
  gen->add_option("-o,--out", gen_dir, "output directory")->required();
  gen->add_option("--trials", gen_trials, "override the trials per setting");

  std::string bench_mode, bench_config, bench_out;
  auto* bench = app.add_subcommand("bench", "Run the benchmark experiments");
  bench->add_option("mode", bench_mode, "perf or runtime")->required();
  bench->add_option("--config", bench_config, "experiment config JSON");
  bench->add_option("-o,--out", bench_out, "output CSV path")->required();

  std::string plot_csv, plot_dir;
  auto* plot = app.add_subcommand("plot", "Render SVG charts from an experiment CSV");
  plot->add_option("csv", plot_csv, "experiment CSV")->required();
  plot->add_option("-o,--out", plot_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(instance_path, algorithm, trace_path);
    if (oracle->parsed()) return cmd_oracle(oracle_path);
    if (ratios->parsed()) {
      if (ratios_bounds && ratios_exact)
        throw InvalidInputError("--exact and --bounds are mutually exclusive");
      return cmd_ratios(ratios_path, ratios_bounds, ratios_witnesses);
    }
    if (gen->parsed()) return cmd_gen(preset, gen_seed, gen_dir, gen_trials);
    if (bench->parsed()) return cmd_bench(bench_mode, bench_config, bench_out);
    if (plot->parsed()) return cmd_plot(plot_csv, plot_dir);
  } catch (const SizeLimitError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const InvalidInputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
