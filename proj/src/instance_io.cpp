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

#include "nonsubmax/instance_io.hpp"

#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>
#include <unordered_map>

#include "nonsubmax/errors.hpp"
#include "nonsubmax/kalman.hpp"
#include "nonsubmax/latency.hpp"

namespace nonsubmax {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw InvalidInputError(message); }

const json& require(const json& obj, const char* field, const std::string& where) {
  auto it = obj.find(field);
  if (it == obj.end()) fail(where + ": missing field '" + field + "'");
  return *it;
}

std::vector<double> number_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) fail(where + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Eigen::MatrixXd parse_matrix(const json& j, int rows, int cols, const std::string& where) {
  std::vector<double> flat = number_array(j, where);
  if (static_cast<int>(flat.size()) != rows * cols)
    fail(where + ": expected " + std::to_string(rows * cols) + " entries (row-major), got " +
         std::to_string(flat.size()));
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = flat[r * cols + c];
  return m;
}

struct Labels {
  std::vector<std::string> by_flat;
  std::unordered_map<std::string, int> to_flat;
};

// Builds the objective over the logical universe. Weight/cover maps are
// keyed by logical item name; missing names default to zero weight or no
// covered items.
std::shared_ptr<const SetFunction> parse_logical_objective(
    const json& spec, const std::vector<std::string>& logical_names) {
  const std::string kind = require(spec, "kind", "objective").get<std::string>();
  const int m = static_cast<int>(logical_names.size());

  if (kind == "modular") {
    const json& weights = require(spec, "weights", "modular objective");
    std::vector<double> w(m, 0.0);
    for (int i = 0; i < m; ++i) {
      auto it = weights.find(logical_names[i]);
      if (it != weights.end()) w[i] = it->get<double>();
    }
    return std::make_shared<ModularFunction>(std::move(w));
  }
  if (kind == "cardinality") return std::make_shared<CardinalityFunction>(m);
  if (kind == "coverage") {
    const json& covers = require(spec, "covers", "coverage objective");
    std::vector<std::vector<int>> u(m);
    for (int i = 0; i < m; ++i) {
      auto it = covers.find(logical_names[i]);
      if (it != covers.end()) u[i] = it->get<std::vector<int>>();
    }
    return std::make_shared<CoverageFunction>(std::move(u));
  }
  if (kind == "table") {
    std::vector<double> values = number_array(require(spec, "values", "table objective"),
                                              "table objective values");
    return std::make_shared<TableFunction>(m, std::move(values));
  }
  fail("unknown objective kind '" + kind + "'");
}

std::shared_ptr<const SetFunction> parse_constraint_cost(const json& spec, int universe,
                                                         const std::vector<int>& scope_ids,
                                                         const Labels& labels,
                                                         const std::string& where) {
  const std::string kind = require(spec, "kind", where).get<std::string>();
  const json payload = spec.contains("payload") ? spec.at("payload") : json::object();

  if (kind == "modular") {
    const json& weights = require(payload, "weights", where + " payload");
    std::vector<double> w(universe, 0.0);
    for (int id : scope_ids) {
      auto it = weights.find(labels.by_flat[id]);
      if (it != weights.end()) w[id] = it->get<double>();
    }
    return std::make_shared<ModularFunction>(std::move(w));
  }
  if (kind == "cardinality") return std::make_shared<CardinalityFunction>(universe);
  if (kind == "coverage") {
    const json& covers = require(payload, "covers", where + " payload");
    std::vector<std::vector<int>> u(universe);
    for (int id : scope_ids) {
      auto it = covers.find(labels.by_flat[id]);
      if (it != covers.end()) u[id] = it->get<std::vector<int>>();
    }
    return std::make_shared<CoverageFunction>(std::move(u));
  }
  if (kind == "table") {
    std::vector<double> values =
        number_array(require(payload, "values", where + " payload"), where + " table values");
    auto local = std::make_shared<TableFunction>(static_cast<int>(scope_ids.size()),
                                                 std::move(values));
    return std::make_shared<EmbeddedFunction>(universe, scope_ids, std::move(local));
  }
  if (kind == "latency") {
    LatencyProfile profile;
    profile.compute = number_array(require(payload, "compute", where + " payload"),
                                   where + " compute latencies");
    profile.transmit = number_array(require(payload, "transmit", where + " payload"),
                                    where + " transmit latencies");
    return std::make_shared<LatencyCost>(universe, scope_ids, std::move(profile));
  }
  fail("unknown constraint kind '" + kind + "' in " + where);
}

std::shared_ptr<const SetFunction> parse_kalman_objective(const json& spec,
                                                          const GroundSet& ground) {
  KalmanInstance inst;
  const int nx = require(spec, "state_dim", "kalman objective").get<int>();
  if (nx <= 0) fail("kalman objective: state_dim must be positive");
  const json& c_seq = require(spec, "C_seq", "kalman objective");
  const json& sigma = require(spec, "sigma", "kalman objective");
  if (!c_seq.is_array() || !sigma.is_array() || c_seq.size() != sigma.size())
    fail("kalman objective: C_seq and sigma must be arrays of equal length");
  if (static_cast<int>(c_seq.size()) != ground.block_count())
    fail("kalman objective: expected one measurement step per block");
  for (int k = 0; k < ground.block_count(); ++k) {
    const int rows = ground.block_size(k);
    inst.measurements.push_back(parse_matrix(c_seq[k], rows, nx, "kalman C_seq entry"));
    inst.sensor_std.push_back(number_array(sigma[k], "kalman sigma entry"));
  }
  const json& a_seq = require(spec, "A_seq", "kalman objective");
  if (!a_seq.is_array() || static_cast<int>(a_seq.size()) != ground.block_count() - 1)
    fail("kalman objective: expected one transition matrix per step before the target");
  for (const auto& a : a_seq)
    inst.transitions.push_back(parse_matrix(a, nx, nx, "kalman A_seq entry"));
  inst.process_noise = parse_matrix(require(spec, "W", "kalman objective"), nx, nx, "kalman W");
  inst.initial_covariance =
      parse_matrix(require(spec, "Pi0", "kalman objective"), nx, nx, "kalman Pi0");
  return std::make_shared<KalmanObjective>(std::move(inst));
}

}  // namespace

ProblemInstance parse_instance_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("instance root must be a JSON object");

  const json& blocks = require(doc, "blocks", "instance");
  if (!blocks.is_array() || blocks.empty()) fail("'blocks' must be a nonempty array");

  Labels labels;
  std::vector<int> sizes;
  for (const auto& block : blocks) {
    if (!block.is_array()) fail("each block must be an array of element labels");
    sizes.push_back(static_cast<int>(block.size()));
    for (const auto& label : block) {
      if (!label.is_string()) fail("element labels must be strings");
      std::string s = label.get<std::string>();
      if (!labels.to_flat.emplace(s, static_cast<int>(labels.by_flat.size())).second)
        fail("duplicate element label '" + s + "'");
      labels.by_flat.push_back(std::move(s));
    }
  }

  ProblemInstance instance;
  instance.ground = GroundSet(sizes);
  const int n = instance.ground.size();

  // Logical items: shared_identity maps labels onto common names; everything
  // else is its own item. Indices follow first occurrence in flat order.
  std::vector<int> logical_of(n);
  std::vector<std::string> logical_names;
  {
    std::unordered_map<std::string, int> name_index;
    const json identity = doc.contains("shared_identity") ? doc.at("shared_identity")
                                                          : json::object();
    if (!identity.is_object()) fail("'shared_identity' must be an object");
    for (const auto& [key, value] : identity.items())
      if (!labels.to_flat.count(key)) fail("shared_identity names unknown element '" + key + "'");
    for (int id = 0; id < n; ++id) {
      const std::string& label = labels.by_flat[id];
      auto it = identity.find(label);
      std::string name = it != identity.end() ? it->get<std::string>() : label;
      auto [pos, inserted] = name_index.emplace(name, static_cast<int>(logical_names.size()));
      if (inserted) logical_names.push_back(name);
      logical_of[id] = pos->second;
    }
  }
  const bool remapped = static_cast<int>(logical_names.size()) != n;
  if (remapped) instance.shared_identity = logical_of;

  const json& objective = require(doc, "objective", "instance");
  const std::string obj_kind = require(objective, "kind", "objective").get<std::string>();
  if (obj_kind == "kalman") {
    if (remapped) fail("kalman objectives do not support shared_identity");
    instance.objective = parse_kalman_objective(objective, instance.ground);
  } else {
    auto logical = parse_logical_objective(objective, logical_names);
    if (remapped)
      instance.objective = std::make_shared<RemappedFunction>(std::move(logical), logical_of, n);
    else
      instance.objective = std::move(logical);
  }

  const json& constraints = require(doc, "constraints", "instance");
  if (!constraints.is_array() || constraints.empty())
    fail("'constraints' must be a nonempty array");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const json& spec = constraints[i];
    const std::string where = "constraint " + std::to_string(i);
    ConstraintSpec c;
    int block = require(spec, "scope_block", where).get<int>();
    if (block < 0 || block >= instance.ground.block_count())
      fail(where + ": scope_block out of range");
    std::vector<int> scope_ids;
    for (int local = 0; local < instance.ground.block_size(block); ++local)
      scope_ids.push_back(instance.ground.flat_id(Element{block, local}));
    c.scope = ElementSet::from_ids(n, scope_ids);
    c.budget = require(spec, "budget", where).get<double>();
    c.cost = parse_constraint_cost(spec, n, scope_ids, labels, where);
    instance.constraints.push_back(std::move(c));
  }

  instance.disjoint_blocks = require(doc, "disjoint_blocks", "instance").get<bool>();
  return instance;
}

ProblemInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open instance file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str());
}

namespace {

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  ordered_json out = ordered_json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
  return out;
}

std::string flat_label(const GroundSet& ground, int id) {
  Element e = ground.element_at(id);
  return "s" + std::to_string(e.block) + "_" + std::to_string(e.local);
}

// Payload of a builtin function; `name_of` maps the function's own indices
// to labels.
ordered_json function_to_json(const SetFunction& f,
                              const std::function<std::string(int)>& name_of) {
  ordered_json out;
  if (const auto* modular = dynamic_cast<const ModularFunction*>(&f)) {
    out["kind"] = "modular";
    ordered_json weights;
    for (int i = 0; i < modular->universe(); ++i) weights[name_of(i)] = modular->weights()[i];
    out["weights"] = std::move(weights);
    return out;
  }
  if (dynamic_cast<const CardinalityFunction*>(&f)) {
    out["kind"] = "cardinality";
    return out;
  }
  if (const auto* coverage = dynamic_cast<const CoverageFunction*>(&f)) {
    out["kind"] = "coverage";
    ordered_json covers;
    for (int i = 0; i < coverage->universe(); ++i) covers[name_of(i)] = coverage->covers()[i];
    out["covers"] = std::move(covers);
    return out;
  }
  if (const auto* table = dynamic_cast<const TableFunction*>(&f)) {
    out["kind"] = "table";
    out["values"] = table->values();
    return out;
  }
  throw InvalidInputError("function kind '" + f.kind() + "' has no file representation here");
}

ordered_json kalman_to_json(const KalmanObjective& objective) {
  const KalmanInstance& inst = objective.instance();
  ordered_json out;
  out["kind"] = "kalman";
  out["state_dim"] = inst.state_dim();
  ordered_json a_seq = ordered_json::array();
  for (const auto& a : inst.transitions) a_seq.push_back(matrix_to_json(a));
  out["A_seq"] = std::move(a_seq);
  ordered_json c_seq = ordered_json::array();
  for (const auto& c : inst.measurements) c_seq.push_back(matrix_to_json(c));
  out["C_seq"] = std::move(c_seq);
  out["W"] = matrix_to_json(inst.process_noise);
  out["Pi0"] = matrix_to_json(inst.initial_covariance);
  out["sigma"] = inst.sensor_std;
  return out;
}

}  // namespace

std::string instance_to_json(const ProblemInstance& instance) {
  const GroundSet& ground = instance.ground;
  ordered_json doc;

  ordered_json blocks = ordered_json::array();
  for (int b = 0; b < ground.block_count(); ++b) {
    ordered_json block = ordered_json::array();
    for (int local = 0; local < ground.block_size(b); ++local)
      block.push_back(flat_label(ground, ground.flat_id(Element{b, local})));
    blocks.push_back(std::move(block));
  }
  doc["blocks"] = std::move(blocks);

  const SetFunction* objective = instance.objective.get();
  ordered_json identity;
  if (const auto* remapped = dynamic_cast<const RemappedFunction*>(objective)) {
    // The loader numbers logical items by first occurrence; only maps in
    // that canonical order round-trip.
    int seen = 0;
    for (int logical : remapped->logical_of()) {
      if (logical > seen) throw InvalidInputError("identity map is not in first-occurrence order");
      if (logical == seen) ++seen;
    }
    for (int id = 0; id < ground.size(); ++id)
      identity[flat_label(ground, id)] = "L" + std::to_string(remapped->logical_of()[id]);
    objective = &remapped->base();
    doc["objective"] = function_to_json(
        *objective, [](int i) { return "L" + std::to_string(i); });
  } else if (const auto* kalman = dynamic_cast<const KalmanObjective*>(objective)) {
    doc["objective"] = kalman_to_json(*kalman);
  } else {
    doc["objective"] = function_to_json(
        *objective, [&](int i) { return flat_label(ground, i); });
  }

  ordered_json constraints = ordered_json::array();
  for (const ConstraintSpec& c : instance.constraints) {
    ordered_json spec;
    std::vector<int> scope_ids = c.scope.ids();
    if (scope_ids.empty()) throw InvalidInputError("cannot serialize an empty constraint scope");
    int block = ground.element_at(scope_ids.front()).block;
    for (int id : scope_ids)
      if (ground.element_at(id).block != block)
        throw InvalidInputError("cannot serialize a constraint scope spanning blocks");
    if (static_cast<int>(scope_ids.size()) != ground.block_size(block))
      throw InvalidInputError("cannot serialize a constraint scope covering a partial block");

    if (const auto* latency = dynamic_cast<const LatencyCost*>(c.cost.get())) {
      spec["kind"] = "latency";
      spec["scope_block"] = block;
      spec["budget"] = c.budget;
      spec["payload"] = {{"compute", latency->profile().compute},
                         {"transmit", latency->profile().transmit}};
    } else if (const auto* embedded = dynamic_cast<const EmbeddedFunction*>(c.cost.get())) {
      ordered_json payload = function_to_json(embedded->local(), [](int i) {
        return "local" + std::to_string(i);
      });
      spec["kind"] = payload.at("kind");
      spec["scope_block"] = block;
      spec["budget"] = c.budget;
      payload.erase("kind");
      spec["payload"] = std::move(payload);
    } else {
      ordered_json payload =
          function_to_json(*c.cost, [&](int i) { return flat_label(ground, i); });
      spec["kind"] = payload.at("kind");
      spec["scope_block"] = block;
      spec["budget"] = c.budget;
      payload.erase("kind");
      spec["payload"] = std::move(payload);
    }
    constraints.push_back(std::move(spec));
  }
  doc["constraints"] = std::move(constraints);
  doc["disjoint_blocks"] = instance.disjoint_blocks;
  if (!identity.empty()) doc["shared_identity"] = std::move(identity);

  return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write file '" + path + "'");
  out << text;
}

}  // namespace nonsubmax
