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

#include "nonsubmax/kalman.hpp"

#include <algorithm>
#include <cmath>

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

namespace {

constexpr double kSpdTol = 1e-10;  // relative to the trace

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Solves M X = I for symmetric positive definite M via Cholesky.
Eigen::MatrixXd spd_inverse(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw ConditioningError("matrix is numerically singular or not positive definite");
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(m.rows(), m.cols()));
  if (!inv.allFinite()) throw ConditioningError("non-finite values in a covariance solve");
  return inv;
}

void require_spd(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) throw InvalidInputError(std::string(name) + " must be square");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + m.cwiseAbs().maxCoeff()))
    throw InvalidInputError(std::string(name) + " must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  double tr = m.trace();
  if (!(tr > 0) || eig.eigenvalues().minCoeff() <= kSpdTol * tr)
    throw InvalidInputError(std::string(name) + " must be positive definite");
}

// Sum of sigma^-2 c^T c over the selected sensor rows of one step, accumulated
// in ascending element order.
Eigen::MatrixXd step_information(const KalmanInstance& instance, int step,
                                 const std::vector<int>& locals) {
  const int nx = instance.state_dim();
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(nx, nx);
  for (int i : locals) {
    const Eigen::RowVectorXd row = instance.measurements[step].row(i);
    const double sigma = instance.sensor_std[step][i];
    info += (row.transpose() * row) / (sigma * sigma);
  }
  return info;
}

Eigen::MatrixXd conditioned_covariance(const Eigen::MatrixXd& prior,
                                       const Eigen::MatrixXd& info) {
  Eigen::MatrixXd m = symmetrized(spd_inverse(prior) + info);
  return symmetrized(spd_inverse(m));
}

}  // namespace

GroundSet KalmanInstance::ground() const {
  std::vector<int> sizes;
  sizes.reserve(measurements.size());
  for (const auto& c : measurements) sizes.push_back(static_cast<int>(c.rows()));
  return GroundSet(sizes);
}

void KalmanInstance::check() const {
  const int nx = state_dim();
  if (measurements.empty()) throw InvalidInputError("at least one measurement step is required");
  if (static_cast<int>(transitions.size()) != horizon())
    throw InvalidInputError("expected one transition matrix per step before the target");
  require_spd(process_noise, "process noise covariance");
  require_spd(initial_covariance, "initial covariance");
  if (initial_covariance.rows() != nx)
    throw InvalidInputError("initial covariance dimension mismatch");
  for (const auto& a : transitions)
    if (a.rows() != nx || a.cols() != nx)
      throw InvalidInputError("transition matrix dimension mismatch");
  if (sensor_std.size() != measurements.size())
    throw InvalidInputError("expected one noise vector per measurement step");
  for (std::size_t k = 0; k < measurements.size(); ++k) {
    if (measurements[k].cols() != nx)
      throw InvalidInputError("measurement matrix dimension mismatch");
    if (static_cast<int>(sensor_std[k].size()) != measurements[k].rows())
      throw InvalidInputError("expected one noise level per sensor row");
    for (double s : sensor_std[k])
      if (!(s > 0)) throw InvalidInputError("sensor noise levels must be positive");
  }
}

InfoState riccati_step(const InfoState& state, const Eigen::MatrixXd& transition,
                       const Eigen::MatrixXd& process_noise,
                       const std::vector<SensorRow>& selected) {
  const int nx = static_cast<int>(state.covariance.rows());
  Eigen::MatrixXd info = Eigen::MatrixXd::Zero(nx, nx);
  for (const SensorRow& s : selected) info += (s.row.transpose() * s.row) / (s.sigma * s.sigma);
  Eigen::MatrixXd posterior = conditioned_covariance(state.covariance, info);
  Eigen::MatrixXd next = symmetrized(process_noise + transition * posterior * transition.transpose());
  return InfoState{std::move(next), state.step + 1};
}

double estimation_error(const KalmanInstance& instance, const ElementSet& a) {
  const GroundSet ground = instance.ground();
  if (a.universe() != ground.size())
    throw InvalidInputError("selection drawn from a different ground set");

  std::vector<std::vector<int>> locals(instance.measurements.size());
  for (int id : a.ids()) {
    Element e = ground.element_at(id);
    locals[e.block].push_back(e.local);
  }

  Eigen::MatrixXd p = instance.initial_covariance;
  for (int k = 0; k < instance.horizon(); ++k) {
    Eigen::MatrixXd posterior = conditioned_covariance(p, step_information(instance, k, locals[k]));
    p = symmetrized(instance.process_noise +
                    instance.transitions[k] * posterior * instance.transitions[k].transpose());
  }
  // Final-step sensors only condition the estimate; there is no propagation
  // after the target step.
  Eigen::MatrixXd final_cov =
      conditioned_covariance(p, step_information(instance, instance.horizon(), locals[instance.horizon()]));
  return final_cov.trace();
}

double error_reduction(const KalmanInstance& instance, const ElementSet& a) {
  double base = estimation_error(instance, ElementSet(a.universe()));
  return std::max(0.0, base - estimation_error(instance, a));
}

SpectralRatioBounds kalman_ratio_bounds(const KalmanInstance& instance) {
  const GroundSet ground = instance.ground();
  ElementSet all(ground.size());
  for (int id = 0; id < ground.size(); ++id) all.insert(id);

  // Covariance at the target step with no sensors / all sensors, before the
  // final-step update.
  auto propagate = [&](const ElementSet& sel) {
    std::vector<std::vector<int>> locals(instance.measurements.size());
    for (int id : sel.ids()) {
      Element e = ground.element_at(id);
      locals[e.block].push_back(e.local);
    }
    Eigen::MatrixXd p = instance.initial_covariance;
    for (int k = 0; k < instance.horizon(); ++k) {
      Eigen::MatrixXd posterior =
          conditioned_covariance(p, step_information(instance, k, locals[k]));
      p = symmetrized(instance.process_noise +
                      instance.transitions[k] * posterior * instance.transitions[k].transpose());
    }
    return p;
  };

  Eigen::MatrixXd p_none = propagate(ElementSet(ground.size()));
  Eigen::MatrixXd p_all = propagate(all);

  std::vector<int> last_block(ground.block_size(ground.block_count() - 1));
  for (std::size_t i = 0; i < last_block.size(); ++i) last_block[i] = static_cast<int>(i);
  Eigen::MatrixXd denom_matrix = symmetrized(
      spd_inverse(p_all) + step_information(instance, instance.horizon(), last_block));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_none(symmetrized(spd_inverse(p_none)),
                                                          Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_denom(denom_matrix, Eigen::EigenvaluesOnly);

  SpectralRatioBounds out;
  out.gamma_lower = eig_none.eigenvalues().minCoeff() / eig_denom.eigenvalues().maxCoeff();
  out.alpha_upper = 1.0 - out.gamma_lower * out.gamma_lower;
  return out;
}

KalmanObjective::KalmanObjective(KalmanInstance instance)
    : instance_(std::move(instance)), universe_(0) {
  instance_.check();
  universe_ = instance_.ground().size();
  base_error_ = estimation_error(instance_, ElementSet(universe_));
}

double KalmanObjective::eval(const ElementSet& a) const {
  return std::max(0.0, base_error_ - estimation_error(instance_, a));
}

}  // namespace nonsubmax
