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

#ifndef NONSUBMAX_KALMAN_HPP_
#define NONSUBMAX_KALMAN_HPP_

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "nonsubmax/element.hpp"
#include "nonsubmax/set_function.hpp"

namespace nonsubmax {

// Sensor scheduling data for a linear time-varying system over a finite
// horizon. Block k of the ground set holds the candidate sensors of step k;
// element (k, i) is row i of the step-k measurement matrix.
struct KalmanInstance {
  std::vector<Eigen::MatrixXd> transitions;     // A_0 .. A_{horizon-1}
  std::vector<Eigen::MatrixXd> measurements;    // C_0 .. C_horizon
  Eigen::MatrixXd process_noise;                // W, SPD
  Eigen::MatrixXd initial_covariance;           // SPD
  std::vector<std::vector<double>> sensor_std;  // sigma[k][i] > 0

  int horizon() const { return static_cast<int>(measurements.size()) - 1; }
  int state_dim() const { return static_cast<int>(process_noise.rows()); }
  GroundSet ground() const;

  // Dimension and positivity checks; SPD is tested with an eigenvalue
  // tolerance of 1e-10 relative to the trace.
  void check() const;
};

// Prior covariance at the start of a step.
struct InfoState {
  Eigen::MatrixXd covariance;
  int step = 0;
};

struct SensorRow {
  Eigen::RowVectorXd row;
  double sigma = 1.0;
};

// One covariance propagation step: condition the prior on the selected
// sensors (information form), then push through the dynamics and add the
// process noise. Uses symmetric factorizations throughout and symmetrizes
// the result.
InfoState riccati_step(const InfoState& state, const Eigen::MatrixXd& transition,
                       const Eigen::MatrixXd& process_noise,
                       const std::vector<SensorRow>& selected);

// Mean square estimation error at the end of the horizon when the sensors
// in a are used: runs the recursion through step horizon-1, then applies the
// final-step measurement update outside the recursion (the final-step
// sensors enter only this last conditioning, not a propagation).
double estimation_error(const KalmanInstance& instance, const ElementSet& a);

// The estimation-error reduction objective: error(empty) - error(a).
// Monotone nondecreasing and normalized to zero at the empty set.
double error_reduction(const KalmanInstance& instance, const ElementSet& a);

// Lower bound on the submodularity and DR ratios and upper bound on the
// curvatures of the error-reduction objective, from the eigenvalue extremes
// of the no-sensor and all-sensor information matrices.
struct SpectralRatioBounds {
  double gamma_lower = 0;  // 0 < gamma_lower <= 1
  double alpha_upper = 1;  // = 1 - gamma_lower^2 < 1
};

SpectralRatioBounds kalman_ratio_bounds(const KalmanInstance& instance);

// error_reduction wrapped as a memoized objective.
class KalmanObjective : public SetFunction {
 public:
  explicit KalmanObjective(KalmanInstance instance);

  int universe() const override { return universe_; }
  std::string kind() const override { return "kalman"; }
  const KalmanInstance& instance() const { return instance_; }

 protected:
  double eval(const ElementSet& a) const override;

 private:
  KalmanInstance instance_;
  int universe_;
  double base_error_ = 0;
};

}  // namespace nonsubmax

#endif  // NONSUBMAX_KALMAN_HPP_
