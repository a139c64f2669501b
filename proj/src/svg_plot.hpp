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

#ifndef NONSUBMAX_SRC_SVG_PLOT_HPP_
#define NONSUBMAX_SRC_SVG_PLOT_HPP_

#include <string>
#include <vector>

namespace nonsubmax {

// Minimal standalone SVG line chart: shared x values, one polyline per
// series, one labeled tick per x value.
class SvgLinePlot {
 public:
  SvgLinePlot(std::string title, std::string x_label, std::string y_label);

  void set_x(std::vector<double> xs);
  void add_series(std::string name, std::vector<double> ys);

  std::string render() const;

 private:
  std::string title_, x_label_, y_label_;
  std::vector<double> xs_;
  std::vector<std::pair<std::string, std::vector<double>>> series_;
};

}  // namespace nonsubmax

#endif  // NONSUBMAX_SRC_SVG_PLOT_HPP_
