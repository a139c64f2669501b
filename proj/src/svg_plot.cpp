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

#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nonsubmax/errors.hpp"

namespace nonsubmax {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 30, kTop = 50, kBottom = 60;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

SvgLinePlot::SvgLinePlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgLinePlot::set_x(std::vector<double> xs) { xs_ = std::move(xs); }

void SvgLinePlot::add_series(std::string name, std::vector<double> ys) {
  if (ys.size() != xs_.size())
    throw InvalidInputError("plot series length does not match the x values");
  series_.emplace_back(std::move(name), std::move(ys));
}

std::string SvgLinePlot::render() const {
  if (xs_.empty() || series_.empty()) throw InvalidInputError("plot has no data");

  double xmin = *std::min_element(xs_.begin(), xs_.end());
  double xmax = *std::max_element(xs_.begin(), xs_.end());
  if (xmax == xmin) xmax = xmin + 1;
  double ymin = 0, ymax = -1e300;
  for (const auto& [name, ys] : series_)
    for (double y : ys) {
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (ymax <= ymin) ymax = ymin + 1;
  ymax *= 1.05;

  auto px = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * (kWidth - kLeft - kRight);
  };
  auto py = [&](double y) {
    return kHeight - kBottom - (y - ymin) / (ymax - ymin) * (kHeight - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << title_ << "</text>\n";

  // axes
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
      << kWidth - kRight << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (double x : xs_) {
    double cx = px(x);
    svg << "<line class=\"xtick\" x1=\"" << cx << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << cx << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << cx << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-size=\"9\">" << fmt(x) << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    double y = ymin + (ymax - ymin) * i / 5.0;
    svg << "<line class=\"ytick\" x1=\"" << kLeft - 5 << "\" y1=\"" << py(y) << "\" x2=\""
        << kLeft << "\" y2=\"" << py(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(y) + 3
        << "\" text-anchor=\"end\" font-size=\"9\">" << fmt(y) << "</text>\n";
  }
  svg << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label_ << "</text>\n";
  svg << "<text x=\"18\" y=\"" << (kTop + kHeight - kBottom) / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
      << (kTop + kHeight - kBottom) / 2 << ")\">" << y_label_ << "</text>\n";

  for (std::size_t s = 0; s < series_.size(); ++s) {
    const auto& [name, ys] = series_[s];
    const char* color = kColors[s % 4];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs_.size(); ++i)
      svg << fmt(px(xs_[i])) << "," << fmt(py(ys[i])) << " ";
    svg << "\"/>\n";
    double ly = kTop + 16.0 * static_cast<double>(s);
    svg << "<line x1=\"" << kWidth - kRight - 150 << "\" y1=\"" << ly << "\" x2=\""
        << kWidth - kRight - 130 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << kWidth - kRight - 125 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\">" << name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace nonsubmax
