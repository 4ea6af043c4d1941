// Copyright 2026 The steercert Authors
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
#pragma once

// Output formats: certificate JSON, sweep CSV, and a static SVG line chart.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "steercert/guessing.hpp"

namespace steercert {

// {"d", "beta_obs", "x_star", "p_guess_primal", "p_guess_dual", "h_min_bits",
//  "status", "gap", "wall_time_s"}
std::string certificate_json(const GuessingCertificate& cert);

struct SweepRow {
  int d = 0;
  double beta_obs = 0.0;
  double p_guess_primal = 0.0;
  double p_guess_dual = 0.0;
  double h_min_bits = 0.0;
  std::string status;
  double gap = 0.0;
  int iterations = 0;
  double wall_time_s = 0.0;
};

inline constexpr std::string_view kSweepCsvHeader =
    "d,beta_obs,p_guess_primal,p_guess_dual,h_min_bits,status,gap,iterations,wall_time_s";

SweepRow to_row(const GuessingCertificate& cert);

// 12 significant digits.
std::string format_number(double v);
// Fixed-point with the given number of decimals.
std::string format_fixed(double v, int decimals = 12);

std::string write_sweep_csv(std::span<const SweepRow> rows);
// Throws kParse on a missing or wrong header, or malformed rows.
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// One polyline per series, axes with tick labels.
std::string line_chart_svg(std::span<const PlotSeries> series, std::string_view x_label,
                           std::string_view y_label);

}  // namespace steercert
