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
#include "steercert/report.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "steercert/error.hpp"

namespace steercert {

std::string certificate_json(const GuessingCertificate& cert) {
  nlohmann::ordered_json j;
  j["d"] = cert.d;
  j["beta_obs"] = cert.beta_obs;
  j["x_star"] = cert.x_star;
  j["p_guess_primal"] = cert.p_guess_primal;
  j["p_guess_dual"] = cert.p_guess_dual;
  j["h_min_bits"] = cert.h_min_bits;
  j["status"] = std::string(status_name(cert.report.status));
  j["gap"] = cert.report.gap;
  j["wall_time_s"] = cert.report.wall_time;
  return j.dump();
}

SweepRow to_row(const GuessingCertificate& cert) {
  return SweepRow{cert.d,
                  cert.beta_obs,
                  cert.p_guess_primal,
                  cert.p_guess_dual,
                  cert.h_min_bits,
                  std::string(status_name(cert.report.status)),
                  cert.report.gap,
                  cert.report.iterations,
                  cert.report.wall_time};
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string write_sweep_csv(std::span<const SweepRow> rows) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.d);
    for (double v : {r.beta_obs, r.p_guess_primal, r.p_guess_dual, r.h_min_bits}) {
      out += ',';
      out += format_number(v);
    }
    out += ',';
    out += r.status;
    out += ',';
    out += format_number(r.gap);
    out += ',';
    out += std::to_string(r.iterations);
    out += ',';
    out += format_number(r.wall_time_s);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& field, int line_no) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || errno == ERANGE) {
    throw Error(ErrorKind::kParse,
                "line " + std::to_string(line_no) + ": bad number '" + field + "'");
  }
  return v;
}

int parse_int(const std::string& field, int line_no) {
  const double v = parse_double(field, line_no);
  if (v != std::floor(v)) {
    throw Error(ErrorKind::kParse,
                "line " + std::to_string(line_no) + ": expected an integer, got '" + field + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  int line_no = 0;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kSweepCsvHeader) throw Error(ErrorKind::kParse, "missing or wrong CSV header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": expected 9 fields");
    }
    rows.push_back(SweepRow{parse_int(f[0], line_no), parse_double(f[1], line_no),
                            parse_double(f[2], line_no), parse_double(f[3], line_no),
                            parse_double(f[4], line_no), f[5], parse_double(f[6], line_no),
                            parse_int(f[7], line_no), parse_double(f[8], line_no)});
  }
  if (!header_seen) throw Error(ErrorKind::kParse, "empty CSV");
  return rows;
}

std::string line_chart_svg(std::span<const PlotSeries> series, std::string_view x_label,
                           std::string_view y_label) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 420.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 130.0;
  constexpr double kTop = 20.0;
  constexpr double kBottom = 50.0;
  static constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                            "#bcbd22", "#17becf"};

  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) {
    xmin = 0.0;
    xmax = 1.0;
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  ymin = std::min(ymin, 0.0);
  if (ymax <= ymin) ymax = ymin + 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double xv = xmin + (xmax - xmin) * t / kTicks;
    const double yv = ymin + (ymax - ymin) * t / kTicks;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << kTop + ph << "\" x2=\"" << px(xv)
       << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 18
       << "\" text-anchor=\"middle\">" << format_number(std::round(xv * 1e4) / 1e4)
       << "</text>\n";
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << kLeft
       << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4
       << "\" text-anchor=\"end\">" << format_number(std::round(yv * 1e4) / 1e4)
       << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << kTop + ph / 2 << ")\">" << y_label << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [x, y] : series[s].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!first) os << ' ';
      os << px(x) << ',' << py(y);
      first = false;
    }
    os << "\"/>\n";
    const double ly = kTop + 14.0 + 16.0 * static_cast<double>(s);
    os << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + pw + 30
       << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    os << "<text x=\"" << kLeft + pw + 34 << "\" y=\"" << ly << "\">" << series[s].label
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace steercert
