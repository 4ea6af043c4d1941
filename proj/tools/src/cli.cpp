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
#include "steercert_cli/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steercert/error.hpp"
#include "steercert/guessing.hpp"
#include "steercert/io.hpp"
#include "steercert/report.hpp"
#include "steercert/steering.hpp"
#include "steercert/sweep.hpp"
#include "steercert/verification.hpp"

namespace steercert::cli {
namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  int d = 0;
  std::string schmidt = "maximal";
  int x_star = 1;
  std::optional<double> beta;
  std::optional<double> beta_min;
  std::optional<double> beta_max;
  int steps = 20;
  double tol_gap = 1e-7;
  double tol_feas = 1e-7;
  std::string constraint = "eq";
  int threads = 0;
  std::string out;
  std::string svg;
  std::uint64_t seed = 0;
  std::string functional_path;
  std::string assemblage_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
}

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

SchmidtSpec schmidt_of(const Config& c) {
  return SchmidtSpec(parse_schmidt(c.schmidt, c.d));
}

SteeringFunctional functional_of(const Config& c) {
  if (!c.functional_path.empty()) return functional_from_json(read_file(c.functional_path));
  return maximal_violation_functional(schmidt_of(c));
}

GuessingOptions guessing_options(const Config& c) {
  GuessingOptions o;
  o.solver.gap_tol = c.tol_gap;
  o.solver.feas_tol = c.tol_feas;
  if (c.constraint == "eq") {
    o.constraint = BetaConstraint::kEquality;
  } else if (c.constraint == "geq") {
    o.constraint = BetaConstraint::kAtLeast;
  } else {
    throw Error(ErrorKind::kInvalidInput, "constraint must be eq or geq");
  }
  if (!(c.tol_gap > 0.0) || !(c.tol_feas > 0.0)) {
    throw Error(ErrorKind::kInvalidInput, "tolerances must be positive");
  }
  return o;
}

bool failed(SolveStatus s) {
  return s == SolveStatus::kNumericalFailure || s == SolveStatus::kInfeasible ||
         s == SolveStatus::kUnbounded;
}

int cmd_construct(const Config& c, std::ostream& out) {
  const SchmidtSpec spec = schmidt_of(c);
  const SteeringFunctional f = maximal_violation_functional(spec);
  const MeasurementSet meas = canonical_measurements(spec.dim());
  const Assemblage sigma = assemblage_from(schmidt_state(spec), meas);
  const std::filesystem::path dir = c.out.empty() ? std::filesystem::path(".") : std::filesystem::path(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "functional.json", to_json(f) + "\n");
  write_file(dir / "measurements.json", to_json(meas) + "\n");
  write_file(dir / "assemblage.json", to_json(sigma) + "\n");
  out << "beta=" << fixed12(steering_value(f, sigma)) << " beta_lhs=" << fixed12(lhs_bound(f))
      << "\n";
  return kExitOk;
}

int cmd_value(const Config& c, std::ostream& out) {
  const SteeringFunctional f = functional_of(c);
  const Assemblage sigma =
      c.assemblage_path.empty()
          ? assemblage_from(schmidt_state(schmidt_of(c)), canonical_measurements(c.d > 0 ? c.d : f.scenario().n_outcomes))
          : assemblage_from_json(read_file(c.assemblage_path));
  out << "beta=" << fixed12(steering_value(f, sigma)) << "\n";
  return kExitOk;
}

int cmd_lhs_bound(const Config& c, std::ostream& out) {
  const LhsOptimum opt = lhs_optimum(functional_of(c));
  out << "beta_lhs=" << fixed12(opt.value) << " strategy=";
  for (std::size_t x = 0; x < opt.strategy.size(); ++x) out << (x ? "," : "") << opt.strategy[x];
  out << "\n";
  return kExitOk;
}

int cmd_certify(const Config& c, std::ostream& out) {
  if (!c.beta) throw Error(ErrorKind::kInvalidInput, "--beta is required");
  const SteeringFunctional f = functional_of(c);
  GuessingOptions o = guessing_options(c);
  o.keep_attack = false;
  const GuessingCertificate cert = guessing_probability(f, *c.beta, c.x_star, o);
  const std::string json = certificate_json(cert) + "\n";
  out << json;
  if (!c.out.empty()) write_file(c.out, json);
  return failed(cert.report.status) ? kExitSolverFailure : kExitOk;
}

int cmd_sweep(const Config& c, std::ostream& out) {
  const SteeringFunctional f = functional_of(c);
  SweepOptions o;
  o.guessing = guessing_options(c);
  o.guessing.keep_attack = false;
  o.threads = c.threads;
  const double lo = c.beta_min ? *c.beta_min : lhs_bound(f);
  const double hi = c.beta_max ? *c.beta_max : quantum_maximum(f, o.guessing.solver) - 1e-6;
  if (c.steps < 1) throw Error(ErrorKind::kInvalidInput, "--steps must be at least 1");
  if (c.steps > 1 && !(lo < hi)) throw Error(ErrorKind::kInvalidInput, "--beta-min must be below --beta-max");
  const std::vector<double> grid = linear_grid(lo, hi, c.steps);
  const std::vector<GuessingCertificate> certs = sweep(f, grid, c.x_star, o);

  std::vector<SweepRow> rows;
  PlotSeries series{"d=" + std::to_string(f.scenario().n_outcomes), {}};
  bool any_ok = false;
  for (const GuessingCertificate& cert : certs) {
    rows.push_back(to_row(cert));
    if (!failed(cert.report.status)) {
      any_ok = true;
      series.points.emplace_back(cert.beta_obs, cert.h_min_bits);
    }
  }
  const std::string csv = write_sweep_csv(rows);
  if (c.out.empty()) {
    out << csv;
  } else {
    write_file(c.out, csv);
  }
  if (!c.svg.empty()) {
    const std::vector<PlotSeries> all{series};
    write_file(c.svg, line_chart_svg(all, "beta_obs", "h_min_bits"));
  }
  return any_ok ? kExitOk : kExitSolverFailure;
}

int cmd_verify(const Config& c, std::ostream& out) {
  const SchmidtSpec spec = schmidt_of(c);
  VerificationOptions o;
  o.seed = c.seed;
  o.guessing = guessing_options(c);
  bool all = true;
  for (const CheckResult& r : run_verification(spec, o)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    all = all && r.passed;
  }
  return all ? kExitOk : kExitVerificationFailure;
}

void add_instance(CLI::App* app, Config& c) {
  app->add_option("--d", c.d, "Local dimension")->check(CLI::Range(2, 64));
  app->add_option("--schmidt", c.schmidt, "Schmidt coefficients, comma separated, or 'maximal'");
}

void add_solver(CLI::App* app, Config& c) {
  app->add_option("--xstar", c.x_star, "Input whose outcome is guessed");
  app->add_option("--tol-gap", c.tol_gap, "Duality gap tolerance");
  app->add_option("--tol-feas", c.tol_feas, "Feasibility tolerance");
  app->add_option("--constraint", c.constraint, "Functional constraint: eq or geq")
      ->check(CLI::IsMember({"eq", "geq"}));
  app->add_option("--functional", c.functional_path, "Functional JSON instead of --schmidt");
}

}  // namespace

std::vector<double> parse_schmidt(const std::string& text, int d) {
  if (text == "maximal") {
    if (d < 1) throw Error(ErrorKind::kInvalidInput, "--d is required with --schmidt maximal");
    return std::vector<double>(d, 1.0 / d);
  }
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidInput, "bad Schmidt coefficient '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || !std::isfinite(v)) {
      throw Error(ErrorKind::kInvalidInput, "bad Schmidt coefficient '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw Error(ErrorKind::kInvalidInput, "empty Schmidt list");
  if (d > 0 && static_cast<int>(values.size()) != d) {
    throw Error(ErrorKind::kDimensionMismatch, "expected " + std::to_string(d) +
                                                   " Schmidt coefficients, got " +
                                                   std::to_string(values.size()));
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  if (std::abs(sum - 1.0) > 1e-6) {
    throw Error(ErrorKind::kInvalidInput, "Schmidt coefficients sum to " + format_number(sum));
  }
  for (double& v : values) v /= sum;
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  if (const char* env = std::getenv("STEERCERT_THREADS")) {
    try {
      c.threads = std::stoi(env);
    } catch (const std::exception&) {
      err << "InvalidInput: STEERCERT_THREADS must be an integer\n";
      return kExitInvalidInput;
    }
  }

  CLI::App app{"Randomness certification from steering inequality violations", "steercert"};
  app.require_subcommand(1);

  auto* construct = app.add_subcommand("construct", "Write functional, measurements and assemblage");
  add_instance(construct, c);
  construct->add_option("--out", c.out, "Output directory");

  auto* value = app.add_subcommand("value", "Functional value of an assemblage");
  add_instance(value, c);
  value->add_option("--functional", c.functional_path, "Functional JSON");
  value->add_option("--assemblage", c.assemblage_path, "Assemblage JSON");

  auto* lhs = app.add_subcommand("lhs-bound", "Classical bound of a functional");
  add_instance(lhs, c);
  lhs->add_option("--functional", c.functional_path, "Functional JSON");

  auto* certify = app.add_subcommand("certify", "Certified guessing probability and min-entropy");
  add_instance(certify, c);
  add_solver(certify, c);
  certify->add_option("--beta", c.beta, "Observed functional value")->required();
  certify->add_option("--out", c.out, "Also write the certificate to this file");

  auto* sweep_cmd = app.add_subcommand("sweep", "Min-entropy over a grid of functional values");
  add_instance(sweep_cmd, c);
  add_solver(sweep_cmd, c);
  sweep_cmd->add_option("--beta-min", c.beta_min, "First grid point (default: classical bound)");
  sweep_cmd->add_option("--beta-max", c.beta_max, "Last grid point (default: maximum - 1e-6)");
  sweep_cmd->add_option("--steps", c.steps, "Number of grid points");
  sweep_cmd->add_option("--threads", c.threads, "Worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--out", c.out, "CSV path (default: stdout)");
  sweep_cmd->add_option("--svg", c.svg, "SVG chart path");

  auto* verify = app.add_subcommand("verify", "Built-in verification battery");
  add_instance(verify, c);
  verify->add_option("--seed", c.seed, "Random seed");
  verify->add_option("--tol-gap", c.tol_gap, "Duality gap tolerance");
  verify->add_option("--tol-feas", c.tol_feas, "Feasibility tolerance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*construct) return cmd_construct(c, out);
    if (*value) return cmd_value(c, out);
    if (*lhs) return cmd_lhs_bound(c, out);
    if (*certify) return cmd_certify(c, out);
    if (*sweep_cmd) return cmd_sweep(c, out);
    if (*verify) return cmd_verify(c, out);
  } catch (const IoError& e) {
    err << "IOError: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return e.kind() == ErrorKind::kInvalidProgram ? kExitSolverFailure : kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "Error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitInvalidInput;
}

}  // namespace steercert::cli
