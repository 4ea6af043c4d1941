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
#include "steercert/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "steercert/error.hpp"
#include "steercert/report.hpp"

namespace steercert {

namespace {

Eigen::MatrixXcd gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::MatrixXcd m(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) m(r, c) = Complex(n(rng), n(rng));
  }
  return m;
}

Eigen::MatrixXcd random_unitary(int d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gaussian(d, d, rng));
  return qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

EnsemblePair random_ensemble_pair(int d, std::mt19937_64& rng) {
  const Eigen::MatrixXcd g = gaussian(d, d, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  const Eigen::MatrixXcd sqrt_rho = es.operatorSqrt();

  EnsemblePair out;
  std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);
  for (int which = 0; which < 2; ++which) {
    const Eigen::MatrixXcd v = sqrt_rho * random_unitary(d, rng);
    auto& kets = which == 0 ? out.set_a : out.set_b;
    auto& weights = which == 0 ? out.weights_a : out.weights_b;
    for (int k = 0; k < d; ++k) {
      const double w = v.col(k).squaredNorm();
      weights.push_back(w);
      kets.emplace_back(std::polar(1.0, phase(rng)) * v.col(k) / std::sqrt(w));
    }
  }
  return out;
}

std::vector<CheckResult> run_verification(const SchmidtSpec& spec,
                                          const VerificationOptions& options) {
  const int d = spec.dim();
  std::vector<CheckResult> out;
  auto record = [&](std::string name, bool ok, std::string detail) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };

  const SteeringFunctional functional = maximal_violation_functional(spec);
  const Assemblage assemblage = assemblage_from(schmidt_state(spec), canonical_measurements(d));

  {
    const double beta = steering_value(functional, assemblage);
    record("maximal_value", std::abs(beta - 2.0) <= 1e-10 && assemblage.is_valid(1e-9),
           "beta=" + format_fixed(beta));
  }
  {
    const double bound = lhs_bound(functional);
    const double closed = 1.0 + std::sqrt(spec.max_lambda());
    record("lhs_closed_form", std::abs(bound - closed) <= 1e-9 && bound < 2.0,
           "beta_lhs=" + format_fixed(bound) + " closed_form=" + format_fixed(closed));
  }
  {
    std::mt19937_64 rng(options.seed);
    double worst = 0.0;
    int rejected = 0;
    int done = 0;
    bool ok = true;
    while (done < options.uniqueness_trials && rejected < 100 * options.uniqueness_trials) {
      const EnsemblePair pair = random_ensemble_pair(d, rng);
      UniqueDistributions ud;
      try {
        UniqueDistributionsOptions o;
        o.coeff_floor = 1e-3;
        ud = unique_distributions(pair.set_a, pair.set_b, o);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kVanishingCoefficient) {
          ++rejected;
          continue;
        }
        ok = false;
        break;
      }
      double dev = std::max({ud.oracle_residual, ud.ensemble_residual});
      for (int k = 0; k < d; ++k) {
        dev = std::max({dev, std::abs(ud.q[k] - pair.weights_a[k]),
                        std::abs(ud.lam[k] - pair.weights_b[k])});
      }
      worst = std::max(worst, dev);
      ++done;
    }
    ok = ok && done == options.uniqueness_trials && worst <= 1e-8;
    record("unique_distributions", ok,
           std::to_string(done) + " random pairs, worst deviation " + fmt(worst));
  }
  {
    GuessingOptions g = options.guessing;
    g.keep_attack = false;
    for (int x_star = 0; x_star < 2; ++x_star) {
      const double analytic = analytic_pguess_at_max(functional, x_star);
      const auto cert = guessing_probability(functional, 2.0 - 1e-6, x_star, g);
      const double diff = std::abs(cert.p_guess_dual - analytic);
      record("analytic_agreement_x" + std::to_string(x_star),
             diff <= 5e-4 && cert.report.status != SolveStatus::kNumericalFailure,
             "p_guess_dual=" + format_fixed(cert.p_guess_dual) +
                 " analytic=" + format_fixed(analytic) + " status=" +
                 std::string(status_name(cert.report.status)));
    }
  }
  return out;
}

}  // namespace steercert
