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
#include "steercert/steering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "steercert/error.hpp"

namespace steercert {

namespace {

void check_family(const Scenario& scenario, std::span<const Operator> elements, int dim,
                  const char* what) {
  scenario.validate();
  if (static_cast<int>(elements.size()) != scenario.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": expected " + std::to_string(scenario.size()) +
                    " elements, got " + std::to_string(elements.size()));
  }
  for (const auto& op : elements) {
    if (op.dim() != dim) {
      throw Error(ErrorKind::kDimensionMismatch,
                  std::string(what) + ": element of dimension " + std::to_string(op.dim()) +
                      ", expected " + std::to_string(dim));
    }
  }
}

}  // namespace

void Scenario::validate() const {
  if (n_inputs < 1 || n_outcomes < 1 || dim_b < 1) {
    throw Error(ErrorKind::kInvalidInput, "scenario fields must be positive");
  }
}

MeasurementSet::MeasurementSet(Scenario scenario, std::vector<Operator> elements)
    : scenario_(scenario), elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorKind::kInvalidInput, "empty measurement set");
  check_family(scenario_, elements_, elements_.front().dim(), "measurement set");
}

double MeasurementSet::completeness_defect() const {
  double worst = 0.0;
  for (int x = 0; x < scenario_.n_inputs; ++x) {
    Operator sum = Operator::zero(dim_a());
    for (int a = 0; a < scenario_.n_outcomes; ++a) sum += at(a, x);
    worst = std::max(worst, max_abs_diff(sum, Operator::identity(dim_a())));
  }
  return worst;
}

bool MeasurementSet::is_valid(double completeness_tol, double psd_tol) const {
  return completeness_defect() <= completeness_tol &&
         std::all_of(elements_.begin(), elements_.end(),
                     [&](const Operator& m) { return m.is_psd(psd_tol); });
}

Assemblage::Assemblage(Scenario scenario, std::vector<Operator> elements)
    : scenario_(scenario), elements_(std::move(elements)) {
  check_family(scenario_, elements_, scenario_.dim_b, "assemblage");
}

double Assemblage::probability(int a, int x) const { return at(a, x).trace().real(); }

Operator Assemblage::conditional_state(int a, int x) const {
  const double p = probability(a, x);
  if (p == 0.0) throw Error(ErrorKind::kInvalidInput, "conditional state of a null outcome");
  return at(a, x) * Complex(1.0 / p);
}

Operator Assemblage::marginal(int x) const {
  Operator sum = Operator::zero(scenario_.dim_b);
  for (int a = 0; a < scenario_.n_outcomes; ++a) sum += at(a, x);
  return sum;
}

AssemblageResiduals Assemblage::residuals() const {
  AssemblageResiduals r;
  std::vector<Operator> marginals;
  for (int x = 0; x < scenario_.n_inputs; ++x) marginals.push_back(marginal(x));
  for (int x = 0; x < scenario_.n_inputs; ++x) {
    for (int y = x + 1; y < scenario_.n_inputs; ++y) {
      r.no_signalling = std::max(r.no_signalling, max_abs_diff(marginals[x], marginals[y]));
    }
  }
  r.normalization = std::abs(marginals[0].trace().real() - 1.0);
  r.min_eigenvalue = elements_.front().min_eigenvalue();
  for (const auto& s : elements_) {
    r.min_eigenvalue = std::min(r.min_eigenvalue, s.min_eigenvalue());
    r.hermiticity = std::max(r.hermiticity, s.hermiticity_defect());
  }
  return r;
}

bool Assemblage::is_valid(double tol) const {
  const auto r = residuals();
  return r.no_signalling <= tol && r.normalization <= tol && r.min_eigenvalue >= -tol &&
         r.hermiticity <= tol::kHermitian;
}

SteeringFunctional::SteeringFunctional(Scenario scenario, std::vector<Operator> elements)
    : scenario_(scenario), elements_(std::move(elements)) {
  check_family(scenario_, elements_, scenario_.dim_b, "steering functional");
  for (const auto& f : elements_) {
    if (!f.is_hermitian(1e-10)) {
      throw Error(ErrorKind::kNotHermitian, "steering functional elements must be Hermitian");
    }
  }
}

SteeringFunctional SteeringFunctional::from_kets(std::vector<std::vector<Ket>> basis) {
  if (basis.empty() || basis.front().empty()) {
    throw Error(ErrorKind::kInvalidInput, "functional needs at least one input and outcome");
  }
  Scenario scenario{static_cast<int>(basis.size()), static_cast<int>(basis.front().size()),
                    basis.front().front().dim()};
  std::vector<Operator> elements(scenario.size(), Operator::zero(scenario.dim_b));
  for (int x = 0; x < scenario.n_inputs; ++x) {
    auto& slice = basis[x];
    if (static_cast<int>(slice.size()) != scenario.n_outcomes) {
      throw Error(ErrorKind::kDimensionMismatch, "ragged basis kets");
    }
    for (auto& ket : slice) ket = ket.normalized();
    dual_basis(slice);  // rank precondition
    for (int a = 0; a < scenario.n_outcomes; ++a) {
      elements[scenario.index(a, x)] = Operator::projector(slice[a]);
    }
  }
  SteeringFunctional f(scenario, std::move(elements));
  f.basis_kets_ = std::move(basis);
  return f;
}

std::span<const Ket> SteeringFunctional::kets(int x) const {
  if (!basis_kets_) throw Error(ErrorKind::kInvalidInput, "functional has no basis kets");
  return basis_kets_->at(x);
}

SchmidtSpec::SchmidtSpec(std::vector<double> lambdas, double floor) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw Error(ErrorKind::kInvalidInput, "empty Schmidt spectrum");
  for (double l : lambdas_) {
    if (!std::isfinite(l)) throw Error(ErrorKind::kInvalidInput, "non-finite Schmidt coefficient");
  }
  const double total = std::accumulate(lambdas_.begin(), lambdas_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::kInvalidInput,
                "Schmidt coefficients sum to " + std::to_string(total) + ", not 1");
  }
  for (double l : lambdas_) {
    if (l < floor) {
      throw Error(ErrorKind::kNotFullRank,
                  "Schmidt coefficient " + std::to_string(l) + " below floor");
    }
  }
}

SchmidtSpec SchmidtSpec::maximal(int d) {
  if (d < 1) throw Error(ErrorKind::kInvalidInput, "dimension must be positive");
  return SchmidtSpec(std::vector<double>(d, 1.0 / d));
}

double SchmidtSpec::max_lambda() const {
  return *std::max_element(lambdas_.begin(), lambdas_.end());
}

Ket schmidt_state(const SchmidtSpec& spec) {
  const int d = spec.dim();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = std::sqrt(spec.lambdas()[i]);
  return Ket(std::move(psi));
}

Operator fourier(int d) {
  if (d < 1) throw Error(ErrorKind::kInvalidInput, "dimension must be positive");
  Eigen::MatrixXcd f(d, d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      // reduce jk mod d so the phase argument stays small
      const double phase = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
      f(j, k) = std::polar(norm, phase);
    }
  }
  return Operator(std::move(f));
}

MeasurementSet canonical_measurements(int d) {
  if (d < 2) throw Error(ErrorKind::kInvalidInput, "canonical measurements need d >= 2");
  const Operator f = fourier(d);
  std::vector<Operator> elements;
  elements.reserve(2 * d);
  for (int a = 0; a < d; ++a) elements.push_back(Operator::projector(Ket::basis(d, a)));
  for (int a = 0; a < d; ++a) {
    elements.push_back(Operator::projector(f.apply(Ket::basis(d, a))));
  }
  return MeasurementSet(Scenario{2, d, d}, std::move(elements));
}

Assemblage assemblage_from(const Ket& state, const MeasurementSet& meas) {
  const int dim_a = meas.dim_a();
  if (state.dim() % dim_a != 0) {
    throw Error(ErrorKind::kDimensionMismatch, "state dimension is not a multiple of dim_A");
  }
  const int dim_b = state.dim() / dim_a;
  const Scenario& in = meas.scenario();
  Scenario scenario{in.n_inputs, in.n_outcomes, dim_b};
  const Operator rho = Operator::projector(state);
  const Operator id_b = Operator::identity(dim_b);
  std::vector<Operator> elements;
  elements.reserve(scenario.size());
  for (int x = 0; x < scenario.n_inputs; ++x) {
    for (int a = 0; a < scenario.n_outcomes; ++a) {
      elements.push_back(partial_trace_a(kron(meas.at(a, x), id_b) * rho, dim_a, dim_b));
    }
  }
  return Assemblage(scenario, std::move(elements));
}

std::vector<Ket> chi_states(const SchmidtSpec& spec) {
  const int d = spec.dim();
  const Operator f = fourier(d);
  std::vector<Ket> out;
  out.reserve(d);
  for (int a = 0; a < d; ++a) {
    Eigen::VectorXcd v(d);
    // <a|F^dagger|i> = conj(F(i, a))
    for (int i = 0; i < d; ++i) v(i) = std::sqrt(spec.lambdas()[i]) * std::conj(f(i, a));
    out.push_back(Ket(std::move(v)).normalized());
  }
  return out;
}

SteeringFunctional maximal_violation_functional(const SchmidtSpec& spec) {
  const int d = spec.dim();
  std::vector<Ket> computational;
  for (int a = 0; a < d; ++a) computational.push_back(Ket::basis(d, a));
  return SteeringFunctional::from_kets({std::move(computational), chi_states(spec)});
}

double steering_value(const SteeringFunctional& functional, const Assemblage& assemblage) {
  if (!(functional.scenario() == assemblage.scenario())) {
    throw Error(ErrorKind::kScenarioMismatch, "functional and assemblage scenarios differ");
  }
  double beta = 0.0;
  const auto fs = functional.elements();
  const auto ss = assemblage.elements();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    // tr(F S) = sum_ij F_ij S_ji
    beta += (fs[k].matrix().transpose().cwiseProduct(ss[k].matrix())).sum().real();
  }
  return beta;
}

LhsOptimum lhs_optimum(const SteeringFunctional& functional) {
  const Scenario& s = functional.scenario();
  long long count = 1;
  for (int x = 0; x < s.n_inputs; ++x) {
    count *= s.n_outcomes;
    if (count > kMaxLhsStrategies) {
      throw Error(ErrorKind::kEnumerationTooLarge,
                  "d^n deterministic strategies exceed " + std::to_string(kMaxLhsStrategies));
    }
  }
  LhsOptimum best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<int> strategy(s.n_inputs, 0);
  for (long long k = 0; k < count; ++k) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(s.dim_b, s.dim_b);
    for (int x = 0; x < s.n_inputs; ++x) sum += functional.at(strategy[x], x).matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (sum + sum.adjoint()));
    const double top = es.eigenvalues()(s.dim_b - 1);
    if (top > best.value) {
      best.value = top;
      best.strategy = strategy;
      best.state = Ket(es.eigenvectors().col(s.dim_b - 1));
    }
    // odometer increment
    for (int x = 0; x < s.n_inputs; ++x) {
      if (++strategy[x] < s.n_outcomes) break;
      strategy[x] = 0;
    }
  }
  return best;
}

double lhs_bound(const SteeringFunctional& functional) { return lhs_optimum(functional).value; }

UniqueDistributions unique_distributions(std::span<const Ket> set_a, std::span<const Ket> set_b,
                                         const UniqueDistributionsOptions& options) {
  std::vector<Ket> phi;
  std::vector<Ket> lambda;
  for (const auto& k : set_a) phi.push_back(k.normalized());
  for (const auto& k : set_b) lambda.push_back(k.normalized());
  if (phi.size() != lambda.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "sets must have the same size");
  }
  const DualBasisPair pa = dual_basis(phi, options.rank_tol);
  const DualBasisPair pb = dual_basis(lambda, options.rank_tol);
  const int d = static_cast<int>(phi.size());

  UniqueDistributions out;
  out.expansion_u.resize(d, d);
  out.expansion_v.resize(d, d);
  for (int a = 0; a < d; ++a) {
    for (int i = 0; i < d; ++i) {
      out.expansion_u(i, a) = braket(pb.dual[i], phi[a]);
      out.expansion_v(a, i) = braket(pa.dual[a], lambda[i]);
      if (std::abs(out.expansion_u(i, a)) < options.coeff_floor ||
          std::abs(out.expansion_v(a, i)) < options.coeff_floor) {
        throw Error(ErrorKind::kVanishingCoefficient,
                    "expansion coefficient (" + std::to_string(a) + ", " + std::to_string(i) +
                        ") vanishes");
      }
    }
  }

  // ratio(a, i) = <psi_a|lambda_i> / <phi_a|omega_i> = q_a / lam_i
  Eigen::MatrixXcd ratio(d, d);
  for (int a = 0; a < d; ++a) {
    for (int i = 0; i < d; ++i) {
      ratio(a, i) = out.expansion_v(a, i) / std::conj(out.expansion_u(i, a));
    }
  }

  // q from each column, lam from each row; average and record the spread.
  Eigen::MatrixXcd q_by_i(d, d);
  Eigen::MatrixXcd lam_by_a(d, d);
  for (int i = 0; i < d; ++i) q_by_i.col(i) = ratio.col(i) / ratio.col(i).sum();
  for (int a = 0; a < d; ++a) {
    Eigen::VectorXcd inv = ratio.row(a).transpose().cwiseInverse();
    lam_by_a.col(a) = inv / inv.sum();
  }
  const Eigen::VectorXcd q_mean = q_by_i.rowwise().mean();
  const Eigen::VectorXcd lam_mean = lam_by_a.rowwise().mean();
  const double spread = std::max((q_by_i.colwise() - q_mean).cwiseAbs().maxCoeff(),
                                 (lam_by_a.colwise() - lam_mean).cwiseAbs().maxCoeff());
  out.consistency_residual = std::max({spread, q_mean.imag().cwiseAbs().maxCoeff(),
                                       lam_mean.imag().cwiseAbs().maxCoeff()});
  out.q.resize(d);
  out.lam.resize(d);
  for (int k = 0; k < d; ++k) {
    out.q[k] = q_mean(k).real();
    out.lam[k] = lam_mean(k).real();
  }

  // Vectorized ensemble equation in the real unknowns (q, lam): 2d^2 rows for
  // the real and imaginary parts of every matrix entry. Its null space must
  // be one-dimensional.
  Eigen::MatrixXd system(2 * d * d, 2 * d);
  for (int k = 0; k < d; ++k) {
    const Eigen::MatrixXcd pa_k = phi[k].amplitudes() * phi[k].amplitudes().adjoint();
    const Eigen::MatrixXcd pb_k = lambda[k].amplitudes() * lambda[k].amplitudes().adjoint();
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        const int row = 2 * (r * d + c);
        system(row, k) = pa_k(r, c).real();
        system(row + 1, k) = pa_k(r, c).imag();
        system(row, d + k) = -pb_k(r, c).real();
        system(row + 1, d + k) = -pb_k(r, c).imag();
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (sv(2 * d - 1) > options.null_tol * smax) {
    throw Error(ErrorKind::kNoCommonDecomposition,
                "the two sets share no common ensemble decomposition");
  }
  if (sv(2 * d - 2) <= options.null_tol * smax) {
    throw Error(ErrorKind::kNoCommonDecomposition, "the common decomposition is not unique");
  }
  Eigen::VectorXd null = svd.matrixV().col(2 * d - 1);
  null /= null.head(d).sum();
  for (int k = 0; k < d; ++k) {
    out.oracle_residual = std::max({out.oracle_residual, std::abs(null(k) - out.q[k]),
                                    std::abs(null(d + k) - out.lam[k])});
  }

  Eigen::MatrixXcd diff = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    diff += out.q[k] * (phi[k].amplitudes() * phi[k].amplitudes().adjoint());
    diff -= out.lam[k] * (lambda[k].amplitudes() * lambda[k].amplitudes().adjoint());
  }
  out.ensemble_residual = diff.cwiseAbs().maxCoeff();
  out.nonnegative = std::all_of(out.q.begin(), out.q.end(), [](double v) { return v >= -1e-9; }) &&
                    std::all_of(out.lam.begin(), out.lam.end(), [](double v) { return v >= -1e-9; });
  return out;
}

double analytic_pguess_at_max(const SteeringFunctional& functional, int x_star) {
  const Scenario& s = functional.scenario();
  if (!functional.is_rank_one() || s.n_inputs != 2) {
    throw Error(ErrorKind::kInvalidInput,
                "analytic guessing probability needs a rank-1 two-input functional");
  }
  if (x_star < 0 || x_star >= 2) throw Error(ErrorKind::kInvalidInput, "x_star out of range");
  const auto ud = unique_distributions(functional.kets(0), functional.kets(1));
  if (!ud.nonnegative) {
    throw Error(ErrorKind::kNoNonnegativeSolution,
                "unique weights are not a probability distribution");
  }
  const auto& w = x_star == 0 ? ud.q : ud.lam;
  return *std::max_element(w.begin(), w.end());
}

}  // namespace steercert
