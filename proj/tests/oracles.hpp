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
// Independent reference computations for the tests. Everything here works on
// raw Eigen matrices and does not call into the library's numerics.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using C = std::complex<double>;

// cvxpy + CLARABEL on an independently written model of the guessing
// program, d = 2, maximally entangled, beta = 2 - eps.
inline constexpr double kClarabelD2Eps1e6X1 = 0.5010002035675871;
inline constexpr double kClarabelD2Eps1e6X0 = 0.5010000217019026;
inline constexpr double kClarabelD2Eps1e4X1 = 0.5099995369992945;
inline constexpr double kClarabelTol = 1e-6;

inline double gauss(std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline Vec random_vector(int d, std::mt19937_64& rng) {
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = C(gauss(rng), gauss(rng));
  return v;
}

inline Vec random_unit(int d, std::mt19937_64& rng) { return random_vector(d, rng).normalized(); }

inline Mat random_matrix(int rows, int cols, std::mt19937_64& rng) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = C(gauss(rng), gauss(rng));
  }
  return m;
}

inline Mat random_hermitian(int d, std::mt19937_64& rng) {
  const Mat g = random_matrix(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

// Unit-trace PSD matrix of full rank.
inline Mat random_density(int d, std::mt19937_64& rng) {
  const Mat g = random_matrix(d, d, rng);
  Mat rho = g * g.adjoint() + 1e-3 * Mat::Identity(d, d);
  return rho / rho.trace().real();
}

inline Mat random_unitary(int d, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(d, d, rng));
  return qr.householderQ() * Mat::Identity(d, d);
}

// Probability vector with every entry >= floor.
inline std::vector<double> random_simplex(int d, std::mt19937_64& rng, double floor = 1e-3) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(d);
  double sum = 0.0;
  for (double& x : w) sum += (x = expo(rng));
  for (double& x : w) x = floor + (1.0 - d * floor) * x / sum;
  return w;
}

inline Vec basis(int d, int i) {
  Vec v = Vec::Zero(d);
  v(i) = 1.0;
  return v;
}

inline Mat kron_loops(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      for (int k = 0; k < b.rows(); ++k) {
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
      }
    }
  }
  return out;
}

// rho_B(k, l) = sum_i rho(i dB + k, i dB + l)
inline Mat partial_trace_a_loops(const Mat& rho, int da, int db) {
  Mat out = Mat::Zero(db, db);
  for (int i = 0; i < da; ++i) {
    for (int k = 0; k < db; ++k) {
      for (int l = 0; l < db; ++l) out(k, l) += rho(i * db + k, i * db + l);
    }
  }
  return out;
}

inline double min_eig(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double max_eig(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(h.rows() - 1);
}

// (unit) sum_i sqrt(lambda_i) exp(-2 pi i ia/d) |i>
inline Vec chi(const std::vector<double>& lambda, int a) {
  const int d = static_cast<int>(lambda.size());
  Vec v(d);
  for (int i = 0; i < d; ++i) {
    v(i) = std::sqrt(lambda[i]) * std::polar(1.0, -2.0 * std::numbers::pi * ((i * a) % d) / d);
  }
  return v.normalized();
}

// Top eigenvalue of |u><u| + |v><v| for unit u, v.
inline double rank_one_pair_top(const Vec& u, const Vec& v) { return 1.0 + std::abs(u.dot(v)); }

// Classical bound of a two-input rank-1 functional.
inline double lhs_rank_one(const std::vector<Vec>& set0, const std::vector<Vec>& set1) {
  double best = 0.0;
  for (const Vec& u : set0) {
    for (const Vec& v : set1) best = std::max(best, rank_one_pair_top(u, v));
  }
  return best;
}

// Solves sum_a q_a |A_a><A_a| = sum_i l_i |B_i><B_i|, sum q = 1 by QR least
// squares on the real 2d^2 + 1 row system. Unknowns (q, l).
struct LinearSolution {
  std::vector<double> q;
  std::vector<double> lam;
  double residual = 0.0;
};

inline LinearSolution linear_solve(const std::vector<Vec>& set_a, const std::vector<Vec>& set_b) {
  const int d = static_cast<int>(set_a.size());
  const int rows = 2 * d * d + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, 2 * d);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  for (int c = 0; c < 2 * d; ++c) {
    const Vec& k = c < d ? set_a[c] : set_b[c - d];
    const double sign = c < d ? 1.0 : -1.0;
    const Mat p = k * k.adjoint();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        m(i * d + j, c) = sign * p(i, j).real();
        m(d * d + i * d + j, c) = sign * p(i, j).imag();
      }
    }
  }
  for (int c = 0; c < d; ++c) m(rows - 1, c) = 1.0;
  rhs(rows - 1) = 1.0;
  const Eigen::VectorXd x = m.colPivHouseholderQr().solve(rhs);
  LinearSolution out;
  out.residual = (m * x - rhs).cwiseAbs().maxCoeff();
  for (int c = 0; c < d; ++c) out.q.push_back(x(c));
  for (int c = 0; c < d; ++c) out.lam.push_back(x(d + c));
  return out;
}

// Two decompositions of one random full-rank density operator:
// rho = sum_a wa_a |A_a><A_a| = sum_i wb_i |B_i><B_i|, unit kets with random
// global phases.
struct EnsemblePair {
  std::vector<Vec> set_a, set_b;
  std::vector<double> weights_a, weights_b;
};

inline EnsemblePair ensemble_pair(int d, std::mt19937_64& rng) {
  const Mat rho = random_density(d, rng);
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  const Mat root = es.operatorSqrt();
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  EnsemblePair out;
  for (int which = 0; which < 2; ++which) {
    const Mat v = root * random_unitary(d, rng);
    for (int k = 0; k < d; ++k) {
      const double w = v.col(k).squaredNorm();
      (which == 0 ? out.weights_a : out.weights_b).push_back(w);
      (which == 0 ? out.set_a : out.set_b).push_back(std::polar(1.0, phase(rng)) * v.col(k) / std::sqrt(w));
    }
  }
  return out;
}

// Smallest |<B_i|A_a>| over all pairs.
inline double min_cross_overlap(const EnsemblePair& p) {
  double m = 1e300;
  for (const Vec& a : p.set_a) {
    for (const Vec& b : p.set_b) m = std::min(m, std::abs(b.dot(a)));
  }
  return m;
}

// sigma^e_a|x stored as attack[(e * n + x) * d + a], n = 2 inputs.
struct Attack {
  int d = 2;
  std::vector<Mat> blocks;
  Mat& at(int e, int a, int x) { return blocks[(e * 2 + x) * d + a]; }
  const Mat& at(int e, int a, int x) const { return blocks[(e * 2 + x) * d + a]; }
};

struct Audit {
  double no_signalling = 0.0;
  double trace = 0.0;
  double beta = 0.0;
  double min_eigenvalue = 0.0;
  double guess = 0.0;
};

// f[x][a] are the functional elements.
inline Audit audit(const Attack& att, const std::vector<std::vector<Mat>>& f, double beta_obs,
                   int x_star) {
  const int d = att.d;
  Audit out;
  out.min_eigenvalue = 1e300;
  double total = 0.0;
  double value = 0.0;
  for (int e = 0; e < d; ++e) {
    Mat ref = Mat::Zero(d, d);
    for (int a = 0; a < d; ++a) ref += att.at(e, a, x_star);
    total += ref.trace().real();
    out.guess += att.at(e, e, x_star).trace().real();
    for (int x = 0; x < 2; ++x) {
      Mat m = Mat::Zero(d, d);
      for (int a = 0; a < d; ++a) {
        m += att.at(e, a, x);
        out.min_eigenvalue = std::min(out.min_eigenvalue, min_eig(att.at(e, a, x)));
        value += (f[x][a] * att.at(e, a, x)).trace().real();
      }
      out.no_signalling = std::max(out.no_signalling, (m - ref).cwiseAbs().maxCoeff());
    }
  }
  out.trace = std::abs(total - 1.0);
  out.beta = std::abs(value - beta_obs);
  return out;
}

// Assemblage of a pure two-qudit state measured on the first factor:
// s_a = tr_A[(M_a (x) I) |psi><psi|].
inline Mat steer(const Vec& psi, const Mat& m, int d) {
  const Mat full = kron_loops(m, Mat::Identity(d, d)) * psi * psi.adjoint();
  return partial_trace_a_loops(full, d, d);
}

// Qubit attack on the maximally entangled functional (Z and X bases) at
// beta = 2 - eps, guessing the X outcome. Eve's branch e prepares
// cos t |e_X e_X> + sin t |not e_X, not e_X> in the X basis; X outcomes agree
// perfectly, Z agreement is (1 + sin 2t)/2, and the guess is cos^2 t.
inline Attack qubit_x_attack(double eps) {
  const double s = 1.0 - 2.0 * eps;
  const double t = 0.5 * std::asin(s);
  Attack att;
  att.d = 2;
  att.blocks.assign(8, Mat::Zero(2, 2));
  const Vec plus = (basis(2, 0) + basis(2, 1)) / std::sqrt(2.0);
  const Vec minus = (basis(2, 0) - basis(2, 1)) / std::sqrt(2.0);
  const std::vector<Vec> xs{plus, minus};
  for (int e = 0; e < 2; ++e) {
    const Vec& g = xs[e];
    const Vec& o = xs[1 - e];
    Vec psi(4);
    const Vec gg = kron_loops(g, g);
    const Vec oo = kron_loops(o, o);
    psi = std::cos(t) * gg + std::sin(t) * oo;
    for (int a = 0; a < 2; ++a) {
      att.at(e, a, 0) = 0.5 * steer(psi, basis(2, a) * basis(2, a).adjoint(), 2);
      att.at(e, a, 1) = 0.5 * steer(psi, xs[a] * xs[a].adjoint(), 2);
    }
  }
  return att;
}

inline double qubit_x_attack_value(double eps) { return 0.5 + std::sqrt(eps * (1.0 - eps)); }

// Eve mixes deterministic classical strategies that are optimal for the
// functional and fix the x* outcome to her guess. Returns an empty attack
// when no optimal strategy exists for some guess; the weights are spread
// uniformly over the guesses that do admit one.
inline Attack deterministic_attack(const std::vector<std::vector<Mat>>& f, int x_star,
                                   double* value_out = nullptr) {
  const int d = static_cast<int>(f[0].size());
  double best = -1e300;
  for (int a0 = 0; a0 < d; ++a0) {
    for (int a1 = 0; a1 < d; ++a1) best = std::max(best, max_eig(f[0][a0] + f[1][a1]));
  }
  Attack att;
  att.d = d;
  att.blocks.assign(2 * d * d, Mat::Zero(d, d));
  std::vector<std::pair<int, int>> chosen(d, {-1, -1});
  int count = 0;
  for (int e = 0; e < d; ++e) {
    for (int other = 0; other < d && chosen[e].first < 0; ++other) {
      const int a0 = x_star == 0 ? e : other;
      const int a1 = x_star == 1 ? e : other;
      if (max_eig(f[0][a0] + f[1][a1]) >= best - 1e-12) {
        chosen[e] = {a0, a1};
        ++count;
      }
    }
  }
  for (int e = 0; e < d; ++e) {
    if (chosen[e].first < 0) continue;
    const auto [a0, a1] = chosen[e];
    Eigen::SelfAdjointEigenSolver<Mat> es(f[0][a0] + f[1][a1]);
    const Vec top = es.eigenvectors().col(d - 1);
    const Mat rho = top * top.adjoint() / static_cast<double>(count);
    att.at(e, a0, 0) = rho;
    att.at(e, a1, 1) = rho;
  }
  if (value_out) *value_out = best;
  return att;
}

}  // namespace oracle
