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
#include "steercert/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "steercert/error.hpp"

namespace steercert {

namespace {

void require_finite(const Eigen::MatrixXcd& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::kInvalidInput, std::string(what) + " has non-finite entries");
  }
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace

Ket::Ket(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw Error(ErrorKind::kInvalidInput, "ket must have positive dimension");
  }
  require_finite(amplitudes_, "ket");
}

Ket Ket::basis(int dim, int index) {
  if (dim <= 0 || index < 0 || index >= dim) {
    throw Error(ErrorKind::kInvalidInput, "basis index out of range");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return Ket(std::move(v));
}

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorKind::kInvalidInput, "cannot normalize the zero ket");
  return Ket(amplitudes_ / n);
}

bool Ket::is_unit(double tol) const {
  return std::abs(amplitudes_.squaredNorm() - 1.0) <= tol;
}

Complex braket(const Ket& bra, const Ket& ket) {
  if (bra.dim() != ket.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "braket of kets with different dimensions");
  }
  return bra.amplitudes().dot(ket.amplitudes());
}

Ket kron(const Ket& a, const Ket& b) {
  Eigen::VectorXcd out(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i) {
    out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  }
  return Ket(std::move(out));
}

bool same_ray(const Ket& u, const Ket& v, double tol) {
  return std::abs(std::abs(braket(u.normalized(), v.normalized())) - 1.0) <= tol;
}

Operator::Operator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw Error(ErrorKind::kInvalidInput, "operator must be a non-empty square matrix");
  }
  require_finite(entries_, "operator");
}

Operator Operator::identity(int dim) { return Operator(Eigen::MatrixXcd::Identity(dim, dim)); }

Operator Operator::zero(int dim) { return Operator(Eigen::MatrixXcd::Zero(dim, dim)); }

Operator Operator::projector(const Ket& ket) { return outer(ket, ket); }

Operator Operator::outer(const Ket& ket, const Ket& bra) {
  if (ket.dim() != bra.dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "outer product of kets with different dimensions");
  }
  return Operator(ket.amplitudes() * bra.amplitudes().adjoint());
}

Operator Operator::adjoint() const { return Operator(entries_.adjoint()); }

Ket Operator::apply(const Ket& ket) const {
  if (ket.dim() != dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "operator applied to ket of wrong dimension");
  }
  return Ket(entries_ * ket.amplitudes());
}

double Operator::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

bool Operator::is_psd(double tol) const {
  return is_hermitian() && min_eigenvalue() >= -tol;
}

bool Operator::is_unitary(double tol) const {
  const Eigen::MatrixXcd defect =
      entries_ * entries_.adjoint() - Eigen::MatrixXcd::Identity(dim(), dim());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

double Operator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(entries_),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double Operator::max_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(entries_),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

Operator& Operator::operator+=(const Operator& other) {
  if (other.dim() != dim()) throw Error(ErrorKind::kDimensionMismatch, "operator sum");
  entries_ += other.entries_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  if (other.dim() != dim()) throw Error(ErrorKind::kDimensionMismatch, "operator difference");
  entries_ -= other.entries_;
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  entries_ *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::kDimensionMismatch, "operator product");
  return Operator(a.entries_ * b.entries_);
}

double max_abs_diff(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::kDimensionMismatch, "max_abs_diff");
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Operator kron(const Operator& a, const Operator& b) {
  const int m = a.dim();
  const int n = b.dim();
  Eigen::MatrixXcd out(m * n, m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.block(i * n, j * n, n, n) = a(i, j) * b.matrix();
    }
  }
  return Operator(std::move(out));
}

Operator partial_trace_a(const Operator& rho, int dim_a, int dim_b) {
  if (dim_a <= 0 || dim_b <= 0 || dim_a * dim_b != rho.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "partial trace: " + std::to_string(dim_a) + "x" + std::to_string(dim_b) +
                    " does not factor dimension " + std::to_string(rho.dim()));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_a; ++i) {
    out += rho.matrix().block(i * dim_b, i * dim_b, dim_b, dim_b);
  }
  return Operator(std::move(out));
}

HermitianEigen eig_hermitian(const Operator& h, double tol) {
  const double scale = std::max(1.0, h.matrix().cwiseAbs().maxCoeff());
  if (h.hermiticity_defect() > tol * scale) {
    throw Error(ErrorKind::kNotHermitian, "eig_hermitian requires a Hermitian operator");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(h.matrix()));
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::kInvalidInput, "Hermitian eigensolver did not converge");
  }
  HermitianEigen out;
  out.values.reserve(h.dim());
  out.vectors.reserve(h.dim());
  for (int k = 0; k < h.dim(); ++k) {
    out.values.push_back(es.eigenvalues()(k));
    out.vectors.emplace_back(es.eigenvectors().col(k));
  }
  return out;
}

Eigen::MatrixXcd column_matrix(std::span<const Ket> kets) {
  if (kets.empty()) throw Error(ErrorKind::kInvalidInput, "empty ket list");
  const int dim = kets.front().dim();
  Eigen::MatrixXcd m(dim, static_cast<Eigen::Index>(kets.size()));
  for (std::size_t k = 0; k < kets.size(); ++k) {
    if (kets[k].dim() != dim) {
      throw Error(ErrorKind::kDimensionMismatch, "kets of different dimensions");
    }
    m.col(static_cast<Eigen::Index>(k)) = kets[k].amplitudes();
  }
  return m;
}

DualBasisPair dual_basis(std::span<const Ket> primal, double rank_tol) {
  const Eigen::MatrixXcd cols = column_matrix(primal);
  if (cols.rows() != cols.cols()) {
    throw Error(ErrorKind::kRankDeficient,
                "need exactly d kets in C^d, got " + std::to_string(cols.cols()) + " in C^" +
                    std::to_string(cols.rows()));
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cols);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smax > 0.0) || smin < rank_tol * smax) {
    throw Error(ErrorKind::kRankDeficient, "kets are not linearly independent");
  }
  const Eigen::MatrixXcd dual_cols = cols.inverse().adjoint();
  DualBasisPair out;
  out.primal.assign(primal.begin(), primal.end());
  out.dual.reserve(primal.size());
  for (Eigen::Index b = 0; b < dual_cols.cols(); ++b) out.dual.emplace_back(dual_cols.col(b));
  out.condition_number = smax / smin;
  return out;
}

}  // namespace steercert
