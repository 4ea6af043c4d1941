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

// Dense complex linear algebra on finite-dimensional Hilbert spaces.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace steercert {

using Complex = std::complex<double>;

namespace tol {
inline constexpr double kUnitKet = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kPsd = 1e-9;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kRank = 1e-8;
inline constexpr double kBiorthogonal = 1e-9;
}  // namespace tol

class Ket {
 public:
  explicit Ket(Eigen::VectorXcd amplitudes);

  // Computational basis vector |index> in C^dim.
  static Ket basis(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }

  double norm() const { return amplitudes_.norm(); }
  Ket normalized() const;
  bool is_unit(double tol = tol::kUnitKet) const;

 private:
  Eigen::VectorXcd amplitudes_;
};

// <bra|ket>, antilinear in the first argument.
Complex braket(const Ket& bra, const Ket& ket);

Ket kron(const Ket& a, const Ket& b);

// True when |<u|v>| is 1 within tol for unit kets, i.e. equal as rays.
bool same_ray(const Ket& u, const Ket& v, double tol = 1e-9);

class Operator {
 public:
  explicit Operator(Eigen::MatrixXcd entries);

  static Operator identity(int dim);
  static Operator zero(int dim);
  // |ket><ket|
  static Operator projector(const Ket& ket);
  // |ket><bra|
  static Operator outer(const Ket& ket, const Ket& bra);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  Operator adjoint() const;
  Complex trace() const { return entries_.trace(); }
  Ket apply(const Ket& ket) const;

  // max |A - A^dagger|
  double hermiticity_defect() const;
  bool is_hermitian(double tol = tol::kHermitian) const;
  bool is_psd(double tol = tol::kPsd) const;
  bool is_unitary(double tol = tol::kUnitary) const;

  // Smallest eigenvalue of the Hermitian part (A + A^dagger)/2.
  double min_eigenvalue() const;
  double max_eigenvalue() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Complex s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, Complex s) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  Eigen::MatrixXcd entries_;
};

// max_ij |a_ij - b_ij|; throws on dimension mismatch.
double max_abs_diff(const Operator& a, const Operator& b);

// Block (i, j) of the result equals a(i, j) * b.
Operator kron(const Operator& a, const Operator& b);

// Traces out the first tensor factor of an operator on C^dim_a (x) C^dim_b.
Operator partial_trace_a(const Operator& rho, int dim_a, int dim_b);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  std::vector<Ket> vectors;    // orthonormal, vectors[k] pairs with values[k]
};

// Throws kNotHermitian when the Hermiticity defect exceeds
// tol * max(1, max |entry|).
HermitianEigen eig_hermitian(const Operator& h, double tol = tol::kHermitian);

// Columns are the kets, in order.
Eigen::MatrixXcd column_matrix(std::span<const Ket> kets);

struct DualBasisPair {
  std::vector<Ket> primal;
  std::vector<Ket> dual;  // <dual[b]|primal[a]> = delta_ab
  double condition_number = 1.0;
};

// Biorthogonal dual of a basis of C^d given as d kets. Throws kRankDeficient
// when the smallest singular value of the column matrix is below
// rank_tol times the largest.
DualBasisPair dual_basis(std::span<const Ket> primal, double rank_tol = tol::kRank);

}  // namespace steercert
