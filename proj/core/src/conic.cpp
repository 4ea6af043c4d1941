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
#include "steercert/conic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "steercert/error.hpp"

namespace steercert {

HermitianCoefficient HermitianCoefficient::from_dense(const Eigen::MatrixXcd& m, double drop_tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::kInvalidProgram, "coefficient must be square");
  HermitianCoefficient out;
  out.side_ = static_cast<int>(m.rows());
  for (int c = 0; c < m.cols(); ++c) {
    for (int r = 0; r < m.rows(); ++r) {
      if (std::abs(m(r, c)) > drop_tol) out.entries_.push_back({r, c, m(r, c)});
    }
  }
  return out;
}

HermitianCoefficient HermitianCoefficient::from_entries(int side, std::vector<MatrixEntry> entries) {
  std::map<std::pair<int, int>, Complex> merged;
  for (const auto& e : entries) {
    if (e.row < 0 || e.col < 0 || e.row >= side || e.col >= side) {
      throw Error(ErrorKind::kInvalidProgram, "coefficient entry outside the block");
    }
    merged[{e.col, e.row}] += e.value;
  }
  HermitianCoefficient out;
  out.side_ = side;
  for (const auto& [key, value] : merged) {
    if (value != Complex(0.0)) out.entries_.push_back({key.second, key.first, value});
  }
  return out;
}

HermitianCoefficient HermitianCoefficient::identity(int side, double scale) {
  HermitianCoefficient out;
  out.side_ = side;
  for (int i = 0; i < side; ++i) out.entries_.push_back({i, i, Complex(scale)});
  return out;
}

Eigen::MatrixXcd HermitianCoefficient::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(side_, side_);
  add_to(m, 1.0);
  return m;
}

double HermitianCoefficient::inner(const Eigen::MatrixXcd& x) const {
  // Re tr(A X) = Re sum_{(r,c)} A_rc X_cr
  double acc = 0.0;
  for (const auto& e : entries_) acc += (e.value * x(e.col, e.row)).real();
  return acc;
}

void HermitianCoefficient::add_to(Eigen::MatrixXcd& target, double scale) const {
  for (const auto& e : entries_) target(e.row, e.col) += scale * e.value;
}

double HermitianCoefficient::hermiticity_defect() const {
  if (side_ == 0) return 0.0;
  const Eigen::MatrixXcd m = dense();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double HermitianCoefficient::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& e : entries_) acc += std::norm(e.value);
  return std::sqrt(acc);
}

double LinearFunctional::evaluate(std::span<const Eigen::MatrixXcd> blocks) const {
  double acc = 0.0;
  for (const auto& t : terms) acc += t.coeff.inner(blocks[t.block]);
  return acc;
}

int ConicProgram::add_block(std::string label, int side) {
  if (side < 1) throw Error(ErrorKind::kInvalidProgram, "block side must be positive");
  blocks_.push_back({std::move(label), side});
  return static_cast<int>(blocks_.size()) - 1;
}

void ConicProgram::add_equality(LinearFunctional lhs, double rhs, std::string label) {
  equalities_.push_back({std::move(lhs), rhs, std::move(label)});
}

void ConicProgram::validate(double hermitian_tol) const {
  auto check = [&](const LinearFunctional& f, const std::string& where) {
    for (const auto& t : f.terms) {
      if (t.block < 0 || t.block >= static_cast<int>(blocks_.size())) {
        throw Error(ErrorKind::kInvalidProgram, where + " references an undeclared block");
      }
      if (t.coeff.side() != blocks_[t.block].side) {
        throw Error(ErrorKind::kInvalidProgram,
                    where + " has a coefficient of the wrong side for block '" +
                        blocks_[t.block].label + "'");
      }
      if (t.coeff.hermiticity_defect() > hermitian_tol) {
        throw Error(ErrorKind::kInvalidProgram, where + " has a non-Hermitian coefficient");
      }
    }
  };
  check(objective_, "objective");
  for (std::size_t i = 0; i < equalities_.size(); ++i) {
    if (!std::isfinite(equalities_[i].rhs)) {
      throw Error(ErrorKind::kInvalidProgram, "non-finite right-hand side");
    }
    check(equalities_[i].lhs, "equality " + std::to_string(i));
  }
}

Eigen::MatrixXd hermitian_to_real_embedding(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

Eigen::MatrixXd hermitian_to_real_embedding(const Operator& h) {
  if (!h.is_hermitian()) {
    throw Error(ErrorKind::kNotHermitian, "real embedding requires a Hermitian operator");
  }
  return hermitian_to_real_embedding(h.matrix());
}

namespace {

HermitianCoefficient embed_coefficient(const HermitianCoefficient& c) {
  const int n = c.side();
  std::vector<MatrixEntry> out;
  out.reserve(4 * c.entries().size());
  for (const auto& e : c.entries()) {
    const double re = 0.5 * e.value.real();
    const double im = 0.5 * e.value.imag();
    if (re != 0.0) {
      out.push_back({e.row, e.col, re});
      out.push_back({e.row + n, e.col + n, re});
    }
    if (im != 0.0) {
      out.push_back({e.row, e.col + n, -im});
      out.push_back({e.row + n, e.col, im});
    }
  }
  return HermitianCoefficient::from_entries(2 * n, std::move(out));
}

LinearFunctional embed_functional(const LinearFunctional& f) {
  LinearFunctional out;
  for (const auto& t : f.terms) out.add(t.block, embed_coefficient(t.coeff));
  return out;
}

}  // namespace

ConicProgram embed_real(const ConicProgram& program) {
  ConicProgram out;
  for (const auto& b : program.blocks()) out.add_block(b.label, 2 * b.side);
  out.set_objective(embed_functional(program.objective()));
  for (const auto& eq : program.equalities()) {
    out.add_equality(embed_functional(eq.lhs), eq.rhs, eq.label);
  }
  return out;
}

}  // namespace steercert
