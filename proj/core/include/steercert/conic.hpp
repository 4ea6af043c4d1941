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

// Linear programs over products of Hermitian positive semidefinite blocks:
//
//   maximize  <C, X>   s.t.  <A_i, X> = b_i,  X_k >= 0,
//
// with <A, X> = sum_k Re tr(A_k X_k).

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "steercert/qmat.hpp"

namespace steercert {

struct MatrixEntry {
  int row = 0;
  int col = 0;
  Complex value;
};

// Hermitian coefficient matrix kept as its nonzero entries (both triangles).
class HermitianCoefficient {
 public:
  HermitianCoefficient() = default;
  static HermitianCoefficient from_dense(const Eigen::MatrixXcd& m, double drop_tol = 0.0);
  static HermitianCoefficient from_entries(int side, std::vector<MatrixEntry> entries);
  static HermitianCoefficient identity(int side, double scale = 1.0);

  int side() const { return side_; }
  std::span<const MatrixEntry> entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Eigen::MatrixXcd dense() const;
  // Re tr(A X)
  double inner(const Eigen::MatrixXcd& x) const;
  // target += scale * A
  void add_to(Eigen::MatrixXcd& target, double scale) const;
  double hermiticity_defect() const;
  double frobenius_norm() const;

 private:
  int side_ = 0;
  std::vector<MatrixEntry> entries_;
};

struct Term {
  int block = 0;
  HermitianCoefficient coeff;
};

struct LinearFunctional {
  std::vector<Term> terms;

  void add(int block, HermitianCoefficient coeff) { terms.push_back({block, std::move(coeff)}); }
  double evaluate(std::span<const Eigen::MatrixXcd> blocks) const;
};

struct BlockSpec {
  std::string label;
  int side = 1;
};

struct Equality {
  LinearFunctional lhs;
  double rhs = 0.0;
  std::string label;
};

class ConicProgram {
 public:
  // Returns the index of the new block.
  int add_block(std::string label, int side);
  void set_objective(LinearFunctional objective) { objective_ = std::move(objective); }
  void add_equality(LinearFunctional lhs, double rhs, std::string label = {});

  std::span<const BlockSpec> blocks() const { return blocks_; }
  const LinearFunctional& objective() const { return objective_; }
  std::span<const Equality> equalities() const { return equalities_; }

  // Throws kInvalidProgram when a term references an undeclared block, has
  // the wrong side length, or carries a non-Hermitian coefficient.
  void validate(double hermitian_tol = 1e-12) const;

 private:
  std::vector<BlockSpec> blocks_;
  LinearFunctional objective_;
  std::vector<Equality> equalities_;
};

// [[Re H, -Im H], [Im H, Re H]]
Eigen::MatrixXd hermitian_to_real_embedding(const Operator& h);
Eigen::MatrixXd hermitian_to_real_embedding(const Eigen::MatrixXcd& h);

// Same program over real symmetric blocks of twice the side. Coefficients are
// embedded and halved, so optimal values agree.
ConicProgram embed_real(const ConicProgram& program);

}  // namespace steercert
