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
#include "steercert/solver.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace steercert {
namespace {

using oracle::Mat;

ConicProgram spectral_program(const Mat& c) {
  const int d = static_cast<int>(c.rows());
  ConicProgram p;
  p.add_block("X", d);
  LinearFunctional obj;
  obj.add(0, HermitianCoefficient::from_dense(c));
  p.set_objective(obj);
  LinearFunctional tr;
  tr.add(0, HermitianCoefficient::identity(d));
  p.add_equality(tr, 1.0, "trace");
  return p;
}

TEST(Solve, TopEigenvalueOverDensityMatrices) {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 7;
    const Mat c = oracle::random_hermitian(d, rng);
    const SolveResult r = solve(spectral_program(c));
    ASSERT_EQ(r.report.status, SolveStatus::kOptimal) << status_name(r.report.status);
    const double scale = std::max(1.0, std::abs(oracle::max_eig(c)));
    EXPECT_NEAR(r.report.primal_value, oracle::max_eig(c), 1e-7 * scale);
    EXPECT_LE(std::abs(r.report.gap), 1e-7 * scale);
    EXPECT_GE(oracle::min_eig(r.primal[0]), -1e-8);
    EXPECT_NEAR(r.primal[0].trace().real(), 1.0, 1e-7);
  }
}

TEST(Solve, ZeroObjective) {
  ConicProgram p;
  p.add_block("X", 3);
  LinearFunctional tr;
  tr.add(0, HermitianCoefficient::identity(3));
  p.add_equality(tr, 2.0);
  const SolveResult r = solve(p);
  EXPECT_EQ(r.report.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.report.primal_value, 0.0, 1e-12);
}

TEST(Solve, ScalarBlocksActLikeLinearProgram) {
  ConicProgram p;
  const int a = p.add_block("a", 1);
  const int b = p.add_block("b", 1);
  LinearFunctional obj;
  obj.add(a, HermitianCoefficient::identity(1, 1.0));
  obj.add(b, HermitianCoefficient::identity(1, 2.0));
  p.set_objective(obj);
  LinearFunctional sum;
  sum.add(a, HermitianCoefficient::identity(1));
  sum.add(b, HermitianCoefficient::identity(1));
  p.add_equality(sum, 1.0);
  const SolveResult r = solve(p);
  EXPECT_EQ(r.report.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.report.primal_value, 2.0, 1e-7);
  EXPECT_NEAR(r.report.dual_value, 2.0, 1e-7);
}

TEST(Solve, ComplexOffDiagonalConstraint) {
  // maximize Re X01 over 2x2 density matrices with Im X01 = 0.3.
  ConicProgram p;
  p.add_block("X", 2);
  LinearFunctional obj;
  obj.add(0, HermitianCoefficient::from_entries(2, {{0, 1, 0.5}, {1, 0, 0.5}}));
  p.set_objective(obj);
  LinearFunctional tr;
  tr.add(0, HermitianCoefficient::identity(2));
  p.add_equality(tr, 1.0);
  LinearFunctional im;
  im.add(0, HermitianCoefficient::from_entries(2, {{0, 1, Complex(0, 0.5)}, {1, 0, Complex(0, -0.5)}}));
  p.add_equality(im, 0.3);
  const SolveResult r = solve(p);
  EXPECT_EQ(r.report.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.report.primal_value, 0.4, 1e-7);
  EXPECT_NEAR(r.primal[0](0, 1).imag(), 0.3, 1e-7);
}

TEST(Solve, DetectsInfeasibility) {
  ConicProgram p;
  p.add_block("X", 2);
  LinearFunctional obj;
  obj.add(0, HermitianCoefficient::identity(2));
  p.set_objective(obj);
  LinearFunctional tr;
  tr.add(0, HermitianCoefficient::identity(2));
  p.add_equality(tr, -1.0);
  const SolveResult r = solve(p);
  EXPECT_EQ(r.report.status, SolveStatus::kInfeasible) << status_name(r.report.status);
  EXPECT_FALSE(r.ray_summary.empty());
}

TEST(Solve, ReportsDualBoundCorrection) {
  std::mt19937_64 rng(41);
  const Mat c = oracle::random_hermitian(4, rng);
  const SolveResult r = solve(spectral_program(c));
  EXPECT_GE(r.report.dual_value + std::max(0.0, -r.dual_constraint_min_eig), oracle::max_eig(c) - 1e-12);
}

TEST(Solve, CertifiedDualBoundHoldsAtEveryStop) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat c = oracle::random_hermitian(3, rng);
    SolverOptions o;
    o.trace_bound = 1.0;
    o.max_iterations = 1 + trial;
    const SolveResult r = solve(spectral_program(c), o);
    EXPECT_GE(r.report.dual_value, oracle::max_eig(c) - 1e-12) << trial;
    EXPECT_LE(r.report.primal_value, oracle::max_eig(c) + 1e-6 + r.report.primal_infeasibility * 10.0) << trial;
  }
}

TEST(StatusName, Strings) {
  EXPECT_EQ(status_name(SolveStatus::kOptimal), "optimal");
  EXPECT_EQ(status_name(SolveStatus::kNearOptimal), "near_optimal");
  EXPECT_EQ(status_name(SolveStatus::kInfeasible), "infeasible");
  EXPECT_EQ(status_name(SolveStatus::kUnbounded), "unbounded");
  EXPECT_EQ(status_name(SolveStatus::kNumericalFailure), "numerical_failure");
}

}  // namespace
}  // namespace steercert
