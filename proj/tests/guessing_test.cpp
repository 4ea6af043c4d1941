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
#include "steercert/guessing.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"

namespace steercert {
namespace {

SchmidtSpec random_spec(int d, std::mt19937_64& rng) { return SchmidtSpec(oracle::random_simplex(d, rng, 0.02)); }

void expect_sound(const GuessingCertificate& c, const SteeringFunctional& f, double tol = 1e-6) {
  const double d = c.d;
  EXPECT_GE(c.p_guess_primal, 1.0 / d - tol);
  EXPECT_LE(c.p_guess_primal, c.p_guess_dual + tol);
  EXPECT_LE(c.p_guess_dual, 1.0);
  EXPECT_NEAR(c.h_min_bits, -std::log2(c.p_guess_dual), 1e-15);
  EXPECT_GE(c.h_min_bits, 0.0);
  EXPECT_LE(c.h_min_bits, std::log2(d) + 1e-6);
  ASSERT_TRUE(c.attack.has_value());
  const oracle::Audit a = oracle::audit(testutil::to_oracle(*c.attack), testutil::elements(f), c.beta_obs, c.x_star);
  EXPECT_LE(a.no_signalling, tol);
  EXPECT_LE(a.trace, tol);
  EXPECT_LE(a.beta, tol);
  EXPECT_GE(a.min_eigenvalue, -tol);
  EXPECT_NEAR(a.guess, c.p_guess_primal, tol);
}

TEST(GuessingProgram, QubitShape) {
  const GuessingProgram gp = build_guessing_program(maximal_violation_functional(SchmidtSpec::maximal(2)), 1.9, 1);
  ASSERT_EQ(gp.program.blocks().size(), 8u);
  for (const BlockSpec& b : gp.program.blocks()) EXPECT_EQ(b.side, 2);
  EXPECT_EQ(gp.num_matrix_equalities(), 2);
  EXPECT_EQ(gp.program.equalities().size(), 1u + 2u * 4u + 1u);
  EXPECT_FALSE(gp.slack_block.has_value());
}

TEST(GuessingProgram, QutritShapeAndSlack) {
  GuessingOptions o;
  o.constraint = BetaConstraint::kAtLeast;
  const GuessingProgram gp = build_guessing_program(maximal_violation_functional(SchmidtSpec::maximal(3)), 1.9, 0, o);
  EXPECT_EQ(gp.program.blocks().size(), 18u + 1u);
  ASSERT_TRUE(gp.slack_block.has_value());
  EXPECT_EQ(gp.program.blocks()[*gp.slack_block].side, 1);
  EXPECT_EQ(gp.block(2, 1, 1), (2 * 2 + 1) * 3 + 1);
}

TEST(GuessingProgram, BetaOutOfRange) {
  const SteeringFunctional f = maximal_violation_functional(SchmidtSpec::maximal(2));
  EXPECT_ERROR_KIND(build_guessing_program(f, 2.5, 1), ErrorKind::kBetaOutOfRange);
  EXPECT_ERROR_KIND(guessing_probability(f, 2.5, 1), ErrorKind::kBetaOutOfRange);
  EXPECT_ERROR_KIND(build_guessing_program(f, 1.9, 2), ErrorKind::kInvalidInput);
}

TEST(QuantumMaximum, ConstructionIsTwoAndSdpAgrees) {
  std::mt19937_64 rng(50);
  const SteeringFunctional f = maximal_violation_functional(random_spec(3, rng));
  EXPECT_EQ(quantum_maximum(f), 2.0);
  std::vector<Operator> el(f.elements().begin(), f.elements().end());
  const SteeringFunctional dense(f.scenario(), el);
  EXPECT_NEAR(quantum_maximum(dense), 2.0, 1e-6);
}

TEST(GuessingProbability, ClassicalEndpointIsDeterministic) {
  std::mt19937_64 rng(51);
  for (int d = 2; d <= 4; ++d) {
    for (const SchmidtSpec& spec : {SchmidtSpec::maximal(d), random_spec(d, rng)}) {
      const SteeringFunctional f = maximal_violation_functional(spec);
      const double beta = lhs_bound(f);
      for (int x = 0; x < 2; ++x) {
        double best = 0.0;
        const oracle::Attack att = oracle::deterministic_attack(testutil::elements(f), x, &best);
        const oracle::Audit a = oracle::audit(att, testutil::elements(f), beta, x);
        ASSERT_NEAR(best, beta, 1e-10);
        ASSERT_LT(a.beta, 1e-10);
        ASSERT_NEAR(a.guess, 1.0, 1e-12);
        const GuessingCertificate c = guessing_probability(f, beta, x);
        EXPECT_GE(c.p_guess_primal, 1.0 - 1e-5) << "d=" << d << " x=" << x;
        EXPECT_GE(c.p_guess_dual, a.guess - 1e-9);
        expect_sound(c, f);
      }
    }
  }
}

TEST(GuessingProbability, UnbalancedQutritAtClassicalBoundHasNoEntropy) {
  const SteeringFunctional f = maximal_violation_functional(SchmidtSpec({0.5, 0.3, 0.2}));
  const GuessingCertificate c = guessing_probability(f, 1.0 + std::sqrt(0.5), 1);
  EXPECT_NEAR(c.h_min_bits, 0.0, 1e-4);
}

TEST(GuessingProbability, QubitNearMaximumMatchesExplicitAttackAndReference) {
  const SteeringFunctional f = maximal_violation_functional(SchmidtSpec::maximal(2));
  for (double eps : {1e-4, 1e-6}) {
    const oracle::Attack att = oracle::qubit_x_attack(eps);
    const oracle::Audit a = oracle::audit(att, testutil::elements(f), 2.0 - eps, 1);
    ASSERT_LT(a.beta, 1e-12);
    ASSERT_LT(a.no_signalling, 1e-15);
    ASSERT_LT(a.trace, 1e-15);
    ASSERT_GE(a.min_eigenvalue, -1e-15);
    ASSERT_NEAR(a.guess, oracle::qubit_x_attack_value(eps), 1e-12);

    const GuessingCertificate c = guessing_probability(f, 2.0 - eps, 1);
    EXPECT_NE(c.report.status, SolveStatus::kNumericalFailure);
    EXPECT_GE(c.p_guess_dual, a.guess - 1e-9) << "eps=" << eps;
    const double ref = eps == 1e-4 ? oracle::kClarabelD2Eps1e4X1 : oracle::kClarabelD2Eps1e6X1;
    EXPECT_NEAR(c.p_guess_dual, ref, oracle::kClarabelTol) << "eps=" << eps;
    expect_sound(c, f, 1e-5);
  }
  const GuessingCertificate c0 = guessing_probability(f, 2.0 - 1e-6, 0);
  EXPECT_NEAR(c0.p_guess_dual, oracle::kClarabelD2Eps1e6X0, oracle::kClarabelTol);
}

TEST(GuessingProbability, ApproachesAnalyticValueLikeSquareRoot) {
  std::mt19937_64 rng(52);
  for (int d = 2; d <= 4; ++d) {
    const SteeringFunctional f = maximal_violation_functional(random_spec(d, rng));
    for (int x = 0; x < 2; ++x) {
      const double analytic = analytic_pguess_at_max(f, x);
      const GuessingCertificate far = guessing_probability(f, 2.0 - 1e-4, x);
      const GuessingCertificate near = guessing_probability(f, 2.0 - 1e-6, x);
      ASSERT_TRUE(near.analytic_p_guess.has_value());
      EXPECT_NEAR(*near.analytic_p_guess, analytic, 1e-15);
      EXPECT_FALSE(far.analytic_p_guess.has_value());
      const double gap_far = far.p_guess_dual - analytic;
      const double gap_near = near.p_guess_dual - analytic;
      EXPECT_GT(gap_near, -1e-7);
      EXPECT_GT(gap_far, gap_near);
      EXPECT_NEAR(gap_far / gap_near, 10.0, 3.0) << "d=" << d << " x=" << x;
      EXPECT_NEAR(*near.analytic_discrepancy, gap_near, 1e-15);
    }
  }
}

TEST(GuessingProbability, UnbalancedQubitInputZero) {
  const SteeringFunctional f = maximal_violation_functional(SchmidtSpec({0.6, 0.4}));
  const GuessingCertificate c = guessing_probability(f, 2.0 - 1e-6, 0);
  EXPECT_GE(c.p_guess_dual, 0.6 - 1e-7);
  EXPECT_LE(c.p_guess_dual, 0.6 + 2.0 * std::sqrt(1e-6));
  EXPECT_NEAR(c.h_min_bits, -std::log2(0.6), 5e-3);
}

TEST(GuessingProbability, RealEmbeddingAgrees) {
  std::mt19937_64 rng(53);
  for (int d = 2; d <= 3; ++d) {
    const SteeringFunctional f = maximal_violation_functional(random_spec(d, rng));
    for (double beta : {1.9, 1.97}) {
      GuessingOptions o;
      const GuessingCertificate cc = guessing_probability(f, beta, 1, o);
      o.real_embedding = true;
      const GuessingCertificate cr = guessing_probability(f, beta, 1, o);
      EXPECT_EQ(cc.report.status, SolveStatus::kOptimal);
      EXPECT_EQ(cr.report.status, SolveStatus::kOptimal);
      EXPECT_NEAR(cc.p_guess_dual, cr.p_guess_dual, 2e-7);
      expect_sound(cr, f);
    }
  }
}

TEST(GuessingProbability, AtLeastModeIsNoSmallerAndMonotoneStructure) {
  const SteeringFunctional f = maximal_violation_functional(SchmidtSpec::maximal(3));
  GuessingOptions geq;
  geq.constraint = BetaConstraint::kAtLeast;
  for (double beta : {1.6, 1.8, 1.95}) {
    const GuessingCertificate e = guessing_probability(f, beta, 1);
    const GuessingCertificate g = guessing_probability(f, beta, 1, geq);
    EXPECT_GE(g.p_guess_dual, e.p_guess_dual - 2e-7);
    const oracle::Audit a = oracle::audit(testutil::to_oracle(*g.attack), testutil::elements(f), beta, 1);
    EXPECT_LE(a.no_signalling, 1e-6);
    EXPECT_LE(a.trace, 1e-6);
  }
}

TEST(GuessingProbability, InteriorPointsAreSound) {
  std::mt19937_64 rng(54);
  for (int d = 2; d <= 5; ++d) {
    const SteeringFunctional f = maximal_violation_functional(random_spec(d, rng));
    const double lo = lhs_bound(f);
    for (double t : {0.1, 0.5, 0.9}) {
      const GuessingCertificate c = guessing_probability(f, lo + t * (2.0 - lo), d % 2);
      EXPECT_EQ(c.report.status, SolveStatus::kOptimal) << "d=" << d << " t=" << t;
      expect_sound(c, f);
    }
  }
}

TEST(AuditAttack, MatchesOracleAudit) {
  const SteeringFunctional f = maximal_violation_functional(SchmidtSpec::maximal(2));
  const oracle::Attack att = oracle::qubit_x_attack(1e-3);
  const AttackAudit a = audit_attack(testutil::from_oracle(att), f, 2.0 - 1e-3, 1);
  const oracle::Audit ref = oracle::audit(att, testutil::elements(f), 2.0 - 1e-3, 1);
  EXPECT_NEAR(a.guess_value, ref.guess, 1e-14);
  EXPECT_NEAR(a.beta, ref.beta, 1e-14);
  EXPECT_NEAR(a.no_signalling, ref.no_signalling, 1e-14);
  EXPECT_NEAR(a.min_eigenvalue, ref.min_eigenvalue, 1e-12);
  EXPECT_NEAR(testutil::from_oracle(att).average().residuals().normalization, 0.0, 1e-14);
}

}  // namespace
}  // namespace steercert
