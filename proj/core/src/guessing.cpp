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

#include <algorithm>
#include <cmath>
#include <string>

#include "steercert/error.hpp"

namespace steercert {

namespace {

std::string block_label(int e, int a, int x) {
  return "e=" + std::to_string(e) + ",a=" + std::to_string(a) + ",x=" + std::to_string(x);
}

// Orthonormal basis of the real space of d x d Hermitian matrices (Frobenius
// inner product): diagonal units, then symmetric and antisymmetric pairs.
std::vector<HermitianCoefficient> hermitian_basis(int d) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<HermitianCoefficient> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int p = 0; p < d; ++p) out.push_back(HermitianCoefficient::from_entries(d, {{p, p, 1.0}}));
  for (int p = 0; p < d; ++p) {
    for (int q = p + 1; q < d; ++q) {
      out.push_back(HermitianCoefficient::from_entries(d, {{p, q, r}, {q, p, r}}));
      out.push_back(HermitianCoefficient::from_entries(
          d, {{p, q, Complex(0.0, r)}, {q, p, Complex(0.0, -r)}}));
    }
  }
  return out;
}

HermitianCoefficient negated(const HermitianCoefficient& c) {
  std::vector<MatrixEntry> entries(c.entries().begin(), c.entries().end());
  for (auto& e : entries) e.value = -e.value;
  return HermitianCoefficient::from_entries(c.side(), std::move(entries));
}

// Inverse of the real embedding, averaged over the two copies.
Eigen::MatrixXcd recover_complex(const Eigen::MatrixXcd& y) {
  const Eigen::Index n = y.rows() / 2;
  const Eigen::MatrixXd re = y.real();
  Eigen::MatrixXcd out(n, n);
  out.real() = 0.5 * (re.topLeftCorner(n, n) + re.bottomRightCorner(n, n));
  out.imag() = 0.5 * (re.bottomLeftCorner(n, n) - re.topRightCorner(n, n));
  return out;
}

void check_x_star(const Scenario& s, int x_star) {
  if (x_star < 0 || x_star >= s.n_inputs) {
    throw Error(ErrorKind::kInvalidInput, "x_star " + std::to_string(x_star) + " out of range");
  }
}

}  // namespace

EveAttack::EveAttack(Scenario scenario, std::vector<Operator> elements)
    : scenario_(scenario), elements_(std::move(elements)) {
  if (static_cast<int>(elements_.size()) != scenario_.n_outcomes * scenario_.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "attack has the wrong number of elements");
  }
}

const Operator& EveAttack::at(int e, int a, int x) const {
  return elements_.at((e * scenario_.n_inputs + x) * scenario_.n_outcomes + a);
}

Assemblage EveAttack::average() const {
  std::vector<Operator> elements;
  for (int x = 0; x < scenario_.n_inputs; ++x) {
    for (int a = 0; a < scenario_.n_outcomes; ++a) {
      Operator sum = Operator::zero(scenario_.dim_b);
      for (int e = 0; e < num_guesses(); ++e) sum += at(e, a, x);
      elements.push_back(std::move(sum));
    }
  }
  return Assemblage(scenario_, std::move(elements));
}

double quantum_maximum(const SteeringFunctional& functional, const SolverOptions& options) {
  const Scenario& s = functional.scenario();
  if (functional.is_rank_one() && s.n_inputs == 2 && s.n_outcomes == s.dim_b) {
    try {
      if (unique_distributions(functional.kets(0), functional.kets(1)).nonnegative) {
        return static_cast<double>(s.n_inputs);
      }
    } catch (const Error&) {
      // no common decomposition: fall through to the conic program
    }
  }
  ConicProgram p;
  for (int x = 0; x < s.n_inputs; ++x) {
    for (int a = 0; a < s.n_outcomes; ++a) p.add_block("a=" + std::to_string(a) + ",x=" + std::to_string(x), s.dim_b);
  }
  LinearFunctional objective;
  for (int x = 0; x < s.n_inputs; ++x) {
    for (int a = 0; a < s.n_outcomes; ++a) {
      objective.add(s.index(a, x), HermitianCoefficient::from_dense(functional.at(a, x).matrix()));
    }
  }
  p.set_objective(std::move(objective));
  const auto basis = hermitian_basis(s.dim_b);
  for (int x = 1; x < s.n_inputs; ++x) {
    for (const auto& h : basis) {
      LinearFunctional f;
      for (int a = 0; a < s.n_outcomes; ++a) {
        f.add(s.index(a, x), h);
        f.add(s.index(a, 0), negated(h));
      }
      p.add_equality(std::move(f), 0.0);
    }
  }
  LinearFunctional trace;
  for (int a = 0; a < s.n_outcomes; ++a) trace.add(s.index(a, 0), HermitianCoefficient::identity(s.dim_b));
  p.add_equality(std::move(trace), 1.0);
  SolverOptions certified = options;
  certified.trace_bound = s.n_inputs;
  return solve(p, certified).report.dual_value;
}

GuessingProgram build_guessing_program(const SteeringFunctional& functional, double beta_obs,
                                       int x_star, const GuessingOptions& options) {
  const Scenario& s = functional.scenario();
  if (s.n_inputs < 2) throw Error(ErrorKind::kInvalidInput, "need at least two inputs");
  check_x_star(s, x_star);
  if (!std::isfinite(beta_obs)) throw Error(ErrorKind::kInvalidInput, "beta_obs must be finite");
  const double beta_max = options.beta_max ? *options.beta_max : quantum_maximum(functional, options.solver);
  if (beta_obs > beta_max + options.solver.feas_tol) {
    throw Error(ErrorKind::kBetaOutOfRange,
                "beta_obs " + std::to_string(beta_obs) + " exceeds the maximal value " +
                    std::to_string(beta_max));
  }

  GuessingProgram gp;
  gp.scenario = s;
  gp.x_star = x_star;
  gp.beta_obs = beta_obs;
  gp.constraint = options.constraint;
  const int d = s.n_outcomes;
  const int n = s.n_inputs;
  for (int e = 0; e < d; ++e) {
    for (int x = 0; x < n; ++x) {
      for (int a = 0; a < d; ++a) gp.program.add_block(block_label(e, a, x), s.dim_b);
    }
  }

  LinearFunctional objective;
  for (int e = 0; e < d; ++e) {
    objective.add(gp.block(e, e, x_star), HermitianCoefficient::identity(s.dim_b));
  }
  gp.program.set_objective(std::move(objective));

  // Observed functional value on the averaged assemblage.
  std::vector<HermitianCoefficient> f_coeff;
  for (int x = 0; x < n; ++x) {
    for (int a = 0; a < d; ++a) {
      f_coeff.push_back(HermitianCoefficient::from_dense(functional.at(a, x).matrix()));
    }
  }
  LinearFunctional value;
  for (int e = 0; e < d; ++e) {
    for (int x = 0; x < n; ++x) {
      for (int a = 0; a < d; ++a) value.add(gp.block(e, a, x), f_coeff[s.index(a, x)]);
    }
  }
  if (options.constraint == BetaConstraint::kAtLeast) {
    gp.slack_block = gp.program.add_block("slack", 1);
    value.add(*gp.slack_block, HermitianCoefficient::identity(1, -1.0));
  }
  gp.program.add_equality(std::move(value), beta_obs, "value");

  // No-signalling per guess: sum_a s^e_a|x = sum_a s^e_a|x*.
  const auto basis = hermitian_basis(s.dim_b);
  for (int e = 0; e < d; ++e) {
    for (int x = 0; x < n; ++x) {
      if (x == x_star) continue;
      for (std::size_t h = 0; h < basis.size(); ++h) {
        LinearFunctional f;
        const HermitianCoefficient minus = negated(basis[h]);
        for (int a = 0; a < d; ++a) {
          f.add(gp.block(e, a, x), basis[h]);
          f.add(gp.block(e, a, x_star), minus);
        }
        gp.program.add_equality(std::move(f), 0.0,
                                "nosig e=" + std::to_string(e) + ",x=" + std::to_string(x) +
                                    ",h=" + std::to_string(h));
      }
    }
  }

  LinearFunctional trace;
  for (int e = 0; e < d; ++e) {
    for (int a = 0; a < d; ++a) {
      trace.add(gp.block(e, a, x_star), HermitianCoefficient::identity(s.dim_b));
    }
  }
  gp.program.add_equality(std::move(trace), 1.0, "trace");
  return gp;
}

GuessingCertificate guessing_probability(const SteeringFunctional& functional, double beta_obs,
                                         int x_star, const GuessingOptions& options) {
  const Scenario& s = functional.scenario();
  GuessingOptions opts = options;
  if (!opts.beta_max) opts.beta_max = quantum_maximum(functional, options.solver);
  const GuessingProgram gp = build_guessing_program(functional, beta_obs, x_star, opts);

  // Every feasible attack has trace 1 per input, the slack is at most beta_max - beta_obs,
  // and the real embedding doubles traces.
  SolverOptions solver = opts.solver;
  solver.trace_bound = s.n_inputs;
  if (gp.slack_block) solver.trace_bound += std::max(0.0, *opts.beta_max - beta_obs) + solver.feas_tol;
  if (opts.real_embedding) solver.trace_bound *= 2.0;
  const SolveResult r = opts.real_embedding ? solve(embed_real(gp.program), solver)
                                            : solve(gp.program, solver);

  GuessingCertificate cert;
  cert.d = s.n_outcomes;
  cert.beta_obs = beta_obs;
  cert.x_star = x_star;
  cert.report = r.report;
  cert.p_guess_primal = r.report.primal_value;
  const bool usable = r.multipliers.size() == static_cast<Eigen::Index>(gp.program.equalities().size()) &&
                      r.report.status != SolveStatus::kInfeasible &&
                      r.report.status != SolveStatus::kUnbounded;
  cert.p_guess_dual = usable ? std::min(1.0, r.report.dual_value) : 1.0;
  cert.h_min_bits = std::max(0.0, -std::log2(cert.p_guess_dual));

  if (opts.keep_attack && !r.primal.empty()) {
    std::vector<Operator> elements;
    const int nblocks = s.n_outcomes * s.size();
    elements.reserve(nblocks);
    for (int k = 0; k < nblocks; ++k) {
      elements.emplace_back(opts.real_embedding ? recover_complex(r.primal[k]) : r.primal[k]);
    }
    cert.attack = EveAttack(s, std::move(elements));
  }

  if (functional.is_rank_one() && s.n_inputs == 2 && *opts.beta_max - beta_obs <= opts.eps_max) {
    try {
      cert.analytic_p_guess = analytic_pguess_at_max(functional, x_star);
      cert.analytic_discrepancy = cert.p_guess_dual - *cert.analytic_p_guess;
    } catch (const Error&) {
      // analytic value undefined for this functional
    }
  }
  return cert;
}

AttackAudit audit_attack(const EveAttack& attack, const SteeringFunctional& functional,
                         double beta_obs, int x_star, BetaConstraint constraint) {
  const Scenario& s = attack.scenario();
  if (!(s == functional.scenario())) {
    throw Error(ErrorKind::kScenarioMismatch, "attack and functional scenarios differ");
  }
  check_x_star(s, x_star);
  AttackAudit audit;
  audit.min_eigenvalue = attack.at(0, 0, 0).min_eigenvalue();
  double total_trace = 0.0;
  for (int e = 0; e < attack.num_guesses(); ++e) {
    Operator ref = Operator::zero(s.dim_b);
    for (int a = 0; a < s.n_outcomes; ++a) ref += attack.at(e, a, x_star);
    total_trace += ref.trace().real();
    audit.guess_value += attack.at(e, e, x_star).trace().real();
    for (int x = 0; x < s.n_inputs; ++x) {
      Operator sum = Operator::zero(s.dim_b);
      for (int a = 0; a < s.n_outcomes; ++a) {
        sum += attack.at(e, a, x);
        audit.min_eigenvalue = std::min(audit.min_eigenvalue, attack.at(e, a, x).min_eigenvalue());
      }
      audit.no_signalling = std::max(audit.no_signalling, max_abs_diff(sum, ref));
    }
  }
  audit.trace = std::abs(total_trace - 1.0);
  const double value = steering_value(functional, attack.average());
  audit.beta = constraint == BetaConstraint::kEquality ? std::abs(value - beta_obs)
                                                       : std::max(0.0, beta_obs - value);
  return audit;
}

}  // namespace steercert
