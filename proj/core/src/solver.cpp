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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "steercert/error.hpp"

namespace steercert {

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kNearOptimal: return "near_optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

using Blocks = std::vector<Eigen::MatrixXcd>;

struct Coupling {
  int constraint = 0;
  const HermitianCoefficient* coeff = nullptr;
  std::vector<int> cols;  // distinct column indices carrying entries
};

// Program data regrouped per block, with repeated (constraint, block) terms
// merged.
class Model {
 public:
  explicit Model(const ConicProgram& program) {
    program.validate();
    for (const auto& b : program.blocks()) sides_.push_back(b.side);
    m_ = static_cast<int>(program.equalities().size());
    b_.resize(m_);
    objective_.reserve(sides_.size());
    for (int s : sides_) objective_.push_back(Eigen::MatrixXcd::Zero(s, s));
    for (const auto& t : program.objective().terms) t.coeff.add_to(objective_[t.block], 1.0);

    storage_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      const auto& eq = program.equalities()[i];
      b_(i) = eq.rhs;
      std::map<int, std::vector<const HermitianCoefficient*>> grouped;
      for (const auto& t : eq.lhs.terms) grouped[t.block].push_back(&t.coeff);
      for (auto& [block, coeffs] : grouped) {
        if (coeffs.size() == 1) {
          storage_[i].emplace_back(block, *coeffs.front());
        } else {
          Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(sides_[block], sides_[block]);
          for (const auto* c : coeffs) c->add_to(sum, 1.0);
          storage_[i].emplace_back(block, HermitianCoefficient::from_dense(sum));
        }
      }
    }
    couplings_.resize(sides_.size());
    for (int i = 0; i < m_; ++i) {
      for (const auto& [block, coeff] : storage_[i]) {
        if (coeff.empty()) continue;
        Coupling c{i, &coeff, {}};
        for (const auto& e : coeff.entries()) c.cols.push_back(e.col);
        std::sort(c.cols.begin(), c.cols.end());
        c.cols.erase(std::unique(c.cols.begin(), c.cols.end()), c.cols.end());
        couplings_[block].push_back(std::move(c));
      }
    }
    for (int s : sides_) total_side_ += s;
  }

  int m() const { return m_; }
  int num_blocks() const { return static_cast<int>(sides_.size()); }
  int side(int k) const { return sides_[k]; }
  int total_side() const { return total_side_; }
  const Eigen::VectorXd& b() const { return b_; }
  const Blocks& objective() const { return objective_; }
  const std::vector<Coupling>& couplings(int k) const { return couplings_[k]; }

  Eigen::VectorXd apply(const Blocks& x) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(m_);
    for (int k = 0; k < num_blocks(); ++k) {
      for (const auto& c : couplings_[k]) out(c.constraint) += c.coeff->inner(x[k]);
    }
    return out;
  }

  Blocks apply_adjoint(const Eigen::VectorXd& y) const {
    Blocks out;
    out.reserve(sides_.size());
    for (int k = 0; k < num_blocks(); ++k) {
      out.push_back(Eigen::MatrixXcd::Zero(sides_[k], sides_[k]));
      for (const auto& c : couplings_[k]) c.coeff->add_to(out[k], y(c.constraint));
    }
    return out;
  }

  // M_ij = sum_k Re tr(A_ik X_k A_jk W_k)
  Eigen::MatrixXd schur(const Blocks& x, const Blocks& w) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m_, m_);
    for (int k = 0; k < num_blocks(); ++k) {
      const auto& list = couplings_[k];
      const int n = sides_[k];
      Eigen::MatrixXcd xa(n, n);
      Eigen::MatrixXcd t(n, n);
      for (std::size_t jj = 0; jj < list.size(); ++jj) {
        const Coupling& cj = list[jj];
        xa.setZero();
        for (const auto& e : cj.coeff->entries()) xa.col(e.col) += x[k].col(e.row) * e.value;
        t.setZero();
        for (int q : cj.cols) t.noalias() += xa.col(q) * w[k].row(q);
        for (std::size_t ii = 0; ii <= jj; ++ii) {
          const Coupling& ci = list[ii];
          const double v = ci.coeff->inner(t);
          out(ci.constraint, cj.constraint) += v;
          if (ci.constraint != cj.constraint) out(cj.constraint, ci.constraint) += v;
        }
      }
    }
    return out;
  }

 private:
  int m_ = 0;
  int total_side_ = 0;
  std::vector<int> sides_;
  Eigen::VectorXd b_;
  Blocks objective_;
  std::vector<std::vector<std::pair<int, HermitianCoefficient>>> storage_;
  std::vector<std::vector<Coupling>> couplings_;
};

Eigen::MatrixXcd herm(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

double inner(const Blocks& a, const Blocks& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    acc += (a[k].transpose().cwiseProduct(b[k])).sum().real();
  }
  return acc;
}

double frobenius(const Blocks& a) {
  double acc = 0.0;
  for (const auto& m : a) acc += m.squaredNorm();
  return std::sqrt(acc);
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Largest alpha with x + alpha dx >= 0 (infinity when dx >= 0). Returns -1
// when x itself is not positive definite.
double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    Eigen::LLT<Eigen::MatrixXcd> llt(x[k]);
    if (llt.info() != Eigen::Success) return -1.0;
    const auto l = llt.matrixL();
    const Eigen::MatrixXcd s1 = l.solve(dx[k]);
    const Eigen::MatrixXcd s = l.solve(s1.adjoint()).adjoint();
    const double lmin = min_eigenvalue(s);
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

bool invert_pd(const Eigen::MatrixXcd& z, Eigen::MatrixXcd& out) {
  Eigen::LLT<Eigen::MatrixXcd> llt(z);
  if (llt.info() != Eigen::Success) return false;
  out = herm(llt.solve(Eigen::MatrixXcd::Identity(z.rows(), z.cols())));
  return out.allFinite();
}

class SchurFactor {
 public:
  bool factor(Eigen::MatrixXd m) {
    m_ = m;
    const double scale = std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
    for (double ridge : {0.0, 1e-14, 1e-12, 1e-10}) {
      if (ridge > 0.0) m.diagonal().array() += ridge * scale;
      llt_.compute(m);
      if (llt_.info() == Eigen::Success) return true;
    }
    return false;
  }
  // LLT solve with a few rounds of iterative refinement against the
  // unregularized matrix.
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd x = llt_.solve(rhs);
    const double rhs_norm = rhs.norm();
    for (int k = 0; k < 3; ++k) {
      const Eigen::VectorXd r = rhs - m_ * x;
      if (r.norm() <= 1e-15 * rhs_norm) break;
      x += llt_.solve(r);
    }
    return x;
  }

 private:
  Eigen::MatrixXd m_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

struct Iterate {
  Blocks x;
  Eigen::VectorXd y;
  Blocks z;
};

struct Direction {
  Blocks dx;
  Eigen::VectorXd dy;
  Blocks dz;
};

}  // namespace

SolveResult solve(const ConicProgram& program, const SolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Model model(program);
  const int nb = model.num_blocks();
  const int m = model.m();
  const double b_norm = model.b().norm();
  const double c_norm = frobenius(model.objective());

  // Scaled identity start.
  Iterate it;
  it.y = Eigen::VectorXd::Zero(m);
  for (int k = 0; k < nb; ++k) {
    const int n = model.side(k);
    double xi = 1.0;
    double eta = 1.0 + model.objective()[k].norm();
    for (const auto& c : model.couplings(k)) {
      const double an = c.coeff->frobenius_norm();
      xi = std::max(xi, n * (1.0 + std::abs(model.b()(c.constraint))) / (1.0 + an));
      eta = std::max(eta, 1.0 + an);
    }
    eta = std::max(1.0, eta / std::sqrt(static_cast<double>(n)));
    it.x.push_back(xi * Eigen::MatrixXcd::Identity(n, n));
    it.z.push_back(eta * Eigen::MatrixXcd::Identity(n, n));
  }

  SolveResult result;
  SolverReport current;
  double best_pscore = std::numeric_limits<double>::infinity();
  double best_dscore = std::numeric_limits<double>::infinity();
  double best_pvalue = 0.0;
  double best_dvalue = 0.0;
  int stalled = 0;
  bool converged = false;

  auto finish = [&](SolveStatus status) {
    result.report.status = status;
    result.report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  auto gap_scale = [&] {
    return std::max(1.0, 0.5 * (std::abs(best_pvalue) + std::abs(best_dvalue)));
  };

  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    Blocks w(nb);
    bool ok = true;
    for (int k = 0; k < nb && ok; ++k) ok = invert_pd(it.z[k], w[k]);
    if (!ok) {
      break;
    }
    const Blocks aty = model.apply_adjoint(it.y);
    Blocks rd(nb);
    for (int k = 0; k < nb; ++k) rd[k] = aty[k] - it.z[k] - model.objective()[k];
    const Eigen::VectorXd rp = model.b() - model.apply(it.x);

    current.primal_value = inner(model.objective(), it.x);
    current.dual_value = model.b().dot(it.y);
    current.gap = current.dual_value - current.primal_value;
    current.primal_infeasibility = rp.norm() / (1.0 + b_norm);
    current.dual_infeasibility = frobenius(rd) / (1.0 + c_norm);
    if (options.verbose) {
      std::fprintf(stderr, "%3d pobj=% .10e dobj=% .10e gap=% .2e pinf=%.2e dinf=%.2e\n", iter,
                   current.primal_value, current.dual_value, current.gap,
                   current.primal_infeasibility, current.dual_infeasibility);
    }

    const double pscore = std::max(1.0, current.primal_infeasibility / options.feas_tol);
    if (pscore <= best_pscore) {
      best_pscore = pscore;
      best_pvalue = current.primal_value;
      result.primal = it.x;
      result.report.primal_value = current.primal_value;
      result.report.primal_infeasibility = current.primal_infeasibility;
    }
    double dscore = std::max(1.0, current.dual_infeasibility / options.feas_tol);
    double dvalue = current.dual_value;
    if (options.trace_bound > 0.0) {
      double lmin = std::numeric_limits<double>::infinity();
      for (int k = 0; k < nb; ++k) lmin = std::min(lmin, min_eigenvalue(aty[k] - model.objective()[k]));
      dvalue += std::max(0.0, -lmin) * options.trace_bound;
      dscore = 1.0;
    }
    if (dscore < best_dscore || (dscore == best_dscore && dvalue < best_dvalue)) {
      best_dscore = dscore;
      best_dvalue = dvalue;
      result.multipliers = it.y;
      result.dual_slack = it.z;
      result.report.dual_value = dvalue;
      result.report.dual_infeasibility = current.dual_infeasibility;
    }
    result.report.gap = best_dvalue - best_pvalue;
    result.report.iterations = iter;
    if (best_pscore <= 1.0 && best_dscore <= 1.0 &&
        std::abs(result.report.gap) <= options.gap_tol * gap_scale()) {
      converged = true;
      break;
    }

    // Divergence along an improving ray signals infeasibility.
    const double y_norm = it.y.norm();
    if (y_norm > 1e6 && current.dual_value < -1e-8 * y_norm) {
      double lmin = std::numeric_limits<double>::infinity();
      for (int k = 0; k < nb; ++k) lmin = std::min(lmin, min_eigenvalue(aty[k]));
      if (lmin >= -1e-6 * std::abs(current.dual_value)) {
        std::ostringstream os;
        os << "primal infeasible: b'y/|y| = " << current.dual_value / y_norm
           << ", min eig A*(y)/|b'y| = " << lmin / std::abs(current.dual_value);
        result.ray_summary = os.str();
        current.iterations = iter;
        result.report = current;
        finish(SolveStatus::kInfeasible);
        return result;
      }
    }
    double trace_x = 0.0;
    for (const auto& xk : it.x) trace_x += xk.trace().real();
    if (trace_x > 1e6 && current.primal_value > 0.0 &&
        (model.b() - rp).norm() <= 1e-5 * current.primal_value) {
      std::ostringstream os;
      os << "dual infeasible: <C,X>/tr X = " << current.primal_value / trace_x
         << ", |A(X)|/<C,X> = " << (model.b() - rp).norm() / current.primal_value;
      result.ray_summary = os.str();
      current.iterations = iter;
      result.report = current;
      finish(SolveStatus::kUnbounded);
      return result;
    }
    if (iter == options.max_iterations) break;

    const double mu = inner(it.x, it.z) / model.total_side();
    SchurFactor schur;
    if (!schur.factor(model.schur(it.x, w))) {
      break;
    }

    // dX = herm(mu W - X - G - X dZ W), dZ = A*(dy) + Rd
    auto direction = [&](double target, const Blocks* corr) {
      Blocks base(nb);
      for (int k = 0; k < nb; ++k) {
        base[k] = target * w[k] - it.x[k] - it.x[k] * rd[k] * w[k];
        if (corr != nullptr) base[k] -= (*corr)[k];
      }
      Direction d;
      d.dy = schur.solve(model.apply(base) - rp);
      d.dz = model.apply_adjoint(d.dy);
      d.dx.resize(nb);
      for (int k = 0; k < nb; ++k) {
        d.dz[k] += rd[k];
        Eigen::MatrixXcd dxk = target * w[k] - it.x[k] - it.x[k] * d.dz[k] * w[k];
        if (corr != nullptr) dxk -= (*corr)[k];
        d.dx[k] = herm(dxk);
      }
      return d;
    };

    const Direction pred = direction(0.0, nullptr);
    const double ap_aff = std::min(1.0, max_step(it.x, pred.dx));
    const double ad_aff = std::min(1.0, max_step(it.z, pred.dz));
    if (ap_aff < 0.0 || ad_aff < 0.0) {
      break;
    }
    Blocks xa(nb);
    Blocks za(nb);
    for (int k = 0; k < nb; ++k) {
      xa[k] = it.x[k] + ap_aff * pred.dx[k];
      za[k] = it.z[k] + ad_aff * pred.dz[k];
    }
    const double mu_aff = inner(xa, za) / model.total_side();
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    Blocks corr(nb);
    for (int k = 0; k < nb; ++k) corr[k] = pred.dx[k] * pred.dz[k] * w[k];
    const Direction step = direction(sigma * mu, &corr);
    const double ap = std::min(1.0, options.step_fraction * max_step(it.x, step.dx));
    const double ad = std::min(1.0, options.step_fraction * max_step(it.z, step.dz));
    if (!(ap > 0.0) || !(ad > 0.0) || !step.dy.allFinite()) {
      break;
    }
    for (int k = 0; k < nb; ++k) {
      it.x[k] = herm(it.x[k] + ap * step.dx[k]);
      it.z[k] = herm(it.z[k] + ad * step.dz[k]);
    }
    it.y += ad * step.dy;

    if (options.verbose) {
      std::fprintf(stderr, "    mu=%.2e sigma=%.2e ap=%.3f ad=%.3f\n", mu, sigma, ap, ad);
    }
    stalled = (std::max(ap, ad) < 1e-9) ? stalled + 1 : 0;
    if (stalled >= 3) break;
  }

  // Exact dual-feasibility defect of the reported multipliers.
  if (result.multipliers.size() == m) {
    const Blocks aty = model.apply_adjoint(result.multipliers);
    double lmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < nb; ++k) lmin = std::min(lmin, min_eigenvalue(aty[k] - model.objective()[k]));
    result.dual_constraint_min_eig = nb > 0 ? lmin : 0.0;
  }

  const bool near = best_pscore <= options.near_factor && best_dscore <= options.near_factor &&
                    std::abs(result.report.gap) <= options.near_factor * options.gap_tol * gap_scale();
  if (converged) {
    finish(SolveStatus::kOptimal);
  } else if (near && !result.primal.empty()) {
    finish(SolveStatus::kNearOptimal);
  } else {
    finish(SolveStatus::kNumericalFailure);
  }
  return result;
}

}  // namespace steercert
