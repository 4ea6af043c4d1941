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
#include "steercert/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "steercert/error.hpp"

namespace steercert {

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 1) throw Error(ErrorKind::kInvalidInput, "grid needs at least one step");
  if (!(lo <= hi)) throw Error(ErrorKind::kInvalidInput, "grid bounds out of order");
  std::vector<double> grid(steps);
  for (int k = 0; k < steps; ++k) {
    grid[k] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / (steps - 1);
  }
  if (steps > 1) grid.back() = hi;
  return grid;
}

std::vector<GuessingCertificate> sweep(const SteeringFunctional& functional,
                                       std::span<const double> beta_grid, int x_star,
                                       const SweepOptions& options) {
  if (!std::is_sorted(beta_grid.begin(), beta_grid.end())) {
    throw Error(ErrorKind::kInvalidInput, "beta grid must be sorted ascending");
  }
  GuessingOptions guessing = options.guessing;
  if (!guessing.beta_max) guessing.beta_max = quantum_maximum(functional, guessing.solver);

  std::vector<GuessingCertificate> out(beta_grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < beta_grid.size(); k = next++) {
      try {
        out[k] = guessing_probability(functional, beta_grid[k], x_star, guessing);
      } catch (const std::exception& e) {
        GuessingCertificate failed;
        failed.d = functional.scenario().n_outcomes;
        failed.beta_obs = beta_grid[k];
        failed.x_star = x_star;
        failed.p_guess_primal = std::numeric_limits<double>::quiet_NaN();
        failed.report.status = SolveStatus::kNumericalFailure;
        failed.error = e.what();
        out[k] = std::move(failed);
      }
    }
  };

  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max<int>(1, static_cast<int>(beta_grid.size())));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return out;
}

}  // namespace steercert
