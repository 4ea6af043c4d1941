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

#include <span>
#include <vector>

#include "steercert/guessing.hpp"

namespace steercert {

struct SweepOptions {
  GuessingOptions guessing;
  // Worker count; 0 means std::thread::hardware_concurrency().
  int threads = 0;
};

// steps evenly spaced points from lo to hi inclusive; a single step yields lo.
std::vector<double> linear_grid(double lo, double hi, int steps);

// One certificate per grid point, in grid order. Points run concurrently on a
// worker pool; a point that throws is reported with status
// numerical_failure and its error message, without affecting the others.
// Throws kInvalidInput when the grid is not sorted ascending.
std::vector<GuessingCertificate> sweep(const SteeringFunctional& functional,
                                       std::span<const double> beta_grid, int x_star,
                                       const SweepOptions& options = {});

}  // namespace steercert
