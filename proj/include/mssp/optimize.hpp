// Copyright 2026 The mssp-interp Authors
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

// Box-constrained quasi-Newton minimization with finite-difference
// gradients, for the low-dimensional calibration problems.

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace mssp {

using Objective = std::function<double(std::span<const double>)>;

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;  // may hold +infinity
};

struct MinimizeOptions {
  int max_iterations = 1000;
  // Stop when the projected gradient max-norm falls below this.
  double projected_gradient_tolerance = 1e-8;
  // Also stop when the relative decrease of f in an accepted step is below
  // this (1e7 * machine epsilon, the usual L-BFGS-B factr default).
  double relative_reduction_tolerance = 1e7 * 2.220446049250313e-16;
  // Curvature pairs kept by the limited-memory update.
  int memory = 10;
  // Finite-difference step, scaled by max(1, |x_i|).
  double difference_step = 1e-6;
};

struct MinimizeResult {
  std::vector<double> argmin;
  double value = 0.0;
  std::vector<double> trace;  // objective after each iteration
  int iterations = 0;
  bool converged = false;
  std::string message;
};

// Central differences where the stencil fits in the box, one-sided at a
// bound.
std::vector<double> FiniteDifferenceGradient(const Objective& f,
                                             std::span<const double> x,
                                             const Box& box, double step);

// Projected BFGS: directions come from an inverse-Hessian approximation on
// the free variables, steps are projected onto the box and accepted by an
// Armijo backtracking search. Throws a validation Error when the start lies
// outside the box and a calibration Error when f(start) is not finite.
MinimizeResult BoundedMinimize(const Objective& f, std::vector<double> start,
                               const Box& box,
                               const MinimizeOptions& options = {});

}  // namespace mssp
