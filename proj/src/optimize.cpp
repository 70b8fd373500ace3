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

#include "mssp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "mssp/error.hpp"

namespace mssp {
namespace {

using Vec = Eigen::VectorXd;

Vec Project(const Vec& x, const Box& box) {
  Vec p = x;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    p[i] = std::clamp(p[i], box.lower[i], box.upper[i]);
  }
  return p;
}

double Call(const Objective& f, const Vec& x) {
  return f(std::span<const double>(x.data(), static_cast<size_t>(x.size())));
}

}  // namespace

std::vector<double> FiniteDifferenceGradient(const Objective& f,
                                             std::span<const double> x,
                                             const Box& box, double step) {
  std::vector<double> g(x.size());
  std::vector<double> probe(x.begin(), x.end());
  double f0 = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = 0; i < x.size(); ++i) {
    const double h = step * std::max(1.0, std::abs(x[i]));
    const bool down = x[i] - h >= box.lower[i];
    const bool up = x[i] + h <= box.upper[i];
    auto eval = [&](double xi) {
      probe[i] = xi;
      const double v = f(probe);
      probe[i] = x[i];
      return v;
    };
    if (down && up) {
      g[i] = (eval(x[i] + h) - eval(x[i] - h)) / (2.0 * h);
    } else {
      if (std::isnan(f0)) f0 = f(probe);
      g[i] = up ? (eval(x[i] + h) - f0) / h : (f0 - eval(x[i] - h)) / h;
    }
  }
  return g;
}

MinimizeResult BoundedMinimize(const Objective& f, std::vector<double> start,
                               const Box& box, const MinimizeOptions& options) {
  const auto dim = static_cast<Eigen::Index>(start.size());
  if (box.lower.size() != start.size() || box.upper.size() != start.size()) {
    throw ValidationError("box dimension does not match the start point");
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (!(start[i] >= box.lower[i] && start[i] <= box.upper[i])) {
      throw ValidationError(
          fmt::format("start coordinate {} = {} outside [{}, {}]", i, start[i],
                      box.lower[i], box.upper[i]));
    }
  }

  Vec x = Eigen::Map<Vec>(start.data(), dim);
  double fx = Call(f, x);
  if (!std::isfinite(fx)) {
    throw Error(ErrorClass::kCalibration, "objective is not finite at the start");
  }

  auto gradient = [&](const Vec& at) {
    const auto g = FiniteDifferenceGradient(
        f, std::span<const double>(at.data(), static_cast<size_t>(dim)), box,
        options.difference_step);
    return Vec(Eigen::Map<const Vec>(g.data(), dim));
  };

  MinimizeResult result;
  // Limited-memory curvature pairs, oldest first.
  std::deque<std::pair<Vec, Vec>> memory;
  Vec g = gradient(x);

  // Two-loop recursion: returns H * v for the current memory.
  auto apply_inverse = [&](Vec v) {
    std::vector<double> alpha(memory.size());
    for (size_t k = memory.size(); k-- > 0;) {
      const auto& [sk, yk] = memory[k];
      alpha[k] = sk.dot(v) / sk.dot(yk);
      v -= alpha[k] * yk;
    }
    const auto& [sl, yl] = memory.back();
    v *= sl.dot(yl) / yl.squaredNorm();
    for (size_t k = 0; k < memory.size(); ++k) {
      const auto& [sk, yk] = memory[k];
      v += sk * (alpha[k] - yk.dot(v) / sk.dot(yk));
    }
    return v;
  };

  for (result.iterations = 0; result.iterations < options.max_iterations;
       ++result.iterations) {
    const Vec pg = Project(x - g, box) - x;
    if (!g.allFinite()) {
      result.message = "non-finite gradient";
      break;
    }
    if (pg.lpNorm<Eigen::Infinity>() < options.projected_gradient_tolerance) {
      result.converged = true;
      result.message = "projected gradient below tolerance";
      break;
    }

    // Variables held at a bound by the gradient are frozen this iteration.
    Vec free_g = g;
    std::vector<bool> frozen(dim, false);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((x[i] <= box.lower[i] && g[i] > 0) ||
          (x[i] >= box.upper[i] && g[i] < 0)) {
        frozen[i] = true;
        free_g[i] = 0.0;
      }
    }

    bool stepped = false;
    double f_new = fx;
    Vec x_new = x;
    for (int attempt = 0; attempt < 2 && !stepped; ++attempt) {
      Vec d = memory.empty() ? Vec(-free_g) : Vec(-apply_inverse(free_g));
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (frozen[i]) d[i] = 0.0;
      }
      if (d.dot(g) >= 0.0) {
        memory.clear();
        d = -free_g;
      }
      double t = 1.0;
      if (memory.empty()) {
        t = std::min(1.0, 1.0 / std::max(d.lpNorm<Eigen::Infinity>(), 1e-300));
      }
      for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
        const Vec trial = Project(x + t * d, box);
        const Vec s = trial - x;
        if (s.lpNorm<Eigen::Infinity>() == 0.0) break;
        const double ft = Call(f, trial);
        if (std::isfinite(ft) && ft <= fx + 1e-4 * g.dot(s)) {
          x_new = trial;
          f_new = ft;
          stepped = true;
          break;
        }
      }
      if (!stepped && !memory.empty()) {
        memory.clear();
      } else {
        break;
      }
    }
    if (!stepped) {
      result.message = "line search could not reduce the objective";
      break;
    }

    const Vec g_new = gradient(x_new);
    const Vec s = x_new - x;
    Vec y = g_new - g;
    // Curvature along frozen coordinates would distort the free subspace.
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (frozen[i]) y[i] = 0.0;
    }
    if (s.dot(y) > 1e-12 * s.norm() * y.norm()) {
      memory.emplace_back(s, y);
      if (static_cast<int>(memory.size()) > options.memory) memory.pop_front();
    } else {
      // Negative curvature: restart from a scaled gradient step.
      memory.clear();
    }

    const double reduction =
        (fx - f_new) / std::max({std::abs(fx), std::abs(f_new), 1.0});
    x = x_new;
    fx = f_new;
    g = g_new;
    result.trace.push_back(fx);
    if (reduction <= options.relative_reduction_tolerance) {
      result.converged = true;
      result.message = "relative reduction below tolerance";
      ++result.iterations;
      break;
    }
  }
  if (result.message.empty()) result.message = "iteration limit reached";
  result.argmin.assign(x.data(), x.data() + dim);
  result.value = fx;
  return result;
}

}  // namespace mssp
