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

#include "mssp/preference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "mssp/error.hpp"

namespace mssp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double Logistic(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double LogisticDensity(double t) {
  if (!std::isfinite(t)) return 0.0;
  const double f = Logistic(t);
  return f * (1.0 - f);
}

// F(a) - F(b) for b < a, arranged to avoid cancellation in the upper tail.
double IntervalProbability(double b, double a) {
  if (b > 0) {
    const double fb = b == kInf ? 0.0 : Logistic(-b);
    const double fa = a == kInf ? 0.0 : Logistic(-a);
    return fb - fa;
  }
  const double fa = a == kInf ? 1.0 : Logistic(a);
  const double fb = b == -kInf ? 0.0 : Logistic(b);
  return fa - fb;
}

double LinearPredictor(const ChoiceModelParams& params, const MetricArray& x) {
  double eta = 0.0;
  for (size_t k = 0; k < x.size(); ++k) eta += params.betas[k] * x[k];
  return eta;
}

// Offsets of the three thresholds from the central one, in spacing units.
constexpr std::array<double, 3> kThresholdOffset = {-1.0, 0.0, 1.0};

std::vector<int> ActiveIndices(const PredictorMask& mask) {
  std::vector<int> out;
  for (int k = 0; k < 4; ++k) {
    if (mask[k]) out.push_back(k);
  }
  return out;
}

struct Derivatives {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

// Mean log-likelihood with gradient and Hessian over
// phi = (central, spacing, active betas).
Derivatives Evaluate(const ChoiceModelParams& params,
                     std::span<const OrdinalObservation> trials,
                     const std::vector<int>& active, bool want_hessian) {
  const int dim = 2 + static_cast<int>(active.size());
  Derivatives out;
  out.gradient = Eigen::VectorXd::Zero(dim);
  if (want_hessian) out.hessian = Eigen::MatrixXd::Zero(dim, dim);
  const auto theta = params.Thresholds();
  Eigen::VectorXd da(dim), db(dim), g(dim);
  for (const auto& t : trials) {
    const double eta = LinearPredictor(params, t.predictors);
    const int y = t.category;
    const double a = y < 3 ? theta[y] - eta : kInf;
    const double b = y > 0 ? theta[y - 1] - eta : -kInf;
    const double p = std::max(IntervalProbability(b, a), 1e-300);
    out.value += std::log(p);
    da.setZero();
    db.setZero();
    if (y < 3) {
      da[0] = 1.0;
      da[1] = kThresholdOffset[y];
    }
    if (y > 0) {
      db[0] = 1.0;
      db[1] = kThresholdOffset[y - 1];
    }
    for (size_t q = 0; q < active.size(); ++q) {
      const double x = t.predictors[active[q]];
      if (y < 3) da[2 + q] = -x;
      if (y > 0) db[2 + q] = -x;
    }
    const double fa = LogisticDensity(a);
    const double fb = LogisticDensity(b);
    g = (fa * da - fb * db) / p;
    out.gradient += g;
    if (want_hessian) {
      const double dfa = y < 3 ? fa * (1.0 - 2.0 * Logistic(a)) : 0.0;
      const double dfb = y > 0 ? fb * (1.0 - 2.0 * Logistic(b)) : 0.0;
      out.hessian += (dfa * da * da.transpose() - dfb * db * db.transpose()) / p -
                     g * g.transpose();
    }
  }
  const double n = static_cast<double>(trials.size());
  out.value /= n;
  out.gradient /= n;
  if (want_hessian) out.hessian /= n;
  return out;
}

ChoiceModelParams Step(const ChoiceModelParams& base,
                       const std::vector<int>& active,
                       const Eigen::VectorXd& delta, double t) {
  ChoiceModelParams p = base;
  p.central += t * delta[0];
  p.spacing += t * delta[1];
  for (size_t q = 0; q < active.size(); ++q) p.betas[active[q]] += t * delta[2 + q];
  return p;
}

std::string ParameterName(int index, const std::vector<int>& active) {
  if (index == 0) return "central threshold";
  if (index == 1) return "threshold spacing";
  return fmt::format("beta_{}", kMetricNames[active[index - 2]]);
}

}  // namespace

std::array<double, 3> ChoiceModelParams::Thresholds() const {
  return {central - spacing, central, central + spacing};
}

void ChoiceModelParams::Validate() const {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw ValidationError(fmt::format("threshold spacing {} must be positive",
                                      spacing));
  }
  if (!std::isfinite(central)) throw ValidationError("central threshold is not finite");
  for (double b : betas) {
    if (!std::isfinite(b)) throw ValidationError("choice coefficient is not finite");
  }
}

ChoiceModelParams ChoiceModelParams::Confirmatory() {
  return {0.136, 1.898, {-0.314, -0.234, -0.371, -0.031}};
}

ChoiceModelParams ChoiceModelParams::Exploratory() {
  return {0.123, 1.681, {-0.401, -0.151, -0.530, -0.216}};
}

ChoiceProbabilities PredictChoiceProbs(const ChoiceModelParams& params,
                                       const MetricArray& signed_diff) {
  params.Validate();
  const double eta = LinearPredictor(params, signed_diff);
  const auto theta = params.Thresholds();
  ChoiceProbabilities probs;
  probs[0] = IntervalProbability(-kInf, theta[0] - eta);
  probs[1] = IntervalProbability(theta[0] - eta, theta[1] - eta);
  probs[2] = IntervalProbability(theta[1] - eta, theta[2] - eta);
  probs[3] = IntervalProbability(theta[2] - eta, kInf);
  return probs;
}

ChoiceProbabilities PredictChoiceProbs(const ChoiceModelParams& params,
                                       const PairDifferences& d) {
  return PredictChoiceProbs(params, d.signed_diff);
}

int SampleCategory(const ChoiceProbabilities& probs, double u) {
  double cumulative = 0.0;
  for (int k = 0; k < kNumCategories - 1; ++k) {
    cumulative += probs[k];
    if (u < cumulative) return k;
  }
  return kNumCategories - 1;
}

double OrdinalLogLoss(const ChoiceModelParams& params,
                      std::span<const OrdinalObservation> trials) {
  if (trials.empty()) throw ValidationError("log-loss of an empty trial set");
  double loss = 0.0;
  for (const auto& t : trials) {
    if (t.category < 0 || t.category >= kNumCategories) {
      throw ValidationError(fmt::format("category {} out of range", t.category));
    }
    const auto probs = PredictChoiceProbs(params, t.predictors);
    loss -= std::log(std::max(probs[t.category], kProbabilityFloor));
  }
  return loss / static_cast<double>(trials.size());
}

double MeanLogLikelihood(const ChoiceModelParams& params,
                         std::span<const OrdinalObservation> trials) {
  return Evaluate(params, trials, {}, false).value;
}

std::vector<double> MeanLogLikelihoodGradient(
    const ChoiceModelParams& params, std::span<const OrdinalObservation> trials,
    const PredictorMask& mask) {
  const auto d = Evaluate(params, trials, ActiveIndices(mask), false);
  return {d.gradient.data(), d.gradient.data() + d.gradient.size()};
}

OrdinalFit FitOrdinalFixed(std::span<const OrdinalObservation> trials,
                           const OrdinalFitOptions& options) {
  std::array<int, kNumCategories> counts{};
  for (const auto& t : trials) {
    if (t.category < 0 || t.category >= kNumCategories) {
      throw ValidationError(fmt::format("category {} out of range", t.category));
    }
    ++counts[t.category];
  }
  const auto used = std::ranges::count_if(counts, [](int c) { return c > 0; });
  if (used < 2) {
    const auto only = std::ranges::max_element(counts) - counts.begin();
    throw ValidationError(fmt::format(
        "separation: every response is '{}', thresholds diverge",
        kCategoryNames[only]));
  }

  const auto active = ActiveIndices(options.mask);
  OrdinalFit fit;
  fit.params = ChoiceModelParams{0.0, 1.0, {}};
  auto d = Evaluate(fit.params, trials, active, true);
  for (fit.iterations = 0; fit.iterations < options.max_iterations;
       ++fit.iterations) {
    if (d.gradient.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
      fit.converged = true;
      break;
    }
    Eigen::VectorXd delta = (-d.hessian).ldlt().solve(d.gradient);
    if (!delta.allFinite() || delta.dot(d.gradient) <= 0.0) delta = d.gradient;
    if (delta.dot(d.gradient) < options.decrement_tolerance) {
      fit.converged = true;
      break;
    }

    double t = 1.0;
    Derivatives next;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      const auto candidate = Step(fit.params, active, delta, t);
      if (!(candidate.spacing > 0.0)) continue;
      next = Evaluate(candidate, trials, active, true);
      if (next.value >= d.value + 1e-4 * t * delta.dot(d.gradient)) {
        fit.params = candidate;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (fit.params.spacing < 1e-8) {
        throw ValidationError(
            "separation: threshold spacing collapses to zero");
      }
      break;  // no further ascent possible at double precision
    }
    d = std::move(next);

    const Eigen::Index dim = d.gradient.size();
    for (Eigen::Index k = 0; k < dim; ++k) {
      const double v = k == 0   ? fit.params.central
                       : k == 1 ? fit.params.spacing
                                : fit.params.betas[active[k - 2]];
      if (std::abs(v) > options.divergence_limit) {
        throw ValidationError(fmt::format(
            "separation: {} diverges (reached {:.3g})",
            ParameterName(static_cast<int>(k), active), v));
      }
    }
  }
  if (!fit.converged &&
      d.gradient.lpNorm<Eigen::Infinity>() < options.gradient_tolerance) {
    fit.converged = true;
  }
  fit.log_loss = OrdinalLogLoss(fit.params, trials);
  if (fit.log_loss < 1e-6) {
    int largest = 0;
    for (size_t a = 0; a < active.size(); ++a) {
      if (std::abs(fit.params.betas[active[a]]) >
          std::abs(fit.params.betas[active[largest]])) {
        largest = static_cast<int>(a);
      }
    }
    throw ValidationError(fmt::format(
        "separation: responses are perfectly predicted, {} diverges",
        active.empty() ? std::string("threshold spacing")
                       : ParameterName(largest + 2, active)));
  }
  return fit;
}

RtModelParams RtModelParams::Confirmatory() {
  return {9.010, {-0.042, 0.016, -0.004, -0.029}, -0.167};
}

RtModelParams RtModelParams::Exploratory() {
  return {9.399, {-0.067, -0.041, -0.051, -0.009}, std::nullopt};
}

double PredictLogRt(const RtModelParams& params,
                    const MetricArray& absolute_diff, double pse_z) {
  double y = params.intercept;
  for (size_t k = 0; k < absolute_diff.size(); ++k) {
    y += params.coefs[k] * absolute_diff[k];
  }
  if (params.pse_coef) y += *params.pse_coef * pse_z;
  return y;
}

nlohmann::json ChoiceParamsToJson(const ChoiceModelParams& params) {
  nlohmann::json betas;
  for (size_t k = 0; k < kMetricNames.size(); ++k) {
    betas[std::string(kMetricNames[k])] = params.betas[k];
  }
  return {{"model", "choice"},
          {"central", params.central},
          {"spacing", params.spacing},
          {"betas", betas}};
}

ChoiceModelParams ChoiceParamsFromJson(const nlohmann::json& j) {
  try {
    ChoiceModelParams p;
    p.central = j.at("central").get<double>();
    p.spacing = j.at("spacing").get<double>();
    const auto& betas = j.at("betas");
    for (size_t k = 0; k < kMetricNames.size(); ++k) {
      p.betas[k] = betas.value(std::string(kMetricNames[k]), 0.0);
    }
    p.Validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("choice parameters: ") + e.what());
  }
}

nlohmann::json RtParamsToJson(const RtModelParams& params) {
  nlohmann::json coefs;
  for (size_t k = 0; k < kMetricNames.size(); ++k) {
    coefs[std::string(kMetricNames[k])] = params.coefs[k];
  }
  if (params.pse_coef) coefs["pse"] = *params.pse_coef;
  return {{"model", "rt"}, {"intercept", params.intercept}, {"coefs", coefs}};
}

RtModelParams RtParamsFromJson(const nlohmann::json& j) {
  try {
    RtModelParams p;
    p.intercept = j.at("intercept").get<double>();
    const auto& coefs = j.at("coefs");
    for (size_t k = 0; k < kMetricNames.size(); ++k) {
      p.coefs[k] = coefs.value(std::string(kMetricNames[k]), 0.0);
    }
    if (coefs.contains("pse")) p.pse_coef = coefs["pse"].get<double>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("rt parameters: ") + e.what());
  }
}

std::optional<ChoiceModelParams> ChoicePreset(std::string_view name) {
  if (name == "confirmatory_choice" || name == "confirmatory") {
    return ChoiceModelParams::Confirmatory();
  }
  if (name == "exploratory_choice" || name == "exploratory") {
    return ChoiceModelParams::Exploratory();
  }
  return std::nullopt;
}

std::optional<RtModelParams> RtPreset(std::string_view name) {
  if (name == "confirmatory_rt" || name == "confirmatory") {
    return RtModelParams::Confirmatory();
  }
  if (name == "exploratory_rt" || name == "exploratory") {
    return RtModelParams::Exploratory();
  }
  return std::nullopt;
}

}  // namespace mssp
