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

// Fixed-effects behavioural models: a four-category cumulative-logit model
// with symmetric thresholds for choices and a linear model for log RT.
//
// Categories are ordered definitely-left < slightly-left < slightly-right <
// definitely-right, and P(Y <= k) = logistic(theta_k - eta) with
// eta = sum(beta * signed standardized difference). Negative betas move mass
// toward the left option when the right one is more complex.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mssp/metrics.hpp"

namespace mssp {

inline constexpr int kNumCategories = 4;
inline constexpr std::array<std::string_view, kNumCategories> kCategoryNames =
    {"definitely_left", "slightly_left", "slightly_right", "definitely_right"};

using ChoiceProbabilities = std::array<double, kNumCategories>;

struct ChoiceModelParams {
  double central = 0.0;
  double spacing = 1.0;
  MetricArray betas{};  // HC, CC, VC, DD

  // central - spacing, central, central + spacing.
  std::array<double, 3> Thresholds() const;
  void Validate() const;

  static ChoiceModelParams Confirmatory();
  static ChoiceModelParams Exploratory();
};

ChoiceProbabilities PredictChoiceProbs(const ChoiceModelParams& params,
                                       const MetricArray& signed_diff);
ChoiceProbabilities PredictChoiceProbs(const ChoiceModelParams& params,
                                       const PairDifferences& d);

// Smallest category k with u < P(Y <= k), for u in [0, 1).
int SampleCategory(const ChoiceProbabilities& probs, double u);

struct OrdinalObservation {
  MetricArray predictors{};  // signed standardized differences
  int category = 0;          // 0..3
};

// Probabilities are floored here before taking logs.
inline constexpr double kProbabilityFloor = 1e-12;

// Mean negative log probability of the observed categories.
double OrdinalLogLoss(const ChoiceModelParams& params,
                      std::span<const OrdinalObservation> trials);

// Which betas are free; inactive betas stay at zero.
using PredictorMask = std::array<bool, 4>;
inline constexpr PredictorMask kAllPredictors = {true, true, true, true};

// Mean log-likelihood and its analytic gradient with respect to
// (central, spacing, active betas in HC, CC, VC, DD order).
double MeanLogLikelihood(const ChoiceModelParams& params,
                         std::span<const OrdinalObservation> trials);
std::vector<double> MeanLogLikelihoodGradient(
    const ChoiceModelParams& params, std::span<const OrdinalObservation> trials,
    const PredictorMask& mask);

struct OrdinalFitOptions {
  PredictorMask mask = kAllPredictors;
  int max_iterations = 500;
  double gradient_tolerance = 1e-8;
  // Stops once the predicted Newton gain falls below this.
  double decrement_tolerance = 1e-14;
  // Any parameter beyond this magnitude is reported as separation.
  double divergence_limit = 50.0;
};

struct OrdinalFit {
  ChoiceModelParams params;
  double log_loss = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Maximum likelihood by damped Newton with backtracking, starting from
// central 0, spacing 1, betas 0. Throws a validation Error on fewer than two
// observed categories or when a parameter diverges (separation).
OrdinalFit FitOrdinalFixed(std::span<const OrdinalObservation> trials,
                           const OrdinalFitOptions& options = {});

struct RtModelParams {
  double intercept = 0.0;
  MetricArray coefs{};  // |dHC|, |dCC|, |dVC|, |dDD|
  std::optional<double> pse_coef;

  static RtModelParams Confirmatory();
  static RtModelParams Exploratory();
};

// Predicted log reaction time in log-milliseconds. pse_z is ignored when the
// model has no PSE term.
double PredictLogRt(const RtModelParams& params,
                    const MetricArray& absolute_diff, double pse_z);

// Parameter files. Choice:
//   {"model": "choice", "central": 0.136, "spacing": 1.898,
//    "betas": {"hc": -0.314, "cc": -0.234, "vc": -0.371, "dd": -0.031}}
// RT:
//   {"model": "rt", "intercept": 9.010,
//    "coefs": {"hc": -0.042, "cc": 0.016, "vc": -0.004, "dd": -0.029,
//              "pse": -0.167}}
nlohmann::json ChoiceParamsToJson(const ChoiceModelParams& params);
ChoiceModelParams ChoiceParamsFromJson(const nlohmann::json& j);
nlohmann::json RtParamsToJson(const RtModelParams& params);
RtModelParams RtParamsFromJson(const nlohmann::json& j);

// Shipped presets: "confirmatory_choice", "exploratory_choice",
// "confirmatory_rt", "exploratory_rt".
std::optional<ChoiceModelParams> ChoicePreset(std::string_view name);
std::optional<RtModelParams> RtPreset(std::string_view name);

}  // namespace mssp
