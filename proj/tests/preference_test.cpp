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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "mssp/error.hpp"

namespace mssp {
namespace {

std::vector<OrdinalObservation> Simulate(const ChoiceModelParams& truth, int n,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  std::vector<OrdinalObservation> out(n);
  for (auto& t : out) {
    for (double& x : t.predictors) x = normal(rng);
    t.category = SampleCategory(PredictChoiceProbs(truth, t.predictors), unit(rng));
  }
  return out;
}

double MaxError(const ChoiceModelParams& a, const ChoiceModelParams& b) {
  double e = std::max(std::abs(a.central - b.central),
                      std::abs(a.spacing - b.spacing));
  for (int k = 0; k < 4; ++k) e = std::max(e, std::abs(a.betas[k] - b.betas[k]));
  return e;
}

TEST(ChoiceModelTest, ZeroDifferenceProbabilities) {
  const auto p = PredictChoiceProbs(ChoiceModelParams::Confirmatory(),
                                    MetricArray{0, 0, 0, 0});
  EXPECT_NEAR(p[0], 0.14654003083602316, 1e-12);
  EXPECT_NEAR(p[1], 0.3874076605784733, 1e-12);
  EXPECT_NEAR(p[2], 0.3503732057704444, 1e-12);
  EXPECT_NEAR(p[3], 0.11567910281505911, 1e-12);

  const auto q = PredictChoiceProbs(ChoiceModelParams::Exploratory(),
                                    MetricArray{0, 0, 0, 0});
  EXPECT_NEAR(q[0], 0.1739338213418827, 1e-12);
  EXPECT_NEAR(q[3], 0.14136484474455702, 1e-12);
}

TEST(ChoiceModelTest, RightMoreComplexShiftsLeft) {
  const auto p = PredictChoiceProbs(ChoiceModelParams::Confirmatory(),
                                    MetricArray{1, 0, 0, 0});
  EXPECT_NEAR(p[0], 0.1903095588090703, 1e-12);
  EXPECT_NEAR(p[1], 0.42032967514015174, 1e-12);
  EXPECT_NEAR(p[2], 0.3021358916188053, 1e-12);
  EXPECT_NEAR(p[3], 0.08722487443197269, 1e-12);
}

TEST(ChoiceModelTest, ProbabilitiesFormDistribution) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    MetricArray d;
    for (double& x : d) x = normal(rng);
    const auto p = PredictChoiceProbs(ChoiceModelParams::Exploratory(), d);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
    for (double v : p) EXPECT_GE(v, 0.0);
  }
}

TEST(ChoiceModelTest, UniformWhenSpacingIsLogThree) {
  const ChoiceModelParams params{0.0, std::log(3.0), {}};
  for (double v : PredictChoiceProbs(params, MetricArray{})) {
    EXPECT_NEAR(v, 0.25, 1e-12);
  }
  std::vector<OrdinalObservation> trials(8);
  for (int i = 0; i < 8; ++i) trials[i].category = i % 4;
  EXPECT_NEAR(OrdinalLogLoss(params, trials), std::log(4.0), 1e-12);
}

TEST(ChoiceModelTest, CumulativeOddsRatioMatchesExponent) {
  // Under a logit link every cumulative split shares the same odds ratio.
  const auto params = ChoiceModelParams::Confirmatory();
  const auto p0 = PredictChoiceProbs(params, MetricArray{0, 0, 0, 0});
  const auto p1 = PredictChoiceProbs(params, MetricArray{0, 0, 1, 0});
  double c0 = 0.0, c1 = 0.0;
  for (int k = 0; k < 3; ++k) {
    c0 += p0[k];
    c1 += p1[k];
    const double ratio = (c1 / (1 - c1)) / (c0 / (1 - c0));
    EXPECT_NEAR(ratio, std::exp(0.371), 1e-10);
  }
}

TEST(ChoiceModelTest, MirroredPairMirrorsProbabilities) {
  const ChoiceModelParams params{0.0, 1.7, {-0.3, -0.2, -0.4, -0.1}};
  const MetricArray d{0.5, -1.2, 0.3, 2.0};
  const MetricArray neg{-0.5, 1.2, -0.3, -2.0};
  const auto a = PredictChoiceProbs(params, d);
  const auto b = PredictChoiceProbs(params, neg);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(a[k], b[3 - k], 1e-12);
}

TEST(ChoiceModelTest, SampleCategoryBoundaries) {
  const ChoiceProbabilities p{0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(SampleCategory(p, 0.0), 0);
  EXPECT_EQ(SampleCategory(p, 0.0999), 0);
  EXPECT_EQ(SampleCategory(p, 0.1001), 1);
  EXPECT_EQ(SampleCategory(p, 0.5999), 2);
  EXPECT_EQ(SampleCategory(p, 0.9999999), 3);
}

TEST(ChoiceModelTest, ValidateRejectsNonPositiveSpacing) {
  ChoiceModelParams params{0.0, 0.0, {}};
  EXPECT_THROW(params.Validate(), Error);
  params.spacing = std::nan("");
  EXPECT_THROW(params.Validate(), Error);
}

TEST(OrdinalFitTest, GradientMatchesFiniteDifferences) {
  const auto trials = Simulate(ChoiceModelParams::Confirmatory(), 400, 5);
  const ChoiceModelParams at{0.2, 1.5, {-0.1, 0.3, -0.2, 0.05}};
  const auto grad = MeanLogLikelihoodGradient(at, trials, kAllPredictors);
  ASSERT_EQ(grad.size(), 6u);
  const double h = 1e-6;
  for (int k = 0; k < 6; ++k) {
    auto up = at, down = at;
    auto bump = [&](ChoiceModelParams& p, double s) {
      if (k == 0) p.central += s;
      else if (k == 1) p.spacing += s;
      else p.betas[k - 2] += s;
    };
    bump(up, h);
    bump(down, -h);
    const double fd =
        (MeanLogLikelihood(up, trials) - MeanLogLikelihood(down, trials)) / (2 * h);
    EXPECT_NEAR(grad[k], fd, 1e-6) << k;
  }
}

TEST(OrdinalFitTest, RecoversPlantedParameters) {
  const auto truth = ChoiceModelParams::Confirmatory();
  const auto fit = FitOrdinalFixed(Simulate(truth, 100000, 17));
  EXPECT_TRUE(fit.converged);
  EXPECT_LT(MaxError(fit.params, truth), 0.05);
}

TEST(OrdinalFitTest, ErrorShrinksWithSampleSize) {
  const auto truth = ChoiceModelParams::Exploratory();
  const double small = MaxError(FitOrdinalFixed(Simulate(truth, 1000, 23)).params, truth);
  const double large = MaxError(FitOrdinalFixed(Simulate(truth, 100000, 23)).params, truth);
  EXPECT_LT(large, small);
}

TEST(OrdinalFitTest, FitIsNoWorseThanTruth) {
  const auto truth = ChoiceModelParams::Confirmatory();
  const auto trials = Simulate(truth, 5000, 29);
  const auto fit = FitOrdinalFixed(trials);
  EXPECT_LE(fit.log_loss, OrdinalLogLoss(truth, trials) + 1e-12);
}

TEST(OrdinalFitTest, MaskedPredictorsStayZero) {
  const auto trials = Simulate(ChoiceModelParams::Confirmatory(), 2000, 31);
  OrdinalFitOptions options;
  options.mask = {false, true, false, false};
  const auto fit = FitOrdinalFixed(trials, options);
  EXPECT_EQ(fit.params.betas[0], 0.0);
  EXPECT_EQ(fit.params.betas[2], 0.0);
  EXPECT_EQ(fit.params.betas[3], 0.0);
  EXPECT_NE(fit.params.betas[1], 0.0);
}

TEST(OrdinalFitTest, SingleCategoryIsSeparation) {
  std::vector<OrdinalObservation> trials(20);
  for (auto& t : trials) t.category = 2;
  try {
    FitOrdinalFixed(trials);
    FAIL() << "expected separation";
  } catch (const Error& e) {
    EXPECT_EQ(e.error_class(), ErrorClass::kValidation);
    EXPECT_NE(std::string(e.what()).find("separation"), std::string::npos);
  }
}

TEST(OrdinalFitTest, PerfectPredictorIsSeparation) {
  std::vector<OrdinalObservation> trials;
  for (int i = 0; i < 40; ++i) {
    OrdinalObservation t;
    t.category = i / 10;
    t.predictors[0] = -3.0 * t.category - 0.1 * (i % 10);
    trials.push_back(t);
  }
  EXPECT_THROW(FitOrdinalFixed(trials), Error);
}

TEST(OrdinalFitTest, EmptyMiddleCategoriesCollapseSpacing) {
  std::vector<OrdinalObservation> trials;
  for (int i = 0; i < 40; ++i) {
    OrdinalObservation t;
    t.predictors[0] = i < 20 ? -1.0 - i : 1.0 + i;
    t.category = i < 20 ? 3 : 0;
    trials.push_back(t);
  }
  EXPECT_THROW(FitOrdinalFixed(trials), Error);
}

TEST(RtModelTest, PublishedIntercepts) {
  EXPECT_DOUBLE_EQ(PredictLogRt(RtModelParams::Confirmatory(), {}, 0.0), 9.010);
  EXPECT_DOUBLE_EQ(PredictLogRt(RtModelParams::Exploratory(), {}, 0.0), 9.399);
}

TEST(RtModelTest, LinearInAbsoluteDifferencesAndPse) {
  const auto rt = RtModelParams::Confirmatory();
  EXPECT_NEAR(PredictLogRt(rt, {1, 0, 0, 0}, 0.0), 9.010 - 0.042, 1e-12);
  EXPECT_NEAR(PredictLogRt(rt, {0, 2, 0, 0}, 1.0), 9.010 + 0.032 - 0.167, 1e-12);
  // The exploratory model has no PSE term.
  EXPECT_DOUBLE_EQ(PredictLogRt(RtModelParams::Exploratory(), {}, 3.0), 9.399);
}

TEST(PresetTest, ParamsRoundTripThroughJson) {
  const auto c = ChoiceModelParams::Exploratory();
  const auto back = ChoiceParamsFromJson(ChoiceParamsToJson(c));
  EXPECT_EQ(back.central, c.central);
  EXPECT_EQ(back.spacing, c.spacing);
  EXPECT_EQ(back.betas, c.betas);
  const auto r = RtParamsFromJson(RtParamsToJson(RtModelParams::Confirmatory()));
  EXPECT_EQ(r.intercept, 9.010);
  ASSERT_TRUE(r.pse_coef.has_value());
  EXPECT_EQ(*r.pse_coef, -0.167);
  EXPECT_FALSE(RtParamsFromJson(RtParamsToJson(RtModelParams::Exploratory()))
                   .pse_coef.has_value());
}

TEST(PresetTest, LookupByName) {
  EXPECT_TRUE(ChoicePreset("confirmatory_choice").has_value());
  EXPECT_TRUE(RtPreset("exploratory_rt").has_value());
  EXPECT_FALSE(ChoicePreset("nope").has_value());
}

}  // namespace
}  // namespace mssp
