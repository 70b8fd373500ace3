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

#include "mssp/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "mssp/error.hpp"
#include "mssp/parallel.hpp"
#include "mssp/preference.hpp"

namespace mssp {
namespace {

constexpr double kOpenMargin = 1e-6;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double SampleSd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1));
}

CcParams WithPoint(CcParams base, std::span<const double> x) {
  base.p_geom = x[0];
  base.sigma = x[1];
  base.alpha = x[2];
  return base;
}

// Runs one bounded search per variant and picks the winner.
template <typename Loss>
CalibrationReport RunVariants(std::string target, const Loss& loss,
                              const CalibrationOptions& options) {
  CalibrationReport report;
  report.target = std::move(target);
  const auto variants = CalibrationVariants(options.start);
  report.variants.resize(variants.size());

  auto run = [&](std::int64_t v) {
    const CcParams base = variants[v];
    VariantResult& out = report.variants[v];
    out.params = base;
    Objective objective = [&](std::span<const double> x) {
      try {
        return loss(WithPoint(base, x));
      } catch (const Error&) {
        return kNaN;
      }
    };
    try {
      auto r = BoundedMinimize(
          objective, {base.p_geom, base.sigma, base.alpha},
          CalibrationBox(base.family), options.minimize);
      out.params = WithPoint(base, r.argmin);
      out.loss = r.value;
      out.iterations = r.iterations;
      out.converged = r.converged;
      out.message = std::move(r.message);
      out.trace = std::move(r.trace);
    } catch (const Error& e) {
      out.loss = kNaN;
      out.converged = false;
      out.message = e.what();
    }
  };
  const auto n = static_cast<std::int64_t>(variants.size());
  if (options.parallel) {
    ParallelFor(n, run);
  } else {
    for (std::int64_t v = 0; v < n; ++v) run(v);
  }

  auto pick = [&](bool need_converged) {
    for (size_t v = 0; v < report.variants.size(); ++v) {
      const auto& r = report.variants[v];
      if (!std::isfinite(r.loss) || (need_converged && !r.converged)) continue;
      if (report.winner < 0 || r.loss < report.variants[report.winner].loss) {
        report.winner = static_cast<int>(v);
      }
    }
  };
  pick(true);
  if (report.winner < 0) pick(false);
  if (report.winner < 0) {
    throw Error(ErrorClass::kCalibration,
                fmt::format("{} calibration: no variant produced a finite loss",
                            report.target));
  }
  return report;
}

}  // namespace

CompoundIndices ComputeCompoundIndices(const ProblemInstance& instance,
                                       const Solution& solution) {
  CheckDimensions(instance, solution);
  const int m = instance.num_bins();
  const int n = instance.num_items();
  std::vector<double> counts(m, 0.0);
  double headroom = 0.0;
  double fill = 0.0;
  int nonempty = 0;
  for (int i = 0; i < m; ++i) {
    int largest = 0;
    double load = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!solution.assigned(j, i)) continue;
      counts[i] += 1.0;
      largest = std::max(largest, instance.size(j));
      load += instance.size(j);
    }
    if (counts[i] == 0.0) continue;
    ++nonempty;
    headroom += instance.capacity(i) - largest;
    fill += (load / n) / instance.capacity(i);
  }
  if (nonempty == 0) {
    throw ValidationError("compound indices need at least one nonempty bin");
  }
  return {SampleSd(counts), headroom / nonempty, nonempty / fill};
}

std::vector<double> ZScore(std::span<const double> values) {
  if (values.size() < 2) throw ValidationError("z-score needs two values");
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  const double sd = SampleSd(values);
  if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
    throw ValidationError("z-score of a constant column");
  }
  std::vector<double> z(values.size());
  for (size_t k = 0; k < values.size(); ++k) z[k] = (values[k] - mean) / sd;
  return z;
}

std::vector<double> PcaFirstComponent(
    std::span<const std::array<double, 3>> rows) {
  if (rows.size() < 3) throw ValidationError("PCA needs at least 3 rows");
  std::array<double, 3> mean{};
  for (const auto& r : rows) {
    for (int a = 0; a < 3; ++a) mean[a] += r[a] / rows.size();
  }
  std::array<std::array<double, 3>, 3> cov{};
  for (const auto& r : rows) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        cov[a][b] += (r[a] - mean[a]) * (r[b] - mean[b]) / (rows.size() - 1);
      }
    }
  }

  auto norm = [](const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  };
  std::array<double, 3> v = cov[0];
  for (int a = 1; a < 3; ++a) {
    if (norm(cov[a]) > norm(v)) v = cov[a];
  }
  const double scale = norm(v);
  if (!(scale > 1e-300)) throw ValidationError("PCA of a rank-0 covariance");
  for (double& x : v) x /= scale;

  for (int iter = 0; iter < 100000; ++iter) {
    std::array<double, 3> next{};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) next[a] += cov[a][b] * v[b];
    }
    const double len = norm(next);
    if (!(len > 1e-300)) throw ValidationError("PCA of a rank-0 covariance");
    double change = 0.0;
    for (int a = 0; a < 3; ++a) {
      next[a] /= len;
      change = std::max(change, std::abs(next[a] - v[a]));
    }
    v = next;
    if (change < 1e-10) break;
  }
  int lead = 0;
  for (int a = 1; a < 3; ++a) {
    if (std::abs(v[a]) > std::abs(v[lead])) lead = a;
  }
  if (v[lead] < 0) {
    for (double& x : v) x = -x;
  }

  std::vector<double> scores(rows.size());
  for (size_t k = 0; k < rows.size(); ++k) {
    for (int a = 0; a < 3; ++a) scores[k] += (rows[k][a] - mean[a]) * v[a];
  }
  return scores;
}

std::vector<double> CompoundScores(std::span<const CorpusEntry> corpus) {
  std::vector<double> av, ad, ar;
  for (const auto& e : corpus) {
    const auto c = ComputeCompoundIndices(e.instance, e.solution);
    av.push_back(c.av);
    ad.push_back(c.ad);
    ar.push_back(c.ar);
  }
  const auto zav = ZScore(av);
  const auto zad = ZScore(ad);
  const auto zar = ZScore(ar);
  std::vector<std::array<double, 3>> rows(corpus.size());
  for (size_t k = 0; k < rows.size(); ++k) rows[k] = {zav[k], zad[k], zar[k]};
  return PcaFirstComponent(rows);
}

double PearsonCorrelation(std::span<const double> a,
                          std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ValidationError("correlation needs two equal-length series");
  }
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / b.size();
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    sab += (a[k] - ma) * (b[k] - mb);
    saa += (a[k] - ma) * (a[k] - ma);
    sbb += (b[k] - mb) * (b[k] - mb);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return kNaN;
  return sab / std::sqrt(saa * sbb);
}

std::string VariantResult::Id() const {
  return fmt::format("{}{}", FamilyName(params.family),
                     params.dirichlet_correction ? "+correction" : "");
}

std::vector<CcParams> CalibrationVariants(const std::array<double, 3>& start) {
  std::vector<CcParams> out;
  for (auto family : kAllFamilies) {
    for (bool correction : {true, false}) {
      out.push_back({family, start[1], start[0], start[2], correction});
    }
  }
  return out;
}

Box CalibrationBox(EmptySpaceFamily family) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double sigma_hi =
      family == EmptySpaceFamily::kContinuousBernoulli ? 1.0 - kOpenMargin : kInf;
  return {{kOpenMargin, kOpenMargin, kOpenMargin},
          {1.0 - kOpenMargin, sigma_hi, kInf}};
}

CalibrationReport CalibrateCorrelation(std::span<const CorpusEntry> corpus,
                                       std::span<const double> target,
                                       const CalibrationOptions& options) {
  if (corpus.size() < 10) {
    throw ValidationError(fmt::format(
        "correlation calibration needs at least 10 solutions, got {}",
        corpus.size()));
  }
  if (target.size() != corpus.size()) {
    throw ValidationError("target length differs from the corpus");
  }
  CcCorpus features;
  for (const auto& e : corpus) features.Add(e.instance, e.solution);
  auto loss = [&](const CcParams& params) {
    params.Validate();
    return -PearsonCorrelation(features.Evaluate(params), target);
  };
  return RunVariants("compound", loss, options);
}

CalibrationReport CalibrateCorrelation(std::span<const CorpusEntry> corpus,
                                       const CalibrationOptions& options) {
  const auto target = CompoundScores(corpus);
  return CalibrateCorrelation(corpus, target, options);
}

double CcLogLoss(const CcCorpus& corpus, std::span<const ChoiceTrial> trials,
                 const CcParams& params) {
  params.Validate();
  const auto cc = corpus.Evaluate(params);
  std::vector<double> diffs(trials.size());
  for (size_t t = 0; t < trials.size(); ++t) {
    diffs[t] = cc.at(trials[t].right) - cc.at(trials[t].left);
  }
  const double sd = SampleSd(diffs);
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw Error(ErrorClass::kCalibration, "CC differences are constant");
  }
  std::vector<OrdinalObservation> obs(trials.size());
  for (size_t t = 0; t < trials.size(); ++t) {
    obs[t].predictors = {0.0, diffs[t] / sd, 0.0, 0.0};
    obs[t].category = trials[t].category;
  }
  OrdinalFitOptions fit_options;
  fit_options.mask = {false, true, false, false};
  return FitOrdinalFixed(obs, fit_options).log_loss;
}

CalibrationReport CalibrateLogLoss(std::span<const CorpusEntry> corpus,
                                   std::span<const ChoiceTrial> trials,
                                   const CalibrationOptions& options) {
  if (trials.size() < 50) {
    throw ValidationError(fmt::format(
        "log-loss calibration needs at least 50 trials, got {}", trials.size()));
  }
  CcCorpus features;
  for (const auto& e : corpus) features.Add(e.instance, e.solution);
  for (const auto& t : trials) {
    if (t.left >= corpus.size() || t.right >= corpus.size()) {
      throw ValidationError("choice trial references a missing solution");
    }
  }
  auto loss = [&](const CcParams& params) {
    return CcLogLoss(features, trials, params);
  };
  return RunVariants("logloss", loss, options);
}

std::string ReportCsv(const CalibrationReport& report) {
  std::string out =
      "target,variant,family,correction,p_geom,sigma,alpha,loss,iterations,"
      "converged,winner\n";
  for (size_t v = 0; v < report.variants.size(); ++v) {
    const auto& r = report.variants[v];
    out += fmt::format("{},{},{},{},{:.10g},{:.10g},{:.10g},{:.12g},{},{},{}\n",
                       report.target, r.Id(), FamilyName(r.params.family),
                       r.params.dirichlet_correction ? 1 : 0, r.params.p_geom,
                       r.params.sigma, r.params.alpha, r.loss, r.iterations,
                       r.converged ? 1 : 0,
                       static_cast<int>(v) == report.winner ? 1 : 0);
  }
  return out;
}

std::string ReportSummary(const CalibrationReport& report) {
  std::string out = fmt::format("{} calibration, {} variants\n", report.target,
                                report.variants.size());
  for (size_t v = 0; v < report.variants.size(); ++v) {
    const auto& r = report.variants[v];
    out += fmt::format(
        "{} {:<36} loss {:>12.6f}  p={:.4f} sigma={:.4f} alpha={:.4f}  "
        "{} iters{}\n",
        static_cast<int>(v) == report.winner ? '*' : ' ', r.Id(), r.loss,
        r.params.p_geom, r.params.sigma, r.params.alpha, r.iterations,
        r.converged ? "" : fmt::format(" (not converged: {})", r.message));
  }
  return out;
}

}  // namespace mssp
