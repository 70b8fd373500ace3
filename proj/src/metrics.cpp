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

#include "mssp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "mssp/error.hpp"
#include "mssp/solver.hpp"

namespace mssp {
namespace {

double LogSumExp(double a, double b) {
  const double hi = std::max(a, b);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log(std::exp(a - hi) + std::exp(b - hi));
}

// ln of the continuous Bernoulli normalizer 2 atanh(1 - 2l) / (1 - 2l).
double LogContinuousBernoulliNormalizer(double lambda) {
  const double x = 1.0 - 2.0 * lambda;
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return std::log(2.0) + std::log1p(x2 / 3.0 + x2 * x2 / 5.0);
  }
  return std::log(2.0 * std::atanh(x) / x);
}

// Log density of the component anchored at 0, evaluated at distance d from
// its anchor. The component anchored at 1 is the same function of 1 - e.
double LogAnchoredComponent(double d, EmptySpaceFamily family, double sigma) {
  switch (family) {
    case EmptySpaceFamily::kTruncatedNormal: {
      // Mass of N(0, sigma) on (0, 1) is erf(1 / (sigma sqrt 2)) / 2.
      const double mass = 0.5 * std::erf(1.0 / (sigma * std::numbers::sqrt2));
      const double z = d / sigma;
      return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi) -
             std::log(sigma) - std::log(mass);
    }
    case EmptySpaceFamily::kTruncatedLaplace: {
      // Mass of Laplace(0, sigma) on (0, 1) is (1 - exp(-1 / sigma)) / 2.
      const double log_mass = std::log(-std::expm1(-1.0 / sigma)) - std::log(2.0);
      return -d / sigma - std::log(2.0 * sigma) - log_mass;
    }
    case EmptySpaceFamily::kContinuousBernoulli: {
      const double lambda = sigma;
      return LogContinuousBernoulliNormalizer(lambda) + d * std::log(lambda) +
             (1.0 - d) * std::log1p(-lambda);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string_view FamilyName(EmptySpaceFamily family) {
  switch (family) {
    case EmptySpaceFamily::kTruncatedNormal:
      return "truncated_normal";
    case EmptySpaceFamily::kTruncatedLaplace:
      return "truncated_laplace";
    case EmptySpaceFamily::kContinuousBernoulli:
      return "continuous_bernoulli";
  }
  return "unknown";
}

EmptySpaceFamily ParseFamily(std::string_view name) {
  for (auto f : kAllFamilies) {
    if (FamilyName(f) == name) return f;
  }
  throw ValidationError(fmt::format("unknown empty-space family '{}'", name));
}

CcParams CcParams::Confirmatory() {
  return {EmptySpaceFamily::kContinuousBernoulli, 0.426, 0.043, 0.984, true};
}

CcParams CcParams::Exploratory() {
  return {EmptySpaceFamily::kTruncatedNormal, 0.103, 0.977, 1.620, true};
}

bool SigmaInRange(EmptySpaceFamily family, double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) return false;
  return family != EmptySpaceFamily::kContinuousBernoulli || sigma < 1.0;
}

void CcParams::Validate() const {
  if (!SigmaInRange(family, sigma)) {
    throw ValidationError(
        fmt::format("sigma {} out of range for {}", sigma, FamilyName(family)));
  }
  if (!(p_geom > 0.0 && p_geom < 1.0)) {
    throw ValidationError(fmt::format("p {} outside (0, 1)", p_geom));
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError(fmt::format("alpha {} must be positive", alpha));
  }
}

double EmptySpaceLogDensity(double e, EmptySpaceFamily family, double sigma) {
  if (!(e >= 0.0 && e <= 1.0)) {
    throw ValidationError(fmt::format("empty fraction {} outside [0, 1]", e));
  }
  if (!SigmaInRange(family, sigma)) {
    throw ValidationError(
        fmt::format("sigma {} out of range for {}", sigma, FamilyName(family)));
  }
  return LogSumExp(LogAnchoredComponent(e, family, sigma),
                   LogAnchoredComponent(1.0 - e, family, sigma)) -
         std::log(2.0);
}

double SymmetricDirichletLogDensity(std::span<const double> shares,
                                    double alpha) {
  const auto k = static_cast<double>(shares.size());
  if (shares.size() < 2) {
    throw ValidationError("Dirichlet composition term needs at least 2 items");
  }
  double sum_log = 0.0;
  for (double c : shares) sum_log += std::log(c);
  return std::lgamma(k * alpha) - k * std::lgamma(alpha) +
         (alpha - 1.0) * sum_log;
}

std::vector<BinFeatures> ExtractBinFeatures(const ProblemInstance& instance,
                                            const Solution& solution) {
  const auto report = ValidateSolution(instance, solution);
  if (!report.ok()) {
    throw ValidationError("CC of infeasible solution: " + report.ToString());
  }
  std::vector<BinFeatures> bins(instance.num_bins());
  for (int i = 0; i < instance.num_bins(); ++i) {
    std::vector<int> sizes;
    for (int j = 0; j < instance.num_items(); ++j) {
      if (solution.assigned(j, i)) sizes.push_back(instance.size(j));
    }
    double total = 0.0;
    for (int z : sizes) total += z;
    auto& f = bins[i];
    f.count = static_cast<int>(sizes.size());
    f.empty_fraction = 1.0 - total / instance.capacity(i);
    if (f.count > 1) {
      for (int z : sizes) f.sum_log_share += std::log(z / total);
    }
  }
  return bins;
}

BinSurprisal BinSurprisalOf(const BinFeatures& bin, const CcParams& params) {
  BinSurprisal s;
  s.count_term = -(std::log(params.p_geom) + bin.count * std::log1p(-params.p_geom));
  if (bin.count > 1) {
    const double n = bin.count;
    const double a = params.alpha;
    double log_c;
    if (params.dirichlet_correction) {
      // The normalizer cancels against the even-split density
      // (alpha - 1) * N * ln(1/N).
      log_c = (a - 1.0) * (bin.sum_log_share + n * std::log(n));
    } else {
      log_c = std::lgamma(n * a) - n * std::lgamma(a) + (a - 1.0) * bin.sum_log_share;
    }
    s.composition_term = -log_c;
    s.has_composition = true;
  }
  s.empty_term = -EmptySpaceLogDensity(bin.empty_fraction, params.family,
                                       params.sigma);
  return s;
}

double CompositionalComplexity(std::span<const BinFeatures> bins,
                               const CcParams& params) {
  double sum = 0.0;
  for (const auto& b : bins) sum += BinSurprisalOf(b, params).total();
  return sum / static_cast<double>(bins.size());
}

double CompositionalComplexity(const ProblemInstance& instance,
                               const Solution& solution,
                               const CcParams& params) {
  params.Validate();
  return CompositionalComplexity(ExtractBinFeatures(instance, solution), params);
}

int HeuristicComplexity(const ProblemInstance& instance,
                        const Solution& solution) {
  CheckDimensions(instance, solution);
  const Solution greedy = GreedyLbfLif(instance);
  int distance = 0;
  for (int j = 0; j < instance.num_items(); ++j) {
    for (int i = 0; i < instance.num_bins(); ++i) {
      distance += solution.assigned(j, i) != greedy.assigned(j, i);
    }
  }
  return distance;
}

AssignmentMatrix ApproximatedDiagonal(int rows, int cols) {
  AssignmentMatrix d(rows, cols);
  for (int i = 0; i < rows; ++i) {
    int col = 0;
    if (rows > 1) {
      const double t = static_cast<double>(i * (cols - 1)) /
                       static_cast<double>(rows - 1);
      col = static_cast<int>(std::nearbyint(t));
    }
    d.set(i, col, true);
  }
  return d;
}

int DiagonalDissimilarity(const ProblemInstance& instance,
                          const DisplayedSolution& displayed) {
  CheckDimensions(instance, displayed.solution);
  const AssignmentMatrix shown = ApplyLayout(displayed);
  const AssignmentMatrix diag = ApproximatedDiagonal(shown.rows(), shown.cols());
  int distance = 0;
  for (int r = 0; r < shown.rows(); ++r) {
    for (int c = 0; c < shown.cols(); ++c) {
      distance += shown.at(r, c) != diag.at(r, c);
    }
  }
  return distance;
}

double KendallTau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw ValidationError("Kendall tau needs two sequences of length >= 2");
  }
  const size_t k = a.size();
  long long s = 0;
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      const int sa = (a[j] > a[i]) - (a[j] < a[i]);
      const int sb = (b[j] > b[i]) - (b[j] < b[i]);
      s += sa * sb;
    }
  }
  return static_cast<double>(s) / (static_cast<double>(k * (k - 1)) / 2.0);
}

double SequenceDisorder(std::span<const int> sequence) {
  const size_t k = sequence.size();
  if (k < 2) {
    throw ValidationError("visual-order disorder needs at least 2 elements");
  }
  std::vector<double> asc(k), desc(k), ranks(k);
  for (size_t i = 0; i < k; ++i) {
    const double pos = static_cast<double>(i + 1);
    asc[i] = sequence[i] + pos * kTieOffset;
    desc[i] = sequence[i] + (static_cast<double>(k) - pos + 1.0) * kTieOffset;
    ranks[i] = pos;
  }
  const double tau_asc = KendallTau(asc, ranks);
  const double tau_desc = KendallTau(desc, ranks);
  return 1.0 - std::max(std::abs(tau_asc), std::abs(tau_desc));
}

double VisualOrderComplexity(const ProblemInstance& instance,
                             const DisplayedSolution& displayed) {
  CheckDimensions(instance, displayed.solution);
  const auto w = DisplayedCapacities(instance, displayed);
  const auto z = DisplayedSizes(instance, displayed);
  const double m = static_cast<double>(w.size());
  const double n = static_cast<double>(z.size());
  return (m * SequenceDisorder(w) + n * SequenceDisorder(z)) / (m + n);
}

ComplexityProfile Profile(const ProblemInstance& instance,
                          const DisplayedSolution& displayed,
                          const CcParams& params) {
  return {HeuristicComplexity(instance, displayed.solution),
          CompositionalComplexity(instance, displayed.solution, params),
          VisualOrderComplexity(instance, displayed),
          DiagonalDissimilarity(instance, displayed)};
}

MetricArray AsArray(const ComplexityProfile& p) {
  return {static_cast<double>(p.hc), p.cc, p.vc, static_cast<double>(p.dd)};
}

MetricArray RawDifferences(const ComplexityProfile& left,
                           const ComplexityProfile& right) {
  const auto l = AsArray(left);
  const auto r = AsArray(right);
  MetricArray d;
  for (size_t k = 0; k < d.size(); ++k) d[k] = r[k] - l[k];
  return d;
}

PairDifferences ComputePairDifferences(const ComplexityProfile& left,
                                       const ComplexityProfile& right,
                                       const MetricArray& sds, double pd) {
  PairDifferences out;
  const auto raw = RawDifferences(left, right);
  for (size_t k = 0; k < raw.size(); ++k) {
    if (!(sds[k] > 0.0) || !std::isfinite(sds[k])) {
      throw ValidationError(fmt::format("standard deviation for {} is {}",
                                        kMetricNames[k], sds[k]));
    }
    out.signed_diff[k] = raw[k] / sds[k];
    out.absolute_diff[k] = std::abs(out.signed_diff[k]);
  }
  out.md = std::max(left.vc, right.vc);
  out.pd = pd;
  out.sd_used = sds;
  return out;
}

MetricArray ComputeSds(std::span<const MetricArray> raw_differences) {
  const size_t n = raw_differences.size();
  if (n < 2) {
    throw ValidationError("standard deviations need at least two trials");
  }
  MetricArray sds{};
  for (size_t k = 0; k < sds.size(); ++k) {
    double mean = 0.0;
    for (const auto& row : raw_differences) mean += row[k];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& row : raw_differences) ss += (row[k] - mean) * (row[k] - mean);
    sds[k] = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sds[k] > 1e-12 * std::max(1.0, std::abs(mean)))) {
      throw ValidationError(fmt::format(
          "differences in {} are constant across trials; sd is zero",
          kMetricNames[k]));
    }
  }
  return sds;
}

}  // namespace mssp
