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

#include "mssp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "mssp/error.hpp"
#include "mssp/preference.hpp"

namespace mssp {

std::optional<double> GazeBias(int gaze_right, int gaze_left) {
  if (gaze_right < 0 || gaze_left < 0) {
    throw ValidationError("gaze counts must be nonnegative");
  }
  const int total = gaze_right + gaze_left;
  if (total == 0) return std::nullopt;
  return static_cast<double>(gaze_right - gaze_left) / total;
}

double LogRt(double rt_ms) {
  if (!(rt_ms > 0.0)) {
    throw ValidationError(fmt::format("reaction time {} ms is not positive",
                                      rt_ms));
  }
  return std::log(rt_ms);
}

PseResult ProblemSolvingEfficiency(std::span<const ParticipantRecord> cohort,
                                   int trials_per_participant) {
  const int n = trials_per_participant;
  if (n < 2) throw ValidationError("PSE needs at least two solve trials");
  if (cohort.empty()) throw ValidationError("PSE of an empty cohort");

  std::vector<std::vector<double>> efficiency;
  for (const auto& p : cohort) {
    std::vector<double> e(n, std::nan(""));
    for (const auto& s : p.solves) {
      if (s.trial < 1 || s.trial > n) {
        throw ValidationError(fmt::format("participant {}: solve trial {} "
                                          "outside 1..{}",
                                          p.participant_id, s.trial, n));
      }
      if (!(s.optimum > 0.0)) {
        throw ValidationError(fmt::format(
            "participant {} trial {}: optimum must be positive",
            p.participant_id, s.trial));
      }
      if (!(s.rt_s > 0.0)) {
        throw ValidationError(fmt::format(
            "participant {} trial {}: reaction time must be positive",
            p.participant_id, s.trial));
      }
      if (!std::isnan(e[s.trial - 1])) {
        throw ValidationError(fmt::format("participant {}: solve trial {} "
                                          "recorded twice",
                                          p.participant_id, s.trial));
      }
      e[s.trial - 1] = (s.score / s.optimum) / s.rt_s;
    }
    for (int i = 0; i < n; ++i) {
      if (std::isnan(e[i])) {
        throw ValidationError(fmt::format("participant {}: solve trial {} "
                                          "missing",
                                          p.participant_id, i + 1));
      }
    }
    efficiency.push_back(std::move(e));
  }

  PseResult out;
  out.trial_means.assign(n, 0.0);
  for (const auto& e : efficiency) {
    for (int i = 0; i < n; ++i) out.trial_means[i] += e[i] / efficiency.size();
  }
  const double total =
      std::accumulate(out.trial_means.begin(), out.trial_means.end(), 0.0);
  if (!(total > 0.0)) {
    throw ValidationError("PSE: cohort mean efficiencies sum to zero");
  }
  for (int i = 0; i < n; ++i) {
    out.weights.push_back((1.0 - out.trial_means[i] / total) / (n - 1));
  }
  for (size_t j = 0; j < cohort.size(); ++j) {
    double eta = 0.0;
    for (int i = 0; i < n; ++i) eta += out.weights[i] * efficiency[j][i];
    out.pse[cohort[j].participant_id] = eta;
  }
  return out;
}

std::map<std::string, double> StandardizePse(
    const std::map<std::string, double>& pse) {
  if (pse.size() < 2) {
    throw ValidationError("standardizing PSE needs two participants");
  }
  double mean = 0.0;
  for (const auto& [id, v] : pse) mean += v / pse.size();
  double ss = 0.0;
  for (const auto& [id, v] : pse) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (pse.size() - 1));
  if (!(sd > 0.0)) throw ValidationError("PSE is constant across participants");
  std::map<std::string, double> z;
  for (const auto& [id, v] : pse) z[id] = (v - mean) / sd;
  return z;
}

std::optional<Side> ChoiceSide(int choice) {
  if (choice == kDuplicateChoice) return std::nullopt;
  if (choice < 0 || choice >= kNumCategories) {
    throw ValidationError(fmt::format("choice {} out of range", choice));
  }
  return choice < kNumCategories / 2 ? Side::kLeft : Side::kRight;
}

bool IsCoherent(Side ab, Side bc, Side ac) {
  // Left on (X,Y) means X is preferred. The two cycles are A>B>C>A and
  // B>A, C>B, A>C.
  const bool forward_cycle =
      ab == Side::kLeft && bc == Side::kLeft && ac == Side::kRight;
  const bool backward_cycle =
      ab == Side::kRight && bc == Side::kRight && ac == Side::kLeft;
  return !forward_cycle && !backward_cycle;
}

std::string_view ExclusionRuleName(ExclusionRule rule) {
  switch (rule) {
    case ExclusionRule::kIncomplete: return "incomplete";
    case ExclusionRule::kMissedCatch: return "missed_catch";
    case ExclusionRule::kDuplicateOveruse: return "duplicate_overuse";
    case ExclusionRule::kDuplicateTrial: return "duplicate_trial";
    case ExclusionRule::kGazeEmpty: return "gaze_empty";
  }
  return "unknown";
}

ExclusionResult ApplyExclusions(std::span<const TrialRecord> records,
                                int expected_trials) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const TrialRecord*>> by_participant;
  for (const auto& r : records) {
    auto [it, fresh] = by_participant.try_emplace(r.trial.participant_id);
    if (fresh) order.push_back(r.trial.participant_id);
    it->second.push_back(&r);
  }

  ExclusionResult out;
  for (const auto& id : order) {
    const auto& trials = by_participant[id];
    int catch_total = 0;
    int catch_hits = 0;
    int stray = 0;
    for (const auto* r : trials) {
      const bool dup = r->choice == kDuplicateChoice;
      if (r->trial.kind == TrialKind::kCatch) {
        ++catch_total;
        catch_hits += dup ? 1 : 0;
      } else if (dup) {
        ++stray;
      }
    }

    std::optional<AuditEntry> drop;
    if (static_cast<int>(trials.size()) < expected_trials) {
      drop = AuditEntry{id, std::nullopt, ExclusionRule::kIncomplete,
                        fmt::format("{} of {} trials", trials.size(),
                                    expected_trials)};
    } else if (catch_total > 0 && catch_hits == 0) {
      drop = AuditEntry{id, std::nullopt, ExclusionRule::kMissedCatch,
                        fmt::format("duplicate button missed on all {} catch "
                                    "trials",
                                    catch_total)};
    } else if (stray >= 2) {
      drop = AuditEntry{id, std::nullopt, ExclusionRule::kDuplicateOveruse,
                        fmt::format("duplicate button on {} non-catch trials",
                                    stray)};
    }
    if (drop) {
      out.excluded_participants.insert(id);
      out.audit.push_back(std::move(*drop));
      continue;
    }

    out.retained_participants.insert(id);
    for (const auto* r : trials) {
      if (r->trial.kind != TrialKind::kCatch &&
          r->choice == kDuplicateChoice) {
        out.audit.push_back({id, r->trial.trial_index,
                             ExclusionRule::kDuplicateTrial,
                             "duplicate button on a non-catch trial"});
        continue;
      }
      out.retained.push_back(*r);
      if (r->gaze_left + r->gaze_right == 0) {
        out.audit.push_back({id, r->trial.trial_index,
                             ExclusionRule::kGazeEmpty,
                             "no gaze samples; kept for behavioral analyses"});
      } else {
        out.gaze_retained.push_back(*r);
      }
    }
  }
  return out;
}

std::vector<CoherenceOutcome> ClassifyCoherence(
    std::span<const TrialRecord> records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const TrialRecord*>> coherence;
  for (const auto& r : records) {
    auto [it, fresh] = coherence.try_emplace(r.trial.participant_id);
    if (fresh) order.push_back(r.trial.participant_id);
    if (r.trial.kind == TrialKind::kCoherence) it->second.push_back(&r);
  }
  std::vector<CoherenceOutcome> out;
  for (const auto& id : order) {
    auto trials = coherence[id];
    std::ranges::sort(trials, {}, [](const TrialRecord* r) {
      return r->trial.trial_index;
    });
    CoherenceOutcome o{id, std::nullopt};
    if (trials.size() == 3) {
      const auto ab = ChoiceSide(trials[0]->choice);
      const auto bc = ChoiceSide(trials[1]->choice);
      const auto ac = ChoiceSide(trials[2]->choice);
      if (ab && bc && ac) o.coherent = IsCoherent(*ab, *bc, *ac);
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace mssp
