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

// Behavioral measures over response logs.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mssp/trial_io.hpp"

namespace mssp {

// (R - L) / (R + L); nullopt when there are no gaze samples.
std::optional<double> GazeBias(int gaze_right, int gaze_left);

// Natural log of a reaction time in milliseconds.
double LogRt(double rt_ms);

struct PseResult {
  std::vector<double> weights;       // per solve trial, sum to 1
  std::vector<double> trial_means;   // cohort mean efficiency per trial
  std::map<std::string, double> pse; // participant -> eta
};

// Efficiency E = (S / O) / RT per solve trial, weighted toward the trials
// with lower cohort mean efficiency. Throws when a participant lacks a trial
// or an optimum or RT is not positive.
PseResult ProblemSolvingEfficiency(std::span<const ParticipantRecord> cohort,
                                   int trials_per_participant = 7);

// Standardizes PSE across participants (n - 1 divisor).
std::map<std::string, double> StandardizePse(
    const std::map<std::string, double>& pse);

enum class Side { kLeft, kRight };

// The side a choice favors; nullopt for the duplicate button.
std::optional<Side> ChoiceSide(int choice);

// Directions for the linked pairs (A,B), (B,C), (A,C). Coherent unless the
// three directions form a preference cycle.
bool IsCoherent(Side ab, Side bc, Side ac);

enum class ExclusionRule {
  kIncomplete,
  kMissedCatch,
  kDuplicateOveruse,
  kDuplicateTrial,
  kGazeEmpty,
};

std::string_view ExclusionRuleName(ExclusionRule rule);

struct AuditEntry {
  std::string participant_id;
  std::optional<int> trial_index;  // nullopt: the whole participant
  ExclusionRule rule;
  std::string detail;
};

struct ExclusionResult {
  std::vector<TrialRecord> retained;      // behavioral analyses
  std::vector<TrialRecord> gaze_retained; // retained minus gaze-empty trials
  std::set<std::string> retained_participants;
  std::set<std::string> excluded_participants;
  std::vector<AuditEntry> audit;
};

// Participants are dropped when they have fewer than `expected_trials`
// records, when they missed the duplicate button on every catch trial, or
// when they pressed it on two or more non-catch trials. Remaining non-catch
// trials with a duplicate press are dropped; gaze-empty trials are dropped
// from gaze analyses only.
ExclusionResult ApplyExclusions(std::span<const TrialRecord> records,
                                int expected_trials = kTrialsPerParticipant);

struct CoherenceOutcome {
  std::string participant_id;
  std::optional<bool> coherent;  // nullopt when a coherence rating is missing
};

std::vector<CoherenceOutcome> ClassifyCoherence(
    std::span<const TrialRecord> records);

}  // namespace mssp
