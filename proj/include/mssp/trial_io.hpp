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

// File formats for pools, trial manifests, response logs and participant
// sidecars.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mssp/metrics.hpp"
#include "mssp/trialgen.hpp"

namespace mssp {

nlohmann::json GenerationConfigToJson(const GenerationConfig& config);
GenerationConfig GenerationConfigFromJson(const nlohmann::json& j);

// One problem per line after a config/yield header, so large pools diff well.
std::string PoolToText(const Pool& pool);
Pool PoolFromText(std::string_view text);

struct ManifestRow {
  std::string participant_id;
  std::uint64_t seed = 0;
  int trial_index = 0;  // 1-based position in the sequence
  TrialKind kind = TrialKind::kRandom;
  Stratum stratum = Stratum::kLow;
  std::string problem_id;
  int left_solution = 0;
  int right_solution = 0;
  std::vector<int> left_bin_order;
  std::vector<int> left_item_order;
  std::vector<int> right_bin_order;
  std::vector<int> right_item_order;
  double pd = 0.0;
  ComplexityProfile left;
  ComplexityProfile right;

  bool operator==(const ManifestRow&) const = default;
};

std::vector<ManifestRow> BuildManifest(std::string_view participant_id,
                                       std::uint64_t seed,
                                       std::span<const TrialPair> trials,
                                       std::span<const PoolEntry> pool,
                                       const CcParams& cc_params);

// Categories 0..3 follow kCategoryNames; this marks the duplicate button.
inline constexpr int kDuplicateChoice = 4;
std::string_view ChoiceName(int choice);
int ParseChoice(std::string_view name);

struct TrialRecord {
  ManifestRow trial;
  int choice = 0;
  double rt_ms = 0.0;
  int gaze_left = 0;
  int gaze_right = 0;

  bool operator==(const TrialRecord&) const = default;
};

std::string ManifestCsvHeader();
std::string ManifestCsv(std::span<const ManifestRow> rows);
std::vector<ManifestRow> ParseManifestCsv(std::string_view text);

std::string TrialLogCsv(std::span<const TrialRecord> records);
std::vector<TrialRecord> ParseTrialLogCsv(std::string_view text);

struct SolveRecord {
  int trial = 0;  // 1-based problem-solving trial
  double score = 0.0;
  double optimum = 0.0;
  double rt_s = 0.0;

  bool operator==(const SolveRecord&) const = default;
};

struct ParticipantRecord {
  std::string participant_id;
  int psi_total = 0;
  std::vector<SolveRecord> solves;

  bool operator==(const ParticipantRecord&) const = default;
};

std::string ParticipantCsv(std::span<const ParticipantRecord> participants);
// Rows are grouped by participant in order of first appearance.
std::vector<ParticipantRecord> ParseParticipantCsv(std::string_view text);

std::string FormatPermutation(std::span<const int> order);
std::vector<int> ParsePermutation(std::string_view text);

}  // namespace mssp
