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

// JSON interchange for instances and solutions, plus file helpers.
//
// A record looks like
//   {"id": "p17", "bins": [60, 40], "items": [30, 30, 20],
//    "assignment": [0, 1, null], "bin_order": [0, 1], "item_order": [0, 1, 2]}
// where assignment[j] is the bin of item j or null. The matrix form is
// rebuilt on load; bin_order and item_order default to the identity.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mssp/core.hpp"
#include "mssp/metrics.hpp"

namespace mssp {

nlohmann::json InstanceToJson(const ProblemInstance& instance);
ProblemInstance InstanceFromJson(const nlohmann::json& j);

// Solution-level fields only (assignment, bin_order, item_order).
nlohmann::json DisplayedToJson(const DisplayedSolution& displayed);
DisplayedSolution DisplayedFromJson(const nlohmann::json& j,
                                    const ProblemInstance& instance);

nlohmann::json RecordToJson(const ProblemInstance& instance,
                            const DisplayedSolution& displayed);

// An instance with any number of (displayed) solutions. Used for `solve`
// output and `score`/`rank` input.
struct SolutionSet {
  ProblemInstance instance;
  std::vector<DisplayedSolution> solutions;
  std::optional<std::int64_t> optimal_score;
  bool truncated = false;
};

nlohmann::json SolutionSetToJson(const SolutionSet& set);
SolutionSet SolutionSetFromJson(const nlohmann::json& j);

// {"family", "sigma", "p_geom", "alpha", "dirichlet_correction"}
nlohmann::json CcParamsToJson(const CcParams& params);
CcParams CcParamsFromJson(const nlohmann::json& j);

std::string ReadTextFile(const std::filesystem::path& path);
nlohmann::json ReadJsonFile(const std::filesystem::path& path);

// Writes to a sibling temporary and renames it into place, so a failed run
// never leaves a partial file behind.
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace mssp
