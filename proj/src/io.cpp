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

#include "mssp/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mssp/error.hpp"

namespace mssp {
namespace {

std::vector<int> IntArray(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw ValidationError(fmt::format("missing array field '{}'", field));
  }
  std::vector<int> out;
  for (const auto& v : j[field]) {
    if (!v.is_number_integer()) {
      throw ValidationError(fmt::format("field '{}' must hold integers", field));
    }
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

nlohmann::json InstanceToJson(const ProblemInstance& instance) {
  return {{"id", instance.id()},
          {"bins", std::vector<int>(instance.capacities().begin(),
                                    instance.capacities().end())},
          {"items", std::vector<int>(instance.sizes().begin(),
                                     instance.sizes().end())}};
}

ProblemInstance InstanceFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("instance must be a JSON object");
  std::string id;
  if (j.contains("id")) {
    id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
  }
  return ProblemInstance(std::move(id), IntArray(j, "bins"),
                         IntArray(j, "items"));
}

nlohmann::json DisplayedToJson(const DisplayedSolution& displayed) {
  nlohmann::json assignment = nlohmann::json::array();
  for (int b : displayed.solution.BinIndices()) {
    if (b == kUnassigned) {
      assignment.push_back(nullptr);
    } else {
      assignment.push_back(b);
    }
  }
  return {{"assignment", assignment},
          {"bin_order", displayed.bin_order},
          {"item_order", displayed.item_order}};
}

DisplayedSolution DisplayedFromJson(const nlohmann::json& j,
                                    const ProblemInstance& instance) {
  if (!j.contains("assignment") || !j["assignment"].is_array()) {
    throw ValidationError("missing array field 'assignment'");
  }
  std::vector<int> bins;
  for (const auto& v : j["assignment"]) {
    if (v.is_null()) {
      bins.push_back(kUnassigned);
    } else if (v.is_number_integer()) {
      bins.push_back(v.get<int>());
    } else {
      throw ValidationError("assignment entries must be integers or null");
    }
  }
  if (static_cast<int>(bins.size()) != instance.num_items()) {
    throw ValidationError(fmt::format("assignment has {} entries for {} items",
                                      bins.size(), instance.num_items()));
  }
  DisplayedSolution d = DisplayedSolution::Identity(
      Solution::FromBinIndices(instance.num_bins(), bins));
  if (j.contains("bin_order")) d.bin_order = IntArray(j, "bin_order");
  if (j.contains("item_order")) d.item_order = IntArray(j, "item_order");
  CheckLayout(d);
  return d;
}

nlohmann::json RecordToJson(const ProblemInstance& instance,
                            const DisplayedSolution& displayed) {
  nlohmann::json j = InstanceToJson(instance);
  j.update(DisplayedToJson(displayed));
  return j;
}

nlohmann::json SolutionSetToJson(const SolutionSet& set) {
  nlohmann::json j = InstanceToJson(set.instance);
  if (set.optimal_score) {
    j["optimal_score"] = *set.optimal_score;
    j["truncated"] = set.truncated;
  }
  nlohmann::json sols = nlohmann::json::array();
  for (const auto& d : set.solutions) sols.push_back(DisplayedToJson(d));
  j["solutions"] = std::move(sols);
  return j;
}

SolutionSet SolutionSetFromJson(const nlohmann::json& j) {
  SolutionSet set{InstanceFromJson(j), {}, std::nullopt, false};
  if (j.contains("optimal_score")) {
    set.optimal_score = j["optimal_score"].get<std::int64_t>();
  }
  if (j.contains("truncated")) set.truncated = j["truncated"].get<bool>();
  if (j.contains("solutions")) {
    for (const auto& s : j["solutions"]) {
      set.solutions.push_back(DisplayedFromJson(s, set.instance));
    }
  } else if (j.contains("assignment")) {
    set.solutions.push_back(DisplayedFromJson(j, set.instance));
  }
  return set;
}

nlohmann::json CcParamsToJson(const CcParams& params) {
  return {{"family", FamilyName(params.family)},
          {"sigma", params.sigma},
          {"p_geom", params.p_geom},
          {"alpha", params.alpha},
          {"dirichlet_correction", params.dirichlet_correction}};
}

CcParams CcParamsFromJson(const nlohmann::json& j) {
  CcParams p;
  try {
    p.family = ParseFamily(j.at("family").get<std::string>());
    p.sigma = j.at("sigma").get<double>();
    p.p_geom = j.at("p_geom").get<double>();
    p.alpha = j.at("alpha").get<double>();
    p.dirichlet_correction = j.value("dirichlet_correction", true);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("cc parameters: ") + e.what());
  }
  p.Validate();
  return p;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorClass::kUsage, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(ReadTextFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorClass::kUsage, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw Error(ErrorClass::kUsage, "short write to " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mssp
