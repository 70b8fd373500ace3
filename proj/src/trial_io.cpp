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

#include "mssp/trial_io.hpp"

#include <map>
#include <sstream>

#include <fmt/format.h>

#include "mssp/csv.hpp"
#include "mssp/error.hpp"
#include "mssp/io.hpp"
#include "mssp/preference.hpp"

namespace mssp {
namespace {

nlohmann::json SolutionToJson(const Solution& s) {
  nlohmann::json a = nlohmann::json::array();
  for (int b : s.BinIndices()) {
    if (b == kUnassigned) {
      a.push_back(nullptr);
    } else {
      a.push_back(b);
    }
  }
  return a;
}

Solution SolutionFromJson(const nlohmann::json& a,
                          const ProblemInstance& instance) {
  if (!a.is_array() || static_cast<int>(a.size()) != instance.num_items()) {
    throw ValidationError(fmt::format("{}: solution must list {} bin indices",
                                      instance.id(), instance.num_items()));
  }
  std::vector<int> bins;
  for (const auto& v : a) {
    if (v.is_null()) {
      bins.push_back(kUnassigned);
    } else if (v.is_number_integer() && v.get<int>() >= 0 &&
               v.get<int>() < instance.num_bins()) {
      bins.push_back(v.get<int>());
    } else {
      throw ValidationError(fmt::format("{}: bad bin index {}", instance.id(),
                                        v.dump()));
    }
  }
  return Solution::FromBinIndices(instance.num_bins(), bins);
}

const std::vector<std::string>& ManifestColumns() {
  static const std::vector<std::string> kColumns = {
      "participant_id",  "seed",           "trial_index",     "kind",
      "stratum",         "problem_id",     "left_solution",   "right_solution",
      "left_bin_order",  "left_item_order", "right_bin_order", "right_item_order",
      "pd",              "hc_left",        "hc_right",        "cc_left",
      "cc_right",        "vc_left",        "vc_right",        "dd_left",
      "dd_right"};
  return kColumns;
}

const std::vector<std::string>& ResponseColumns() {
  static const std::vector<std::string> kColumns = {"choice", "rt_ms",
                                                    "gaze_left", "gaze_right"};
  return kColumns;
}

std::vector<std::string> ManifestFields(const ManifestRow& r) {
  return {r.participant_id,
          fmt::format("{}", r.seed),
          fmt::format("{}", r.trial_index),
          std::string(TrialKindName(r.kind)),
          std::string(StratumName(r.stratum)),
          r.problem_id,
          fmt::format("{}", r.left_solution),
          fmt::format("{}", r.right_solution),
          FormatPermutation(r.left_bin_order),
          FormatPermutation(r.left_item_order),
          FormatPermutation(r.right_bin_order),
          FormatPermutation(r.right_item_order),
          fmt::format("{}", r.pd),
          fmt::format("{}", r.left.hc),
          fmt::format("{}", r.right.hc),
          fmt::format("{}", r.left.cc),
          fmt::format("{}", r.right.cc),
          fmt::format("{}", r.left.vc),
          fmt::format("{}", r.right.vc),
          fmt::format("{}", r.left.dd),
          fmt::format("{}", r.right.dd)};
}

Stratum ParseStratum(std::string_view name) {
  for (auto s : {Stratum::kLow, Stratum::kMedium, Stratum::kHigh}) {
    if (StratumName(s) == name) return s;
  }
  throw ValidationError(fmt::format("unknown stratum '{}'", name));
}

ManifestRow ManifestFromRow(const CsvTable& table, const CsvRow& row) {
  auto get = [&](std::string_view name) -> const std::string& {
    return row[table.Column(name)];
  };
  ManifestRow r;
  r.participant_id = get("participant_id");
  r.seed = ParseUint64(get("seed"), "seed");
  r.trial_index = ParseInt(get("trial_index"), "trial_index");
  r.kind = ParseTrialKind(get("kind"));
  r.stratum = ParseStratum(get("stratum"));
  r.problem_id = get("problem_id");
  r.left_solution = ParseInt(get("left_solution"), "left_solution");
  r.right_solution = ParseInt(get("right_solution"), "right_solution");
  r.left_bin_order = ParsePermutation(get("left_bin_order"));
  r.left_item_order = ParsePermutation(get("left_item_order"));
  r.right_bin_order = ParsePermutation(get("right_bin_order"));
  r.right_item_order = ParsePermutation(get("right_item_order"));
  r.pd = ParseDouble(get("pd"), "pd");
  r.left.hc = ParseInt(get("hc_left"), "hc_left");
  r.right.hc = ParseInt(get("hc_right"), "hc_right");
  r.left.cc = ParseDouble(get("cc_left"), "cc_left");
  r.right.cc = ParseDouble(get("cc_right"), "cc_right");
  r.left.vc = ParseDouble(get("vc_left"), "vc_left");
  r.right.vc = ParseDouble(get("vc_right"), "vc_right");
  r.left.dd = ParseInt(get("dd_left"), "dd_left");
  r.right.dd = ParseInt(get("dd_right"), "dd_right");
  return r;
}

}  // namespace

nlohmann::json GenerationConfigToJson(const GenerationConfig& c) {
  return {{"iterations", c.iterations},
          {"min_items", c.min_items},
          {"max_items", c.max_items},
          {"min_bins", c.min_bins},
          {"max_bins", c.max_bins},
          {"size_min", c.size_min},
          {"size_max", c.size_max},
          {"size_step", c.size_step},
          {"capacity_min", c.capacity_min},
          {"capacity_max", c.capacity_max},
          {"capacity_step", c.capacity_step},
          {"ratio_min", c.ratio_min},
          {"ratio_max", c.ratio_max},
          {"cap", c.cap},
          {"node_budget", c.node_budget},
          {"seed", c.seed}};
}

GenerationConfig GenerationConfigFromJson(const nlohmann::json& j) {
  GenerationConfig c;
  try {
    c.iterations = j.value("iterations", c.iterations);
    c.min_items = j.value("min_items", c.min_items);
    c.max_items = j.value("max_items", c.max_items);
    c.min_bins = j.value("min_bins", c.min_bins);
    c.max_bins = j.value("max_bins", c.max_bins);
    c.size_min = j.value("size_min", c.size_min);
    c.size_max = j.value("size_max", c.size_max);
    c.size_step = j.value("size_step", c.size_step);
    c.capacity_min = j.value("capacity_min", c.capacity_min);
    c.capacity_max = j.value("capacity_max", c.capacity_max);
    c.capacity_step = j.value("capacity_step", c.capacity_step);
    c.ratio_min = j.value("ratio_min", c.ratio_min);
    c.ratio_max = j.value("ratio_max", c.ratio_max);
    c.cap = j.value("cap", c.cap);
    c.node_budget = j.value("node_budget", c.node_budget);
    c.seed = j.value("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("generation config: ") + e.what());
  }
  c.Validate();
  return c;
}

std::string PoolToText(const Pool& pool) {
  nlohmann::json rejections = nlohmann::json::object();
  for (const auto& [reason, count] : pool.report.rejections) {
    rejections[reason] = count;
  }
  nlohmann::json head = {
      {"format", "mssp-pool"},
      {"config", GenerationConfigToJson(pool.config)},
      {"yield",
       {{"iterations", pool.report.iterations},
        {"accepted", pool.report.accepted},
        {"rejections", rejections}}},
      {"problems", pool.entries.size()}};
  std::string out = head.dump() + "\n";
  for (const auto& e : pool.entries) {
    nlohmann::json j = InstanceToJson(e.instance);
    j["optimal_score"] = e.result.optimal_score;
    j["truncated"] = e.result.truncated;
    j["nodes"] = e.result.nodes;
    nlohmann::json sols = nlohmann::json::array();
    for (const auto& s : e.result.solutions) sols.push_back(SolutionToJson(s));
    j["solutions"] = std::move(sols);
    out += j.dump();
    out += '\n';
  }
  return out;
}

Pool PoolFromText(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("pool: empty file");
  Pool pool;
  try {
    const auto head = nlohmann::json::parse(line);
    if (head.value("format", "") != "mssp-pool") {
      throw ValidationError("pool: missing 'mssp-pool' header");
    }
    pool.config = GenerationConfigFromJson(head.at("config"));
    const auto& y = head.at("yield");
    pool.report.iterations = y.at("iterations").get<int>();
    pool.report.accepted = y.at("accepted").get<int>();
    for (const auto& [reason, count] : y.at("rejections").items()) {
      pool.report.rejections[reason] = count.get<int>();
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = nlohmann::json::parse(line);
      PoolEntry e{InstanceFromJson(j), {}};
      e.result.optimal_score = j.at("optimal_score").get<std::int64_t>();
      e.result.truncated = j.value("truncated", false);
      e.result.nodes = j.value("nodes", std::int64_t{0});
      for (const auto& s : j.at("solutions")) {
        e.result.solutions.push_back(SolutionFromJson(s, e.instance));
      }
      pool.entries.push_back(std::move(e));
    }
    if (head.at("problems").get<size_t>() != pool.entries.size()) {
      throw ValidationError(fmt::format(
          "pool: header announces {} problems, file holds {}",
          head.at("problems").get<size_t>(), pool.entries.size()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("pool: ") + e.what());
  }
  return pool;
}

std::vector<ManifestRow> BuildManifest(std::string_view participant_id,
                                       std::uint64_t seed,
                                       std::span<const TrialPair> trials,
                                       std::span<const PoolEntry> pool,
                                       const CcParams& cc_params) {
  std::vector<ManifestRow> rows;
  for (size_t t = 0; t < trials.size(); ++t) {
    const auto& trial = trials[t];
    const auto& instance = pool[trial.problem].instance;
    ManifestRow r;
    r.participant_id = participant_id;
    r.seed = seed;
    r.trial_index = static_cast<int>(t) + 1;
    r.kind = trial.kind;
    r.stratum = trial.stratum;
    r.problem_id = instance.id();
    r.left_solution = trial.left_solution;
    r.right_solution = trial.right_solution;
    r.left_bin_order = trial.left.bin_order;
    r.left_item_order = trial.left.item_order;
    r.right_bin_order = trial.right.bin_order;
    r.right_item_order = trial.right.item_order;
    r.pd = instance.load_ratio();
    r.left = Profile(instance, trial.left, cc_params);
    r.right = Profile(instance, trial.right, cc_params);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string_view ChoiceName(int choice) {
  if (choice == kDuplicateChoice) return "duplicate";
  if (choice < 0 || choice >= kNumCategories) {
    throw ValidationError(fmt::format("choice {} out of range", choice));
  }
  return kCategoryNames[choice];
}

int ParseChoice(std::string_view name) {
  if (name == "duplicate") return kDuplicateChoice;
  for (int k = 0; k < kNumCategories; ++k) {
    if (kCategoryNames[k] == name) return k;
  }
  throw ValidationError(fmt::format("unknown choice '{}'", name));
}

std::string ManifestCsvHeader() { return CsvLine(ManifestColumns()); }

std::string ManifestCsv(std::span<const ManifestRow> rows) {
  std::string out = ManifestCsvHeader();
  for (const auto& r : rows) out += CsvLine(ManifestFields(r));
  return out;
}

std::vector<ManifestRow> ParseManifestCsv(std::string_view text) {
  const auto table = CsvTable::Parse(text);
  std::vector<ManifestRow> rows;
  for (const auto& row : table.rows()) rows.push_back(ManifestFromRow(table, row));
  return rows;
}

std::string TrialLogCsv(std::span<const TrialRecord> records) {
  auto header = ManifestColumns();
  header.insert(header.end(), ResponseColumns().begin(),
                ResponseColumns().end());
  std::string out = CsvLine(header);
  for (const auto& r : records) {
    auto fields = ManifestFields(r.trial);
    fields.push_back(std::string(ChoiceName(r.choice)));
    fields.push_back(fmt::format("{}", r.rt_ms));
    fields.push_back(fmt::format("{}", r.gaze_left));
    fields.push_back(fmt::format("{}", r.gaze_right));
    out += CsvLine(fields);
  }
  return out;
}

std::vector<TrialRecord> ParseTrialLogCsv(std::string_view text) {
  const auto table = CsvTable::Parse(text);
  std::vector<TrialRecord> records;
  for (const auto& row : table.rows()) {
    TrialRecord r;
    r.trial = ManifestFromRow(table, row);
    r.choice = ParseChoice(row[table.Column("choice")]);
    r.rt_ms = ParseDouble(row[table.Column("rt_ms")], "rt_ms");
    r.gaze_left = ParseInt(row[table.Column("gaze_left")], "gaze_left");
    r.gaze_right = ParseInt(row[table.Column("gaze_right")], "gaze_right");
    if (!(r.rt_ms > 0.0)) {
      throw ValidationError(fmt::format("{} trial {}: rt_ms must be positive",
                                        r.trial.participant_id,
                                        r.trial.trial_index));
    }
    if (r.gaze_left < 0 || r.gaze_right < 0) {
      throw ValidationError(fmt::format(
          "{} trial {}: gaze counts must be nonnegative",
          r.trial.participant_id, r.trial.trial_index));
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string ParticipantCsv(std::span<const ParticipantRecord> participants) {
  std::string out = "participant_id,psi_total,trial,score,optimum,rt_s\n";
  for (const auto& p : participants) {
    for (const auto& s : p.solves) {
      out += CsvLine(std::vector<std::string>{
          p.participant_id, fmt::format("{}", p.psi_total),
          fmt::format("{}", s.trial), fmt::format("{}", s.score),
          fmt::format("{}", s.optimum), fmt::format("{}", s.rt_s)});
    }
  }
  return out;
}

std::vector<ParticipantRecord> ParseParticipantCsv(std::string_view text) {
  const auto table = CsvTable::Parse(text);
  std::vector<ParticipantRecord> out;
  std::map<std::string, size_t> index;
  const size_t id_col = table.Column("participant_id");
  for (const auto& row : table.rows()) {
    const auto& id = row[id_col];
    const int psi = ParseInt(row[table.Column("psi_total")], "psi_total");
    auto [it, fresh] = index.try_emplace(id, out.size());
    if (fresh) {
      out.push_back({id, psi, {}});
    } else if (out[it->second].psi_total != psi) {
      throw ValidationError(
          fmt::format("participant {}: inconsistent psi_total", id));
    }
    out[it->second].solves.push_back(
        {ParseInt(row[table.Column("trial")], "trial"),
         ParseDouble(row[table.Column("score")], "score"),
         ParseDouble(row[table.Column("optimum")], "optimum"),
         ParseDouble(row[table.Column("rt_s")], "rt_s")});
  }
  return out;
}

std::string FormatPermutation(std::span<const int> order) {
  return fmt::format("{}", fmt::join(order, " "));
}

std::vector<int> ParsePermutation(std::string_view text) {
  std::vector<int> out;
  size_t k = 0;
  while (k < text.size()) {
    while (k < text.size() && text[k] == ' ') ++k;
    size_t end = k;
    while (end < text.size() && text[end] != ' ') ++end;
    if (end > k) out.push_back(ParseInt(text.substr(k, end - k), "permutation"));
    k = end;
  }
  return out;
}

}  // namespace mssp
