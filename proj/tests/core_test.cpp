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

#include "mssp/core.hpp"

#include <gtest/gtest.h>

#include "mssp/error.hpp"
#include "mssp/io.hpp"

namespace mssp {
namespace {

TEST(ProblemInstanceTest, RejectsEmptyOrNonPositive) {
  EXPECT_THROW(ProblemInstance("x", {}, {1}), Error);
  EXPECT_THROW(ProblemInstance("x", {10}, {}), Error);
  EXPECT_THROW(ProblemInstance("x", {10, 0}, {1}), Error);
  EXPECT_THROW(ProblemInstance("x", {10}, {-5}), Error);
}

TEST(ProblemInstanceTest, Totals) {
  ProblemInstance p("x", {10, 20}, {5, 10, 15});
  EXPECT_EQ(p.total_capacity(), 30);
  EXPECT_EQ(p.total_size(), 30);
  EXPECT_DOUBLE_EQ(p.load_ratio(), 1.0);
}

TEST(RegimeTest, AcceptsPaperInstance) {
  ProblemInstance p("ok", {100, 80, 60, 50},
                    {50, 45, 40, 35, 30, 25, 20, 5});
  EXPECT_TRUE(CheckPaperRegime(p).ok()) << CheckPaperRegime(p).failures[0];
}

TEST(RegimeTest, FlagsEachConstraint) {
  // Item larger than the largest bin.
  EXPECT_FALSE(CheckPaperRegime(ProblemInstance(
                   "a", {50, 50, 50, 50}, {55, 30, 30, 30, 20, 20, 10}))
                   .ok());
  // Smallest bin below the smallest item.
  EXPECT_FALSE(CheckPaperRegime(ProblemInstance(
                   "b", {10, 60, 60, 60}, {15, 20, 25, 30, 30, 30, 15}))
                   .ok());
  // Load ratio below 0.8.
  EXPECT_FALSE(CheckPaperRegime(ProblemInstance(
                   "c", {100, 100, 100, 100}, {5, 10, 10, 10, 10, 10, 10}))
                   .ok());
  // Too few bins.
  EXPECT_FALSE(CheckPaperRegime(ProblemInstance(
                   "d", {100, 100, 100}, {40, 40, 40, 40, 40, 20, 20}))
                   .ok());
}

TEST(SolutionTest, BinIndicesRoundTrip) {
  const std::vector<int> bins = {1, kUnassigned, 0, 1};
  const auto s = Solution::FromBinIndices(2, bins);
  EXPECT_EQ(s.BinIndices(), bins);
  EXPECT_TRUE(s.assigned(0, 1));
  EXPECT_FALSE(s.assigned(1, 0));
  EXPECT_EQ(s.matrix().ones(), 3);
}

TEST(SolutionTest, BinIndicesRejectsDoubleAssignment) {
  AssignmentMatrix x(1, 2);
  x.set(0, 0, true);
  x.set(0, 1, true);
  EXPECT_THROW(Solution(x).BinIndices(), Error);
}

TEST(LayoutTest, ApplyLayoutPermutesRowsAndColumns) {
  // Item 0 in bin 1, item 1 in bin 0.
  const auto s = Solution::FromBinIndices(2, std::vector<int>{1, 0});
  DisplayedSolution d{s, {1, 0}, {1, 0}};
  const auto shown = ApplyLayout(d);
  // Row 0 shows item 1 (bin 0), column 0 shows bin 1.
  EXPECT_FALSE(shown.at(0, 0));
  EXPECT_TRUE(shown.at(0, 1));
  EXPECT_TRUE(shown.at(1, 0));
}

TEST(LayoutTest, RejectsNonPermutation) {
  const auto s = Solution::Empty(2, 2);
  EXPECT_THROW(CheckLayout({s, {0, 0}, {0, 1}}), Error);
  EXPECT_THROW(CheckLayout({s, {0, 1}, {0}}), Error);
  EXPECT_NO_THROW(CheckLayout(DisplayedSolution::Identity(s)));
}

TEST(LayoutTest, InversePermutation) {
  const std::vector<int> order = {2, 0, 3, 1};
  const auto inv = InversePermutation(order);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(inv[order[k]], k);
  EXPECT_TRUE(IsPermutation(order, 4));
  EXPECT_FALSE(IsPermutation(order, 5));
}

TEST(ValidateTest, ReportsCapacityAndMultiplicity) {
  ProblemInstance p("x", {10, 5}, {6, 6});
  const auto over = Solution::FromBinIndices(2, std::vector<int>{0, 0});
  const auto r = ValidateSolution(p, over);
  ASSERT_EQ(r.capacity.size(), 1u);
  EXPECT_EQ(r.capacity[0].bin, 0);
  EXPECT_EQ(r.capacity[0].load, 12);

  AssignmentMatrix x(2, 2);
  x.set(0, 0, true);
  x.set(0, 1, true);
  const auto twice = ValidateSolution(ProblemInstance("y", {10, 10}, {1, 1}),
                                      Solution(x));
  ASSERT_EQ(twice.multiplicity.size(), 1u);
  EXPECT_EQ(twice.multiplicity[0].item, 0);
  EXPECT_FALSE(twice.ToString().empty());
}

TEST(ObjectiveTest, SumsAssignedSizes) {
  ProblemInstance p("x", {10, 20}, {5, 10, 15});
  EXPECT_EQ(ObjectiveScore(p, Solution::FromBinIndices(
                                  2, std::vector<int>{1, 0, 1})),
            30);
  EXPECT_EQ(ObjectiveScore(p, Solution::Empty(3, 2)), 0);
}

TEST(CanonicalTest, EqualSizeItemSwapIsRedundant) {
  ProblemInstance p("x", {10, 10}, {5, 5, 10});
  const auto a = Solution::FromBinIndices(2, std::vector<int>{0, 1, kUnassigned});
  const auto b = Solution::FromBinIndices(2, std::vector<int>{1, 0, kUnassigned});
  EXPECT_EQ(CanonicalForm(p, a), CanonicalForm(p, b));
  // Swapping the contents of equal-capacity bins is also redundant.
  const auto c = Solution::FromBinIndices(2, std::vector<int>{0, 0, 1});
  const auto d = Solution::FromBinIndices(2, std::vector<int>{1, 1, 0});
  EXPECT_EQ(CanonicalForm(p, c), CanonicalForm(p, d));
  EXPECT_NE(CanonicalForm(p, a), CanonicalForm(p, c));
}

TEST(CanonicalTest, DistinguishesBinCapacities) {
  ProblemInstance p("x", {10, 20}, {10});
  const auto a = Solution::FromBinIndices(2, std::vector<int>{0});
  const auto b = Solution::FromBinIndices(2, std::vector<int>{1});
  EXPECT_NE(CanonicalForm(p, a), CanonicalForm(p, b));
  EXPECT_EQ(CanonicalForm(p, a).ToString(), "10:[10]|20:[]");
}

TEST(CanonicalTest, RejectsInfeasible) {
  ProblemInstance p("x", {5}, {10});
  EXPECT_THROW(CanonicalForm(p, Solution::FromBinIndices(1, std::vector<int>{0})),
               Error);
}

TEST(IoTest, InstanceRoundTrip) {
  ProblemInstance p("p7", {10, 20}, {5, 10, 15});
  EXPECT_EQ(InstanceFromJson(InstanceToJson(p)), p);
}

TEST(IoTest, DisplayedRoundTripKeepsUnassigned) {
  ProblemInstance p("p", {10, 20}, {5, 10, 15});
  DisplayedSolution d{Solution::FromBinIndices(2, std::vector<int>{1, kUnassigned, 0}),
                      {1, 0}, {2, 0, 1}};
  const auto j = DisplayedToJson(d);
  EXPECT_TRUE(j["assignment"][1].is_null());
  EXPECT_EQ(DisplayedFromJson(j, p), d);
}

TEST(IoTest, SolutionSetRoundTrip) {
  ProblemInstance p("p", {10, 20}, {5, 10, 15});
  SolutionSet set{p,
                  {DisplayedSolution::Identity(
                      Solution::FromBinIndices(2, std::vector<int>{1, 0, 1}))},
                  30,
                  false};
  const auto back = SolutionSetFromJson(SolutionSetToJson(set));
  EXPECT_EQ(back.instance, p);
  EXPECT_EQ(back.solutions, set.solutions);
  EXPECT_EQ(back.optimal_score, 30);
}

TEST(IoTest, RejectsMalformedInput) {
  EXPECT_THROW(InstanceFromJson(nlohmann::json::parse(R"({"bins":[10]})")),
               Error);
  EXPECT_THROW(InstanceFromJson(nlohmann::json::parse(
                   R"({"bins":[10],"items":["a"]})")),
               Error);
  ProblemInstance p("p", {10}, {5, 5});
  EXPECT_THROW(DisplayedFromJson(nlohmann::json::parse(R"({"assignment":[0]})"), p),
               Error);
}

TEST(IoTest, CcParamsRoundTrip) {
  for (const auto& params : {CcParams::Confirmatory(), CcParams::Exploratory()}) {
    EXPECT_EQ(CcParamsFromJson(CcParamsToJson(params)), params);
  }
  EXPECT_EQ(CcParamsToJson(CcParams::Exploratory())["family"], "truncated_normal");
  auto bad = CcParamsToJson(CcParams::Confirmatory());
  bad["sigma"] = 1.5;
  EXPECT_THROW(CcParamsFromJson(bad), Error);
}

}  // namespace
}  // namespace mssp
