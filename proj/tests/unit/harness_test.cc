// Copyright 2026 The advlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "harness.h"

#include <gtest/gtest.h>

#include <algorithm>

namespace advlab::harness {
namespace {

TEST(Config, ParseText) {
  const auto c = ParseConfigText(
      "# comment\nsubcommand = coupling\nseed = 9\nm = 2, 3\nM = 10,20\ntrials = 500\nseed=11\n");
  EXPECT_EQ(c.subcommand, "coupling");
  EXPECT_EQ(c.seed, 11u);
  EXPECT_EQ(c.trials, 500u);
  EXPECT_EQ(c.UintList("m", {}), (std::vector<uint64_t>{2, 3}));
  EXPECT_NO_THROW(c.Validate());
}

TEST(Config, Errors) {
  ExperimentConfig c;
  c.Set("subcommand", "coupling");
  c.Set("m", "oops");
  EXPECT_THROW(c.Uint("m", 1), ConfigError);
  c.Set("bogus", "1");
  EXPECT_THROW(c.Validate(), ConfigError);
  ExperimentConfig unknown;
  unknown.subcommand = "nope";
  EXPECT_THROW(unknown.Validate(), ConfigError);
  EXPECT_THROW(ParseConfigText("no equals sign"), ConfigError);
  EXPECT_THROW(LoadConfigFile("/nonexistent/advlab.cfg"), ConfigError);
}

ExperimentConfig SmallCoupling() {
  ExperimentConfig c;
  c.Set("subcommand", "coupling");
  c.Set("m", "2,3");
  c.Set("M", "4,30");
  c.Set("domain_size", "4");
  c.Set("trials", "3000");
  c.Set("seed", "5");
  return c;
}

TEST(Run, DeterministicOutput) {
  const auto a = harness::Run(SmallCoupling());
  const auto b = harness::Run(SmallCoupling());
  EXPECT_EQ(a.ToCsv(), b.ToCsv());
  EXPECT_EQ(a.ToJson(), b.ToJson());
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.Table("coupling").rows.size(), 2u);
  EXPECT_NE(a.ToJson().find("\"schema_version\""), std::string::npos);
}

TEST(Run, SeedChangesOutput) {
  auto c = SmallCoupling();
  const auto a = harness::Run(c);
  c.Set("seed", "6");
  EXPECT_NE(a.ToCsv(), harness::Run(c).ToCsv());
}

TEST(Run, MalformedParameterIsConfigError) {
  auto c = SmallCoupling();
  c.Set("M", "1");  // M < m
  EXPECT_THROW(harness::Run(c), ConfigError);
}

TEST(PlotData, SelectsColumns) {
  const auto r = harness::Run(SmallCoupling());
  const std::vector<std::string> axes{"M", "empirical_neq_rate"};
  const auto csv = EmitPlotData(r, axes);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "M,empirical_neq_rate");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(EmitPlotData(r, {}), r.Table("coupling").ToCsv());
  const std::vector<std::string> bad{"nope"};
  EXPECT_THROW(EmitPlotData(r, bad), ConfigError);
}

TEST(Format, Numbers) {
  EXPECT_EQ(FormatNumber(0.25), "0.25");
  EXPECT_EQ(FormatNumber(3), "3");
}

}  // namespace
}  // namespace advlab::harness
