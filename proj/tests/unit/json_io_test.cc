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

#include "advlab/json_io.h"

#include <gtest/gtest.h>

namespace advlab {
namespace {

TEST(Json, DistributionRoundTrip) {
  const DiscreteDistribution d(Domain(3), {0.125, 0.375, 0.5});
  const auto back = DistributionFromJson(DistributionToJson(d));
  EXPECT_TRUE(back.ApproxEquals(d, 0.0));
  EXPECT_THROW(DistributionFromJson("{\"domain_size\": 2, \"weights\": [0.5]}"),
               std::invalid_argument);
  EXPECT_THROW(DistributionFromJson("not json"), std::invalid_argument);
}

TEST(Json, MultisetRoundTrip) {
  SampleMultiset s(Domain(5));
  s.Add(0, 2);
  s.Add(4, 7);
  EXPECT_EQ(MultisetFromJson(MultisetToJson(s)), s);
  const auto with_domain = MultisetFromJson("{\"counts\": {\"1\": 3}}", Domain(2));
  EXPECT_EQ(with_domain.Multiplicity(1), 3u);
  EXPECT_THROW(MultisetFromJson("{\"counts\": {\"1\": 3}}"), std::invalid_argument);
  EXPECT_THROW(MultisetFromJson("{\"counts\": {\"9\": 1}}", Domain(2)), std::invalid_argument);
}

TEST(Json, NoiseModelRoundTrip) {
  for (auto m : {NoiseModel::Additive(0.1), NoiseModel::Nasty(0.25),
                 NoiseModel::NastyClassification(0.2, 3), NoiseModel::MaliciousEncoded(0.05)}) {
    const auto back = NoiseModelFromJson(NoiseModelToJson(m));
    EXPECT_EQ(back.kind(), m.kind());
    EXPECT_EQ(back.eta(), m.eta());
    EXPECT_EQ(back.label_count(), m.label_count());
  }
  EXPECT_THROW(NoiseModelFromJson("{\"kind\": \"gaussian\", \"eta\": 0.1}"), std::invalid_argument);
}

TEST(Json, SqTableRoundTrip) {
  SqTable t;
  t.tau = 0.25;
  t.k = 2;
  t.queries = {{1, -1}, {0.5, 0.5}};
  t.branch["2"] = 1;
  t.accept_threshold = 0.3;
  const auto back = SqTableFromJson(SqTableToJson(t));
  EXPECT_EQ(back.tau, t.tau);
  EXPECT_EQ(back.k, t.k);
  EXPECT_EQ(back.queries, t.queries);
  EXPECT_EQ(back.branch, t.branch);
  EXPECT_EQ(back.accept_threshold, t.accept_threshold);
}

TEST(Json, EquivalenceReportIsVersionedAndStable) {
  EquivalenceReport r;
  r.n = 2;
  r.M = 50;
  r.epsilon = 0.3;
  r.pass = true;
  const auto a = EquivalenceReportToJson(r);
  EXPECT_EQ(a, EquivalenceReportToJson(r));
  EXPECT_NE(a.find("\"schema_version\": 1"), std::string::npos);
  EXPECT_NE(a.find("\"verdict\""), std::string::npos);
}

}  // namespace
}  // namespace advlab
