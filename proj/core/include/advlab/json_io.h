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

// JSON forms for distributions, multisets, noise models, SQ tables and
// equivalence reports. Parse failures throw std::invalid_argument.

#ifndef ADVLAB_JSON_IO_H_
#define ADVLAB_JSON_IO_H_

#include <string>
#include <string_view>

#include "advlab/distribution.h"
#include "advlab/equivalence.h"
#include "advlab/noise_model.h"
#include "advlab/sq_engine.h"

namespace advlab {

inline constexpr int kJsonSchemaVersion = 1;

// {"domain_size": N, "weights": [...]}
std::string DistributionToJson(const DiscreteDistribution& d);
DiscreteDistribution DistributionFromJson(std::string_view text);

// {"domain_size": N, "counts": {"id": mult, ...}}. The domain size is
// optional on input when `domain` is given.
std::string MultisetToJson(const SampleMultiset& s);
SampleMultiset MultisetFromJson(std::string_view text);
SampleMultiset MultisetFromJson(std::string_view text, Domain domain);

// {"kind": "additive", "eta": 0.1, "labels": 0}
std::string NoiseModelToJson(const NoiseModel& model);
NoiseModel NoiseModelFromJson(std::string_view text);

// {"tau": .., "k": .., "queries": [[..], ..], "branch": {"0.2,0.4": 1},
//  "accept_threshold": ..}
std::string SqTableToJson(const SqTable& table);
SqTable SqTableFromJson(std::string_view text);

// Schema-versioned; no timing fields, so equal inputs give equal bytes.
std::string EquivalenceReportToJson(const EquivalenceReport& report);

}  // namespace advlab

#endif  // ADVLAB_JSON_IO_H_
