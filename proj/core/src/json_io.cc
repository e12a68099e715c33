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

#include <stdexcept>

#include "json.hpp"

namespace advlab {
namespace {

using Json = nlohmann::ordered_json;

Json Parse(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

template <typename T>
T Field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string(what) + ": missing \"" + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": bad \"" + key + "\": " + e.what());
  }
}

Json ExtremesJson(const Extremes& e) {
  return Json{{"max", e.max},
              {"min", e.min},
              {"max_standard_error", e.max_standard_error},
              {"min_standard_error", e.min_standard_error},
              {"mode", e.mode},
              {"breadth", e.breadth}};
}

}  // namespace

std::string DistributionToJson(const DiscreteDistribution& d) {
  Json j;
  j["domain_size"] = d.domain().size();
  j["weights"] = std::vector<double>(d.weights().begin(), d.weights().end());
  return j.dump();
}

DiscreteDistribution DistributionFromJson(std::string_view text) {
  const Json j = Parse(text, "distribution");
  const auto size = Field<std::size_t>(j, "domain_size", "distribution");
  return DiscreteDistribution(Domain(size),
                              Field<std::vector<double>>(j, "weights", "distribution"));
}

std::string MultisetToJson(const SampleMultiset& s) {
  Json j;
  j["domain_size"] = s.domain().size();
  Json counts = Json::object();
  for (const auto& [x, c] : s.counts()) counts[std::to_string(x)] = c;
  j["counts"] = counts;
  return j.dump();
}

namespace {

SampleMultiset MultisetFromParsed(const Json& j, Domain domain) {
  const Json& counts = j.is_object() && j.contains("counts") ? j.at("counts") : Json();
  if (!counts.is_object()) throw std::invalid_argument("multiset: missing \"counts\" object");
  SampleMultiset s(domain);
  for (const auto& [key, value] : counts.items()) {
    std::size_t used = 0;
    unsigned long id = 0;
    try {
      id = std::stoul(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || !value.is_number_unsigned() || id >= domain.size()) {
      throw std::invalid_argument("multiset: bad entry \"" + key + "\"");
    }
    s.Add(static_cast<Element>(id), value.get<uint64_t>());
  }
  return s;
}

}  // namespace

SampleMultiset MultisetFromJson(std::string_view text) {
  const Json j = Parse(text, "multiset");
  return MultisetFromParsed(j, Domain(Field<std::size_t>(j, "domain_size", "multiset")));
}

SampleMultiset MultisetFromJson(std::string_view text, Domain domain) {
  const Json j = Parse(text, "multiset");
  if (j.is_object() && j.contains("domain_size") &&
      Field<std::size_t>(j, "domain_size", "multiset") != domain.size()) {
    throw DomainMismatch("multiset: domain_size disagrees with the given domain");
  }
  return MultisetFromParsed(j, domain);
}

std::string NoiseModelToJson(const NoiseModel& model) {
  Json j;
  j["kind"] = NoiseKindName(model.kind());
  j["eta"] = model.eta();
  j["labels"] = model.label_count();
  return j.dump();
}

NoiseModel NoiseModelFromJson(std::string_view text) {
  const Json j = Parse(text, "noise model");
  const auto kind = ParseNoiseKind(Field<std::string>(j, "kind", "noise model"));
  const auto eta = Field<double>(j, "eta", "noise model");
  const std::size_t labels =
      j.contains("labels") ? Field<std::size_t>(j, "labels", "noise model") : 0;
  return NoiseModel::Make(kind, eta, labels);
}

std::string SqTableToJson(const SqTable& table) {
  Json j;
  j["tau"] = table.tau;
  j["k"] = table.k;
  j["queries"] = table.queries;
  Json branch = Json::object();
  for (const auto& [prefix, index] : table.branch) branch[prefix] = index;
  j["branch"] = branch;
  j["accept_threshold"] = table.accept_threshold;
  return j.dump();
}

SqTable SqTableFromJson(std::string_view text) {
  const Json j = Parse(text, "sq table");
  SqTable t;
  t.tau = Field<double>(j, "tau", "sq table");
  t.k = Field<std::size_t>(j, "k", "sq table");
  t.queries = Field<std::vector<std::vector<double>>>(j, "queries", "sq table");
  if (j.contains("branch")) {
    t.branch = Field<std::map<std::string, std::size_t>>(j, "branch", "sq table");
  }
  if (j.contains("accept_threshold")) {
    t.accept_threshold = Field<double>(j, "accept_threshold", "sq table");
  }
  if (t.queries.empty()) throw std::invalid_argument("sq table: no queries");
  return t;
}

std::string EquivalenceReportToJson(const EquivalenceReport& r) {
  Json j;
  j["schema_version"] = kJsonSchemaVersion;
  j["n"] = r.n;
  j["M"] = r.M;
  j["epsilon"] = r.epsilon;
  j["oblivious"] = ExtremesJson(r.oblivious);
  j["adaptive"] = ExtremesJson(r.adaptive);
  j["max_gap"] = r.max_gap;
  j["min_gap"] = r.min_gap;
  j["max_tolerance"] = r.max_tolerance;
  j["min_tolerance"] = r.min_tolerance;
  j["pass_max"] = r.pass_max;
  j["pass_min"] = r.pass_min;
  j["verdict"] = r.pass ? "pass" : "fail";
  return j.dump(2);
}

}  // namespace advlab
