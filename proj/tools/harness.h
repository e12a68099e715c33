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

// Experiment orchestration behind the advlab command-line tool.

#ifndef ADVLAB_TOOLS_HARNESS_H_
#define ADVLAB_TOOLS_HARNESS_H_

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace advlab::harness {

// Malformed or incomplete configuration; the CLI maps it to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::string_view kSubcommands[] = {
    "coupling", "sq-concentration", "additive-equiv", "lowerbound", "mixtures-check"};

// Parameter keys accepted by a subcommand (besides seed/trials/output/format).
std::span<const std::string_view> ParameterKeys(std::string_view subcommand);

struct ExperimentConfig {
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  uint64_t seed = 1;
  // 0 selects the subcommand default.
  uint64_t trials = 0;
  std::string output;
  std::string format = "csv";

  // Accessors throw ConfigError on unparsable values.
  std::string String(const std::string& key, const std::string& fallback) const;
  double Double(const std::string& key, double fallback) const;
  uint64_t Uint(const std::string& key, uint64_t fallback) const;
  bool Bool(const std::string& key, bool fallback) const;
  std::vector<double> DoubleList(const std::string& key,
                                 const std::vector<double>& fallback) const;
  std::vector<uint64_t> UintList(const std::string& key,
                                 const std::vector<uint64_t>& fallback) const;
  std::vector<std::string> StringList(const std::string& key,
                                      const std::vector<std::string>& fallback) const;

  // Sets one key; seed, trials, output, format and subcommand are fields,
  // everything else goes to `parameters`.
  void Set(const std::string& key, const std::string& value);

  // Unknown subcommand or parameter keys.
  void Validate() const;
};

// Flat "key = value" text; '#' starts a comment. Later lines win.
ExperimentConfig ParseConfigText(std::string_view text);
ExperimentConfig LoadConfigFile(const std::string& path);

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string ToCsv() const;
};

struct RunReport {
  std::string subcommand;
  uint64_t seed = 0;
  std::string build_id;
  std::vector<std::pair<std::string, std::string>> config_echo;
  // tables[0] is the main per-trial or per-setting table.
  std::vector<ReportTable> tables;
  std::vector<std::pair<std::string, std::string>> summary;
  bool pass = false;
  std::string verdict;

  const ReportTable& Table(std::string_view name) const;
  std::string ToCsv() const;
  std::string ToJson() const;
  // Human-readable verdict table.
  std::string Summary() const;
};

// git-describe style identifier baked in at configure time.
std::string BuildId();

RunReport Run(const ExperimentConfig& config);

// Selected columns of a report table as CSV. Empty axes pass the table
// through unchanged. Unknown axis names throw ConfigError.
std::string EmitPlotData(const RunReport& report,
                         std::span<const std::string> axes,
                         std::string_view table = "");

// Fixed-precision decimal formatting used in every report.
std::string FormatNumber(double v);

}  // namespace advlab::harness

#endif  // ADVLAB_TOOLS_HARNESS_H_
