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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "advlab/distribution.h"
#include "advlab/equivalence.h"
#include "advlab/hypercube.h"
#include "advlab/json_io.h"
#include "advlab/noise_model.h"
#include "advlab/sq_engine.h"
#include "advlab/subsampling.h"
#include "json.hpp"

#ifndef ADVLAB_BUILD_ID
#define ADVLAB_BUILD_ID "unknown"
#endif

namespace advlab::harness {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kCouplingKeys[] = {"m", "M", "domain_size", "weights", "exact"};
constexpr std::string_view kSqKeys[] = {"mode", "domain_size", "weights", "model", "eta",
                                        "labels", "tau", "n", "psi", "table"};
constexpr std::string_view kEquivKeys[] = {"domain_size", "n", "eps", "eta", "p",
                                           "weights", "M", "algorithms", "oblivious"};
constexpr std::string_view kLowerKeys[] = {"n", "m", "d", "eta", "eps", "k", "t",
                                           "search", "max_d", "frontier", "frontier_c1"};
constexpr std::string_view kMixtureKeys[] = {"models", "domain_size", "labels"};

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> SplitList(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double ParseDouble(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw ConfigError("parameter " + key + ": not a number: '" + text + "'");
  }
  return v;
}

uint64_t ParseUint(const std::string& key, const std::string& text) {
  // Accept 1e5 style as long as the value is a whole number.
  const double v = ParseDouble(key, text);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e18) {
    throw ConfigError("parameter " + key + ": not a non-negative integer: '" + text + "'");
  }
  return static_cast<uint64_t>(v);
}

std::string Cell(double v) { return FormatNumber(v); }
std::string Cell(uint64_t v) { return std::to_string(v); }
std::string Cell(bool v) { return v ? "1" : "0"; }

DiscreteDistribution BaseDistribution(const ExperimentConfig& c, uint64_t default_size) {
  if (c.parameters.count("weights")) {
    const auto w = c.DoubleList("weights", {});
    if (w.empty()) throw ConfigError("weights: empty list");
    return DiscreteDistribution::FromUnnormalized(Domain(w.size()), w);
  }
  return DiscreteDistribution::Uniform(Domain(c.Uint("domain_size", default_size)));
}

uint64_t Trials(const ExperimentConfig& c, uint64_t fallback) {
  return c.trials == 0 ? fallback : c.trials;
}

// Zips two lists, broadcasting a singleton.
std::vector<std::pair<uint64_t, uint64_t>> Zip(const std::vector<uint64_t>& a,
                                               const std::vector<uint64_t>& b) {
  if (a.empty() || b.empty()) throw ConfigError("empty parameter list");
  if (a.size() != b.size() && a.size() != 1 && b.size() != 1) {
    throw ConfigError("list parameters have different lengths");
  }
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<std::pair<uint64_t, uint64_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(a[a.size() == 1 ? 0 : i], b[b.size() == 1 ? 0 : i]);
  }
  return out;
}

void AddProvenance(RunReport& r) {
  for (auto& table : r.tables) {
    const bool has_seed =
        std::find(table.columns.begin(), table.columns.end(), "seed") != table.columns.end();
    if (!has_seed) {
      table.columns.push_back("seed");
      for (auto& row : table.rows) row.push_back(std::to_string(r.seed));
    }
    table.columns.push_back("build");
    for (auto& row : table.rows) row.push_back(r.build_id);
  }
}

RunReport RunCoupling(const ExperimentConfig& c) {
  RunReport r;
  const auto d = BaseDistribution(c, uint64_t{1} << 20);
  const uint64_t trials = Trials(c, 100000);
  const bool exact = c.Bool("exact", true);
  ReportTable t{"coupling",
                {"m", "M", "bound", "empirical_neq_rate", "standard_error",
                 "exact_tv_or_null", "trials", "seed"},
                {}};
  r.pass = true;
  for (const auto& [m, M] : Zip(c.UintList("m", {2}), c.UintList("M", {4}))) {
    const double tuples = std::pow(static_cast<double>(d.domain().size()), static_cast<double>(m));
    const bool do_exact = exact && m <= 10 && tuples <= 1e6;
    const auto rep = TvBoundCheck(d, m, M, trials, c.seed, do_exact);
    const bool ok = rep.empirical_neq_rate <= rep.bound + 3.0 * rep.standard_error &&
                    (!rep.exact_tv || *rep.exact_tv <= rep.bound + kProbabilityTolerance);
    r.pass = r.pass && ok;
    t.rows.push_back({Cell(m), Cell(M), Cell(rep.bound), Cell(rep.empirical_neq_rate),
                      Cell(rep.standard_error),
                      rep.exact_tv ? Cell(*rep.exact_tv) : std::string("null"),
                      Cell(rep.trials), Cell(rep.seed)});
  }
  r.tables.push_back(std::move(t));
  r.summary.emplace_back("criterion", "rate <= C(m,2)/M + 3 se; exact TV <= C(m,2)/M");
  return r;
}

RunReport RunSqConcentration(const ExperimentConfig& c) {
  RunReport r;
  const auto d = BaseDistribution(c, 10);
  const auto kind = ParseNoiseKind(c.String("model", "additive"));
  const auto model = NoiseModel::Make(kind, c.Double("eta", 0.1), c.Uint("labels", 0));
  const double tau = c.Double("tau", 0.2);
  const uint64_t trials = Trials(c, 10000);
  const auto ns = c.UintList("n", {250, 500, 1000, 2000});
  ReportTable t{"sq-concentration",
                {"n", "empirical_failure", "standard_error", "theory_bound", "trials", "seed"},
                {}};
  r.pass = true;
  const std::string mode = c.String("mode", "single");
  if (mode == "single") {
    std::vector<double> phi;
    if (c.parameters.count("psi")) {
      phi = c.DoubleList("psi", {});
    } else {
      for (std::size_t x = 0; x < d.domain().size(); ++x) {
        phi.push_back(2 * x < d.domain().size() ? 1.0 : -1.0);
      }
    }
    const StatisticalQuery psi(phi, tau);
    const double threshold = ObliviousQueryRange(psi, d, model).hi;
    r.summary.emplace_back("threshold", FormatNumber(threshold));
    double previous = 2.0;
    for (uint64_t n : ns) {
      const auto row = SingleQueryExceedance(psi, d, model, threshold, n, trials, c.seed);
      const bool ok = row.rate <= row.bound + 3.0 * row.standard_error && row.rate <= previous;
      previous = row.rate;
      r.pass = r.pass && ok;
      t.rows.push_back({Cell(n), Cell(row.rate), Cell(row.standard_error), Cell(row.bound),
                        Cell(row.trials), Cell(row.seed)});
    }
    r.summary.emplace_back("criterion", "rate <= bound + 3 se, non-increasing in n");
  } else if (mode == "table") {
    const std::string path = c.String("table", "");
    if (path.empty()) throw ConfigError("sq-concentration: mode=table needs table=<file>");
    std::ifstream in(path);
    if (!in) throw ConfigError("sq-concentration: cannot read " + path);
    std::stringstream text;
    text << in.rdbuf();
    const auto alg = SqAlgorithm::FromTable(SqTableFromJson(text.str()));
    for (uint64_t n : ns) {
      const auto row = SqConcentrationExperiment(alg, d, model, n, trials, c.seed);
      r.pass = r.pass && row.empirical_failure <= row.theory_bound + 3.0 * row.standard_error;
      t.rows.push_back({Cell(n), Cell(row.empirical_failure), Cell(row.standard_error),
                        Cell(row.theory_bound), Cell(row.trials), Cell(row.seed)});
    }
    r.summary.emplace_back("criterion", "failure <= bound + 3 se");
  } else {
    throw ConfigError("sq-concentration: mode must be single or table");
  }
  r.tables.push_back(std::move(t));
  return r;
}

RunReport RunAdditiveEquiv(const ExperimentConfig& c) {
  RunReport r;
  const uint64_t n = c.Uint("n", 2);
  const double eps = c.Double("eps", 0.3);
  const auto model = NoiseModel::Additive(c.Double("eta", 1.0 / 3.0));
  std::vector<DiscreteDistribution> ds;
  if (c.parameters.count("weights")) {
    ds.push_back(BaseDistribution(c, 2));
  } else {
    for (double p : c.DoubleList("p", {0.3, 0.5, 0.8})) ds.push_back(DiscreteDistribution::Bernoulli(p));
  }
  const std::size_t size = ds.front().domain().size();
  const double inputs = std::pow(static_cast<double>(size), static_cast<double>(n));
  if (inputs > 64) throw ConfigError("additive-equiv: |X|^n must be at most 64");
  std::vector<uint64_t> tables;
  const auto names = c.StringList("algorithms", {"all"});
  if (names.size() == 1 && names[0] == "all") {
    if (inputs > 4) throw ConfigError("additive-equiv: algorithms=all needs |X|^n <= 4");
    for (uint64_t i = 0; i < (uint64_t{1} << static_cast<int>(inputs)); ++i) tables.push_back(i);
  } else {
    for (const auto& name : names) tables.push_back(ParseUint("algorithms", name));
  }
  ObliviousSearch os;
  os.epsilon = eps;
  os.seed = c.seed;
  const std::string om = c.String("oblivious", "family_exhaustive");
  if (om == "family_exhaustive") {
    os.mode = ObliviousMode::kFamilyExhaustive;
  } else if (om == "grid") {
    os.mode = ObliviousMode::kGrid;
  } else {
    throw ConfigError("additive-equiv: oblivious must be family_exhaustive or grid");
  }
  AdaptiveSearch as;
  as.mode = AdaptiveMode::kExhaustive;
  as.seed = c.seed;
  ReportTable t{"additive-equiv",
                {"algorithm", "distribution", "M", "oblivious_max", "adaptive_max", "max_gap",
                 "oblivious_min", "adaptive_min", "min_gap", "tolerance", "verdict"},
                {}};
  Json reports = Json::array();
  r.pass = true;
  uint64_t failures = 0;
  for (uint64_t M : c.UintList("M", {200})) {
    for (uint64_t id : tables) {
      const auto alg = BlackBoxAlgorithm::FromTruthTable(size, n, id);
      for (const auto& d : ds) {
        const auto rep = CheckEquivalence(alg, d, model, M, eps, os, as);
        if (!rep.pass) ++failures;
        r.pass = r.pass && rep.pass;
        t.rows.push_back({alg.name(), "w" + FormatNumber(d[size - 1]), Cell(M),
                          Cell(rep.oblivious.max), Cell(rep.adaptive.max), Cell(rep.max_gap),
                          Cell(rep.oblivious.min), Cell(rep.adaptive.min), Cell(rep.min_gap),
                          Cell(rep.max_tolerance), rep.pass ? "pass" : "fail"});
        Json j = Json::parse(EquivalenceReportToJson(rep));
        j["algorithm"] = alg.name();
        j["distribution"] = Json::parse(DistributionToJson(d));
        reports.push_back(std::move(j));
      }
    }
  }
  r.tables.push_back(std::move(t));
  r.summary.emplace_back("failures", std::to_string(failures));
  r.summary.emplace_back("reports", reports.dump());
  return r;
}

RunReport RunLowerbound(const ExperimentConfig& c) {
  RunReport r;
  LowerBoundConfig lb;
  lb.n = c.Uint("n", 64);
  lb.m = c.Uint("m", 32);
  lb.d = c.Uint("d", 500);
  lb.eta = c.Double("eta", 0.5);
  lb.eps = c.Double("eps", 0.2);
  lb.k = c.Uint("k", 5);
  lb.t = static_cast<int64_t>(c.Double("t", 0));
  lb.trials = Trials(c, 200);
  lb.seed = c.seed;
  std::optional<SeparationReport> rep;
  if (c.Bool("search", false)) {
    SearchBudget budget;
    budget.max_d = c.Uint("max_d", 16384);
    budget.confirm_trials = lb.trials;
    budget.seed = c.seed;
    auto found = ParameterSearch(lb.n, lb.eta, lb.eps, budget);
    r.summary.emplace_back("search_candidates", std::to_string(found.candidates));
    r.summary.emplace_back("search_screened", std::to_string(found.screened));
    ReportTable misses{"near_misses", {"m", "k", "d", "c1", "c2", "oblivious_bound",
                                       "screen_rate", "outcome"}, {}};
    for (const auto& m : found.near_misses) {
      misses.rows.push_back({Cell(m.config.m), Cell(uint64_t{m.config.k}), Cell(uint64_t{m.config.d}),
                             Cell(m.c1), Cell(m.c2), Cell(m.oblivious_bound),
                             Cell(m.screen_rate), m.outcome});
    }
    if (found.witness) {
      lb = found.witness->config;
      rep = std::move(found.witness_report);
      r.summary.emplace_back("witness_c1", FormatNumber(found.witness->c1));
      r.summary.emplace_back("witness_c2", FormatNumber(found.witness->c2));
    } else {
      r.summary.emplace_back("search", "no witness within budget");
    }
    r.tables.push_back(std::move(misses));
  } else {
    rep = RunSeparation(lb);
  }
  ReportTable t{"lowerbound",
                {"trial", "clean_accept", "oblivious_bound", "adaptive_accept",
                 "point_mass_accept", "uniform_accept", "planted_accept"},
                {}};
  if (rep) {
    for (const auto& row : rep->rows) {
      t.rows.push_back({Cell(row.trial), Cell(row.clean_accept), Cell(rep->oblivious_bound),
                        Cell(row.adaptive_accept), Cell(row.point_mass_accept),
                        Cell(row.uniform_accept), Cell(row.planted_accept)});
    }
    r.summary.emplace_back("n", std::to_string(lb.n));
    r.summary.emplace_back("m", std::to_string(lb.m));
    r.summary.emplace_back("d", std::to_string(lb.d));
    r.summary.emplace_back("k", std::to_string(lb.k));
    r.summary.emplace_back("t", std::to_string(rep->t));
    r.summary.emplace_back("centers", std::to_string(rep->centers));
    r.summary.emplace_back("clean_rate", FormatNumber(rep->clean_rate));
    r.summary.emplace_back("oblivious_empirical_max", FormatNumber(rep->ObliviousEmpiricalMax()));
    r.summary.emplace_back("oblivious_bound", FormatNumber(rep->oblivious_bound));
    r.summary.emplace_back("adaptive_rate", FormatNumber(rep->adaptive_rate));
    r.summary.emplace_back("attack_feasible", rep->attack_feasible ? "yes" : "no");
    for (const auto& w : rep->warnings) r.summary.emplace_back("warning", w);
  }
  r.tables.insert(r.tables.begin(), std::move(t));
  r.pass = rep && rep->separated;
  r.verdict = r.pass ? "separated" : "not separated";

  if (c.parameters.count("frontier")) {
    const auto ms = c.UintList("frontier", {});
    const double c1 = c.Double(
        "frontier_c1", static_cast<double>(lb.k) * static_cast<double>(lb.n) /
                           (static_cast<double>(lb.m) * std::log(static_cast<double>(lb.n))));
    LowerBoundConfig base = lb;
    base.trials = std::min<uint64_t>(lb.trials, 100);
    ReportTable f{"frontier",
                  {"m", "k", "d", "t", "adaptive_rate", "oblivious_bound", "gap", "separated"},
                  {}};
    for (const auto& row : FrontierSweep(base, c1, ms)) {
      f.rows.push_back({Cell(row.m), Cell(uint64_t{row.k}), Cell(uint64_t{row.d}),
                        std::to_string(row.t), Cell(row.adaptive_rate),
                        Cell(row.oblivious_bound), Cell(row.gap), Cell(row.separated)});
    }
    r.tables.push_back(std::move(f));
  }
  return r;
}

RunReport RunMixturesCheck(const ExperimentConfig& c) {
  RunReport r;
  const uint64_t trials = Trials(c, 100000);
  const uint64_t size = c.Uint("domain_size", 8);
  const uint64_t labels = c.Uint("labels", 2);
  ReportTable t{"mixtures-check",
                {"model", "domain_size", "trials", "finite_trials", "violations",
                 "max_violation"},
                {}};
  r.pass = true;
  const auto models = c.StringList(
      "models", {"additive", "subtractive", "nasty", "nasty_classification", "malicious"});
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto kind = ParseNoiseKind(models[i]);
    const auto model = NoiseModel::Make(
        kind, 0.2, kind == NoiseKind::kNastyClassification ? labels : 0);
    RandomSource rng(c.seed, i);
    const auto rep = VerifyClosedUnderMixtures(model, size, trials, rng);
    r.pass = r.pass && rep.violations == 0;
    t.rows.push_back({models[i], Cell(size), Cell(rep.trials), Cell(rep.finite_trials),
                      Cell(rep.violations), Cell(rep.max_violation)});
  }
  r.tables.push_back(std::move(t));
  r.summary.emplace_back("criterion", "zero violations per model");
  return r;
}

Json CellJson(const std::string& cell) {
  if (cell == "null") return nullptr;
  std::size_t used = 0;
  try {
    const double v = std::stod(cell, &used);
    if (used == cell.size()) return v;
  } catch (const std::exception&) {
  }
  return cell;
}

std::string CsvEscape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::span<const std::string_view> ParameterKeys(std::string_view subcommand) {
  if (subcommand == "coupling") return kCouplingKeys;
  if (subcommand == "sq-concentration") return kSqKeys;
  if (subcommand == "additive-equiv") return kEquivKeys;
  if (subcommand == "lowerbound") return kLowerKeys;
  if (subcommand == "mixtures-check") return kMixtureKeys;
  throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
}

std::string ExperimentConfig::String(const std::string& key,
                                     const std::string& fallback) const {
  auto it = parameters.find(key);
  return it == parameters.end() ? fallback : it->second;
}

double ExperimentConfig::Double(const std::string& key, double fallback) const {
  auto it = parameters.find(key);
  return it == parameters.end() ? fallback : ParseDouble(key, it->second);
}

uint64_t ExperimentConfig::Uint(const std::string& key, uint64_t fallback) const {
  auto it = parameters.find(key);
  return it == parameters.end() ? fallback : ParseUint(key, it->second);
}

bool ExperimentConfig::Bool(const std::string& key, bool fallback) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) return fallback;
  if (it->second == "1" || it->second == "true" || it->second == "yes") return true;
  if (it->second == "0" || it->second == "false" || it->second == "no") return false;
  throw ConfigError("parameter " + key + ": not a boolean: '" + it->second + "'");
}

std::vector<double> ExperimentConfig::DoubleList(const std::string& key,
                                                 const std::vector<double>& fallback) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) return fallback;
  std::vector<double> out;
  for (const auto& item : SplitList(it->second)) out.push_back(ParseDouble(key, item));
  return out;
}

std::vector<uint64_t> ExperimentConfig::UintList(const std::string& key,
                                                 const std::vector<uint64_t>& fallback) const {
  auto it = parameters.find(key);
  if (it == parameters.end()) return fallback;
  std::vector<uint64_t> out;
  for (const auto& item : SplitList(it->second)) out.push_back(ParseUint(key, item));
  return out;
}

std::vector<std::string> ExperimentConfig::StringList(
    const std::string& key, const std::vector<std::string>& fallback) const {
  auto it = parameters.find(key);
  return it == parameters.end() ? fallback : SplitList(it->second);
}

void ExperimentConfig::Set(const std::string& key, const std::string& value) {
  if (key == "subcommand") {
    subcommand = value;
  } else if (key == "seed") {
    seed = ParseUint(key, value);
  } else if (key == "trials") {
    trials = ParseUint(key, value);
  } else if (key == "output") {
    output = value;
  } else if (key == "format") {
    format = value;
  } else {
    parameters[key] = value;
  }
}

void ExperimentConfig::Validate() const {
  const auto keys = ParameterKeys(subcommand);
  for (const auto& [key, value] : parameters) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(subcommand + ": unknown parameter '" + key + "'");
    }
  }
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
}

ExperimentConfig ParseConfigText(std::string_view text) {
  ExperimentConfig config;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = Trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    config.Set(key, Trim(std::string_view(line).substr(eq + 1)));
  }
  return config;
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream text;
  text << in.rdbuf();
  return ParseConfigText(text.str());
}

std::string ReportTable::ToCsv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += (i ? "," : "") + CsvEscape(columns[i]);
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + CsvEscape(row[i]);
    out += "\n";
  }
  return out;
}

const ReportTable& RunReport::Table(std::string_view name) const {
  for (const auto& t : tables) {
    if (t.name == name) return t;
  }
  throw ConfigError("report has no table '" + std::string(name) + "'");
}

std::string RunReport::ToCsv() const {
  return tables.empty() ? std::string() : tables.front().ToCsv();
}

std::string RunReport::ToJson() const {
  Json j;
  j["schema_version"] = kJsonSchemaVersion;
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  j["build"] = build_id;
  Json config = Json::object();
  for (const auto& [k, v] : config_echo) config[k] = v;
  j["config"] = config;
  Json tables_json = Json::array();
  for (const auto& t : tables) {
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      Json r = Json::array();
      for (const auto& cell : row) r.push_back(CellJson(cell));
      rows.push_back(std::move(r));
    }
    tables_json.push_back(Json{{"name", t.name}, {"columns", t.columns}, {"rows", rows}});
  }
  j["tables"] = tables_json;
  Json summary_json = Json::array();
  for (const auto& [k, v] : summary) {
    summary_json.push_back(Json{{"key", k}, {"value", k == "reports" ? Json::parse(v) : Json(v)}});
  }
  j["summary"] = summary_json;
  j["pass"] = pass;
  j["verdict"] = verdict;
  return j.dump(2) + "\n";
}

std::string RunReport::Summary() const {
  std::ostringstream out;
  out << subcommand << " (seed " << seed << ", build " << build_id << ")\n";
  std::size_t width = 7;
  for (const auto& [k, v] : summary) {
    if (k != "reports") width = std::max(width, k.size());
  }
  for (const auto& [k, v] : summary) {
    if (k == "reports") continue;
    out << "  " << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  }
  // Per-setting verdict table for the equivalence experiment.
  if (subcommand == "additive-equiv" && !tables.empty()) {
    out << "  algorithm      dist   M     |max gap|  |min gap|  tol     verdict\n";
    for (const auto& row : tables.front().rows) {
      char line[160];
      std::snprintf(line, sizeof line, "  %-14s %-6s %-5s %-10s %-10s %-7s %s\n",
                    row[0].c_str(), row[1].c_str(), row[2].c_str(), row[5].c_str(),
                    row[8].c_str(), row[9].c_str(), row[10].c_str());
      out << line;
    }
  }
  out << "  verdict" << std::string(width - 5, ' ') << verdict << "\n";
  return out.str();
}

std::string BuildId() { return ADVLAB_BUILD_ID; }

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(10);
  out << v;
  return out.str();
}

RunReport Run(const ExperimentConfig& config) {
  config.Validate();
  RunReport r;
  try {
    if (config.subcommand == "coupling") {
      r = RunCoupling(config);
    } else if (config.subcommand == "sq-concentration") {
      r = RunSqConcentration(config);
    } else if (config.subcommand == "additive-equiv") {
      r = RunAdditiveEquiv(config);
    } else if (config.subcommand == "lowerbound") {
      r = RunLowerbound(config);
    } else {
      r = RunMixturesCheck(config);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(config.subcommand + ": " + e.what());
  }
  r.subcommand = config.subcommand;
  r.seed = config.seed;
  r.build_id = BuildId();
  r.config_echo.emplace_back("subcommand", config.subcommand);
  r.config_echo.emplace_back("seed", std::to_string(config.seed));
  r.config_echo.emplace_back("trials", std::to_string(config.trials));
  for (const auto& [k, v] : config.parameters) r.config_echo.emplace_back(k, v);
  if (r.verdict.empty()) r.verdict = r.pass ? "pass" : "fail";
  AddProvenance(r);
  return r;
}

std::string EmitPlotData(const RunReport& report, std::span<const std::string> axes,
                         std::string_view table) {
  if (report.tables.empty()) throw ConfigError("EmitPlotData: empty report");
  const ReportTable& t = table.empty() ? report.tables.front() : report.Table(table);
  if (axes.empty()) return t.ToCsv();
  std::vector<std::size_t> index;
  for (const auto& axis : axes) {
    auto it = std::find(t.columns.begin(), t.columns.end(), axis);
    if (it == t.columns.end()) throw ConfigError("EmitPlotData: unknown axis '" + axis + "'");
    index.push_back(static_cast<std::size_t>(it - t.columns.begin()));
  }
  ReportTable out{t.name, {axes.begin(), axes.end()}, {}};
  for (const auto& row : t.rows) {
    std::vector<std::string> cells;
    for (std::size_t i : index) cells.push_back(row[i]);
    out.rows.push_back(std::move(cells));
  }
  return out.ToCsv();
}

}  // namespace advlab::harness
