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

// advlab: command-line front end for the experiment harness.
//
// Exit status: 0 pass verdict, 1 fail verdict, 2 error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "advlab/parallel.h"
#include "harness.h"

namespace {

using advlab::harness::ConfigError;

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::vector<std::string> SplitAxes(const std::string& spec) {
  std::vector<std::string> out;
  std::string item;
  for (char ch : spec + ",") {
    if (ch == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else if (ch != ' ') {
      item += ch;
    }
  }
  return out;
}

struct CommonOptions {
  std::string config_file;
  std::vector<std::string> sets;
  std::string seed, trials, output, format;
  unsigned threads = 0;
  std::string plot_axes, plot_table, plot_output;
  std::map<std::string, std::string> params;
};

int Execute(const std::string& subcommand, const CommonOptions& o) {
  advlab::harness::ExperimentConfig config;
  if (!o.config_file.empty()) config = advlab::harness::LoadConfigFile(o.config_file);
  if (!config.subcommand.empty() && config.subcommand != subcommand) {
    throw ConfigError("config file is for '" + config.subcommand + "', not '" + subcommand + "'");
  }
  config.subcommand = subcommand;
  // Command line beats the config file.
  for (const auto& [k, v] : o.params) config.Set(k, v);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    config.Set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!o.seed.empty()) config.Set("seed", o.seed);
  if (!o.trials.empty()) config.Set("trials", o.trials);
  if (!o.output.empty()) config.Set("output", o.output);
  if (!o.format.empty()) config.Set("format", o.format);
  if (o.threads > 0) advlab::SetWorkerCount(o.threads);

  const auto start = std::chrono::steady_clock::now();
  const auto report = advlab::harness::Run(config);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string body = config.format == "json" ? report.ToJson() : report.ToCsv();
  if (config.output.empty()) {
    std::cout << body;
  } else {
    WriteFile(config.output, body);
    if (config.format == "csv") {
      const std::filesystem::path base(config.output);
      for (std::size_t i = 1; i < report.tables.size(); ++i) {
        auto extra = base;
        extra.replace_extension("." + report.tables[i].name + ".csv");
        WriteFile(extra.string(), report.tables[i].ToCsv());
      }
    }
  }
  if (!o.plot_output.empty()) {
    const auto axes = SplitAxes(o.plot_axes);
    WriteFile(o.plot_output, advlab::harness::EmitPlotData(report, axes, o.plot_table));
  }
  // Timing stays out of the report so reruns are byte-identical.
  std::cerr << report.Summary();
  char line[64];
  std::snprintf(line, sizeof line, "  wall-clock %.2fs\n", seconds);
  std::cerr << line;
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"advlab: adaptive vs oblivious adversary experiments"};
  app.require_subcommand(1);
  std::map<std::string, CommonOptions> options;
  std::string chosen;
  for (std::string_view name : advlab::harness::kSubcommands) {
    const std::string sub_name(name);
    CLI::App* sub = app.add_subcommand(sub_name, "run the " + sub_name + " experiment");
    CommonOptions& o = options[sub_name];
    sub->add_option("--config", o.config_file, "flat key=value config file");
    sub->add_option("--set", o.sets, "override a parameter, key=value (repeatable)");
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--trials", o.trials, "Monte Carlo trials");
    sub->add_option("--output", o.output, "report path (default stdout)");
    sub->add_option("--format", o.format, "csv or json");
    sub->add_option("--threads", o.threads, "worker threads (results do not depend on it)");
    sub->add_option("--plot", o.plot_axes, "comma-separated columns for --plot-output");
    sub->add_option("--plot-table", o.plot_table, "table to plot from (default main)");
    sub->add_option("--plot-output", o.plot_output, "write plot CSV here");
    for (std::string_view key : advlab::harness::ParameterKeys(name)) {
      const std::string k(key);
      sub->add_option_function<std::string>(
          "--" + k, [&o, k](const std::string& v) { o.params[k] = v; }, "parameter " + k);
    }
    sub->callback([&chosen, sub_name] { chosen = sub_name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return Execute(chosen, options[chosen]);
  } catch (const std::exception& e) {
    std::cerr << "advlab: error: " << e.what() << "\n";
    return 2;
  }
}
