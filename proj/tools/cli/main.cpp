// Copyright 2026 The symconv Authors.
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

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using symconv::cli::RunConfig;

void add_common_flags(CLI::App* sub, RunConfig& cfg,
                      std::optional<std::size_t>& trials,
                      std::optional<double>& tolerance,
                      std::string& precision) {
  sub->add_option("--x-mode", cfg.x_mode, "input padding mode, e.g. ws or ha,wa");
  sub->add_option("--w-mode", cfg.w_mode, "kernel padding mode, e.g. ws or wa,ws");
  sub->add_option("--size", cfg.size, "base length per axis, e.g. 16 or 16,16");
  sub->add_option("--channels", cfg.channels, "number of channels");
  sub->add_option("--radius", cfg.radius, "kernel radius per axis");
  sub->add_option("--trials", trials, "number of random trials");
  sub->add_option("--seed", cfg.seed, "generator seed");
  sub->add_option("--precision", precision, "single or double")
      ->check(CLI::IsMember({"single", "double"}));
  sub->add_option("--tolerance", tolerance, "pass/fail tolerance");
  sub->add_option("--input", cfg.input, "input ICNV or PGM file");
  sub->add_option("--output", cfg.output, "output ICNV or PGM file");
  sub->add_option("--report", cfg.report, "write the JSON report here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symconv: invertible symmetric convolution checks"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::optional<std::size_t> trials;
  std::optional<double> tolerance;
  std::string precision = "double";

  std::map<std::string, CLI::App*> subs;
  for (const char* name : {"roundtrip", "table", "spectrum", "stack", "convert"}) {
    subs[name] = app.add_subcommand(name);
    add_common_flags(subs[name], cfg, trials, tolerance, precision);
  }
  subs["roundtrip"]->description("forward then inverse on random or file input");
  subs["roundtrip"]->add_flag("--expect-failure", cfg.expect_failure,
                              "run a non-invertible pair and require failure");
  subs["table"]->description("check the mode transition table by direct convolution");
  subs["table"]->add_option("--rows", cfg.rows, "comma-separated row ids");
  subs["table"]->add_option("--period", cfg.period, "comma-separated periods");
  subs["spectrum"]->description("per-frequency conditioning of a kernel");
  subs["stack"]->description("depth sweep of stacked layers");
  subs["stack"]->add_option("--depth", cfg.depth, "maximum stack depth");
  subs["convert"]->description("convert between PGM and ICNV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return symconv::cli::kExitUsage;
  }

  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) cfg.command = name;
  }
  cfg.trials = trials;
  cfg.tolerance = tolerance;
  cfg.precision = symconv::parse_precision(precision);

  const auto result = symconv::cli::run_command(cfg);
  const std::string text = result.report.dump(2);
  if (cfg.report.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(cfg.report);
    if (!out) {
      std::cerr << "symconv: cannot write report " << cfg.report << '\n';
      return symconv::cli::kExitDataFormat;
    }
    out << text << '\n';
  }
  if (!result.message.empty()) std::cerr << "symconv: " << result.message << '\n';
  return result.exit_code;
}
