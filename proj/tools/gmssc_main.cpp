// Copyright 2026 The gmssc Authors
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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gmssc/harness.hpp"
#include "gmssc/instance_io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kDeskScaleError = 2;
constexpr int kIoError = 3;

bool verbose_logging() {
  const char* level = std::getenv("GMSSC_LOG");
  return level != nullptr && std::string(level) == "debug";
}

void log_line(const std::string& message) {
  if (verbose_logging()) std::cerr << "[gmssc] " << message << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gmssc::IoError("cannot read: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_command(const std::string& config_path, const std::string& preset,
                const std::string& output_override) {
  gmssc::ExperimentConfig cfg;
  if (!preset.empty()) {
    if (preset == "two-anchors")
      cfg = gmssc::preset_two_anchors();
    else if (preset == "five-anchors")
      cfg = gmssc::preset_five_anchors();
    else
      throw gmssc::InvalidInput("unknown preset: " + preset);
  } else if (!config_path.empty()) {
    cfg = gmssc::parse_config(read_file(config_path));
  } else {
    throw gmssc::InvalidInput("run needs --config or --preset");
  }
  if (!output_override.empty()) cfg.output = output_override;

  log_line("running " + std::to_string(cfg.algorithms.size()) +
           " algorithm(s) x " + std::to_string(cfg.seeds.size()) +
           " seed(s), T = " + std::to_string(cfg.rounds));
  const gmssc::ResultsTable table = gmssc::run_experiment(cfg);
  gmssc::emit_csv(table, cfg.output);
  std::cout << gmssc::summarize(table);
  std::cout << "wrote " << table.rows.size() << " rows to " << cfg.output
            << "\n";
  if (table.rows.empty() && !table.errors.empty()) {
    for (const auto& err : table.errors)
      if (err.kind == gmssc::ExperimentError::Kind::kDeskScale)
        return kDeskScaleError;
    for (const auto& err : table.errors)
      if (err.kind == gmssc::ExperimentError::Kind::kIo) return kIoError;
    return kConfigError;
  }
  return kOk;
}

int generate_command(int n, std::vector<int> anchors, int extra, int rounds,
                     std::uint64_t seed, const std::string& out_path) {
  const gmssc::Instance inst =
      gmssc::generate_anchored(n, anchors, extra, rounds, seed);
  const std::string text = gmssc::serialize_instance(inst);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw gmssc::IoError("cannot write: " + out_path);
  out << text;
  if (!out) throw gmssc::IoError("write failed: " + out_path);
  std::cout << "wrote " << inst.rounds() << " requests over n = " << inst.n
            << " to " << out_path << "\n";
  return kOk;
}

int summarize_command(const std::string& in_path) {
  const gmssc::ResultsTable table = gmssc::parse_csv(read_file(in_path));
  std::cout << gmssc::summarize(table);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online learning algorithms for (generalized) min-sum set cover"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path, preset, output_override;
  run->add_option("--config", config_path, "JSON experiment configuration");
  run->add_option("--preset", preset, "built-in setup: two-anchors or five-anchors");
  run->add_option("--output", output_override, "override the output CSV path");

  auto* generate =
      app.add_subcommand("generate", "write an anchored instance file");
  int n = 20, extra = 4, rounds = 5000;
  std::uint64_t seed = 1;
  std::vector<int> anchors{1, 2};
  std::string out_path = "instance.json";
  generate->add_option("--n", n, "universe size");
  generate->add_option("--anchors", anchors, "anchor items")->delimiter(',');
  generate->add_option("--extra", extra, "companions per request");
  generate->add_option("--T", rounds, "number of requests");
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--out", out_path, "output path");

  auto* summarize = app.add_subcommand("summarize", "summarize a results CSV");
  std::string in_path;
  summarize->add_option("--in", in_path, "results CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) return run_command(config_path, preset, output_override);
    if (generate->parsed())
      return generate_command(n, anchors, extra, rounds, seed, out_path);
    if (summarize->parsed()) return summarize_command(in_path);
  } catch (const gmssc::DeskScaleError& e) {
    std::cerr << "desk-scale limit: " << e.what() << "\n";
    return kDeskScaleError;
  } catch (const gmssc::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}
