// Copyright 2026 The nashseek Authors
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

// Experiment runner: samples Cournot instances, runs the seeker over the
// requested topologies and writes CSVs, sidecars, summaries and plots.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nashseek/error.h"
#include "nashseek/experiment.h"
#include "nashseek/io.h"
#include "nashseek/version.h"

namespace {

std::vector<std::string> SplitList(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const std::string& item : raw) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const std::size_t end = item.find(',', start);
      const std::string piece = item.substr(
          start, end == std::string::npos ? std::string::npos : end - start);
      if (!piece.empty()) out.push_back(piece);
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using nashseek::ExperimentConfig;
  CLI::App app{"Distributed Nash equilibrium seeking over directed networks"};
  app.set_version_flag("--version", std::string(nashseek::kVersion));

  std::string config_path, replay_path;
  std::vector<std::string> presets, alphas;
  ExperimentConfig flags;
  app.add_option("--config", config_path,
                 "JSON config file; keys mirror the long flags");
  app.add_option("--replay", replay_path,
                 "run sidecar (.meta.json) to replay");
  app.add_option("--preset", presets,
                 "static-ring, static-star, static-random, "
                 "time-varying-random, custom (comma list)");
  auto* seed = app.add_option("--seed", flags.seed, "base seed");
  app.add_option("--alpha", alphas, "stepsize(s), comma list");
  auto* tol = app.add_option("--tol", flags.tol, "stopping tolerance");
  auto* max_iter = app.add_option("--max-iter", flags.max_iter, "round budget");
  auto* reps = app.add_option("--reps", flags.reps, "repetitions");
  auto* first_rep = app.add_option("--first-rep", flags.first_rep,
                                   "offset of the first repetition");
  auto* out_dir = app.add_option("--out-dir", flags.out_dir, "output folder");
  auto* graph_file = app.add_option("--graph-file", flags.graph_file,
                                    "edge list for the custom preset");
  auto* spec_file = app.add_option("--spec-file", flags.spec_file,
                                   "fixed Cournot instance (JSON)");
  auto* plots = app.add_flag("--emit-plots", flags.emit_plots, "write SVGs");
  auto* network = app.add_flag("--emit-network", flags.emit_network,
                               "write edge lists, weights and pi per run");
  auto* firms = app.add_option("--firms", flags.num_firms, "number of firms");
  auto* markets = app.add_option("--markets", flags.num_markets, "markets");
  auto* out_degree = app.add_option("--out-degree", flags.out_degree,
                                    "out-degree of random graphs");
  auto* redraw = app.add_option("--redraw-period", flags.redraw_period,
                                "rounds between random graph redraws");
  auto* csv_limit = app.add_option("--csv-rep-limit", flags.csv_rep_limit,
                                   "per-round CSVs only for reps below this");
  auto* threads = app.add_option("--threads", flags.threads,
                                 "worker threads, 0 = hardware");
  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig config;
    if (!replay_path.empty()) {
      const auto meta =
          nlohmann::json::parse(nashseek::ReadTextFile(replay_path));
      if (!meta.contains("replay_config")) {
        throw nashseek::InputError("sidecar has no replay_config");
      }
      config = nashseek::ConfigFromJson(meta["replay_config"].dump());
    }
    if (!config_path.empty()) {
      config = nashseek::ConfigFromJson(nashseek::ReadTextFile(config_path),
                                        config);
    }
    // Explicit flags win over files.
    if (!presets.empty()) config.presets = SplitList(presets);
    if (!alphas.empty()) {
      config.alphas.clear();
      for (const std::string& a : SplitList(alphas)) {
        try {
          config.alphas.push_back(std::stod(a));
        } catch (const std::exception&) {
          throw nashseek::InputError("bad --alpha value '" + a + "'");
        }
      }
    }
    if (*seed) config.seed = flags.seed;
    if (*tol) config.tol = flags.tol;
    if (*max_iter) config.max_iter = flags.max_iter;
    if (*reps) config.reps = flags.reps;
    if (*first_rep) config.first_rep = flags.first_rep;
    if (*out_dir) config.out_dir = flags.out_dir;
    if (*graph_file) config.graph_file = flags.graph_file;
    if (*spec_file) config.spec_file = flags.spec_file;
    if (*plots) config.emit_plots = flags.emit_plots;
    if (*network) config.emit_network = flags.emit_network;
    if (*firms) config.num_firms = flags.num_firms;
    if (*markets) config.num_markets = flags.num_markets;
    if (*out_degree) config.out_degree = flags.out_degree;
    if (*redraw) config.redraw_period = flags.redraw_period;
    if (*csv_limit) config.csv_rep_limit = flags.csv_rep_limit;
    if (*threads) config.threads = flags.threads;

    const nashseek::ExperimentResult result =
        nashseek::RunExperiment(config, &std::cout);
    const int code = nashseek::ExitCode(result);
    if (code != 0) {
      std::cerr << "some runs hit the round budget before the tolerance\n";
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
