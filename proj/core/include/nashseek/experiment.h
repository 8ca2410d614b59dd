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

#ifndef NASHSEEK_EXPERIMENT_H_
#define NASHSEEK_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nashseek/certify.h"
#include "nashseek/cournot.h"
#include "nashseek/graph.h"
#include "nashseek/mixing.h"
#include "nashseek/seeker.h"

namespace nashseek {

enum class Topology {
  kStaticRing,
  kStaticStar,
  kStaticRandom,
  kTimeVaryingRandom,
  kCustom,
};

std::string TopologyName(Topology t);
// Accepts the names printed by TopologyName. Throws InputError otherwise.
Topology ParseTopology(const std::string& name);

struct ExperimentConfig {
  std::vector<std::string> presets = {"static-ring"};
  std::uint64_t seed = 1;
  std::vector<double> alphas = {0.05};
  double tol = 1e-3;
  std::int64_t max_iter = 100000;
  int reps = 1;
  int first_rep = 0;  // instance seeds are seed + first_rep + r
  std::string out_dir = "out";
  std::string graph_file;  // edge list for the custom preset
  std::string spec_file;   // fixed game instance instead of sampling
  bool emit_plots = false;
  bool emit_network = false;  // edge lists, weights and pi per run
  int num_firms = 20;
  int num_markets = 7;
  int max_markets_per_firm = 2;
  int out_degree = 4;
  int redraw_period = 1;
  int csv_rep_limit = 10;  // per-round CSVs for rep indices below this
  int threads = 0;         // 0 picks the hardware concurrency

  // Throws InputError on an invalid combination.
  void Validate() const;
};

// JSON object with one key per field above; reading accepts any subset and
// rejects unknown keys.
std::string ConfigToJson(const ExperimentConfig& config);
ExperimentConfig ConfigFromJson(const std::string& text,
                                const ExperimentConfig& base = {});

// Seeds derived from the instance seed for the random topologies.
std::uint64_t InstanceSeed(const ExperimentConfig& config, int rep);
std::uint64_t GraphSeed(std::uint64_t instance_seed, Topology t);

GraphSequence MakeTopology(Topology t, int m, int out_degree,
                           std::uint64_t graph_seed, int redraw_period,
                           const std::vector<DirectedGraph>& custom = {});

// The instance with its equilibrium.
struct Instance {
  CournotSpec spec;
  GameConstants constants;
  Vector equilibrium;
};

// Samples (or loads) the rep's game and solves for its equilibrium to 1e-10.
Instance MakeInstance(const ExperimentConfig& config, int rep);

// Everything computed for one (instance, topology, alpha) run.
struct TopologyRun {
  RunRecord record;
  PiSequence pi;
  EtaReport eta;
  StepsizeCertificate certificate;
  double mixing_delta = 0.0;
};

TopologyRun RunTopology(const Instance& instance, const GraphSequence& graphs,
                        double alpha, double tol, std::int64_t max_iter);

struct RunSummary {
  std::string preset;
  double alpha = 0.0;
  int rep = 0;
  std::uint64_t instance_seed = 0;
  std::int64_t iterations = 0;
  double wall_seconds = 0.0;
  double err_inf = 0.0;
  double dz_inf = 0.0;
  StopReason stop = StopReason::kBudget;
  bool certified = false;
  double lambda_max = 0.0;
  std::string csv_path;  // empty when no CSV was written
};

struct ExperimentResult {
  std::vector<RunSummary> runs;
  std::vector<std::string> plot_paths;
  bool all_converged() const;
};

// Runs every (rep, preset, alpha) combination, writes the artifact bundle
// under config.out_dir and returns the summaries in a fixed order. Progress
// lines go to `log` when given.
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               std::ostream* log = nullptr);

// One row per run: graph, iterations, time, final errors.
std::string FormatRunTable(const std::vector<RunSummary>& runs);
// Averages per (preset, alpha) over repetitions.
std::string FormatMeanTable(const std::vector<RunSummary>& runs);

// 0 when every run stopped by tolerance, 1 otherwise.
int ExitCode(const ExperimentResult& result);

// Base name of the files written for one run.
std::string RunStem(const std::string& preset, double alpha, int rep);

}  // namespace nashseek

#endif  // NASHSEEK_EXPERIMENT_H_
