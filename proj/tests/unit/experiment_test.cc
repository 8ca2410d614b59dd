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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "nashseek/error.h"
#include "nashseek/experiment.h"
#include "nashseek/io.h"
#include "nashseek/version.h"

namespace nashseek {
namespace {

namespace fs = std::filesystem;

ExperimentConfig SmallConfig(const std::string& dir) {
  ExperimentConfig c;
  c.presets = {"static-ring", "static-star"};
  c.num_firms = 6;
  c.num_markets = 3;
  c.out_degree = 2;
  c.out_dir = dir;
  c.seed = 5;
  return c;
}

fs::path Fresh(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nashseek_" + name);
  fs::remove_all(p);
  return p;
}

TEST(Topology, NamesRoundTrip) {
  for (Topology t : {Topology::kStaticRing, Topology::kStaticStar,
                     Topology::kStaticRandom, Topology::kTimeVaryingRandom,
                     Topology::kCustom}) {
    EXPECT_EQ(ParseTopology(TopologyName(t)), t);
  }
  EXPECT_THROW(ParseTopology("ring"), InputError);
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
  ExperimentConfig c = SmallConfig("x");
  c.alphas = {0.01, 0.1};
  c.reps = 4;
  const ExperimentConfig back = ConfigFromJson(ConfigToJson(c));
  EXPECT_EQ(back.presets, c.presets);
  EXPECT_EQ(back.alphas, c.alphas);
  EXPECT_EQ(back.reps, 4);
  EXPECT_EQ(back.num_firms, 6);
  EXPECT_THROW(ConfigFromJson(R"({"sed": 1})"), InputError);
  EXPECT_THROW(ConfigFromJson(R"({"tol": "small"})"), InputError);
  const ExperimentConfig partial = ConfigFromJson(R"({"preset": "static-star", "alpha": 0.2})");
  EXPECT_EQ(partial.presets, std::vector<std::string>{"static-star"});
  EXPECT_EQ(partial.alphas, std::vector<double>{0.2});
}

TEST(Config, ValidateRejectsNonsense) {
  ExperimentConfig c;
  c.alphas = {-1.0};
  EXPECT_THROW(c.Validate(), InputError);
  c = ExperimentConfig{};
  c.presets = {"custom"};
  EXPECT_THROW(c.Validate(), InputError);
  c = ExperimentConfig{};
  c.tol = 0.0;
  EXPECT_THROW(c.Validate(), InputError);
}

TEST(Seeds, RepsAndTopologiesDiffer) {
  ExperimentConfig c;
  EXPECT_NE(InstanceSeed(c, 0), InstanceSeed(c, 1));
  c.first_rep = 1;
  EXPECT_EQ(InstanceSeed(c, 0), InstanceSeed(ExperimentConfig{}, 1));
  EXPECT_NE(GraphSeed(1, Topology::kStaticRandom),
            GraphSeed(1, Topology::kTimeVaryingRandom));
}

TEST(MakeTopology, CustomGraphsAreChecked) {
  DirectedGraph broken(3);
  broken.AddEdge(0, 1);
  EXPECT_THROW(MakeTopology(Topology::kCustom, 3, 2, 0, 1, {broken}), GraphError);
  EXPECT_THROW(MakeTopology(Topology::kCustom, 4, 2, 0, 1, {MakeCycle(3)}),
               InputError);
  const GraphSequence s = MakeTopology(Topology::kStaticRing, 5, 2, 0, 1);
  EXPECT_EQ(s.At(0), MakeCycle(5));
}

TEST(RunExperiment, WritesBundleAndIsDeterministic) {
  const fs::path a = Fresh("exp_a"), b = Fresh("exp_b");
  ExperimentConfig c = SmallConfig(a.string());
  c.emit_plots = true;
  c.emit_network = true;
  const ExperimentResult ra = RunExperiment(c);
  c.out_dir = b.string();
  c.threads = 1;
  const ExperimentResult rb = RunExperiment(c);
  ASSERT_EQ(ra.runs.size(), 2U);
  EXPECT_TRUE(ra.all_converged());
  EXPECT_EQ(ExitCode(ra), 0);
  for (const RunSummary& r : ra.runs) {
    const std::string stem = RunStem(r.preset, r.alpha, r.rep);
    EXPECT_EQ(ReadTextFile((a / (stem + ".csv")).string()),
              ReadTextFile((b / (stem + ".csv")).string()));
    const auto meta =
        nlohmann::json::parse(ReadTextFile((a / (stem + ".meta.json")).string()));
    EXPECT_EQ(meta["seed"], 5);
    EXPECT_EQ(meta["preset"], r.preset);
    EXPECT_EQ(meta["version"], std::string(kVersion));
    EXPECT_TRUE(meta.contains("certificate"));
    EXPECT_TRUE(fs::exists(a / (stem + ".edges.txt")));
    EXPECT_TRUE(fs::exists(a / (stem + ".pi.csv")));
  }
  EXPECT_EQ(ra.plot_paths.size(), 2U);
  EXPECT_TRUE(fs::exists(a / "summary.md"));
}

TEST(RunExperiment, ReplayFromSidecarReproducesCsv) {
  const fs::path a = Fresh("replay_a"), b = Fresh("replay_b");
  ExperimentConfig c = SmallConfig(a.string());
  c.presets = {"time-varying-random"};
  c.reps = 3;
  const ExperimentResult r = RunExperiment(c);
  const std::string stem = RunStem("time-varying-random", 0.05, 2);
  const auto meta =
      nlohmann::json::parse(ReadTextFile((a / (stem + ".meta.json")).string()));
  ExperimentConfig replay = ConfigFromJson(meta["replay_config"].dump());
  replay.out_dir = b.string();
  RunExperiment(replay);
  EXPECT_EQ(ReadTextFile((a / (stem + ".csv")).string()),
            ReadTextFile((b / (stem + ".csv")).string()));
}

TEST(RunExperiment, BudgetGivesNonzeroExit) {
  ExperimentConfig c = SmallConfig(Fresh("budget").string());
  c.max_iter = 3;
  const ExperimentResult r = RunExperiment(c);
  EXPECT_FALSE(r.all_converged());
  EXPECT_EQ(ExitCode(r), 1);
}

TEST(Tables, LayoutColumns) {
  RunSummary s;
  s.preset = "static-ring";
  s.alpha = 0.05;
  s.iterations = 10;
  s.stop = StopReason::kTolerance;
  const std::string run = FormatRunTable({s, s});
  EXPECT_NE(run.find("# Iterations"), std::string::npos);
  EXPECT_NE(run.find("Running time"), std::string::npos);
  const std::string mean = FormatMeanTable({s, s});
  EXPECT_NE(mean.find("Avg. # Iterations"), std::string::npos);
  EXPECT_NE(mean.find("10.00"), std::string::npos);
}

}  // namespace
}  // namespace nashseek
