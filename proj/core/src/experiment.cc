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

#include "nashseek/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nashseek/error.h"
#include "nashseek/io.h"
#include "nashseek/plot.h"
#include "nashseek/version.h"

namespace nashseek {
namespace {

using nlohmann::json;

json ConfigObject(const ExperimentConfig& c) {
  json j;
  j["presets"] = c.presets;
  j["seed"] = c.seed;
  j["alpha"] = c.alphas;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["reps"] = c.reps;
  j["first_rep"] = c.first_rep;
  j["out_dir"] = c.out_dir;
  j["graph_file"] = c.graph_file;
  j["spec_file"] = c.spec_file;
  j["emit_plots"] = c.emit_plots;
  j["emit_network"] = c.emit_network;
  j["firms"] = c.num_firms;
  j["markets"] = c.num_markets;
  j["max_markets_per_firm"] = c.max_markets_per_firm;
  j["out_degree"] = c.out_degree;
  j["redraw_period"] = c.redraw_period;
  j["csv_rep_limit"] = c.csv_rep_limit;
  j["threads"] = c.threads;
  return j;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1e", v);
  return buf;
}

std::string AlphaTag(double alpha) {
  std::string s = FormatDouble(alpha);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

// Everything a worker produces for one rep; files are written afterwards by
// the calling thread.
struct RepOutput {
  std::vector<RunSummary> summaries;
  std::vector<std::pair<std::string, std::string>> files;  // path, contents
  std::string error;
};

RepOutput RunRep(const ExperimentConfig& config, int rep,
                 const std::vector<DirectedGraph>& custom) {
  RepOutput out;
  const Instance inst = MakeInstance(config, rep);
  const std::uint64_t inst_seed = InstanceSeed(config, rep);
  const bool write_csv = config.first_rep + rep < config.csv_rep_limit;
  for (const std::string& name : config.presets) {
    const Topology topo = ParseTopology(name);
    const GraphSequence graphs = MakeTopology(
        topo, inst.spec.num_firms(), config.out_degree,
        GraphSeed(inst_seed, topo), config.redraw_period, custom);
    for (double alpha : config.alphas) {
      TopologyRun run =
          RunTopology(inst, graphs, alpha, config.tol, config.max_iter);
      RunSummary s;
      s.preset = name;
      s.alpha = alpha;
      s.rep = config.first_rep + rep;
      s.instance_seed = inst_seed;
      s.iterations = run.record.num_rounds();
      s.wall_seconds = run.record.wall_seconds;
      s.err_inf = (run.record.final_x - inst.equilibrium)
                      .lpNorm<Eigen::Infinity>();
      s.dz_inf =
          run.record.rounds.empty() ? 0.0 : run.record.rounds.back().dz_inf;
      s.stop = run.record.stop;
      s.certified = run.certificate.certified;
      s.lambda_max = run.certificate.lambda_max;
      if (write_csv) {
        const std::string stem =
            (std::filesystem::path(config.out_dir) / RunStem(name, alpha, s.rep))
                .string();
        s.csv_path = stem + ".csv";
        std::ostringstream csv;
        WriteRunCsv(csv, run.record);
        out.files.emplace_back(s.csv_path, csv.str());

        ExperimentConfig replay = config;
        replay.presets = {name};
        replay.alphas = {alpha};
        replay.first_rep = s.rep;
        replay.csv_rep_limit = s.rep + 1;
        replay.reps = 1;
        replay.emit_plots = false;
        json meta;
        meta["version"] = kVersion;
        meta["seed"] = config.seed;
        meta["instance_seed"] = inst_seed;
        meta["preset"] = name;
        meta["alpha"] = alpha;
        meta["rep"] = s.rep;
        meta["graph_seed"] = GraphSeed(inst_seed, topo);
        meta["mixing_delta"] = run.mixing_delta;
        meta["rounds"] = s.iterations;
        meta["stop_reason"] = StopReasonName(s.stop);
        meta["final_err_inf"] = s.err_inf;
        meta["final_dz_inf"] = s.dz_inf;
        meta["pi_residual"] = run.pi.residual;
        meta["pi_static"] = run.pi.is_static;
        meta["certificate"] = json::parse(CertificateToJson(run.certificate));
        meta["replay_config"] = ConfigObject(replay);
        out.files.emplace_back(stem + ".meta.json", meta.dump(2) + "\n");

        if (config.emit_network) {
          std::ostringstream edges, weights, pi;
          const std::int64_t rounds =
              graphs.mode() == GraphSequence::Mode::kStatic
                  ? 1
                  : std::max<std::int64_t>(1, s.iterations);
          std::vector<DirectedGraph> gs;
          std::vector<Matrix> ws;
          const WeightSequence seq(graphs, run.mixing_delta);
          for (std::int64_t k = 0; k < rounds; ++k) {
            gs.push_back(seq.Graph(k));
            ws.push_back(seq.Weights(k));
          }
          WriteEdgeList(edges, gs);
          WriteWeights(weights, ws);
          WritePiCsv(pi, run.pi);
          out.files.emplace_back(stem + ".edges.txt", edges.str());
          out.files.emplace_back(stem + ".weights.txt", weights.str());
          out.files.emplace_back(stem + ".pi.csv", pi.str());
        }
      }
      out.summaries.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

std::string TopologyName(Topology t) {
  switch (t) {
    case Topology::kStaticRing: return "static-ring";
    case Topology::kStaticStar: return "static-star";
    case Topology::kStaticRandom: return "static-random";
    case Topology::kTimeVaryingRandom: return "time-varying-random";
    case Topology::kCustom: return "custom";
  }
  return "custom";
}

Topology ParseTopology(const std::string& name) {
  for (Topology t : {Topology::kStaticRing, Topology::kStaticStar,
                     Topology::kStaticRandom, Topology::kTimeVaryingRandom,
                     Topology::kCustom}) {
    if (TopologyName(t) == name) return t;
  }
  throw InputError("unknown preset '" + name +
                   "' (expected static-ring, static-star, static-random, "
                   "time-varying-random or custom)");
}

void ExperimentConfig::Validate() const {
  if (presets.empty()) throw InputError("no preset given");
  for (const std::string& p : presets) {
    if (ParseTopology(p) == Topology::kCustom && graph_file.empty()) {
      throw InputError("the custom preset needs --graph-file");
    }
  }
  if (alphas.empty()) throw InputError("no stepsize given");
  for (double a : alphas) {
    if (!(a > 0.0)) throw InputError("stepsizes must be positive");
  }
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  if (max_iter < 1) throw InputError("max_iter must be >= 1");
  if (reps < 1 || first_rep < 0) throw InputError("reps must be >= 1");
  if (num_firms < 2 || num_markets < 1 || max_markets_per_firm < 1) {
    throw InputError("need at least two firms and one market");
  }
  if (out_degree < 1) throw InputError("out_degree must be >= 1");
  if (redraw_period < 1) throw InputError("redraw period must be >= 1");
  if (csv_rep_limit < 0 || threads < 0) {
    throw InputError("csv_rep_limit and threads must be nonnegative");
  }
}

std::string ConfigToJson(const ExperimentConfig& config) {
  return ConfigObject(config).dump(2) + "\n";
}

ExperimentConfig ConfigFromJson(const std::string& text,
                                const ExperimentConfig& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");
  ExperimentConfig c = base;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "presets" || key == "preset") {
        c.presets = v.is_string()
                        ? std::vector<std::string>{v.get<std::string>()}
                        : v.get<std::vector<std::string>>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "alpha") {
        c.alphas = v.is_number() ? std::vector<double>{v.get<double>()}
                                 : v.get<std::vector<double>>();
      } else if (key == "tol") {
        c.tol = v.get<double>();
      } else if (key == "max_iter") {
        c.max_iter = v.get<std::int64_t>();
      } else if (key == "reps") {
        c.reps = v.get<int>();
      } else if (key == "first_rep") {
        c.first_rep = v.get<int>();
      } else if (key == "out_dir") {
        c.out_dir = v.get<std::string>();
      } else if (key == "graph_file") {
        c.graph_file = v.get<std::string>();
      } else if (key == "spec_file") {
        c.spec_file = v.get<std::string>();
      } else if (key == "emit_plots") {
        c.emit_plots = v.get<bool>();
      } else if (key == "emit_network") {
        c.emit_network = v.get<bool>();
      } else if (key == "firms") {
        c.num_firms = v.get<int>();
      } else if (key == "markets") {
        c.num_markets = v.get<int>();
      } else if (key == "max_markets_per_firm") {
        c.max_markets_per_firm = v.get<int>();
      } else if (key == "out_degree") {
        c.out_degree = v.get<int>();
      } else if (key == "redraw_period") {
        c.redraw_period = v.get<int>();
      } else if (key == "csv_rep_limit") {
        c.csv_rep_limit = v.get<int>();
      } else if (key == "threads") {
        c.threads = v.get<int>();
      } else {
        throw InputError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config has a field of the wrong type: ") +
                     e.what());
  }
  return c;
}

std::uint64_t InstanceSeed(const ExperimentConfig& config, int rep) {
  return config.seed + static_cast<std::uint64_t>(config.first_rep + rep);
}

std::uint64_t GraphSeed(std::uint64_t instance_seed, Topology t) {
  return MixSeed(instance_seed, 1 + static_cast<std::uint64_t>(t));
}

GraphSequence MakeTopology(Topology t, int m, int out_degree,
                           std::uint64_t graph_seed, int redraw_period,
                           const std::vector<DirectedGraph>& custom) {
  switch (t) {
    case Topology::kStaticRing:
      return GraphSequence::Static(MakeCycle(m));
    case Topology::kStaticStar:
      return GraphSequence::Static(MakeStar(m, 0));
    case Topology::kStaticRandom:
      return GraphSequence::Static(
          MakeRandomStronglyConnected(m, std::min(out_degree, m - 1), graph_seed));
    case Topology::kTimeVaryingRandom:
      return GraphSequence::TimeVarying(m, std::min(out_degree, m - 1),
                                        graph_seed, redraw_period);
    case Topology::kCustom: {
      if (custom.empty()) throw InputError("custom preset without graphs");
      for (std::size_t k = 0; k < custom.size(); ++k) {
        if (custom[k].num_nodes() != m) {
          throw InputError("graph file has " +
                           std::to_string(custom[k].num_nodes()) +
                           " nodes but the game has " + std::to_string(m) +
                           " agents");
        }
        if (!IsStronglyConnected(custom[k])) {
          throw GraphError("graph of round " + std::to_string(k) +
                           " in the graph file is not strongly connected");
        }
      }
      return GraphSequence::Periodic(custom);
    }
  }
  throw InputError("unknown topology");
}

Instance MakeInstance(const ExperimentConfig& config, int rep) {
  Instance inst;
  if (!config.spec_file.empty()) {
    inst.spec = LoadCournot(config.spec_file);
  } else {
    CournotSampling s;
    s.num_firms = config.num_firms;
    s.num_markets = config.num_markets;
    s.max_markets_per_firm = config.max_markets_per_firm;
    inst.spec = SampleCournot(s, InstanceSeed(config, rep));
  }
  inst.constants = ComputeCournotConstants(inst.spec);
  const Game game = MakeCournotGame(inst.spec);
  FullInfoOptions opts;
  opts.tol = 1e-10;
  inst.equilibrium = SolveNashFullInfo(game, inst.constants, opts).x;
  return inst;
}

TopologyRun RunTopology(const Instance& instance, const GraphSequence& graphs,
                        double alpha, double tol, std::int64_t max_iter) {
  const Game game = MakeCournotGame(instance.spec);
  const int m = game.num_agents();
  if (graphs.num_nodes() != m) {
    throw InputError("topology size does not match the number of firms");
  }
  if (graphs.mode() == GraphSequence::Mode::kStatic &&
      !IsStronglyConnected(graphs.graphs().front())) {
    throw GraphError("static graph is not strongly connected");
  }
  TopologyRun out;
  out.mixing_delta = DefaultMixingDelta(graphs.MaxInDegreeBound());
  const WeightSequence weights(graphs, out.mixing_delta);
  RunConfig rc = RunConfig::Uniform(m, alpha);
  rc.tol = tol;
  rc.max_iter = max_iter;
  out.record = Run(game, weights, rc, instance.equilibrium);
  const std::int64_t rounds = std::max<std::int64_t>(1, out.record.num_rounds());
  out.pi = EstimatePi(weights, rounds);
  out.eta = ComputeEta(weights, out.pi, rounds);
  AttachWeights(out.record, out.pi, &out.eta);
  out.certificate = Certify(instance.constants, out.pi, rounds, out.eta,
                            rc.alpha);
  return out;
}

bool ExperimentResult::all_converged() const {
  return std::all_of(runs.begin(), runs.end(), [](const RunSummary& r) {
    return r.stop == StopReason::kTolerance;
  });
}

int ExitCode(const ExperimentResult& result) {
  return result.all_converged() ? 0 : 1;
}

std::string RunStem(const std::string& preset, double alpha, int rep) {
  return "run_" + preset + "_a" + AlphaTag(alpha) + "_r" + std::to_string(rep);
}

std::string FormatRunTable(const std::vector<RunSummary>& runs) {
  std::ostringstream t;
  t << "| Graph type | alpha | rep | # Iterations | Running time (s) | "
       "||x^k-x*||_inf | ||z^{k+1}-z^k||_inf | stop | certificate |\n";
  t << "|---|---|---|---|---|---|---|---|---|\n";
  for (const RunSummary& r : runs) {
    t << "| " << r.preset << " | " << FormatDouble(r.alpha) << " | " << r.rep
      << " | " << r.iterations << " | " << Fixed(r.wall_seconds, 3) << " | "
      << Sci(r.err_inf) << " | " << Sci(r.dz_inf) << " | "
      << StopReasonName(r.stop) << " | "
      << (r.certified ? "certified" : "uncertified") << " |\n";
  }
  return t.str();
}

std::string FormatMeanTable(const std::vector<RunSummary>& runs) {
  struct Acc {
    int n = 0, converged = 0, certified = 0;
    double iters = 0, time = 0, err = 0, dz = 0;
  };
  std::map<std::pair<std::string, double>, Acc> groups;
  std::vector<std::pair<std::string, double>> order;
  for (const RunSummary& r : runs) {
    const auto key = std::make_pair(r.preset, r.alpha);
    if (!groups.count(key)) order.push_back(key);
    Acc& a = groups[key];
    ++a.n;
    a.converged += r.stop == StopReason::kTolerance;
    a.certified += r.certified;
    a.iters += static_cast<double>(r.iterations);
    a.time += r.wall_seconds;
    a.err += r.err_inf;
    a.dz += r.dz_inf;
  }
  std::ostringstream t;
  t << "| Graph type | Stepsize | runs | Avg. # Iterations | Avg. running time "
       "(s) | Avg. ||x^k-x*||_inf | Avg. ||z^{k+1}-z^k||_inf | converged | "
       "certified |\n";
  t << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& key : order) {
    const Acc& a = groups[key];
    t << "| " << key.first << " | alpha=" << FormatDouble(key.second) << " | "
      << a.n << " | " << Fixed(a.iters / a.n, 2) << " | "
      << Fixed(a.time / a.n, 4) << " | " << Fixed(a.err / a.n, 4) << " | "
      << Fixed(a.dz / a.n, 4) << " | " << a.converged << " | " << a.certified
      << " |\n";
  }
  return t.str();
}

ExperimentResult RunExperiment(const ExperimentConfig& config,
                               std::ostream* log) {
  config.Validate();
  std::vector<DirectedGraph> custom;
  if (!config.graph_file.empty()) custom = LoadEdgeList(config.graph_file);

  std::vector<RepOutput> outputs(static_cast<std::size_t>(config.reps));
  std::atomic<int> next{0};
  std::mutex log_mu;
  auto worker = [&]() {
    for (;;) {
      const int rep = next.fetch_add(1);
      if (rep >= config.reps) return;
      try {
        outputs[rep] = RunRep(config, rep, custom);
      } catch (const std::exception& e) {
        outputs[rep].error = e.what();
      }
      if (log) {
        std::lock_guard<std::mutex> lock(log_mu);
        *log << "rep " << config.first_rep + rep << " done\n";
      }
    }
  };
  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, config.reps);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  for (const RepOutput& o : outputs) {
    if (!o.error.empty()) throw Error(o.error);
  }
  std::filesystem::create_directories(config.out_dir);
  for (RepOutput& o : outputs) {
    for (const auto& [path, text] : o.files) WriteTextFile(path, text);
    for (RunSummary& s : o.summaries) result.runs.push_back(std::move(s));
  }

  const std::filesystem::path dir(config.out_dir);
  WriteTextFile((dir / "config.json").string(), ConfigToJson(config));
  std::ostringstream summary;
  summary << "nashseek " << kVersion << ", seed " << config.seed << "\n\n"
          << FormatRunTable(result.runs);
  if (config.reps > 1) summary << "\n" << FormatMeanTable(result.runs);
  summary << "\nThe comparison columns for the external push-sum baseline are "
             "omitted.\n";
  WriteTextFile((dir / "summary.md").string(), summary.str());

  if (config.emit_plots) {
    // One pair of plots per (alpha, rep) comparing the topologies.
    std::map<std::pair<double, int>, std::vector<LabeledCsv>> groups;
    for (const RunSummary& r : result.runs) {
      if (!r.csv_path.empty()) {
        groups[{r.alpha, r.rep}].push_back({r.preset, r.csv_path});
      }
    }
    for (const auto& [key, csvs] : groups) {
      const std::string stem =
          (dir / ("plot_a" + AlphaTag(key.first) + "_r" +
                  std::to_string(key.second)))
              .string();
      const auto paths = EmitErrorPlots(
          csvs, stem, "alpha = " + FormatDouble(key.first));
      result.plot_paths.insert(result.plot_paths.end(), paths.begin(),
                               paths.end());
    }
  }
  if (log) *log << summary.str();
  return result;
}

}  // namespace nashseek
