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

#ifndef NASHSEEK_MIXING_H_
#define NASHSEEK_MIXING_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nashseek/game.h"
#include "nashseek/graph.h"

namespace nashseek {

// Row-stochastic matrix compatible with a graph, plus its smallest positive
// entry.
struct WeightMatrix {
  Matrix w;
  double min_positive = 0.0;
};

// Smallest positive entry of w; 0 if there is none.
double MinPositiveEntry(const Matrix& w);

// W_ij = delta for every in-neighbor j != i, W_ii = 1 - delta * d(i).
// Throws InputError naming the first row with delta * d(i) >= 1.
WeightMatrix BuildWeights(const DirectedGraph& g, double delta);

// The usual choice 0.5 / max in-degree, so every diagonal entry is >= 1/2.
double DefaultMixingDelta(int max_in_degree);

struct WeightCheck {
  bool row_sums = true;
  bool nonnegative = true;
  bool compatible = true;
  bool positive_diagonal = true;
  bool floor = true;
  double max_row_sum_error = 0.0;
  double min_positive = 0.0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Itemized check of row sums (within tol), sign pattern against g, the
// diagonal and the floor on positive entries. Never throws on a bad matrix;
// dimension mismatches throw InputError.
WeightCheck ValidateWeights(const Matrix& w, const DirectedGraph& g,
                            double w_floor, double tol = 1e-12);

// Graph and weight sequence for a run. Graphs, weights and graph metrics are
// cached per epoch of the underlying GraphSequence. Not thread-safe; give each
// run its own copy.
class WeightSequence {
 public:
  WeightSequence(GraphSequence graphs, double delta);

  int num_nodes() const { return graphs_.num_nodes(); }
  double delta() const { return delta_; }
  const GraphSequence& graphs() const { return graphs_; }

  const Matrix& Weights(std::int64_t k) const;
  const DirectedGraph& Graph(std::int64_t k) const;
  const GraphMetrics& Metrics(std::int64_t k) const;

  // Uniform lower bound on positive entries, valid for every round:
  // min(delta, 1 - delta * max in-degree bound).
  double Floor() const;

 private:
  struct Entry {
    std::int64_t epoch = -1;
    DirectedGraph graph{1};
    Matrix w;
    bool has_metrics = false;
    GraphMetrics metrics;
  };
  Entry& Load(std::int64_t k) const;

  GraphSequence graphs_;
  double delta_;
  mutable std::vector<Entry> cache_;
};

// Stochastic vectors pi_0..pi_K with pi_{k+1}' W_k = pi_k'.
struct PiSequence {
  std::vector<Vector> pi;
  // Backward-product tail length used beyond the last requested round; 0 for
  // a static matrix.
  std::int64_t horizon = 0;
  // max_k ||pi_{k+1}' W_k - pi_k'||_inf over the returned rounds.
  double residual = 0.0;
  bool is_static = false;

  // Static sequences store one vector and answer every k with it.
  const Vector& At(std::int64_t k) const;
  std::int64_t num_rounds() const;  // K, so pi_0..pi_K are available
};

// Left eigenvector of eigenvalue 1, normalized to a stochastic vector, from a
// direct linear solve. Throws NonConvergenceError if the residual
// ||pi' W - pi'||_inf exceeds tol.
PiSequence EstimatePiStatic(const Matrix& w, double tol = 1e-10);

using WeightFn = std::function<Matrix(std::int64_t)>;

// Tail approximation pi_k ~ 1'/m W_{K+T-1} ... W_k for k = 0..num_rounds, with
// T doubled from initial_tail until two successive estimates agree to tol in
// the 1-norm. Throws NonConvergenceError when T would exceed max_tail.
PiSequence EstimatePi(const WeightFn& weights, std::int64_t num_rounds,
                      double tol = 1e-12, std::int64_t initial_tail = 64,
                      std::int64_t max_tail = 1 << 20);

// Convenience overload for a WeightSequence; static sequences take the direct
// route.
PiSequence EstimatePi(const WeightSequence& weights, std::int64_t num_rounds,
                      double tol = 1e-12);

// eta_k = min(pi_{k+1}) w^2 / (max(pi_k)^2 D_k K_k). Throws InputError on
// nonpositive inputs and InternalError if the result leaves (0, 1).
double EtaRound(const Vector& pi_k, const Vector& pi_next, double w,
                int diameter, int max_edge_utility);

// w^{m+2} / (m (m-1)^2).
double PessimisticEta(int m, double w);

// w^{m+2} / (m^2 (m-1)^2), which only uses D <= m-1 and K <= m(m-1) and so
// bounds every eta_k from below.
double ConservativeEtaFloor(int m, double w);

struct EtaReport {
  std::vector<double> eta;  // eta_0..eta_{K-1}
  double bold = 0.0;        // min over the horizon
  double pessimistic = 0.0;
  double conservative_floor = 0.0;
  double w = 0.0;
};

// eta_k for k = 0..num_rounds-1 using pi from `pi` and D, K from `weights`.
EtaReport ComputeEta(const WeightSequence& weights, const PiSequence& pi,
                     std::int64_t num_rounds);

}  // namespace nashseek

#endif  // NASHSEEK_MIXING_H_
