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

#ifndef NASHSEEK_SEEKER_H_
#define NASHSEEK_SEEKER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nashseek/game.h"
#include "nashseek/mixing.h"

namespace nashseek {

// Estimate matrices are m x n: row i holds agent i's estimate of the joint
// action, and its own block (columns offset(i)..offset(i)+n_i) is its action.

// W Z.
Matrix Mix(const Matrix& z, const Matrix& w);

// Own blocks of every row, stacked into a joint action.
Vector Actions(const Game& game, const Matrix& z);

// Every row equal to x.
Matrix Consensual(const Vector& x, int m);

// One synchronous round: mix, then each agent takes a projected gradient step
// on its own block evaluated at its mixed row. Throws NumericalError naming
// the agent and round when a gradient is not finite.
Matrix Round(const Matrix& z, const Matrix& w, const Game& game,
             const std::vector<double>& alpha, std::int64_t round = 0);

struct RunConfig {
  std::vector<double> alpha;  // one per agent
  double tol = 1e-3;
  std::int64_t max_iter = 100000;
  Matrix initial;             // empty means all zeros
  std::uint64_t seed = 0;     // provenance only; the engine is deterministic
  bool keep_trajectory = false;

  static RunConfig Uniform(int m, double alpha);
};

enum class StopReason { kTolerance, kBudget };
std::string StopReasonName(StopReason reason);

// Row k describes the transition from round k to round k+1.
struct RoundMetrics {
  double dx_inf = 0.0;  // ||x^{k+1} - x^k||_inf
  double dz_inf = 0.0;  // max_ij |Z^{k+1} - Z^k|
  double err_inf;       // ||x^{k+1} - x*||_inf, NaN without an oracle
  double weighted_err;  // ||Z^{k+1} - 1 x*'||^2 in the pi_{k+1} norm, or NaN
  double eta;           // eta_k, or NaN
};

struct RunRecord {
  std::vector<RoundMetrics> rounds;
  StopReason stop = StopReason::kBudget;
  Matrix final_z;
  Vector final_x;
  bool has_oracle = false;
  // Per-agent ||z_i^k - x*||^2 for k = 0..num_rounds(), kept so the weighted
  // errors can be filled in once pi is known.
  std::vector<Vector> agent_sq_err;
  double initial_weighted_err;  // ||Z^0 - 1 x*'||^2 in the pi_0 norm
  std::vector<Matrix> trajectory;  // Z^0..Z^K when requested
  double wall_seconds = 0.0;

  std::int64_t num_rounds() const {
    return static_cast<std::int64_t>(rounds.size());
  }
};

// Runs until both dx_inf and dz_inf fall below tol or max_iter rounds have
// been taken. With an oracle equilibrium the per-agent errors are recorded.
RunRecord Run(const Game& game, const WeightSequence& weights,
              const RunConfig& config,
              const std::optional<Vector>& oracle = std::nullopt);

// Fills weighted_err (and eta when given) from an absolute probability
// sequence covering rounds 0..num_rounds().
void AttachWeights(RunRecord& record, const PiSequence& pi,
                   const EtaReport* eta = nullptr);

}  // namespace nashseek

#endif  // NASHSEEK_SEEKER_H_
