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

#include "nashseek/seeker.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "nashseek/error.h"

namespace nashseek {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void CheckShapes(const Matrix& z, const Matrix& w, const Game& game) {
  const int m = game.num_agents();
  if (z.rows() != m || z.cols() != game.total_dim()) {
    throw InputError("estimate matrix is " + std::to_string(z.rows()) + "x" +
                     std::to_string(z.cols()) + ", expected " +
                     std::to_string(m) + "x" +
                     std::to_string(game.total_dim()));
  }
  if (w.rows() != m || w.cols() != m) {
    throw InputError("weight matrix does not match the number of agents");
  }
}

Vector SquaredRowErrors(const Matrix& z, const Vector& x) {
  return (z.rowwise() - x.transpose()).rowwise().squaredNorm();
}

}  // namespace

Matrix Mix(const Matrix& z, const Matrix& w) {
  if (w.cols() != z.rows() || w.rows() != w.cols()) {
    throw InputError("Mix: W is " + std::to_string(w.rows()) + "x" +
                     std::to_string(w.cols()) + " but Z has " +
                     std::to_string(z.rows()) + " rows");
  }
  return w * z;
}

Vector Actions(const Game& game, const Matrix& z) {
  if (z.rows() != game.num_agents() || z.cols() != game.total_dim()) {
    throw InputError("Actions: estimate matrix has the wrong shape");
  }
  Vector x(game.total_dim());
  for (int i = 0; i < game.num_agents(); ++i) {
    x.segment(game.offset(i), game.dim(i)) =
        z.row(i).segment(game.offset(i), game.dim(i)).transpose();
  }
  return x;
}

Matrix Consensual(const Vector& x, int m) {
  return x.transpose().replicate(m, 1);
}

Matrix Round(const Matrix& z, const Matrix& w, const Game& game,
             const std::vector<double>& alpha, std::int64_t round) {
  CheckShapes(z, w, game);
  if (static_cast<int>(alpha.size()) != game.num_agents()) {
    throw InputError("Round: need one stepsize per agent");
  }
  Matrix next = Mix(z, w);
  Vector row(game.total_dim());
  for (int i = 0; i < game.num_agents(); ++i) {
    row = next.row(i).transpose();
    const Vector grad = game.Gradient(i, row);
    if (!grad.allFinite()) {
      throw NumericalError("agent " + std::to_string(i) +
                           " produced a non-finite gradient in round " +
                           std::to_string(round));
    }
    const auto own = row.segment(game.offset(i), game.dim(i));
    next.row(i).segment(game.offset(i), game.dim(i)) =
        ProjectBox(own - alpha[i] * grad, game.box(i)).transpose();
  }
  return next;
}

RunConfig RunConfig::Uniform(int m, double alpha) {
  RunConfig c;
  c.alpha.assign(m, alpha);
  return c;
}

std::string StopReasonName(StopReason reason) {
  return reason == StopReason::kTolerance ? "tolerance" : "budget";
}

RunRecord Run(const Game& game, const WeightSequence& weights,
              const RunConfig& config, const std::optional<Vector>& oracle) {
  const int m = game.num_agents();
  if (weights.num_nodes() != m) {
    throw InputError("Run: graph has " + std::to_string(weights.num_nodes()) +
                     " nodes for " + std::to_string(m) + " agents");
  }
  if (static_cast<int>(config.alpha.size()) != m) {
    throw InputError("Run: need one stepsize per agent");
  }
  for (double a : config.alpha) {
    if (!(a > 0.0)) throw InputError("Run: stepsizes must be positive");
  }
  if (!(config.tol > 0.0)) throw InputError("Run: tolerance must be positive");
  if (config.max_iter < 1) throw InputError("Run: max_iter must be >= 1");
  if (oracle && oracle->size() != game.total_dim()) {
    throw InputError("Run: oracle equilibrium has the wrong dimension");
  }

  const auto start = std::chrono::steady_clock::now();
  Matrix z = config.initial.size() == 0
                 ? Matrix::Zero(m, game.total_dim())
                 : config.initial;
  if (z.rows() != m || z.cols() != game.total_dim() || !z.allFinite()) {
    throw InputError("Run: initial estimate matrix is invalid");
  }

  RunRecord rec;
  rec.has_oracle = oracle.has_value();
  rec.initial_weighted_err = kNaN;
  if (config.keep_trajectory) rec.trajectory.push_back(z);
  if (oracle) rec.agent_sq_err.push_back(SquaredRowErrors(z, *oracle));
  Vector x = Actions(game, z);

  for (std::int64_t k = 0; k < config.max_iter; ++k) {
    const Matrix& w = weights.Weights(k);
    Matrix next = Round(z, w, game, config.alpha, k);
    Vector x_next = Actions(game, next);
    RoundMetrics row{};
    row.dx_inf = (x_next - x).lpNorm<Eigen::Infinity>();
    row.dz_inf = (next - z).lpNorm<Eigen::Infinity>();
    row.err_inf = oracle ? (x_next - *oracle).lpNorm<Eigen::Infinity>() : kNaN;
    row.weighted_err = kNaN;
    row.eta = kNaN;
    if (!std::isfinite(row.dx_inf) || !std::isfinite(row.dz_inf)) {
      throw NumericalError("Run: iterates diverged in round " +
                           std::to_string(k));
    }
    rec.rounds.push_back(row);
    if (oracle) rec.agent_sq_err.push_back(SquaredRowErrors(next, *oracle));
    if (config.keep_trajectory) rec.trajectory.push_back(next);
    z = std::move(next);
    x = std::move(x_next);
    if (row.dx_inf < config.tol && row.dz_inf < config.tol) {
      rec.stop = StopReason::kTolerance;
      break;
    }
  }
  rec.final_z = std::move(z);
  rec.final_x = std::move(x);
  rec.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return rec;
}

void AttachWeights(RunRecord& record, const PiSequence& pi,
                   const EtaReport* eta) {
  const std::int64_t n = record.num_rounds();
  if (pi.num_rounds() < n) {
    throw InputError("AttachWeights: pi sequence covers fewer rounds than the run");
  }
  if (eta && static_cast<std::int64_t>(eta->eta.size()) < n) {
    throw InputError("AttachWeights: eta report covers fewer rounds than the run");
  }
  if (record.has_oracle) {
    record.initial_weighted_err = pi.At(0).dot(record.agent_sq_err[0]);
  }
  for (std::int64_t k = 0; k < n; ++k) {
    RoundMetrics& row = record.rounds[static_cast<std::size_t>(k)];
    if (record.has_oracle) {
      row.weighted_err =
          pi.At(k + 1).dot(record.agent_sq_err[static_cast<std::size_t>(k) + 1]);
    }
    if (eta) row.eta = eta->eta[static_cast<std::size_t>(k)];
  }
}

}  // namespace nashseek
