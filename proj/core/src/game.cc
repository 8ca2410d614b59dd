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

#include "nashseek/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "nashseek/error.h"

namespace nashseek {

bool Box::Contains(const Vector& v, double tol) const {
  if (v.size() != lower.size()) return false;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (v[k] < lower[k] - tol || v[k] > upper[k] + tol) return false;
  }
  return true;
}

Vector ProjectBox(const Vector& v, const Vector& lower, const Vector& upper) {
  if (v.size() != lower.size() || v.size() != upper.size()) {
    throw InputError("ProjectBox: dimension mismatch (" +
                     std::to_string(v.size()) + " vs box " +
                     std::to_string(lower.size()) + "/" +
                     std::to_string(upper.size()) + ")");
  }
  Vector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (lower[k] > upper[k]) {
      throw InputError("ProjectBox: empty box in coordinate " +
                       std::to_string(k));
    }
    out[k] = std::clamp(v[k], lower[k], upper[k]);
  }
  return out;
}

Game::Game(std::vector<Box> boxes, GradientFn gradient)
    : boxes_(std::move(boxes)), gradient_(std::move(gradient)) {
  if (boxes_.empty()) throw InputError("Game: no agents");
  if (!gradient_) throw InputError("Game: missing gradient oracle");
  offsets_.reserve(boxes_.size());
  for (std::size_t i = 0; i < boxes_.size(); ++i) {
    const Box& b = boxes_[i];
    if (b.dim() < 1 || b.upper.size() != b.lower.size()) {
      throw InputError("Game: agent " + std::to_string(i) +
                       " has an invalid box");
    }
    if ((b.lower.array() > b.upper.array()).any()) {
      throw InputError("Game: agent " + std::to_string(i) +
                       " has an empty action set");
    }
    offsets_.push_back(total_dim_);
    total_dim_ += b.dim();
  }
}

void Game::CheckAgent(int agent) const {
  if (agent < 0 || agent >= num_agents()) {
    throw InputError("agent index " + std::to_string(agent) +
                     " out of range");
  }
}

Vector Game::Gradient(int agent, const Vector& joint) const {
  CheckAgent(agent);
  if (joint.size() != total_dim_) {
    throw InputError("Gradient: joint vector has dimension " +
                     std::to_string(joint.size()) + ", expected " +
                     std::to_string(total_dim_));
  }
  return gradient_(agent, joint);
}

Vector Game::PseudoGradient(const Vector& joint) const {
  Vector out(total_dim_);
  for (int i = 0; i < num_agents(); ++i) {
    out.segment(offsets_[i], dim(i)) = Gradient(i, joint);
  }
  return out;
}

Vector Game::Project(const Vector& joint) const {
  if (joint.size() != total_dim_) throw InputError("Project: dimension");
  Vector out(total_dim_);
  for (int i = 0; i < num_agents(); ++i) {
    out.segment(offsets_[i], dim(i)) =
        ProjectBox(joint.segment(offsets_[i], dim(i)), boxes_[i]);
  }
  return out;
}

Vector Game::JointLower() const {
  Vector out(total_dim_);
  for (int i = 0; i < num_agents(); ++i) {
    out.segment(offsets_[i], dim(i)) = boxes_[i].lower;
  }
  return out;
}

Vector Game::JointUpper() const {
  Vector out(total_dim_);
  for (int i = 0; i < num_agents(); ++i) {
    out.segment(offsets_[i], dim(i)) = boxes_[i].upper;
  }
  return out;
}

bool GameConstants::HasDecoupledAgent() const {
  return std::any_of(lip_cross.begin(), lip_cross.end(),
                     [](double l) { return l == 0.0; });
}

double AggregateLipschitz(const GameConstants& constants) {
  double worst = 0.0;
  for (int i = 0; i < constants.num_agents(); ++i) {
    worst = std::max(worst, constants.lip_cross[i] * constants.lip_cross[i] +
                                constants.lip_own[i] * constants.lip_own[i]);
  }
  return std::sqrt(worst);
}

NashCheck VerifyNash(const Game& game, const Vector& x, double tol,
                     double step) {
  if (x.size() != game.total_dim()) throw InputError("VerifyNash: dimension");
  if (!(tol > 0.0) || !(step > 0.0)) {
    throw InputError("VerifyNash: tol and step must be positive");
  }
  NashCheck check;
  check.agent_residuals.resize(game.num_agents());
  check.vi_min.resize(game.num_agents());
  const Vector grad = game.PseudoGradient(x);
  for (int i = 0; i < game.num_agents(); ++i) {
    const Box& box = game.box(i);
    const auto xi = game.Block(x, i);
    if (!box.Contains(xi, tol)) {
      throw InputError("VerifyNash: agent " + std::to_string(i) +
                       " action lies outside its box");
    }
    const auto gi = grad.segment(game.offset(i), game.dim(i));
    const Vector moved = ProjectBox(xi - step * gi, box);
    check.agent_residuals[i] = (xi - moved).lpNorm<Eigen::Infinity>();
    check.residual = std::max(check.residual, check.agent_residuals[i]);
    // The minimum of a linear function over a box is attained at a vertex
    // and separates across coordinates.
    double vi = 0.0;
    for (int k = 0; k < game.dim(i); ++k) {
      vi += std::min(gi[k] * (box.lower[k] - xi[k]),
                     gi[k] * (box.upper[k] - xi[k]));
    }
    check.vi_min[i] = vi;
  }
  check.ok = check.residual <= tol;
  check.vi_ok = std::all_of(check.vi_min.begin(), check.vi_min.end(),
                            [&](double v) { return v >= -tol; });
  return check;
}

FullInfoResult SolveNashFullInfo(const Game& game,
                                 const GameConstants& constants,
                                 const FullInfoOptions& options) {
  if (constants.num_agents() != game.num_agents()) {
    throw InputError("SolveNashFullInfo: constants do not match the game");
  }
  if (!(options.tol > 0.0)) throw InputError("SolveNashFullInfo: tol <= 0");
  const double lip = AggregateLipschitz(constants);
  const double mono =
      *std::min_element(constants.mu.begin(), constants.mu.end());
  if (!(mono > 0.0) || !(lip > 0.0)) {
    throw InputError("SolveNashFullInfo: constants must be positive");
  }
  const double upper = 2.0 * mono / (lip * lip);
  const double step = options.step > 0.0 ? options.step : mono / (lip * lip);
  if (!(step < upper)) {
    throw InputError("SolveNashFullInfo: step " + std::to_string(step) +
                     " outside (0, 2 mu / L^2) = (0, " +
                     std::to_string(upper) + ")");
  }

  Vector x = options.start.size() == 0 ? game.Project(Vector::Zero(
                                             game.total_dim()))
                                       : game.Project(options.start);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < options.max_iter; ++it) {
    Vector next = game.Project(x - step * game.PseudoGradient(x));
    residual = (next - x).lpNorm<Eigen::Infinity>();
    if (!std::isfinite(residual)) {
      throw NonConvergenceError("SolveNashFullInfo: iterate diverged", x,
                                residual);
    }
    if (residual < options.tol) {
      return FullInfoResult{std::move(x), it, residual, step};
    }
    x = std::move(next);
  }
  throw NonConvergenceError("SolveNashFullInfo: iteration budget exhausted",
                            x, residual);
}

}  // namespace nashseek
