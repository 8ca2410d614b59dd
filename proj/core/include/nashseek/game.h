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

#ifndef NASHSEEK_GAME_H_
#define NASHSEEK_GAME_H_

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nashseek {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Axis-aligned box X_i = [lower, upper].
struct Box {
  Vector lower;
  Vector upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool Contains(const Vector& v, double tol = 0.0) const;
};

// Componentwise clamp of v onto [lower, upper]. Throws InputError when the
// box is empty in some coordinate or the dimensions disagree.
Vector ProjectBox(const Vector& v, const Vector& lower, const Vector& upper);
inline Vector ProjectBox(const Vector& v, const Box& box) {
  return ProjectBox(v, box.lower, box.upper);
}

// Returns grad_i J_i evaluated at a joint vector in R^n. The joint vector
// need not be feasible: cost functions are defined on all of R^n.
using GradientFn = std::function<Vector(int agent, const Vector& joint)>;

// A game with box action sets and a gradient oracle for each player's own
// block. Immutable after construction and safe to share between threads.
class Game {
 public:
  Game(std::vector<Box> boxes, GradientFn gradient);

  int num_agents() const { return static_cast<int>(boxes_.size()); }
  int total_dim() const { return total_dim_; }
  int dim(int agent) const { return boxes_[agent].dim(); }
  int offset(int agent) const { return offsets_[agent]; }
  const Box& box(int agent) const { return boxes_[agent]; }
  const std::vector<Box>& boxes() const { return boxes_; }

  // grad_i J_i(joint). Throws InputError on a dimension mismatch.
  Vector Gradient(int agent, const Vector& joint) const;

  // Stacked pseudo-gradient (grad_1 J_1(x); ...; grad_m J_m(x)).
  Vector PseudoGradient(const Vector& joint) const;

  // Projection of a joint vector onto X = X_1 x ... x X_m.
  Vector Project(const Vector& joint) const;

  // Block i of a joint vector.
  auto Block(const Vector& joint, int agent) const {
    return joint.segment(offsets_[agent], boxes_[agent].dim());
  }

  // Lower / upper bounds of the joint box.
  Vector JointLower() const;
  Vector JointUpper() const;

 private:
  void CheckAgent(int agent) const;

  std::vector<Box> boxes_;
  std::vector<int> offsets_;
  int total_dim_ = 0;
  GradientFn gradient_;
};

// Per-agent constants: strong monotonicity mu_i of grad_i J_i(., x_{-i}),
// Lipschitz constant L_i in the own block and L_{-i} in the other blocks.
struct GameConstants {
  std::vector<double> mu;
  std::vector<double> lip_own;
  std::vector<double> lip_cross;

  int num_agents() const { return static_cast<int>(mu.size()); }
  // True when some agent has L_{-i} == 0 (its gradient ignores the others).
  bool HasDecoupledAgent() const;
};

struct NashCheck {
  bool ok = false;
  // ||x - Pi_X[x - step * F(x)]||_inf over the joint vector.
  double residual = 0.0;
  std::vector<double> agent_residuals;
  // min over box vertices y_i of <grad_i J_i(x), y_i - x_i>, per agent.
  std::vector<double> vi_min;
  bool vi_ok = false;
};

// Fixed-point test x = Pi_X[x - step * F(x)] with sup-norm residual <= tol.
// The variational-inequality values at the box vertices are reported as a
// secondary diagnostic (they do not affect ok). Throws InputError when x
// lies outside X by more than tol.
NashCheck VerifyNash(const Game& game, const Vector& x, double tol,
                     double step = 1.0);

struct FullInfoOptions {
  double step = 0.0;  // <= 0 selects min_i mu_i / L^2
  double tol = 1e-10;
  int max_iter = 1000000;
  Vector start;  // empty = projection of the origin
};

struct FullInfoResult {
  Vector x;
  int iterations = 0;
  double residual = 0.0;
  double step = 0.0;
};

// Projected pseudo-gradient iteration x <- Pi_X[x - step F(x)] with every
// player seeing the full joint action. The step must lie in
// (0, 2 min_i mu_i / L^2) with L = sqrt(max_i (L_{-i}^2 + L_i^2)). Stops at
// the first iterate whose next step moves less than tol in sup norm and
// returns that iterate, so VerifyNash(game, x, tol, step) holds. Throws
// NonConvergenceError after max_iter steps.
FullInfoResult SolveNashFullInfo(const Game& game,
                                 const GameConstants& constants,
                                 const FullInfoOptions& options = {});

// L = sqrt(max_i (L_{-i}^2 + L_i^2)).
double AggregateLipschitz(const GameConstants& constants);

}  // namespace nashseek

#endif  // NASHSEEK_GAME_H_
