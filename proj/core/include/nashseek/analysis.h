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

#ifndef NASHSEEK_ANALYSIS_H_
#define NASHSEEK_ANALYSIS_H_

#include <cstdint>
#include <vector>

#include "nashseek/certify.h"
#include "nashseek/game.h"
#include "nashseek/graph.h"

namespace nashseek {

// Slack used by the inequality checks unless a caller passes its own.
inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kInequalityTol = 1e-9;

// Throws InputError unless pi is positive and sums to 1 within 1e-12.
void CheckStochastic(const Vector& pi, const char* who);

// Rows of the matrices are per-agent vectors.
double WeightedInner(const Matrix& u, const Matrix& v, const Vector& pi);
double WeightedNorm(const Matrix& z, const Vector& pi);
// sum_i pi_i z_i.
Vector WeightedAverage(const Matrix& z, const Vector& pi);
// sum_i pi_i ||z_i - weighted average||^2.
double WeightedDispersion(const Matrix& z, const Vector& pi);

// An inequality lhs <= rhs, checked with pass = lhs <= rhs + tol. slack is
// rhs - lhs, so a negative slack means the inequality is violated.
struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
};

InequalityCheck MakeCheck(double lhs, double rhs, double tol);

// ||u||_pi / sqrt(max pi) <= ||u|| <= ||u||_pi / sqrt(min pi).
struct NormSandwich {
  InequalityCheck lower;
  InequalityCheck upper;
  bool pass() const { return lower.pass && upper.pass; }
};
NormSandwich NormEquivalenceCheck(const Matrix& u, const Vector& pi,
                                  double tol = kInequalityTol);

// |<u, v>_pi| <= ||u||_pi ||v||_pi.
InequalityCheck CauchySchwarzCheck(const Matrix& u, const Matrix& v,
                                   const Vector& pi,
                                   double tol = kInequalityTol);

// Residuals of the linear-combination identities, each divided by
// max(1, magnitude of the largest term involved).
struct CombinationResiduals {
  double norm_of_sum = 0.0;       // ||sum g_i u_i||^2 with arbitrary weights
  double shifted = 0.0;           // ||sum g_i u_i - u||^2, weights sum to 1
  double dispersion = 0.0;        // pairwise form = distance-to-average form
  double general_average = 0.0;   // shifted form after the substitution
  double max() const;
};

// Rows of `vectors` are u_1..u_m. Throws InputError when the weights do not
// sum to 1 within 1e-12 (the last three identities need it).
CombinationResiduals CombinationIdentities(const Matrix& vectors,
                                           const Vector& gamma,
                                           const Vector& u);
// Only the identity that holds for arbitrary weights.
double NormOfSumResidual(const Matrix& vectors, const Vector& gamma);

// sum over edges (j, l) of ||z_j - z_l||^2 >= 2 / (D K) sum_{j<l} ||z_j -
// z_l||^2, reported as lhs = right side, rhs = edge sum.
InequalityCheck EdgeDispersionCheck(const DirectedGraph& g, const Matrix& z,
                                    double tol = kInequalityTol);

// One mixing step in weighted norms: with phi' W = pi' and r = W z,
//   sum phi_i ||r_i - u||^2 <= sum pi_j ||z_j - u||^2 - c sum pi_j ||z_j -
//   zhat||^2,  c = min(phi) min(W+)^2 / (max(pi)^2 D K).
struct MixingContraction {
  InequalityCheck expanded;  // per-row sums
  InequalityCheck compact;   // matrix weighted-norm form
  double coefficient = 0.0;
  bool pass() const { return expanded.pass && compact.pass; }
};
// Throws InputError when ||phi' W - pi'||_inf > 1e-10.
MixingContraction MixingContractionCheck(const Matrix& w,
                                         const DirectedGraph& g,
                                         const Vector& phi, const Vector& pi,
                                         const Matrix& z, const Vector& u,
                                         double tol = kInequalityTol);

// Row i is zero except block i, which holds alpha_i grad_i J_i(z_i).
Matrix ScaledGradientMatrix(const Matrix& z, const Game& game,
                            const std::vector<double>& alpha);

// ||grad_i J_i(x) - grad_i J_i(y)||^2 <= (L_{-i}^2 + L_i^2) ||x - y||^2.
InequalityCheck GradientLipschitzCheck(const Game& game,
                                       const GameConstants& constants,
                                       int agent, const Vector& x,
                                       const Vector& y,
                                       double tol = kInequalityTol);

// ||F(z) - F(y)||_pi^2 <= L_alpha^2 ||z - y||_pi^2.
InequalityCheck ScaledGradientLipschitzCheck(const Game& game,
                                             const GameConstants& constants,
                                             const std::vector<double>& alpha,
                                             const Matrix& z, const Matrix& y,
                                             const Vector& pi,
                                             double tol = kInequalityTol);

// The one-round bound on ||Z^{k+1} - 1 x*'||^2 in the pi_{k+1} norm:
//   (1 + La^2) ||W Z - X*||^2 - 2 Ba ||Zhat - X*||^2
//   + 2 La ||W Z - X*|| ||W Z - Zhat|| + 2 La ||W Z - Zhat|| ||Zhat - X*||
// with Zhat = 1 (sum_i [pi_k]_i z_i^k)', norms weighted by pi_{k+1} except
// the Ba term, which uses pi_k.
struct RoundBoundTerms {
  double next_error = 0.0;
  double mixed_error = 0.0;       // ||W Z - X*||_{pi_{k+1}}
  double mixed_spread = 0.0;      // ||W Z - Zhat||_{pi_{k+1}}
  double average_error_next = 0.0;  // ||Zhat - X*||_{pi_{k+1}}
  double average_error = 0.0;     // ||Zhat - X*||_{pi_k}
  InequalityCheck check;
};
RoundBoundTerms RoundBoundCheck(const Matrix& z, const Matrix& z_next,
                                const Matrix& w, const Vector& pi,
                                const Vector& pi_next, const Vector& x_star,
                                const AggregatedConstants& constants,
                                double tol = kInequalityTol);

// One fuzz trial.
struct FuzzRow {
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

struct FuzzSummary {
  std::vector<FuzzRow> rows;
  int violations = 0;
  double worst_slack = 0.0;
};

FuzzRow ToFuzzRow(std::uint64_t seed, const InequalityCheck& c);
void Record(FuzzSummary& summary, std::uint64_t seed,
            const InequalityCheck& c);

}  // namespace nashseek

#endif  // NASHSEEK_ANALYSIS_H_
