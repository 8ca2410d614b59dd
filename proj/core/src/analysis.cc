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

#include "nashseek/analysis.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nashseek/error.h"
#include "nashseek/mixing.h"
#include "nashseek/seeker.h"

namespace nashseek {
namespace {

void CheckRows(const Matrix& z, const Vector& pi, const char* who) {
  if (z.rows() != pi.size()) {
    throw InputError(std::string(who) + ": matrix has " +
                     std::to_string(z.rows()) + " rows but pi has " +
                     std::to_string(pi.size()) + " entries");
  }
}

double Relative(double residual, double scale) {
  return std::abs(residual) / std::max(1.0, std::abs(scale));
}

}  // namespace

void CheckStochastic(const Vector& pi, const char* who) {
  if (pi.size() == 0 || !(pi.minCoeff() > 0.0) ||
      !(std::abs(pi.sum() - 1.0) <= 1e-12)) {
    throw InputError(std::string(who) +
                     ": weights must be positive and sum to 1");
  }
}

double WeightedInner(const Matrix& u, const Matrix& v, const Vector& pi) {
  CheckStochastic(pi, "WeightedInner");
  CheckRows(u, pi, "WeightedInner");
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw InputError("WeightedInner: shapes differ");
  }
  return pi.dot(u.cwiseProduct(v).rowwise().sum());
}

double WeightedNorm(const Matrix& z, const Vector& pi) {
  CheckStochastic(pi, "WeightedNorm");
  CheckRows(z, pi, "WeightedNorm");
  return std::sqrt(pi.dot(z.rowwise().squaredNorm()));
}

Vector WeightedAverage(const Matrix& z, const Vector& pi) {
  CheckRows(z, pi, "WeightedAverage");
  return z.transpose() * pi;
}

double WeightedDispersion(const Matrix& z, const Vector& pi) {
  const Vector avg = WeightedAverage(z, pi);
  return pi.dot((z.rowwise() - avg.transpose()).rowwise().squaredNorm());
}

InequalityCheck MakeCheck(double lhs, double rhs, double tol) {
  InequalityCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.pass = lhs <= rhs + tol;
  return c;
}

NormSandwich NormEquivalenceCheck(const Matrix& u, const Vector& pi,
                                  double tol) {
  const double weighted = WeightedNorm(u, pi);
  const double plain = u.norm();
  NormSandwich s;
  s.lower = MakeCheck(weighted / std::sqrt(pi.maxCoeff()), plain, tol);
  s.upper = MakeCheck(plain, weighted / std::sqrt(pi.minCoeff()), tol);
  return s;
}

InequalityCheck CauchySchwarzCheck(const Matrix& u, const Matrix& v,
                                   const Vector& pi, double tol) {
  return MakeCheck(std::abs(WeightedInner(u, v, pi)),
                   WeightedNorm(u, pi) * WeightedNorm(v, pi), tol);
}

double CombinationResiduals::max() const {
  return std::max({norm_of_sum, shifted, dispersion, general_average});
}

double NormOfSumResidual(const Matrix& vectors, const Vector& gamma) {
  CheckRows(vectors, gamma, "NormOfSumResidual");
  const int m = static_cast<int>(gamma.size());
  const Vector combo = vectors.transpose() * gamma;
  const Vector sq = vectors.rowwise().squaredNorm();
  double pairwise = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      pairwise += gamma[i] * gamma[j] *
                  (vectors.row(i) - vectors.row(j)).squaredNorm();
    }
  }
  const double first = gamma.sum() * gamma.dot(sq);
  const double lhs = combo.squaredNorm();
  const double scale = std::max({std::abs(lhs), std::abs(first),
                                 std::abs(0.5 * pairwise)});
  return Relative(lhs - (first - 0.5 * pairwise), scale);
}

CombinationResiduals CombinationIdentities(const Matrix& vectors,
                                           const Vector& gamma,
                                           const Vector& u) {
  CheckRows(vectors, gamma, "CombinationIdentities");
  if (u.size() != vectors.cols()) {
    throw InputError("CombinationIdentities: u has the wrong dimension");
  }
  if (!(std::abs(gamma.sum() - 1.0) <= 1e-12)) {
    throw InputError("CombinationIdentities: weights sum to " +
                     std::to_string(gamma.sum()) + ", not 1");
  }
  const int m = static_cast<int>(gamma.size());
  CombinationResiduals r;
  r.norm_of_sum = NormOfSumResidual(vectors, gamma);

  const Vector combo = vectors.transpose() * gamma;
  double pairwise = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      pairwise += gamma[i] * gamma[j] *
                  (vectors.row(i) - vectors.row(j)).squaredNorm();
    }
  }
  const Vector to_u = (vectors.rowwise() - u.transpose()).rowwise().squaredNorm();
  const Vector to_avg =
      (vectors.rowwise() - combo.transpose()).rowwise().squaredNorm();
  const double lhs = (combo - u).squaredNorm();
  const double spread_u = gamma.dot(to_u);
  const double spread_avg = gamma.dot(to_avg);

  r.shifted = Relative(lhs - (spread_u - 0.5 * pairwise),
                       std::max({std::abs(lhs), std::abs(spread_u),
                                 std::abs(0.5 * pairwise)}));
  r.dispersion = Relative(0.5 * pairwise - spread_avg,
                          std::max(std::abs(0.5 * pairwise),
                                   std::abs(spread_avg)));
  r.general_average = Relative(lhs - (spread_u - spread_avg),
                               std::max({std::abs(lhs), std::abs(spread_u),
                                         std::abs(spread_avg)}));
  return r;
}

InequalityCheck EdgeDispersionCheck(const DirectedGraph& g, const Matrix& z,
                                    double tol) {
  const int m = g.num_nodes();
  if (z.rows() != m) throw InputError("EdgeDispersionCheck: row count");
  const GraphMetrics metrics = ComputeMetrics(g);
  double edges = 0.0;
  for (const auto& [j, l] : g.Edges()) edges += (z.row(j) - z.row(l)).squaredNorm();
  double pairs = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int l = j + 1; l < m; ++l) pairs += (z.row(j) - z.row(l)).squaredNorm();
  }
  const double bound =
      2.0 / (metrics.diameter * static_cast<double>(metrics.max_edge_utility)) *
      pairs;
  return MakeCheck(bound, edges, tol);
}

MixingContraction MixingContractionCheck(const Matrix& w,
                                         const DirectedGraph& g,
                                         const Vector& phi, const Vector& pi,
                                         const Matrix& z, const Vector& u,
                                         double tol) {
  const int m = g.num_nodes();
  if (w.rows() != m || w.cols() != m || z.rows() != m ||
      u.size() != z.cols()) {
    throw InputError("MixingContractionCheck: dimension mismatch");
  }
  CheckStochastic(phi, "MixingContractionCheck");
  CheckStochastic(pi, "MixingContractionCheck");
  const double gap = (w.transpose() * phi - pi).lpNorm<Eigen::Infinity>();
  if (!(gap <= 1e-10)) {
    throw InputError("MixingContractionCheck: phi' W differs from pi' by " +
                     std::to_string(gap));
  }
  const GraphMetrics metrics = ComputeMetrics(g);
  const double top = pi.maxCoeff();
  const double wmin = MinPositiveEntry(w);
  MixingContraction out;
  out.coefficient = phi.minCoeff() * wmin * wmin /
                    (top * top * metrics.diameter *
                     static_cast<double>(metrics.max_edge_utility));

  const Matrix r = w * z;
  const double dispersion = WeightedDispersion(z, pi);
  double lhs = 0.0, first = 0.0;
  for (int i = 0; i < m; ++i) {
    lhs += phi[i] * (r.row(i) - u.transpose()).squaredNorm();
    first += pi[i] * (z.row(i) - u.transpose()).squaredNorm();
  }
  out.expanded = MakeCheck(lhs, first - out.coefficient * dispersion, tol);

  const Matrix ones_u = Consensual(u, m);
  const Matrix ones_avg = Consensual(WeightedAverage(z, pi), m);
  const double c_lhs = std::pow(WeightedNorm(r - ones_u, phi), 2);
  const double c_rhs = std::pow(WeightedNorm(z - ones_u, pi), 2) -
                       out.coefficient *
                           std::pow(WeightedNorm(z - ones_avg, pi), 2);
  out.compact = MakeCheck(c_lhs, c_rhs, tol);
  return out;
}

Matrix ScaledGradientMatrix(const Matrix& z, const Game& game,
                            const std::vector<double>& alpha) {
  const int m = game.num_agents();
  if (z.rows() != m || z.cols() != game.total_dim() ||
      static_cast<int>(alpha.size()) != m) {
    throw InputError("ScaledGradientMatrix: dimension mismatch");
  }
  Matrix out = Matrix::Zero(m, game.total_dim());
  for (int i = 0; i < m; ++i) {
    const Vector row = z.row(i).transpose();
    out.row(i).segment(game.offset(i), game.dim(i)) =
        alpha[i] * game.Gradient(i, row).transpose();
  }
  return out;
}

InequalityCheck GradientLipschitzCheck(const Game& game,
                                       const GameConstants& constants,
                                       int agent, const Vector& x,
                                       const Vector& y, double tol) {
  if (agent < 0 || agent >= constants.num_agents()) {
    throw InputError("GradientLipschitzCheck: agent out of range");
  }
  const double lhs =
      (game.Gradient(agent, x) - game.Gradient(agent, y)).squaredNorm();
  const double lip_sq = constants.lip_cross[agent] * constants.lip_cross[agent] +
                        constants.lip_own[agent] * constants.lip_own[agent];
  return MakeCheck(lhs, lip_sq * (x - y).squaredNorm(), tol);
}

InequalityCheck ScaledGradientLipschitzCheck(const Game& game,
                                             const GameConstants& constants,
                                             const std::vector<double>& alpha,
                                             const Matrix& z, const Matrix& y,
                                             const Vector& pi, double tol) {
  double lip_alpha_sq = 0.0;
  for (int i = 0; i < constants.num_agents(); ++i) {
    lip_alpha_sq = std::max(
        lip_alpha_sq,
        alpha[i] * alpha[i] *
            (constants.lip_cross[i] * constants.lip_cross[i] +
             constants.lip_own[i] * constants.lip_own[i]));
  }
  const Matrix diff = ScaledGradientMatrix(z, game, alpha) -
                      ScaledGradientMatrix(y, game, alpha);
  return MakeCheck(std::pow(WeightedNorm(diff, pi), 2),
                   lip_alpha_sq * std::pow(WeightedNorm(z - y, pi), 2), tol);
}

RoundBoundTerms RoundBoundCheck(const Matrix& z, const Matrix& z_next,
                                const Matrix& w, const Vector& pi,
                                const Vector& pi_next, const Vector& x_star,
                                const AggregatedConstants& constants,
                                double tol) {
  const int m = static_cast<int>(pi.size());
  if (z.rows() != m || z_next.rows() != m || w.rows() != m ||
      w.cols() != m || pi_next.size() != m || x_star.size() != z.cols() ||
      z_next.cols() != z.cols()) {
    throw InputError("RoundBoundCheck: trace fields disagree in shape");
  }
  const Matrix stacked = Consensual(x_star, m);
  const Matrix mixed = w * z;
  const Matrix avg = Consensual(WeightedAverage(z, pi), m);
  RoundBoundTerms t;
  t.next_error = std::pow(WeightedNorm(z_next - stacked, pi_next), 2);
  t.mixed_error = WeightedNorm(mixed - stacked, pi_next);
  t.mixed_spread = WeightedNorm(mixed - avg, pi_next);
  t.average_error_next = WeightedNorm(avg - stacked, pi_next);
  t.average_error = WeightedNorm(avg - stacked, pi);
  const double la = constants.lip_alpha;
  const double rhs = (1.0 + la * la) * t.mixed_error * t.mixed_error -
                     2.0 * constants.beta_alpha * t.average_error *
                         t.average_error +
                     2.0 * la * t.mixed_error * t.mixed_spread +
                     2.0 * la * t.mixed_spread * t.average_error_next;
  t.check = MakeCheck(t.next_error, rhs, tol);
  return t;
}

FuzzRow ToFuzzRow(std::uint64_t seed, const InequalityCheck& c) {
  return FuzzRow{seed, c.lhs, c.rhs, c.slack};
}

void Record(FuzzSummary& summary, std::uint64_t seed,
            const InequalityCheck& c) {
  if (summary.rows.empty() || c.slack < summary.worst_slack) {
    summary.worst_slack = c.slack;
  }
  summary.rows.push_back(ToFuzzRow(seed, c));
  if (!c.pass) ++summary.violations;
}

}  // namespace nashseek
