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

#ifndef NASHSEEK_CERTIFY_H_
#define NASHSEEK_CERTIFY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nashseek/game.h"
#include "nashseek/mixing.h"

namespace nashseek {

// Network-level constants of the contraction bound.
//   lip        L = sqrt(max_i (L_{-i}^2 + L_i^2))
//   mono       min_i pi_min_i mu_i   (the monotonicity constant, not the
//                                      mixing weight)
//   lip_alpha  sqrt(max_i alpha_i^2 (L_{-i}^2 + L_i^2))
//   beta_alpha min_i pi_min_i alpha_i mu_i
// where pi_min_i = min_{k >= 1} [pi_k]_i.
struct AggregatedConstants {
  double lip = 0.0;
  double mono = 0.0;
  double lip_alpha = 0.0;
  double beta_alpha = 0.0;
};

// Throws InputError on nonpositive mu_i, L_i, alpha_i, negative L_{-i}, or
// pi minima outside (0, 1].
AggregatedConstants AggregateConstants(const GameConstants& constants,
                                       const Vector& pi_min,
                                       const std::vector<double>& alpha);

// min over k = 1..num_rounds of [pi_k]_i, per agent.
Vector PerAgentPiMin(const PiSequence& pi, std::int64_t num_rounds);

// [[1 - 2b + l^2, 2 sqrt(1-eta) l], [2 sqrt(1-eta) l, (1 + l)^2 (1 - eta)]].
// Throws InputError unless eta is in (0, 1) and b, l >= 0.
Eigen::Matrix2d BuildQbar(double beta_alpha, double lip_alpha, double eta);

// Largest eigenvalue of a symmetric 2x2 matrix, written to avoid
// cancellation.
double LambdaMax2x2(const Eigen::Matrix2d& m);

// The four polynomial conditions of the stepsize region for uniform alpha,
// evaluated literally, and the three solved intervals.
struct StepsizeRegion {
  double alpha = 0.0;
  // Values of the left-hand sides; each condition is value > 0.
  double cond_qbar_corner = 0.0;     // [Qbar]_11 > 0
  double cond_qbar_det = 0.0;        // det(Qbar) > 0
  double cond_complement_corner = 0.0;  // [I - Qbar]_11 > 0
  double cond_complement_det = 0.0;  // det(I - Qbar) > 0
  bool qbar_corner = false;
  bool qbar_det = false;
  bool complement_corner = false;
  bool complement_det = false;

  // (0, 2 mono / L^2).
  double interval_upper = 0.0;
  bool in_interval = false;
  // alpha outside [low, high], the positive roots of
  // L^4 a^4 - 2L(L+2mono) a^2 + 1.
  double quartic_low = 0.0;
  double quartic_high = 0.0;
  bool in_quartic_region = false;
  // alpha > (-(L - mono) + sqrt(5L^2 + 2 L mono + mono^2)) / L^2.
  double cubic_threshold = 0.0;
  bool above_cubic_threshold = false;

  // Conditions on I - Qbar alone decide lambda_max(Qbar) < 1.
  bool complement_pair() const { return complement_corner && complement_det; }
  bool qbar_pair() const { return qbar_corner && qbar_det; }
  bool all_four() const { return qbar_pair() && complement_pair(); }

  // First failing condition, or when all pass the one whose smallest
  // positive root is closest above alpha.
  std::string binding;
};

// Throws InputError unless 0 < mono < L, eta in (0, 1) and alpha > 0.
StepsizeRegion CheckStepsizeRegion(double alpha, double lip, double mono,
                                   double eta);

struct StepsizeCertificate {
  AggregatedConstants constants;
  double eta = 0.0;
  bool eta_from_floor = false;  // true when no per-round eta was available
  Eigen::Matrix2d qbar = Eigen::Matrix2d::Zero();
  double lambda_max = 0.0;
  bool certified = false;
  bool uniform_alpha = false;
  double alpha_upper = 0.0;  // 2 mono / L^2
  // Present for uniform stepsizes when mono < L.
  std::optional<StepsizeRegion> region;
};

// Certified iff lambda_max(Qbar) < 1 with eta = the horizon minimum from the
// report, or the report's conservative floor when it has no rounds.
StepsizeCertificate Certify(const GameConstants& constants,
                            const PiSequence& pi, std::int64_t num_rounds,
                            const EtaReport& eta,
                            const std::vector<double>& alpha);

// Same, with the pi minima and eta supplied directly.
StepsizeCertificate Certify(const GameConstants& constants,
                            const Vector& pi_min, double eta,
                            const std::vector<double>& alpha);

struct GridPoint {
  double alpha = 0.0;
  double lambda_max = 0.0;
  bool certified = false;
};

// lambda_max(Qbar) for uniform alpha over the given grid.
std::vector<GridPoint> StepsizeGrid(double lip, double mono, double eta,
                                    const std::vector<double>& alphas);

}  // namespace nashseek

#endif  // NASHSEEK_CERTIFY_H_
