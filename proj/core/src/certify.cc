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

#include "nashseek/certify.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "nashseek/error.h"

namespace nashseek {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest real root of c[0] x^d + ... + c[d] strictly above `floor`, or
// +inf.
double NextRootAbove(const std::vector<double>& c, double floor) {
  const int d = static_cast<int>(c.size()) - 1;
  if (d < 1 || c[0] == 0.0) return kInf;
  Matrix companion = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) companion(0, j) = -c[j + 1] / c[0];
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Matrix> es(companion, false);
  double best = kInf;
  for (int i = 0; i < d; ++i) {
    const auto r = es.eigenvalues()[i];
    if (std::abs(r.imag()) <= 1e-9 * std::max(1.0, std::abs(r.real())) &&
        r.real() > floor) {
      best = std::min(best, r.real());
    }
  }
  return best;
}

}  // namespace

AggregatedConstants AggregateConstants(const GameConstants& constants,
                                       const Vector& pi_min,
                                       const std::vector<double>& alpha) {
  const int m = constants.num_agents();
  if (m < 1 || static_cast<int>(constants.lip_own.size()) != m ||
      static_cast<int>(constants.lip_cross.size()) != m ||
      pi_min.size() != m || static_cast<int>(alpha.size()) != m) {
    throw InputError("AggregateConstants: per-agent inputs disagree in length");
  }
  AggregatedConstants out;
  double worst = 0.0, worst_scaled = 0.0;
  out.mono = kInf;
  out.beta_alpha = kInf;
  for (int i = 0; i < m; ++i) {
    const double mu = constants.mu[i];
    const double own = constants.lip_own[i];
    const double cross = constants.lip_cross[i];
    if (!(mu > 0.0) || !(own > 0.0) || !(cross >= 0.0) || !(alpha[i] > 0.0)) {
      throw InputError("AggregateConstants: agent " + std::to_string(i) +
                       " has a nonpositive constant or stepsize");
    }
    if (!(pi_min[i] > 0.0) || pi_min[i] > 1.0) {
      throw InputError("AggregateConstants: pi minimum of agent " +
                       std::to_string(i) + " is outside (0, 1]");
    }
    const double sq = cross * cross + own * own;
    worst = std::max(worst, sq);
    worst_scaled = std::max(worst_scaled, alpha[i] * alpha[i] * sq);
    out.mono = std::min(out.mono, pi_min[i] * mu);
    out.beta_alpha = std::min(out.beta_alpha, pi_min[i] * alpha[i] * mu);
  }
  out.lip = std::sqrt(worst);
  out.lip_alpha = std::sqrt(worst_scaled);
  return out;
}

Vector PerAgentPiMin(const PiSequence& pi, std::int64_t num_rounds) {
  if (pi.is_static) return pi.At(0);
  if (num_rounds < 1 || pi.num_rounds() < num_rounds) {
    throw InputError("PerAgentPiMin: pi sequence does not cover the horizon");
  }
  Vector out = pi.At(1);
  for (std::int64_t k = 2; k <= num_rounds; ++k) out = out.cwiseMin(pi.At(k));
  return out;
}

Eigen::Matrix2d BuildQbar(double beta_alpha, double lip_alpha, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw InputError("BuildQbar: eta = " + std::to_string(eta) +
                     " is outside (0, 1)");
  }
  if (!(beta_alpha >= 0.0) || !(lip_alpha >= 0.0)) {
    throw InputError("BuildQbar: constants must be nonnegative");
  }
  const double off = 2.0 * std::sqrt(1.0 - eta) * lip_alpha;
  Eigen::Matrix2d q;
  q << 1.0 - 2.0 * beta_alpha + lip_alpha * lip_alpha, off, off,
      (1.0 + lip_alpha) * (1.0 + lip_alpha) * (1.0 - eta);
  return q;
}

double LambdaMax2x2(const Eigen::Matrix2d& m) {
  const double mid = 0.5 * (m(0, 0) + m(1, 1));
  const double half_gap = 0.5 * (m(0, 0) - m(1, 1));
  const double off = 0.5 * (m(0, 1) + m(1, 0));
  return mid + std::hypot(half_gap, off);
}

StepsizeRegion CheckStepsizeRegion(double alpha, double lip, double mono,
                                   double eta) {
  if (!(mono > 0.0) || !(mono < lip)) {
    throw InputError("CheckStepsizeRegion: need 0 < mono < L (mono = " +
                     std::to_string(mono) + ", L = " + std::to_string(lip) +
                     ")");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw InputError("CheckStepsizeRegion: eta outside (0, 1)");
  }
  if (!(alpha > 0.0)) throw InputError("CheckStepsizeRegion: alpha <= 0");

  const double a = alpha, l = lip, d = mono, e = eta;
  const double l2 = l * l, l4 = l2 * l2;
  StepsizeRegion r;
  r.alpha = alpha;
  r.cond_qbar_corner = l2 * a * a - 2.0 * d * a + 1.0;
  r.cond_qbar_det =
      (1.0 - e) * (l4 * std::pow(a, 4) + 2.0 * l2 * (l - d) * std::pow(a, 3) -
                   2.0 * l * (l + 2.0 * d) * a * a + 2.0 * (l - d) * a + 1.0);
  r.cond_complement_corner = a * (2.0 * d - l2 * a);
  r.cond_complement_det =
      a * (l4 * (1.0 - e) * std::pow(a, 3) +
           2.0 * l2 * (l - d) * (1.0 - e) * a * a -
           (4.0 * l * (l + d) * (1.0 - e) + l2 * e) * a + 2.0 * e * d);
  r.qbar_corner = r.cond_qbar_corner > 0.0;
  r.qbar_det = r.cond_qbar_det > 0.0;
  r.complement_det = r.cond_complement_det > 0.0;

  r.interval_upper = 2.0 * d / l2;
  r.in_interval = a > 0.0 && a < r.interval_upper;
  // For a > 0 the corner condition is a < 2d/L^2; comparing in alpha keeps the
  // endpoint itself on the failing side, which the rounded product does not.
  r.complement_corner = r.in_interval;
  const double disc = 2.0 * l * std::sqrt(l * d + d * d);
  // The roots below are values of alpha^2.
  r.quartic_low = std::sqrt((l * (l + 2.0 * d) - disc) / l4);
  r.quartic_high = std::sqrt((l * (l + 2.0 * d) + disc) / l4);
  r.in_quartic_region = a < r.quartic_low || a > r.quartic_high;
  r.cubic_threshold = (-(l - d) + std::sqrt(5.0 * l2 + 2.0 * l * d + d * d)) / l2;
  r.above_cubic_threshold = a > r.cubic_threshold;

  if (!r.complement_corner) {
    r.binding = "complement_corner";
  } else if (!r.complement_det) {
    r.binding = "complement_det";
  } else if (!r.qbar_det) {
    r.binding = "qbar_det";
  } else if (!r.qbar_corner) {
    r.binding = "qbar_corner";
  } else {
    // Next sign change above alpha of each condition.
    struct Limit {
      const char* name;
      double root;
    };
    const Limit limits[] = {
        {"complement_corner", NextRootAbove({-l2, 2.0 * d, 0.0}, a)},
        {"complement_det",
         NextRootAbove({l4 * (1.0 - e), 2.0 * l2 * (l - d) * (1.0 - e),
                        -(4.0 * l * (l + d) * (1.0 - e) + l2 * e),
                        2.0 * e * d},
                       a)},
        {"qbar_det", NextRootAbove({l4, 2.0 * l2 * (l - d),
                                    -2.0 * l * (l + 2.0 * d), 2.0 * (l - d),
                                    1.0},
                                   a)},
    };
    const Limit* best = &limits[0];
    for (const Limit& lim : limits) {
      if (lim.root < best->root) best = &lim;
    }
    r.binding = best->name;
  }
  return r;
}

StepsizeCertificate Certify(const GameConstants& constants,
                            const Vector& pi_min, double eta,
                            const std::vector<double>& alpha) {
  StepsizeCertificate c;
  c.constants = AggregateConstants(constants, pi_min, alpha);
  c.eta = eta;
  c.qbar = BuildQbar(c.constants.beta_alpha, c.constants.lip_alpha, eta);
  c.lambda_max = LambdaMax2x2(c.qbar);
  c.certified = c.lambda_max < 1.0;
  c.uniform_alpha = std::all_of(alpha.begin(), alpha.end(),
                                [&](double a) { return a == alpha.front(); });
  c.alpha_upper = 2.0 * c.constants.mono / (c.constants.lip * c.constants.lip);
  if (c.uniform_alpha && c.constants.mono < c.constants.lip) {
    c.region = CheckStepsizeRegion(alpha.front(), c.constants.lip,
                                   c.constants.mono, eta);
  }
  return c;
}

StepsizeCertificate Certify(const GameConstants& constants,
                            const PiSequence& pi, std::int64_t num_rounds,
                            const EtaReport& eta,
                            const std::vector<double>& alpha) {
  const bool fallback = eta.eta.empty();
  const double e = fallback ? eta.conservative_floor : eta.bold;
  const Vector pi_min = pi.is_static ? pi.At(0)
                                     : PerAgentPiMin(pi, std::max<std::int64_t>(
                                                             num_rounds, 1));
  StepsizeCertificate c = Certify(constants, pi_min, e, alpha);
  c.eta_from_floor = fallback;
  return c;
}

std::vector<GridPoint> StepsizeGrid(double lip, double mono, double eta,
                                    const std::vector<double>& alphas) {
  std::vector<GridPoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    GridPoint p;
    p.alpha = a;
    p.lambda_max = LambdaMax2x2(BuildQbar(a * mono, a * lip, eta));
    p.certified = p.lambda_max < 1.0;
    out.push_back(p);
  }
  return out;
}

}  // namespace nashseek
