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

#ifndef NASHSEEK_COURNOT_H_
#define NASHSEEK_COURNOT_H_

#include <cstdint>
#include <vector>

#include "nashseek/game.h"

namespace nashseek {

// Networked Nash-Cournot game. Firm i delivers x_i in [0, C_i] (one entry per
// market it serves) and pays
//
//   J_i(x) = x_i' Q_i x_i + q_i' x_i - (P - Xi B x)' B_i x_i,
//
// where B = [B_1 ... B_m] maps production to market supply, P are the price
// intercepts and Xi = Diag(chi) the price slopes.
struct CournotSpec {
  int num_markets = 0;
  std::vector<Matrix> incidence;  // B_i, num_markets x n_i, entries in {0,1}
  std::vector<Matrix> cost_quad;  // Q_i, n_i x n_i, symmetric positive definite
  std::vector<Vector> cost_lin;   // q_i
  Vector price_intercept;         // P_bar, one per market, > 0
  Vector price_slope;             // chi, one per market, > 0
  std::vector<Vector> capacity;   // C_i > 0
  std::uint64_t seed = 0;         // provenance only

  int num_firms() const { return static_cast<int>(incidence.size()); }
  int dim(int firm) const { return static_cast<int>(incidence[firm].cols()); }
  int total_dim() const;
  int offset(int firm) const;

  // Throws SpecError describing the first violated invariant.
  void Validate() const;

  // B = [B_1 ... B_m], num_markets x n.
  Matrix JointIncidence() const;
};

double CournotCost(const CournotSpec& spec, int firm, const Vector& joint);
Vector CournotGradient(const CournotSpec& spec, int firm, const Vector& joint);

// mu_i = lambda_min(sym(2Q_i + 2B_i' Xi B_i)), L_i = ||2Q_i + 2B_i' Xi B_i||_2,
// L_{-i} = ||B_i' Xi B_{-i}||_2. Throws SpecError if some Q_i is not positive
// definite.
GameConstants ComputeCournotConstants(const CournotSpec& spec);

// Wraps a validated spec into a Game whose action sets are [0, C_i].
Game MakeCournotGame(const CournotSpec& spec);

struct CournotSampling {
  int num_firms = 20;
  int num_markets = 7;
  int max_markets_per_firm = 2;
  double capacity_lo = 5.0, capacity_hi = 10.0;
  double quad_lo = 1.0, quad_hi = 8.0;
  double lin_lo = 1.0, lin_hi = 2.0;
  double intercept_lo = 10.0, intercept_hi = 20.0;
  double slope_lo = 1.0, slope_hi = 3.0;
};

// Seeded random instance: diagonal Q_i, every market served by at least one
// firm, each firm serving 1..max_markets_per_firm distinct markets.
CournotSpec SampleCournot(const CournotSampling& sampling, std::uint64_t seed);

// Relabels firms: firm k of the result is firm perm[k] of spec.
CournotSpec PermuteFirms(const CournotSpec& spec, const std::vector<int>& perm);

}  // namespace nashseek

#endif  // NASHSEEK_COURNOT_H_
