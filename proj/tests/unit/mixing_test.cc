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

#include <cmath>

#include <gtest/gtest.h>

#include "nashseek/error.h"
#include "nashseek/mixing.h"
#include "oracles.h"

namespace nashseek {
namespace {

TEST(BuildWeights, RowStochasticAndCompatible) {
  const DirectedGraph g = MakeStar(5);
  const WeightMatrix w = BuildWeights(g, DefaultMixingDelta(g.MaxInDegree()));
  EXPECT_DOUBLE_EQ(w.w(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(w.w(0, 3), 0.125);
  EXPECT_DOUBLE_EQ(w.w(3, 3), 0.875);
  EXPECT_DOUBLE_EQ(w.w(3, 1), 0.0);
  EXPECT_DOUBLE_EQ(w.min_positive, 0.125);
  const WeightCheck c = ValidateWeights(w.w, g, 0.125);
  EXPECT_TRUE(c.ok()) << (c.failures.empty() ? "" : c.failures.front());
}

TEST(BuildWeights, RejectsTooLargeDelta) {
  EXPECT_THROW(BuildWeights(MakeStar(5), 0.25), InputError);
  EXPECT_DOUBLE_EQ(DefaultMixingDelta(0), 0.5);
}

TEST(ValidateWeights, ReportsEachProblem) {
  const DirectedGraph g = MakeCycle(3);
  Matrix w = BuildWeights(g, 0.5).w;
  Matrix bad = w;
  bad(0, 1) = 0.1;  // not an edge 1 -> 0
  bad(0, 0) -= 0.1;
  WeightCheck c = ValidateWeights(bad, g, 0.1);
  EXPECT_FALSE(c.compatible);
  EXPECT_TRUE(c.row_sums);
  bad = w;
  bad(1, 1) += 0.2;
  c = ValidateWeights(bad, g, 0.1);
  EXPECT_FALSE(c.row_sums);
  EXPECT_NEAR(c.max_row_sum_error, 0.2, 1e-15);
  c = ValidateWeights(w, g, 0.6);
  EXPECT_FALSE(c.floor);
  EXPECT_THROW(ValidateWeights(Matrix::Identity(2, 2), g, 0.1), InputError);
}

TEST(WeightSequence, CachesAcrossEpochs) {
  const WeightSequence s(GraphSequence::TimeVarying(8, 3, 5, 1), 0.5 / 3);
  const Matrix w3 = s.Weights(3);
  for (int k = 0; k < 20; ++k) s.Weights(k);
  EXPECT_EQ(s.Weights(3), w3);
  EXPECT_EQ(s.Weights(3), BuildWeights(s.Graph(3), 0.5 / 3).w);
  EXPECT_DOUBLE_EQ(s.Floor(), 0.5 / 3);
  EXPECT_EQ(s.Metrics(3).diameter, Diameter(s.Graph(3)));
}

TEST(EstimatePiStatic, MatchesEigenvectorOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const DirectedGraph g = MakeRandomStronglyConnected(7, 2, seed);
    const Matrix w = BuildWeights(g, 0.25).w;
    const PiSequence pi = EstimatePiStatic(w);
    EXPECT_TRUE(pi.is_static);
    EXPECT_LE(pi.residual, 1e-12);
    EXPECT_LE((pi.At(0) - oracle::PerronVector(w)).lpNorm<Eigen::Infinity>(),
              1e-10);
    EXPECT_NEAR(pi.At(5).sum(), 1.0, 1e-14);
  }
}

TEST(EstimatePi, TimeVaryingSatisfiesRecursionAndMatchesProduct) {
  const WeightSequence s(GraphSequence::TimeVarying(6, 2, 9, 1), 0.25);
  const PiSequence pi = EstimatePi(s, 40);
  ASSERT_EQ(pi.num_rounds(), 40);
  EXPECT_LE(pi.residual, 1e-12);
  for (int k = 0; k < 40; ++k) {
    const Vector lhs = s.Weights(k).transpose() * pi.At(k + 1);
    EXPECT_LE((lhs - pi.At(k)).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_NEAR(pi.At(k).sum(), 1.0, 1e-12);
  }
  // A long enough explicit backward product agrees at round 0.
  std::vector<Matrix> ws;
  for (int k = 0; k < 4000; ++k) ws.push_back(s.Weights(k));
  EXPECT_LE((pi.At(0) - oracle::BackwardProduct(ws)).lpNorm<Eigen::Infinity>(),
            1e-10);
}

TEST(EstimatePi, StaticSequenceTakesDirectRoute) {
  const WeightSequence s(GraphSequence::Static(MakeCycle(5)), 0.5);
  const PiSequence pi = EstimatePi(s, 10);
  EXPECT_TRUE(pi.is_static);
  EXPECT_LE((pi.At(7) - Vector::Constant(5, 0.2)).lpNorm<Eigen::Infinity>(), 1e-12);
}

TEST(EstimatePi, FloorHoldsOnRandomSequences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int m = 3 + static_cast<int>(seed % 4);
    const WeightSequence s(GraphSequence::TimeVarying(m, 2, seed, 1), 0.25);
    const PiSequence pi = EstimatePi(s, 30);
    const double w = s.Floor();
    for (int k = 0; k <= 30; ++k) {
      EXPECT_GE(pi.At(k).minCoeff(), std::pow(w, m) / m - 1e-15);
    }
  }
}

TEST(Eta, HandComputedRound) {
  // Uniform pi on a 4-cycle with w = 1/2: eta = (1/4)(1/4) / ((1/16) 3 6).
  const Vector pi = Vector::Constant(4, 0.25);
  EXPECT_NEAR(EtaRound(pi, pi, 0.5, 3, 6), 1.0 / 18.0, 1e-15);
  EXPECT_THROW(EtaRound(pi, pi, 0.0, 3, 6), InputError);
  EXPECT_NEAR(PessimisticEta(4, 0.5), std::pow(0.5, 6) / 36.0, 1e-18);
  EXPECT_NEAR(ConservativeEtaFloor(4, 0.5), std::pow(0.5, 6) / 144.0, 1e-18);
}

TEST(Eta, ReportBoundsFromBelow) {
  const WeightSequence s(GraphSequence::TimeVarying(6, 2, 3, 1), 0.25);
  const PiSequence pi = EstimatePi(s, 25);
  const EtaReport r = ComputeEta(s, pi, 25);
  ASSERT_EQ(r.eta.size(), 25U);
  double lo = 1.0;
  for (double e : r.eta) lo = std::min(lo, e);
  EXPECT_DOUBLE_EQ(r.bold, lo);
  EXPECT_GE(r.bold, r.conservative_floor);
  EXPECT_GT(r.bold, 0.0);
  EXPECT_LT(r.bold, 1.0);
}

}  // namespace
}  // namespace nashseek
