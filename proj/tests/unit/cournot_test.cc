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

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "nashseek/cournot.h"
#include "nashseek/error.h"
#include "oracles.h"

namespace nashseek {
namespace {

CournotSampling DefaultSampling() { return CournotSampling{}; }

FullInfoOptions Tight() {
  FullInfoOptions o;
  o.tol = 1e-12;
  return o;
}

TEST(SampleCournot, RespectsRangesAndCoversMarkets) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const CournotSpec s = SampleCournot(DefaultSampling(), seed);
    EXPECT_EQ(s.num_firms(), 20);
    EXPECT_EQ(s.num_markets, 7);
    const Matrix b = s.JointIncidence();
    for (int h = 0; h < 7; ++h) EXPECT_GE(b.row(h).sum(), 1.0);
    for (int i = 0; i < 20; ++i) {
      EXPECT_GE(s.dim(i), 1);
      EXPECT_LE(s.dim(i), 2);
      // Each column is one market, each firm serves distinct markets.
      EXPECT_EQ(s.incidence[i].colwise().sum(), Matrix::Ones(1, s.dim(i)));
      EXPECT_LE(s.incidence[i].rowwise().sum().maxCoeff(), 1.0);
      for (int j = 0; j < s.dim(i); ++j) {
        EXPECT_GE(s.capacity[i][j], 5.0);
        EXPECT_LE(s.capacity[i][j], 10.0);
        EXPECT_GE(s.cost_quad[i](j, j), 1.0);
        EXPECT_LE(s.cost_quad[i](j, j), 8.0);
        EXPECT_GE(s.cost_lin[i][j], 1.0);
        EXPECT_LE(s.cost_lin[i][j], 2.0);
      }
    }
    EXPECT_GE(s.price_intercept.minCoeff(), 10.0);
    EXPECT_LE(s.price_intercept.maxCoeff(), 20.0);
    EXPECT_GE(s.price_slope.minCoeff(), 1.0);
    EXPECT_LE(s.price_slope.maxCoeff(), 3.0);
  }
}

TEST(SampleCournot, IsDeterministicPerSeed) {
  const CournotSpec a = SampleCournot(DefaultSampling(), 42), b = SampleCournot(DefaultSampling(), 42);
  const CournotSpec c = SampleCournot(DefaultSampling(), 43);
  EXPECT_EQ(a.price_intercept, b.price_intercept);
  EXPECT_EQ(a.JointIncidence(), b.JointIncidence());
  EXPECT_NE(a.price_intercept, c.price_intercept);
}

TEST(SampleCournot, RejectsImpossibleCoverage) {
  CournotSampling s;
  s.num_firms = 2;
  s.num_markets = 7;
  EXPECT_THROW(SampleCournot(s, 1), InputError);
}

TEST(CournotGradient, MatchesFiniteDifferences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 12.0);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const CournotSpec s = SampleCournot(DefaultSampling(), seed);
    Vector x(s.total_dim());
    for (int t = 0; t < x.size(); ++t) x[t] = u(rng);  // infeasible points too
    for (int i = 0; i < s.num_firms(); ++i) {
      const Vector g = CournotGradient(s, i, x);
      const Vector fd = oracle::CostGradientFd(s, i, x);
      EXPECT_LE((g - fd).lpNorm<Eigen::Infinity>(), 1e-5 * (1 + g.norm()));
    }
  }
}

TEST(CournotConstants, DiagonalClosedForm) {
  // One firm, one market: own Jacobian 2Q + 2 chi.
  CournotSpec s;
  s.num_markets = 1;
  s.incidence = {Matrix::Ones(1, 1)};
  s.cost_quad = {Matrix::Constant(1, 1, 3.0)};
  s.cost_lin = {Vector::Constant(1, 1.0)};
  s.price_intercept = Vector::Constant(1, 10.0);
  s.price_slope = Vector::Constant(1, 2.0);
  s.capacity = {Vector::Constant(1, 5.0)};
  const GameConstants k = ComputeCournotConstants(s);
  EXPECT_DOUBLE_EQ(k.mu[0], 10.0);
  EXPECT_DOUBLE_EQ(k.lip_own[0], 10.0);
  EXPECT_DOUBLE_EQ(k.lip_cross[0], 0.0);
}

TEST(CournotConstants, BoundTheGradientDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 15.0);
  const CournotSpec s = SampleCournot(DefaultSampling(), 9);
  const GameConstants k = ComputeCournotConstants(s);
  for (int t = 0; t < 200; ++t) {
    Vector x(s.total_dim()), y(s.total_dim());
    for (int j = 0; j < x.size(); ++j) x[j] = u(rng), y[j] = u(rng);
    for (int i = 0; i < s.num_firms(); ++i) {
      // Own block only: strong monotonicity and own Lipschitz bound.
      Vector y_own = x;
      y_own.segment(s.offset(i), s.dim(i)) = y.segment(s.offset(i), s.dim(i));
      const Vector d = x.segment(s.offset(i), s.dim(i)) -
                       y.segment(s.offset(i), s.dim(i));
      const Vector gd = CournotGradient(s, i, x) - CournotGradient(s, i, y_own);
      EXPECT_GE(gd.dot(d), k.mu[i] * d.squaredNorm() - 1e-9);
      EXPECT_LE(gd.norm(), k.lip_own[i] * d.norm() + 1e-9);
      // Other blocks only.
      Vector y_cross = y;
      y_cross.segment(s.offset(i), s.dim(i)) = x.segment(s.offset(i), s.dim(i));
      const Vector gc = CournotGradient(s, i, x) - CournotGradient(s, i, y_cross);
      EXPECT_LE(gc.norm(), k.lip_cross[i] * (x - y_cross).norm() + 1e-9);
    }
  }
}

TEST(CournotSpec, ValidateNamesTheProblem) {
  CournotSpec s = SampleCournot(DefaultSampling(), 1);
  CournotSpec bad = s;
  bad.price_slope[0] = 0.0;
  EXPECT_THROW(bad.Validate(), SpecError);
  bad = s;
  bad.cost_quad[3](0, 0) = -1.0;
  try {
    bad.Validate();
    FAIL();
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
  bad = s;
  bad.incidence[0](0, 0) = 0.5;
  EXPECT_THROW(bad.Validate(), SpecError);
  bad = s;
  bad.capacity.pop_back();
  EXPECT_THROW(bad.Validate(), SpecError);
}

TEST(Cournot, EquilibriumIsPermutationEquivariant) {
  const CournotSpec s = SampleCournot(DefaultSampling(), 17);
  std::vector<int> perm(s.num_firms());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(3));
  const CournotSpec p = PermuteFirms(s, perm);
  const Vector xs =
      SolveNashFullInfo(MakeCournotGame(s), ComputeCournotConstants(s), Tight()).x;
  const Vector xp =
      SolveNashFullInfo(MakeCournotGame(p), ComputeCournotConstants(p), Tight()).x;
  for (int k = 0; k < p.num_firms(); ++k) {
    const int src = perm[k];
    EXPECT_LE((xp.segment(p.offset(k), p.dim(k)) -
               xs.segment(s.offset(src), s.dim(src)))
                  .lpNorm<Eigen::Infinity>(),
              1e-8);
  }
}

TEST(Cournot, DecoupledInstancesMatchClosedForm) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const CournotSpec s = oracle::DecoupledCournot(6, seed);
    const GameConstants k = ComputeCournotConstants(s);
    EXPECT_TRUE(k.HasDecoupledAgent());
    const Vector x = SolveNashFullInfo(MakeCournotGame(s), k, Tight()).x;
    EXPECT_LE((x - oracle::DecoupledEquilibrium(s)).lpNorm<Eigen::Infinity>(),
              1e-8);
  }
}

}  // namespace
}  // namespace nashseek
