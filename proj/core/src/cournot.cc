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

#include "nashseek/cournot.h"

#include <algorithm>
#include <memory>
#include <numeric>
#include <random>
#include <string>

#include "nashseek/error.h"

namespace nashseek {
namespace {

std::string FirmTag(int i) { return "firm " + std::to_string(i) + ": "; }

void CheckJoint(const CournotSpec& spec, int firm, const Vector& joint) {
  if (firm < 0 || firm >= spec.num_firms()) {
    throw InputError("firm index " + std::to_string(firm) + " out of range");
  }
  if (joint.size() != spec.total_dim()) {
    throw InputError("joint vector has dimension " +
                     std::to_string(joint.size()) + ", expected " +
                     std::to_string(spec.total_dim()));
  }
}

// Market supply B x.
Vector Supply(const CournotSpec& spec, const Vector& joint) {
  Vector supply = Vector::Zero(spec.num_markets);
  int off = 0;
  for (int i = 0; i < spec.num_firms(); ++i) {
    supply += spec.incidence[i] * joint.segment(off, spec.dim(i));
    off += spec.dim(i);
  }
  return supply;
}

double SpectralNorm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

}  // namespace

int CournotSpec::total_dim() const {
  int n = 0;
  for (const Matrix& b : incidence) n += static_cast<int>(b.cols());
  return n;
}

int CournotSpec::offset(int firm) const {
  int off = 0;
  for (int i = 0; i < firm; ++i) off += dim(i);
  return off;
}

Matrix CournotSpec::JointIncidence() const {
  Matrix b(num_markets, total_dim());
  int off = 0;
  for (int i = 0; i < num_firms(); ++i) {
    b.middleCols(off, dim(i)) = incidence[i];
    off += dim(i);
  }
  return b;
}

void CournotSpec::Validate() const {
  const int m = num_firms();
  if (m < 1) throw SpecError("need at least one firm");
  if (num_markets < 1) throw SpecError("need at least one market");
  if (static_cast<int>(cost_quad.size()) != m ||
      static_cast<int>(cost_lin.size()) != m ||
      static_cast<int>(capacity.size()) != m) {
    throw SpecError("per-firm arrays disagree on the number of firms");
  }
  if (price_intercept.size() != num_markets ||
      price_slope.size() != num_markets) {
    throw SpecError("price vectors must have one entry per market");
  }
  if ((price_intercept.array() <= 0.0).any()) {
    throw SpecError("price intercepts must be positive");
  }
  if ((price_slope.array() <= 0.0).any()) {
    throw SpecError("price slopes must be positive");
  }
  for (int i = 0; i < m; ++i) {
    const Matrix& b = incidence[i];
    const int ni = static_cast<int>(b.cols());
    if (ni < 1) throw SpecError(FirmTag(i) + "needs at least one decision");
    if (b.rows() != num_markets) {
      throw SpecError(FirmTag(i) + "incidence matrix needs one row per market");
    }
    if (((b.array() != 0.0) && (b.array() != 1.0)).any()) {
      throw SpecError(FirmTag(i) + "incidence entries must be 0 or 1");
    }
    const Matrix& q = cost_quad[i];
    if (q.rows() != ni || q.cols() != ni) {
      throw SpecError(FirmTag(i) + "Q has the wrong shape");
    }
    if ((q - q.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(1.0, q.cwiseAbs().maxCoeff())) {
      throw SpecError(FirmTag(i) + "Q must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(q);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) {
      throw SpecError(FirmTag(i) + "Q must be positive definite");
    }
    if (cost_lin[i].size() != ni) {
      throw SpecError(FirmTag(i) + "q has the wrong length");
    }
    if (capacity[i].size() != ni || (capacity[i].array() <= 0.0).any()) {
      throw SpecError(FirmTag(i) + "capacities must be positive, one per decision");
    }
  }
}

double CournotCost(const CournotSpec& spec, int firm, const Vector& joint) {
  CheckJoint(spec, firm, joint);
  const auto xi = joint.segment(spec.offset(firm), spec.dim(firm));
  const Vector price = spec.price_intercept -
                       spec.price_slope.cwiseProduct(Supply(spec, joint));
  return xi.dot(spec.cost_quad[firm] * xi) + spec.cost_lin[firm].dot(xi) -
         price.dot(spec.incidence[firm] * xi);
}

Vector CournotGradient(const CournotSpec& spec, int firm,
                       const Vector& joint) {
  CheckJoint(spec, firm, joint);
  const Matrix& bi = spec.incidence[firm];
  const auto xi = joint.segment(spec.offset(firm), spec.dim(firm));
  const Vector price = spec.price_intercept -
                       spec.price_slope.cwiseProduct(Supply(spec, joint));
  return 2.0 * spec.cost_quad[firm] * xi + spec.cost_lin[firm] +
         bi.transpose() * spec.price_slope.asDiagonal() * (bi * xi) -
         bi.transpose() * price;
}

GameConstants ComputeCournotConstants(const CournotSpec& spec) {
  spec.Validate();
  const int m = spec.num_firms();
  const Matrix joint_b = spec.JointIncidence();
  const auto xi_diag = spec.price_slope.asDiagonal();
  GameConstants c;
  c.mu.resize(m);
  c.lip_own.resize(m);
  c.lip_cross.resize(m);
  for (int i = 0; i < m; ++i) {
    const Matrix& bi = spec.incidence[i];
    const Matrix own =
        2.0 * spec.cost_quad[i] + 2.0 * bi.transpose() * xi_diag * bi;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (own + own.transpose()));
    c.mu[i] = eig.eigenvalues().minCoeff();
    c.lip_own[i] = SpectralNorm(own);
    if (!(c.mu[i] > 0.0)) {
      throw SpecError(FirmTag(i) + "own-block Jacobian is not positive definite");
    }
    // Columns of B for every firm except i.
    const int ni = spec.dim(i);
    const int off = spec.offset(i);
    Matrix others(spec.num_markets, spec.total_dim() - ni);
    others << joint_b.leftCols(off),
        joint_b.rightCols(spec.total_dim() - off - ni);
    c.lip_cross[i] = SpectralNorm(bi.transpose() * xi_diag * others);
  }
  return c;
}

Game MakeCournotGame(const CournotSpec& spec) {
  spec.Validate();
  std::vector<Box> boxes;
  boxes.reserve(spec.num_firms());
  for (int i = 0; i < spec.num_firms(); ++i) {
    boxes.push_back(Box{Vector::Zero(spec.dim(i)), spec.capacity[i]});
  }
  auto shared = std::make_shared<const CournotSpec>(spec);
  return Game(std::move(boxes), [shared](int i, const Vector& joint) {
    return CournotGradient(*shared, i, joint);
  });
}

CournotSpec SampleCournot(const CournotSampling& s, std::uint64_t seed) {
  if (s.num_firms < 1 || s.num_markets < 1 || s.max_markets_per_firm < 1) {
    throw InputError("SampleCournot: sizes must be positive");
  }
  const int per_firm = std::min(s.max_markets_per_firm, s.num_markets);
  if (s.num_firms * per_firm < s.num_markets) {
    throw InputError("SampleCournot: too few firm-market links to serve every market");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  CournotSpec spec;
  spec.seed = seed;
  spec.num_markets = s.num_markets;

  // Market assignment, redrawn until every market has a supplier.
  std::vector<std::vector<int>> served;
  std::vector<int> markets(s.num_markets);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000) {
      throw InternalError("SampleCournot: could not cover every market");
    }
    served.assign(s.num_firms, {});
    std::vector<bool> covered(s.num_markets, false);
    for (int i = 0; i < s.num_firms; ++i) {
      const int ni = std::uniform_int_distribution<int>(1, per_firm)(rng);
      std::iota(markets.begin(), markets.end(), 0);
      std::shuffle(markets.begin(), markets.end(), rng);
      served[i].assign(markets.begin(), markets.begin() + ni);
      std::sort(served[i].begin(), served[i].end());
      for (int h : served[i]) covered[h] = true;
    }
    if (std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }))
      break;
  }

  for (int i = 0; i < s.num_firms; ++i) {
    const int ni = static_cast<int>(served[i].size());
    Matrix b = Matrix::Zero(s.num_markets, ni);
    for (int j = 0; j < ni; ++j) b(served[i][j], j) = 1.0;
    spec.incidence.push_back(std::move(b));
    Vector cap(ni), qd(ni), ql(ni);
    for (int j = 0; j < ni; ++j) cap[j] = uniform(s.capacity_lo, s.capacity_hi);
    for (int j = 0; j < ni; ++j) qd[j] = uniform(s.quad_lo, s.quad_hi);
    for (int j = 0; j < ni; ++j) ql[j] = uniform(s.lin_lo, s.lin_hi);
    spec.capacity.push_back(std::move(cap));
    spec.cost_quad.push_back(qd.asDiagonal());
    spec.cost_lin.push_back(std::move(ql));
  }
  spec.price_intercept.resize(s.num_markets);
  spec.price_slope.resize(s.num_markets);
  for (int h = 0; h < s.num_markets; ++h) {
    spec.price_intercept[h] = uniform(s.intercept_lo, s.intercept_hi);
  }
  for (int h = 0; h < s.num_markets; ++h) {
    spec.price_slope[h] = uniform(s.slope_lo, s.slope_hi);
  }
  spec.Validate();
  return spec;
}

CournotSpec PermuteFirms(const CournotSpec& spec, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != spec.num_firms()) {
    throw InputError("PermuteFirms: permutation has the wrong length");
  }
  CournotSpec out;
  out.num_markets = spec.num_markets;
  out.price_intercept = spec.price_intercept;
  out.price_slope = spec.price_slope;
  out.seed = spec.seed;
  for (int src : perm) {
    out.incidence.push_back(spec.incidence.at(src));
    out.cost_quad.push_back(spec.cost_quad.at(src));
    out.cost_lin.push_back(spec.cost_lin.at(src));
    out.capacity.push_back(spec.capacity.at(src));
  }
  return out;
}

}  // namespace nashseek
