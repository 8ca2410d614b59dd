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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>

namespace nashseek::oracle {

std::vector<std::vector<int>> AllPairsHops(const DirectedGraph& g) {
  const int m = g.num_nodes();
  constexpr int kInf = 1 << 20;
  std::vector<std::vector<int>> d(m, std::vector<int>(m, kInf));
  for (int i = 0; i < m; ++i) {
    d[i][i] = 0;
    for (int j = 0; j < m; ++j) {
      if (i != j && g.HasEdge(i, j)) d[i][j] = 1;
    }
  }
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  for (auto& row : d) {
    for (int& v : row) {
      if (v >= kInf) v = -1;
    }
  }
  return d;
}

std::optional<int> Diameter(const DirectedGraph& g) {
  int best = 0;
  for (const auto& row : AllPairsHops(g)) {
    for (int v : row) {
      if (v < 0) return std::nullopt;
      best = std::max(best, v);
    }
  }
  return best;
}

std::vector<Path> ShortestPaths(const DirectedGraph& g, int from, int to) {
  const auto d = AllPairsHops(g);
  std::vector<Path> out;
  if (d[from][to] < 0) return out;
  const int target_len = d[from][to];
  // Plain DFS over all simple walks of the right length.
  Path cur;
  std::function<void(int)> walk = [&](int node) {
    if (static_cast<int>(cur.size()) == target_len) {
      if (node == to) out.push_back(cur);
      return;
    }
    for (int next = 0; next < g.num_nodes(); ++next) {
      if (next == node || !g.HasEdge(node, next)) continue;
      cur.emplace_back(node, next);
      walk(next);
      cur.pop_back();
    }
  };
  walk(from);
  return out;
}

std::optional<int> MaxEdgeUtilityByCoverings(const DirectedGraph& g,
                                             std::uint64_t limit) {
  const int m = g.num_nodes();
  std::vector<std::vector<Path>> options;
  std::uint64_t total = 1;
  for (int j = 0; j < m; ++j) {
    for (int l = 0; l < m; ++l) {
      if (j == l) continue;
      auto paths = ShortestPaths(g, j, l);
      if (paths.empty()) return std::nullopt;
      total *= paths.size();
      if (total > limit) return std::nullopt;
      options.push_back(std::move(paths));
    }
  }
  std::map<std::pair<int, int>, int> load;
  int best = 0;
  std::function<void(std::size_t)> choose = [&](std::size_t idx) {
    if (idx == options.size()) {
      for (const auto& [edge, n] : load) best = std::max(best, n);
      return;
    }
    for (const Path& p : options[idx]) {
      for (const auto& e : p) ++load[e];
      choose(idx + 1);
      for (const auto& e : p) --load[e];
    }
  };
  choose(0);
  return best;
}

int MaxEdgeUtilityByPaths(const DirectedGraph& g) {
  const int m = g.num_nodes();
  std::map<std::pair<int, int>, int> count;
  for (int j = 0; j < m; ++j) {
    for (int l = 0; l < m; ++l) {
      if (j == l) continue;
      std::map<std::pair<int, int>, bool> seen;
      for (const Path& p : ShortestPaths(g, j, l)) {
        for (const auto& e : p) seen[e] = true;
      }
      for (const auto& [e, unused] : seen) ++count[e];
    }
  }
  int best = 0;
  for (const auto& [e, n] : count) best = std::max(best, n);
  return best;
}

DirectedGraph GraphFromMask(int m, std::uint64_t mask) {
  DirectedGraph g(m);
  int bit = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      if (mask >> bit & 1U) g.AddEdge(i, j);
      ++bit;
    }
  }
  return g;
}

DirectedGraph RandomDigraph(int m, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  DirectedGraph g(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && coin(rng)) g.AddEdge(i, j);
    }
  }
  return g;
}

Vector PerronVector(const Matrix& w) {
  Eigen::EigenSolver<Matrix> es(w.transpose());
  int idx = 0;
  double best = -1.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double re = es.eigenvalues()[i].real();
    if (re > best) {
      best = re;
      idx = i;
    }
  }
  Vector v = es.eigenvectors().col(idx).real();
  return v / v.sum();
}

Vector BackwardProduct(const std::vector<Matrix>& ws) {
  const int m = static_cast<int>(ws.front().rows());
  std::vector<long double> row(m, 1.0L / m), next(m);
  for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
    for (int j = 0; j < m; ++j) {
      long double s = 0.0L;
      for (int i = 0; i < m; ++i) s += row[i] * (*it)(i, j);
      next[j] = s;
    }
    row.swap(next);
  }
  Vector out(m);
  for (int j = 0; j < m; ++j) out[j] = static_cast<double>(row[j]);
  return out;
}

Vector CostGradientFd(const CournotSpec& spec, int firm, const Vector& x,
                      double h) {
  int off = 0;
  for (int i = 0; i < firm; ++i) off += static_cast<int>(spec.incidence[i].cols());
  const int ni = static_cast<int>(spec.incidence[firm].cols());
  // Cost written out directly: x_i'Q x_i + q'x_i - (P - chi .* Bx)' B_i x_i.
  auto cost = [&](const Vector& y) {
    Vector supply = Vector::Zero(spec.num_markets);
    int o = 0;
    for (std::size_t i = 0; i < spec.incidence.size(); ++i) {
      const int n = static_cast<int>(spec.incidence[i].cols());
      supply += spec.incidence[i] * y.segment(o, n);
      o += n;
    }
    const Vector yi = y.segment(off, ni);
    const Vector price =
        spec.price_intercept - spec.price_slope.cwiseProduct(supply);
    return yi.dot(spec.cost_quad[firm] * yi) + spec.cost_lin[firm].dot(yi) -
           price.dot(spec.incidence[firm] * yi);
  };
  Vector g(ni);
  for (int t = 0; t < ni; ++t) {
    Vector up = x, dn = x;
    up[off + t] += h;
    dn[off + t] -= h;
    g[t] = (cost(up) - cost(dn)) / (2.0 * h);
  }
  return g;
}

CournotSpec DecoupledCournot(int firms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> dims(1, 2);
  std::vector<int> n(firms);
  int markets = 0;
  for (int i = 0; i < firms; ++i) markets += n[i] = dims(rng);
  CournotSpec s;
  s.num_markets = markets;
  s.price_intercept.resize(markets);
  s.price_slope.resize(markets);
  int h = 0;
  for (int i = 0; i < firms; ++i) {
    Matrix b = Matrix::Zero(markets, n[i]);
    Vector q(n[i]), cap(n[i]), qd(n[i]);
    for (int t = 0; t < n[i]; ++t, ++h) {
      b(h, t) = 1.0;
      qd[t] = 1.0 + 7.0 * u(rng);
      q[t] = 1.0 + u(rng);
      cap[t] = 0.3 + 9.7 * u(rng);  // small capacities make the top bind
      // Some intercepts fall below q so the lower bound binds too.
      s.price_intercept[h] = u(rng) < 0.2 ? 0.5 * u(rng) + 0.1 : 10.0 + 10.0 * u(rng);
      s.price_slope[h] = 1.0 + 2.0 * u(rng);
    }
    s.incidence.push_back(b);
    s.cost_quad.push_back(qd.asDiagonal());
    s.cost_lin.push_back(q);
    s.capacity.push_back(cap);
  }
  s.seed = seed;
  return s;
}

Vector DecoupledEquilibrium(const CournotSpec& spec) {
  std::vector<double> out;
  for (std::size_t i = 0; i < spec.incidence.size(); ++i) {
    const Matrix& b = spec.incidence[i];
    for (int t = 0; t < b.cols(); ++t) {
      int h = 0;
      b.col(t).maxCoeff(&h);
      const double a = spec.cost_quad[i](t, t) + spec.price_slope[h];
      const double x = (spec.price_intercept[h] - spec.cost_lin[i][t]) / (2.0 * a);
      out.push_back(std::clamp(x, 0.0, spec.capacity[i][t]));
    }
  }
  return Eigen::Map<Vector>(out.data(), static_cast<int>(out.size()));
}

double SymmetricLambdaMax(double a, double b, double d) {
  const long double tr = static_cast<long double>(a) + d;
  const long double det =
      static_cast<long double>(a) * d - static_cast<long double>(b) * b;
  const long double disc = std::max(0.0L, tr * tr / 4.0L - det);
  return static_cast<double>(tr / 2.0L + std::sqrt(disc));
}

}  // namespace nashseek::oracle
