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

#include "nashseek/mixing.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "nashseek/error.h"

namespace nashseek {

double MinPositiveEntry(const Matrix& w) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    const double v = w.data()[k];
    if (v > 0.0) best = std::min(best, v);
  }
  return std::isfinite(best) ? best : 0.0;
}

WeightMatrix BuildWeights(const DirectedGraph& g, double delta) {
  if (!(delta > 0.0)) throw InputError("BuildWeights: delta must be positive");
  const int m = g.num_nodes();
  WeightMatrix out;
  out.w = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const std::vector<int> in = g.InNeighbors(i);
    const double diag = 1.0 - delta * static_cast<double>(in.size());
    if (!(diag > 0.0)) {
      std::ostringstream msg;
      msg << "BuildWeights: row " << i << " has in-degree " << in.size()
          << ", so delta = " << delta << " leaves no weight for the self-loop";
      throw InputError(msg.str());
    }
    for (int j : in) out.w(i, j) = delta;
    out.w(i, i) = diag;
  }
  out.min_positive = MinPositiveEntry(out.w);
  return out;
}

double DefaultMixingDelta(int max_in_degree) {
  return max_in_degree > 0 ? 0.5 / max_in_degree : 0.5;
}

WeightCheck ValidateWeights(const Matrix& w, const DirectedGraph& g,
                            double w_floor, double tol) {
  const int m = g.num_nodes();
  if (w.rows() != m || w.cols() != m) {
    throw InputError("ValidateWeights: matrix is not " + std::to_string(m) +
                     "x" + std::to_string(m));
  }
  WeightCheck check;
  check.min_positive = MinPositiveEntry(w);
  for (int i = 0; i < m; ++i) {
    const double err = std::abs(w.row(i).sum() - 1.0);
    check.max_row_sum_error = std::max(check.max_row_sum_error, err);
    if (!(err <= tol)) {
      check.row_sums = false;
      check.failures.push_back("row " + std::to_string(i) + " sums to " +
                               std::to_string(w.row(i).sum()));
    }
    if (!(w(i, i) > 0.0)) {
      check.positive_diagonal = false;
      check.failures.push_back("row " + std::to_string(i) +
                               " has a nonpositive diagonal");
    }
    for (int j = 0; j < m; ++j) {
      if (w(i, j) < 0.0) {
        check.nonnegative = false;
        check.failures.push_back("entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") is negative");
      }
      if (i == j) continue;
      // Receiver i, sender j.
      const bool edge = g.HasEdge(j, i);
      if (edge != (w(i, j) > 0.0)) {
        check.compatible = false;
        check.failures.push_back(
            "entry (" + std::to_string(i) + "," + std::to_string(j) +
            (edge ? ") is zero on an edge" : ") is positive off the graph"));
      }
    }
  }
  if (!(check.min_positive >= w_floor)) {
    check.floor = false;
    check.failures.push_back("smallest positive entry " +
                             std::to_string(check.min_positive) +
                             " is below the floor " + std::to_string(w_floor));
  }
  return check;
}

WeightSequence::WeightSequence(GraphSequence graphs, double delta)
    : graphs_(std::move(graphs)), delta_(delta) {
  if (!(delta_ > 0.0) || !(delta_ * graphs_.MaxInDegreeBound() < 1.0)) {
    throw InputError("WeightSequence: delta " + std::to_string(delta_) +
                     " is incompatible with in-degree bound " +
                     std::to_string(graphs_.MaxInDegreeBound()));
  }
  std::size_t slots = 4;
  if (graphs_.mode() != GraphSequence::Mode::kRandom) {
    slots = graphs_.graphs().size();
  }
  cache_.resize(slots);
}

WeightSequence::Entry& WeightSequence::Load(std::int64_t k) const {
  const std::int64_t epoch = graphs_.Epoch(k);
  Entry& e = cache_[static_cast<std::size_t>(epoch) % cache_.size()];
  if (e.epoch != epoch) {
    e.graph = graphs_.At(k);
    e.w = BuildWeights(e.graph, delta_).w;
    e.has_metrics = false;
    e.epoch = epoch;
  }
  return e;
}

const Matrix& WeightSequence::Weights(std::int64_t k) const {
  return Load(k).w;
}

const DirectedGraph& WeightSequence::Graph(std::int64_t k) const {
  return Load(k).graph;
}

const GraphMetrics& WeightSequence::Metrics(std::int64_t k) const {
  Entry& e = Load(k);
  if (!e.has_metrics) {
    e.metrics = ComputeMetrics(e.graph);
    e.has_metrics = true;
  }
  return e.metrics;
}

double WeightSequence::Floor() const {
  return std::min(delta_, 1.0 - delta_ * graphs_.MaxInDegreeBound());
}

const Vector& PiSequence::At(std::int64_t k) const {
  if (pi.empty()) throw InputError("PiSequence: empty");
  if (is_static) return pi.front();
  if (k < 0 || k >= static_cast<std::int64_t>(pi.size())) {
    throw InputError("PiSequence: round " + std::to_string(k) +
                     " outside the estimated horizon");
  }
  return pi[static_cast<std::size_t>(k)];
}

std::int64_t PiSequence::num_rounds() const {
  if (is_static) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(pi.size()) - 1;
}

namespace {

Vector Normalized(Vector v) {
  const double s = v.sum();
  if (!(s > 0.0)) throw InternalError("stochastic vector lost its mass");
  return v / s;
}

void CheckWeightShape(const Matrix& w, Eigen::Index m) {
  if (w.rows() != m || w.cols() != m) {
    throw InputError("EstimatePi: weight matrices change size");
  }
}

}  // namespace

PiSequence EstimatePiStatic(const Matrix& w, double tol) {
  const Eigen::Index m = w.rows();
  if (m < 1 || w.cols() != m) throw InputError("EstimatePiStatic: W not square");
  // pi' (W - I) = 0 with the last equation replaced by 1' pi = 1.
  Matrix a = w.transpose() - Matrix::Identity(m, m);
  a.row(m - 1).setOnes();
  Vector rhs = Vector::Zero(m);
  rhs[m - 1] = 1.0;
  Vector pi = a.fullPivLu().solve(rhs);
  if (!pi.allFinite()) {
    throw NonConvergenceError("EstimatePiStatic: singular system", pi,
                              std::numeric_limits<double>::infinity());
  }
  // Two power steps clean up rounding in the solve.
  for (int it = 0; it < 2; ++it) pi = Normalized(w.transpose() * pi);
  const double residual =
      (w.transpose() * pi - pi).lpNorm<Eigen::Infinity>();
  if (!(residual <= tol) || !(pi.minCoeff() > 0.0)) {
    throw NonConvergenceError(
        "EstimatePiStatic: no positive left eigenvector within tolerance", pi,
        residual);
  }
  PiSequence out;
  out.pi.push_back(std::move(pi));
  out.residual = residual;
  out.is_static = true;
  return out;
}

PiSequence EstimatePi(const WeightFn& weights, std::int64_t num_rounds,
                      double tol, std::int64_t initial_tail,
                      std::int64_t max_tail) {
  if (num_rounds < 0) throw InputError("EstimatePi: negative horizon");
  if (!(tol > 0.0) || initial_tail < 1) {
    throw InputError("EstimatePi: tol and tail must be positive");
  }
  const Matrix first = weights(0);
  const Eigen::Index m = first.rows();

  // Tail product from round K+T back to K. Backward multiplication by a
  // row-stochastic matrix does not expand 1-norm differences, so agreement
  // at K implies agreement at every earlier round.
  auto tail = [&](std::int64_t t) {
    Vector v = Vector::Constant(m, 1.0 / static_cast<double>(m));
    for (std::int64_t k = num_rounds + t - 1; k >= num_rounds; --k) {
      const Matrix w = weights(k);
      CheckWeightShape(w, m);
      v = Normalized(w.transpose() * v);
    }
    return v;
  };

  std::int64_t t = initial_tail;
  Vector prev = tail(t);
  double gap = std::numeric_limits<double>::infinity();
  for (;;) {
    if (2 * t > max_tail) {
      throw NonConvergenceError("EstimatePi: tail cap reached", prev, gap);
    }
    Vector next = tail(2 * t);
    gap = (next - prev).lpNorm<1>();
    t *= 2;
    prev = std::move(next);
    if (gap < tol) break;
  }

  PiSequence out;
  out.horizon = t;
  out.pi.resize(static_cast<std::size_t>(num_rounds) + 1);
  out.pi.back() = prev;
  double residual = 0.0;
  for (std::int64_t k = num_rounds - 1; k >= 0; --k) {
    const Matrix w = weights(k);
    CheckWeightShape(w, m);
    const Vector& nxt = out.pi[static_cast<std::size_t>(k) + 1];
    Vector cur = Normalized(w.transpose() * nxt);
    residual = std::max(
        residual, (w.transpose() * nxt - cur).lpNorm<Eigen::Infinity>());
    out.pi[static_cast<std::size_t>(k)] = std::move(cur);
  }
  out.residual = residual;
  return out;
}

PiSequence EstimatePi(const WeightSequence& weights, std::int64_t num_rounds,
                      double tol) {
  if (weights.graphs().mode() == GraphSequence::Mode::kStatic) {
    return EstimatePiStatic(weights.Weights(0));
  }
  return EstimatePi([&weights](std::int64_t k) { return weights.Weights(k); },
                    num_rounds, tol);
}

double EtaRound(const Vector& pi_k, const Vector& pi_next, double w,
                int diameter, int max_edge_utility) {
  if (pi_k.size() == 0 || pi_k.size() != pi_next.size()) {
    throw InputError("EtaRound: pi vectors must be nonempty and equal length");
  }
  if (!(pi_k.minCoeff() > 0.0) || !(pi_next.minCoeff() > 0.0) ||
      !(w > 0.0) || diameter < 1 || max_edge_utility < 1) {
    throw InputError("EtaRound: inputs must be positive");
  }
  const double top = pi_k.maxCoeff();
  const double eta = pi_next.minCoeff() * w * w /
                     (top * top * diameter * static_cast<double>(max_edge_utility));
  if (!(eta > 0.0 && eta < 1.0)) {
    throw InternalError("EtaRound: eta = " + std::to_string(eta) +
                        " outside (0, 1)");
  }
  return eta;
}

double PessimisticEta(int m, double w) {
  if (m < 2 || !(w > 0.0) || w > 1.0) {
    throw InputError("PessimisticEta: need m >= 2 and w in (0, 1]");
  }
  return std::pow(w, m + 2) / (m * std::pow(m - 1.0, 2));
}

double ConservativeEtaFloor(int m, double w) {
  if (m < 2 || !(w > 0.0) || w > 1.0) {
    throw InputError("ConservativeEtaFloor: need m >= 2 and w in (0, 1]");
  }
  return std::pow(w, m + 2) / (std::pow(static_cast<double>(m), 2) *
                               std::pow(m - 1.0, 2));
}

EtaReport ComputeEta(const WeightSequence& weights, const PiSequence& pi,
                     std::int64_t num_rounds) {
  if (num_rounds < 1) throw InputError("ComputeEta: need at least one round");
  if (pi.num_rounds() < num_rounds) {
    throw InputError("ComputeEta: pi sequence is shorter than the horizon");
  }
  const int m = weights.num_nodes();
  EtaReport r;
  r.w = weights.Floor();
  r.pessimistic = PessimisticEta(m, r.w);
  r.conservative_floor = ConservativeEtaFloor(m, r.w);
  r.eta.reserve(static_cast<std::size_t>(num_rounds));
  r.bold = 1.0;
  for (std::int64_t k = 0; k < num_rounds; ++k) {
    const GraphMetrics& g = weights.Metrics(k);
    const double e = EtaRound(pi.At(k), pi.At(k + 1),
                              MinPositiveEntry(weights.Weights(k)), g.diameter,
                              g.max_edge_utility);
    r.eta.push_back(e);
    r.bold = std::min(r.bold, e);
  }
  return r;
}

}  // namespace nashseek
