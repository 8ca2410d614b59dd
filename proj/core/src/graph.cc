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

#include "nashseek/graph.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <string>

#include "nashseek/error.h"

namespace nashseek {

DirectedGraph::DirectedGraph(int num_nodes) : m_(num_nodes) {
  if (num_nodes < 1) throw GraphError("graph needs at least one node");
  adj_.assign(static_cast<std::size_t>(m_) * m_, 0);
  for (int i = 0; i < m_; ++i) adj_[i * m_ + i] = 1;
}

void DirectedGraph::CheckNode(int i) const {
  if (i < 0 || i >= m_) {
    throw GraphError("node " + std::to_string(i) + " out of range [0, " +
                     std::to_string(m_) + ")");
  }
}

void DirectedGraph::AddEdge(int from, int to) {
  CheckNode(from);
  CheckNode(to);
  adj_[from * m_ + to] = 1;
}

void DirectedGraph::RemoveEdge(int from, int to) {
  CheckNode(from);
  CheckNode(to);
  if (from == to) throw GraphError("use SetSelfLoop to drop a self-loop");
  adj_[from * m_ + to] = 0;
}

void DirectedGraph::SetSelfLoop(int i, bool present) {
  CheckNode(i);
  adj_[i * m_ + i] = present ? 1 : 0;
}

bool DirectedGraph::HasAllSelfLoops() const {
  for (int i = 0; i < m_; ++i) {
    if (!HasSelfLoop(i)) return false;
  }
  return true;
}

std::vector<int> DirectedGraph::InNeighbors(int i) const {
  CheckNode(i);
  std::vector<int> out;
  for (int j = 0; j < m_; ++j) {
    if (j != i && HasEdge(j, i)) out.push_back(j);
  }
  return out;
}

std::vector<int> DirectedGraph::OutNeighbors(int i) const {
  CheckNode(i);
  std::vector<int> out;
  for (int l = 0; l < m_; ++l) {
    if (l != i && HasEdge(i, l)) out.push_back(l);
  }
  return out;
}

int DirectedGraph::InDegree(int i) const {
  return static_cast<int>(InNeighbors(i).size());
}

int DirectedGraph::OutDegree(int i) const {
  return static_cast<int>(OutNeighbors(i).size());
}

int DirectedGraph::MaxInDegree() const {
  int best = 0;
  for (int i = 0; i < m_; ++i) best = std::max(best, InDegree(i));
  return best;
}

std::vector<std::pair<int, int>> DirectedGraph::Edges() const {
  std::vector<std::pair<int, int>> out;
  for (int j = 0; j < m_; ++j) {
    for (int l = 0; l < m_; ++l) {
      if (j != l && HasEdge(j, l)) out.emplace_back(j, l);
    }
  }
  return out;
}

int DirectedGraph::num_edges() const {
  return static_cast<int>(Edges().size());
}

std::vector<std::vector<int>> ShortestPathLengths(const DirectedGraph& g) {
  const int m = g.num_nodes();
  std::vector<std::vector<int>> dist(m, std::vector<int>(m, -1));
  std::deque<int> queue;
  for (int s = 0; s < m; ++s) {
    dist[s][s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < m; ++v) {
        if (v != u && g.HasEdge(u, v) && dist[s][v] < 0) {
          dist[s][v] = dist[s][u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

bool IsStronglyConnected(const DirectedGraph& g) {
  const auto dist = ShortestPathLengths(g);
  for (const auto& row : dist) {
    if (std::any_of(row.begin(), row.end(), [](int d) { return d < 0; }))
      return false;
  }
  return true;
}

namespace {

std::vector<std::vector<int>> ConnectedDistances(const DirectedGraph& g,
                                                 const char* who) {
  if (g.num_nodes() < 2) {
    throw GraphError(std::string(who) + ": needs at least two nodes");
  }
  auto dist = ShortestPathLengths(g);
  for (const auto& row : dist) {
    for (int d : row) {
      if (d < 0) {
        throw GraphError(std::string(who) + ": graph is not strongly connected");
      }
    }
  }
  return dist;
}

}  // namespace

int Diameter(const DirectedGraph& g) {
  const auto dist = ConnectedDistances(g, "Diameter");
  int best = 0;
  for (const auto& row : dist) best = std::max(best, *std::max_element(row.begin(), row.end()));
  return best;
}

int MaxEdgeUtility(const DirectedGraph& g) {
  const auto dist = ConnectedDistances(g, "MaxEdgeUtility");
  const int m = g.num_nodes();
  int best = 0;
  for (const auto& [a, b] : g.Edges()) {
    int carried = 0;
    for (int j = 0; j < m; ++j) {
      for (int l = 0; l < m; ++l) {
        if (j != l && dist[j][a] + 1 + dist[b][l] == dist[j][l]) ++carried;
      }
    }
    best = std::max(best, carried);
  }
  return best;
}

GraphMetrics ComputeMetrics(const DirectedGraph& g) {
  return GraphMetrics{Diameter(g), MaxEdgeUtility(g), true};
}

DirectedGraph MakeCycle(int m) {
  DirectedGraph g(m);
  if (m < 2) return g;
  for (int i = 0; i < m; ++i) g.AddEdge(i, (i + 1) % m);
  return g;
}

DirectedGraph MakeStar(int m, int hub) {
  DirectedGraph g(m);
  for (int i = 0; i < m; ++i) {
    if (i == hub) continue;
    g.AddEdge(hub, i);
    g.AddEdge(i, hub);
  }
  return g;
}

DirectedGraph MakeComplete(int m) {
  DirectedGraph g(m);
  for (int j = 0; j < m; ++j) {
    for (int l = 0; l < m; ++l) g.AddEdge(j, l);
  }
  return g;
}

DirectedGraph MakeBidirectedPath(int m) {
  DirectedGraph g(m);
  for (int i = 0; i + 1 < m; ++i) {
    g.AddEdge(i, i + 1);
    g.AddEdge(i + 1, i);
  }
  return g;
}

DirectedGraph MakeRandomStronglyConnected(int m, int out_degree,
                                          std::uint64_t seed) {
  if (m < 2) throw GraphError("random graph needs at least two nodes");
  if (out_degree < 1 || out_degree > m - 1) {
    throw GraphError("out_degree " + std::to_string(out_degree) +
                     " impossible for " + std::to_string(m) + " nodes");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  DirectedGraph g(m);
  std::vector<int> in_deg(m, 0), out_deg(m, 0);
  for (int t = 0; t < m; ++t) {
    const int from = order[t];
    const int to = order[(t + 1) % m];
    g.AddEdge(from, to);
    ++out_deg[from];
    ++in_deg[to];
  }

  std::vector<int> senders(m);
  std::iota(senders.begin(), senders.end(), 0);
  std::shuffle(senders.begin(), senders.end(), rng);
  std::vector<int> candidates;
  for (int from : senders) {
    while (out_deg[from] < out_degree) {
      candidates.clear();
      for (int to = 0; to < m; ++to) {
        if (to != from && !g.HasEdge(from, to) && in_deg[to] < out_degree) {
          candidates.push_back(to);
        }
      }
      if (candidates.empty()) break;
      const int to = candidates[std::uniform_int_distribution<std::size_t>(
          0, candidates.size() - 1)(rng)];
      g.AddEdge(from, to);
      ++out_deg[from];
      ++in_deg[to];
    }
  }
  return g;
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GraphSequence GraphSequence::Static(DirectedGraph g) {
  GraphSequence s;
  s.mode_ = Mode::kStatic;
  s.m_ = g.num_nodes();
  s.graphs_.push_back(std::move(g));
  return s;
}

GraphSequence GraphSequence::Periodic(std::vector<DirectedGraph> graphs) {
  if (graphs.empty()) throw GraphError("periodic sequence needs a graph");
  const int m = graphs.front().num_nodes();
  for (const auto& g : graphs) {
    if (g.num_nodes() != m) {
      throw GraphError("periodic sequence mixes graphs of different sizes");
    }
  }
  GraphSequence s;
  s.mode_ = graphs.size() == 1 ? Mode::kStatic : Mode::kPeriodic;
  s.m_ = m;
  s.graphs_ = std::move(graphs);
  return s;
}

GraphSequence GraphSequence::TimeVarying(int m, int out_degree,
                                         std::uint64_t seed,
                                         int redraw_period) {
  if (redraw_period < 1) throw GraphError("redraw period must be >= 1");
  // Validates the degree constraints up front.
  MakeRandomStronglyConnected(m, out_degree, MixSeed(seed, 0));
  GraphSequence s;
  s.mode_ = Mode::kRandom;
  s.m_ = m;
  s.seed_ = seed;
  s.out_degree_ = out_degree;
  s.redraw_period_ = redraw_period;
  return s;
}

std::int64_t GraphSequence::Epoch(std::int64_t k) const {
  switch (mode_) {
    case Mode::kStatic:
      return 0;
    case Mode::kPeriodic:
      return k % static_cast<std::int64_t>(graphs_.size());
    case Mode::kRandom:
      return k / redraw_period_;
  }
  return 0;
}

DirectedGraph GraphSequence::At(std::int64_t k) const {
  if (k < 0) throw GraphError("negative round index");
  if (mode_ == Mode::kRandom) {
    return MakeRandomStronglyConnected(
        m_, out_degree_, MixSeed(seed_, static_cast<std::uint64_t>(Epoch(k))));
  }
  return graphs_[Epoch(k)];
}

int GraphSequence::MaxInDegreeBound() const {
  if (mode_ == Mode::kRandom) return out_degree_;
  int best = 0;
  for (const auto& g : graphs_) best = std::max(best, g.MaxInDegree());
  return best;
}

}  // namespace nashseek
