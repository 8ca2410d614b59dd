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

#ifndef NASHSEEK_GRAPH_H_
#define NASHSEEK_GRAPH_H_

#include <cstdint>
#include <utility>
#include <vector>

namespace nashseek {

// Directed graph on nodes 0..m-1. An edge (j, l) means node l receives from
// node j. Self-loops are tracked separately from the other edges and are
// present at every node after construction.
class DirectedGraph {
 public:
  explicit DirectedGraph(int num_nodes);

  int num_nodes() const { return m_; }

  void AddEdge(int from, int to);
  void RemoveEdge(int from, int to);
  bool HasEdge(int from, int to) const { return adj_[from * m_ + to] != 0; }

  bool HasSelfLoop(int i) const { return HasEdge(i, i); }
  void SetSelfLoop(int i, bool present);
  bool HasAllSelfLoops() const;

  // Neighbor sets exclude the node itself.
  std::vector<int> InNeighbors(int i) const;
  std::vector<int> OutNeighbors(int i) const;
  int InDegree(int i) const;
  int OutDegree(int i) const;
  int MaxInDegree() const;

  // Non-loop edges in lexicographic (from, to) order.
  std::vector<std::pair<int, int>> Edges() const;
  int num_edges() const;

  bool operator==(const DirectedGraph& other) const = default;

 private:
  void CheckNode(int i) const;

  int m_;
  std::vector<std::uint8_t> adj_;  // row-major, adj_[from * m_ + to]
};

bool IsStronglyConnected(const DirectedGraph& g);

// BFS hop counts; dist[j][l] = -1 when l is unreachable from j. Self-loops
// never shorten a path.
std::vector<std::vector<int>> ShortestPathLengths(const DirectedGraph& g);

// Longest of the all-pairs shortest path lengths. Throws GraphError when g is
// not strongly connected or has a single node.
int Diameter(const DirectedGraph& g);

// Maximal edge utility: the largest number of ordered pairs (j, l) whose
// shortest-path covering can be routed through a single edge, maximized over
// all coverings. An edge (a, b) can carry pair (j, l) exactly when
// d(j, a) + 1 + d(b, l) == d(j, l), and pairs choose their paths
// independently, so the maximum over coverings is attained edge by edge.
// Throws GraphError when g is not strongly connected.
int MaxEdgeUtility(const DirectedGraph& g);

struct GraphMetrics {
  int diameter = 0;
  int max_edge_utility = 0;
  // Always true for MaxEdgeUtility. Consumers that receive metrics from
  // elsewhere must treat a false flag as "K unknown".
  bool exact = true;
};

GraphMetrics ComputeMetrics(const DirectedGraph& g);

// Generators. All results carry self-loops at every node.
DirectedGraph MakeCycle(int m);                 // i -> i+1 (mod m)
DirectedGraph MakeStar(int m, int hub = 0);     // bidirected hub-leaf edges
DirectedGraph MakeComplete(int m);
DirectedGraph MakeBidirectedPath(int m);
// Random strongly connected digraph: a ring through a random permutation of
// the nodes, then extra random out-edges until every node sends to
// out_degree others, never exceeding in-degree out_degree. Deterministic in
// seed. Throws GraphError unless 1 <= out_degree <= m - 1 and m >= 2.
DirectedGraph MakeRandomStronglyConnected(int m, int out_degree,
                                          std::uint64_t seed);

// Time-indexed graph source. Random mode regenerates the graph every
// redraw_period rounds from a per-epoch seed, so any round can be
// reproduced without replaying the ones before it.
class GraphSequence {
 public:
  enum class Mode { kStatic, kPeriodic, kRandom };

  static GraphSequence Static(DirectedGraph g);
  static GraphSequence Periodic(std::vector<DirectedGraph> graphs);
  static GraphSequence TimeVarying(int m, int out_degree, std::uint64_t seed,
                                   int redraw_period = 1);

  Mode mode() const { return mode_; }
  int num_nodes() const { return m_; }

  // Graph in force during round k (k >= 0).
  DirectedGraph At(std::int64_t k) const;

  // Rounds sharing an epoch share the same graph.
  std::int64_t Epoch(std::int64_t k) const;

  // Upper bound on d_k(i) over all rounds and nodes.
  int MaxInDegreeBound() const;

  const std::vector<DirectedGraph>& graphs() const { return graphs_; }
  std::uint64_t seed() const { return seed_; }
  int out_degree() const { return out_degree_; }
  int redraw_period() const { return redraw_period_; }

 private:
  GraphSequence() = default;

  Mode mode_ = Mode::kStatic;
  int m_ = 0;
  std::vector<DirectedGraph> graphs_;
  std::uint64_t seed_ = 0;
  int out_degree_ = 0;
  int redraw_period_ = 1;
};

// SplitMix64 finalizer; used to derive independent per-epoch seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace nashseek

#endif  // NASHSEEK_GRAPH_H_
