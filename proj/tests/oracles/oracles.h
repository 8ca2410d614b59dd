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

// Slow, independent reference computations used only by tests. None of these
// call into the library code they are checked against.

#ifndef NASHSEEK_TESTS_ORACLES_H_
#define NASHSEEK_TESTS_ORACLES_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "nashseek/cournot.h"
#include "nashseek/graph.h"

namespace nashseek::oracle {

// Floyd-Warshall on the adjacency matrix; -1 marks unreachable.
std::vector<std::vector<int>> AllPairsHops(const DirectedGraph& g);

std::optional<int> Diameter(const DirectedGraph& g);  // nullopt if not SC

// Every shortest path from j to l as a list of edges (a, b).
using Path = std::vector<std::pair<int, int>>;
std::vector<Path> ShortestPaths(const DirectedGraph& g, int from, int to);

// max over coverings (one shortest path per ordered pair) of the most used
// edge, by enumerating every covering. Returns nullopt when there are more
// than `limit` coverings.
std::optional<int> MaxEdgeUtilityByCoverings(const DirectedGraph& g,
                                             std::uint64_t limit = 4000000);

// Per edge, the number of ordered pairs with some enumerated shortest path
// through it; the max of these. Path-based, no distance identity.
int MaxEdgeUtilityByPaths(const DirectedGraph& g);

// Digraph on m nodes from a bit mask over the m(m-1) off-diagonal slots.
DirectedGraph GraphFromMask(int m, std::uint64_t mask);

// Uniformly random digraph with each off-diagonal edge present w.p. p.
DirectedGraph RandomDigraph(int m, double p, std::uint64_t seed);

// Left Perron vector of a row-stochastic matrix from the eigen-decomposition
// of W', normalized to sum 1.
Vector PerronVector(const Matrix& w);

// pi_0 for a finite sequence by multiplying a uniform row through
// W_{n-1} ... W_0 in long double.
Vector BackwardProduct(const std::vector<Matrix>& ws);

// Central finite-difference gradient of firm i's cost in its own block.
Vector CostGradientFd(const CournotSpec& spec, int firm, const Vector& x,
                      double h = 1e-5);

// A Cournot instance in which each market is served by exactly one firm
// coordinate, so the equilibrium separates into scalar problems.
CournotSpec DecoupledCournot(int firms, std::uint64_t seed);

// Closed-form equilibrium of a DecoupledCournot instance: each coordinate
// minimizes (Q + chi) x^2 + (q - P) x over [0, C].
Vector DecoupledEquilibrium(const CournotSpec& spec);

// Largest eigenvalue of a symmetric 2x2 matrix by the characteristic
// polynomial in long double.
double SymmetricLambdaMax(double a, double b, double d);

}  // namespace nashseek::oracle

#endif  // NASHSEEK_TESTS_ORACLES_H_
