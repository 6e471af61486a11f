// Copyright 2026 The DynLP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNLP_TESTS_SUPPORT_ORACLES_HPP_
#define DYNLP_TESTS_SUPPORT_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "dynlp/dynamic_graph.hpp"
#include "dynlp/label_state.hpp"
#include "dynlp/types.hpp"

namespace dynlp::testing {

// A static instance on vertices 0..n-1. gt[u] is -1 (unlabeled), 0 or 1.
struct Instance {
  std::size_t n = 0;
  std::vector<WeightedEdge> edges;
  std::vector<int> gt;
};

// Sequential union-find with path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  void unite(std::size_t a, std::size_t b);
  // Canonical partition: each element mapped to the smallest member of its set.
  std::vector<std::size_t> canonical();

 private:
  std::vector<std::size_t> parent_;
};

// Vertices reachable from `sources` in the undirected graph.
std::vector<char> bfs_reachable(std::size_t n, const std::vector<WeightedEdge>& edges,
                                const std::vector<std::size_t>& sources);

// Harmonic labels by Gaussian elimination with partial pivoting on the
// reachable unlabeled block. Unreachable unlabeled vertices get 0.5.
std::vector<double> gauss_harmonic(const Instance& inst);

// Plain synchronous neighbor averaging from 0.5, for a fixed number of sweeps.
std::vector<double> long_jacobi(const Instance& inst, std::size_t sweeps);

// Dirichlet energy over the instance edges.
double energy(const Instance& inst, const std::vector<double>& f);

// Directed k nearest neighbors by cosine, ties towards the lower index, made
// undirected by union with max weight. Non-positive similarities are dropped.
std::vector<WeightedEdge> brute_knn(const std::vector<std::vector<double>>& rows, std::size_t k);

// ER graph plus extra edges joining its components so the graph is connected,
// with planted classes and `labeled_fraction` of each class (at least one) as
// ground truth.
Instance random_connected_instance(std::mt19937_64& rng, std::size_t n, double avg_degree,
                                   double labeled_fraction);

// Random instance without a connectivity guarantee.
Instance random_instance(std::mt19937_64& rng, std::size_t n, double avg_degree,
                         double labeled_fraction);

DynamicGraph build_graph(const Instance& inst);
LabelState build_labels(const Instance& inst);
BatchUpdate as_batch(const Instance& inst);

// The current graph as an instance over ids 0..id_bound-1 (dead and absent
// ids become isolated unlabeled vertices).
Instance snapshot_instance(const DynamicGraph& graph, const LabelState& labels);

// Largest |a[u] - b[u]| over alive unlabeled vertices of `graph`.
double max_unlabeled_diff(const DynamicGraph& graph, const LabelState& labels,
                          const std::vector<double>& a, const std::vector<double>& b);

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace dynlp::testing

#endif  // DYNLP_TESTS_SUPPORT_ORACLES_HPP_
