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

#ifndef DYNLP_COMPONENTS_HPP_
#define DYNLP_COMPONENTS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dynlp/dynamic_graph.hpp"
#include "dynlp/types.hpp"

namespace dynlp {

// The graph induced on one batch's inserted vertices. Edges are expected to
// have been filtered with sparsify() against `tau` already.
struct IntraBatchGraph {
  std::vector<VertexId> vertices;
  std::vector<WeightedEdge> edges;
  double tau = 0.0;
};

// Result of find_components. Arrays are indexed by position in
// IntraBatchGraph::vertices.
struct ComponentLabeling {
  // Position of the representative (smallest id) of each vertex's component.
  std::vector<std::size_t> parent;
  // Dense component index in [0, num_components), ordered by representative.
  std::vector<std::size_t> component_id;
  std::size_t num_components = 0;
  // Hook + jump rounds until a round left the parent array unchanged.
  std::size_t rounds = 0;
};

// Edges with weight strictly greater than tau. The input is not modified.
std::vector<WeightedEdge> sparsify(std::span<const WeightedEdge> edges, double tau);

// Same test expressed as a mask over `edges`: keep[i] != 0 iff edges[i].w > tau.
std::vector<unsigned char> sparsify_mask(std::span<const WeightedEdge> edges,
                                         double tau);

// Shiloach-Vishkin connected components over the batch graph: alternates a
// min-label hook with pointer-jumping until a round changes nothing. The
// labeling only depends on the vertex and edge lists, not on the number of
// worker threads. Throws ValidationError if an edge endpoint is not listed in
// g.vertices.
ComponentLabeling find_components(const IntraBatchGraph& g);

// Mean weight over the alive undirected edges (each counted once). Throws
// ValidationError on an edgeless graph; callers must then supply tau.
double default_tau(const DynamicGraph& graph);

// Builds the batch graph for `batch_vertices` from the current adjacency of
// `graph`: keeps edges whose endpoints are both batch vertices and whose
// weight exceeds tau.
IntraBatchGraph build_intra_batch_graph(const DynamicGraph& graph,
                                        std::span<const VertexId> batch_vertices,
                                        double tau);

}  // namespace dynlp

#endif  // DYNLP_COMPONENTS_HPP_
