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

#ifndef DYNLP_BASELINES_HPP_
#define DYNLP_BASELINES_HPP_

#include <cstddef>
#include <vector>

#include "dynlp/dynamic_graph.hpp"
#include "dynlp/engine.hpp"
#include "dynlp/label_state.hpp"
#include "dynlp/types.hpp"

namespace dynlp {

// Largest unlabeled system the dense harmonic solver accepts by default.
inline constexpr std::size_t kDenseSolveCap = 5000;

// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Blocks of L = D - W with labeled vertices ordered first, then the unlabeled
// vertices that can reach a labeled one. Unlabeled vertices cut off from all
// ground truth are listed in `excluded` and left out of both blocks.
struct LaplacianBlocks {
  std::vector<VertexId> labeled;
  std::vector<VertexId> unlabeled;
  std::vector<VertexId> excluded;
  DenseMatrix l_uu;  // |U| x |U|
  DenseMatrix l_ul;  // |U| x |L|
};

LaplacianBlocks build_laplacian_blocks(const DynamicGraph& graph, const LabelState& labels);

// Exact harmonic labels F_U = -L_UU^{-1} L_UL F_L via a Cholesky solve.
// Unlabeled vertices without a path to ground truth are pinned at 0.5.
// Throws ValidationError without ground truth, SizeLimitError above
// `max_unlabeled`, NumericalError if the factorization fails.
LabelState harmonic_solve(const DynamicGraph& graph, const LabelState& labels,
                          std::size_t max_unlabeled = kDenseSolveCap);

// Marks every unlabeled vertex that cannot reach ground truth as pinned at
// 0.5 and clears stale pins elsewhere. Returns the reachable unlabeled
// vertices in ascending order.
std::vector<VertexId> settle_reachability(const DynamicGraph& graph, LabelState& labels);

// Full-graph label propagation F_u <- (1/d(u)) Σ_v w(u,v) F_v over every
// reachable unlabeled vertex per sweep, starting from the current labels,
// until the largest per-vertex change is at most delta.
IterationReport itlp_solve(const DynamicGraph& graph, LabelState& labels, double delta,
                           std::size_t max_iterations,
                           Schedule schedule = Schedule::kParallelJacobi,
                           const IterationObserver& observer = {});

// Ground-truth classes contracted into two representatives. The reduced
// graph reuses the original ids for unlabeled vertices; rep0/rep1 are fresh
// ids past the original id range.
struct ReducedGraph {
  DynamicGraph graph;
  LabelState labels;
  VertexId rep0 = kInvalidVertex;
  VertexId rep1 = kInvalidVertex;
  std::vector<VertexId> unlabeled;
};

// Replaces each class by one vertex whose edge to an unlabeled u carries the
// sum of u's weights into that class. Edges among labeled vertices are
// dropped. Throws ValidationError when either class is empty.
ReducedGraph stlp_reduce(const DynamicGraph& graph, const LabelState& labels);

// Graph and label bookkeeping shared by the recompute baselines: deletions,
// insertions, ground-truth pinning, new unlabeled vertices at 0.5.
void apply_changes(DynamicGraph& graph, LabelState& labels, const BatchUpdate& batch);

// Applies the batch and reruns itlp_solve over the whole graph.
IterationReport itlp_batch_solve(DynamicGraph& graph, LabelState& labels,
                                 const BatchUpdate& batch, const EngineConfig& cfg);

// Applies the batch and recomputes the exact labels on the short-circuited
// graph from scratch.
IterationReport stlp_batch_solve(DynamicGraph& graph, LabelState& labels,
                                 const BatchUpdate& batch, const EngineConfig& cfg,
                                 std::size_t max_unlabeled = kDenseSolveCap);

// Applies the batch and solves the harmonic system on the full graph.
IterationReport oracle_batch_solve(DynamicGraph& graph, LabelState& labels,
                                   const BatchUpdate& batch, const EngineConfig& cfg,
                                   std::size_t max_unlabeled = kDenseSolveCap);

}  // namespace dynlp

#endif  // DYNLP_BASELINES_HPP_
