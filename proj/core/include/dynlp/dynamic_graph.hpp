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

#ifndef DYNLP_DYNAMIC_GRAPH_HPP_
#define DYNLP_DYNAMIC_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynlp/types.hpp"

namespace dynlp {

// Weighted undirected graph with batched vertex insertion and deletion.
//
// Adjacency is kept in a compressed row layout: every vertex owns a slot
// range [begin, begin + capacity) of two parallel arrays (neighbor ids and
// weights). A row that runs out of capacity is relocated to the tail of the
// arrays with doubled capacity. Deleting a vertex only flips its liveness
// flag; entries pointing at dead vertices are masked out on traversal and
// physically dropped by compact(), which runs automatically once masked plus
// abandoned slots exceed kCompactionThreshold of the arrays.
//
// Reads are safe from any number of threads. Mutation is exclusive.
class DynamicGraph {
 public:
  static constexpr double kCompactionThreshold = 0.25;

  DynamicGraph() = default;

  // Builds a graph with the given vertex ids and undirected edges. Duplicate
  // edges are merged by summing their weights; zero-weight edges are dropped.
  static DynamicGraph from_edges(std::span<const VertexId> vertices,
                                 std::span<const WeightedEdge> edges);

  // One past the largest id ever created.
  std::size_t id_bound() const { return state_.size(); }
  std::size_t num_alive() const { return num_alive_; }
  // Undirected edges between alive vertices.
  std::size_t edge_count() const { return edge_count_; }
  // Sum of alive undirected edge weights (each edge once).
  double total_weight() const { return total_weight_; }

  bool contains(VertexId u) const { return u < state_.size() && state_[u] != kAbsent; }
  bool is_alive(VertexId u) const { return u < state_.size() && state_[u] == kAlive; }
  bool is_dead(VertexId u) const { return u < state_.size() && state_[u] == kDead; }

  // Calls f(neighbor, weight) for every alive neighbor of u, in row order.
  template <typename F>
  void for_each_neighbor(VertexId u, F&& f) const {
    const Row& r = rows_[u];
    const VertexId* ids = nbr_.data() + r.begin;
    const double* ws = wt_.data() + r.begin;
    for (std::uint32_t i = 0; i < r.size; ++i) {
      if (state_[ids[i]] == kAlive) f(ids[i], ws[i]);
    }
  }

  std::vector<std::pair<VertexId, double>> neighbors(VertexId u) const;

  // Σ_v w(u, v) over alive neighbors; 0 for isolated vertices. Throws
  // ValidationError when u is not alive.
  double weighted_degree(VertexId u) const;

  // Alive vertex ids in ascending order.
  std::vector<VertexId> alive_vertices() const;

  // Alive undirected edges as (u < v) sorted lexicographically.
  std::vector<WeightedEdge> edge_list() const;

  // Throws ValidationError if `deletes` or `inserts` cannot be applied to the
  // current graph (deletions first, then insertions). No state is modified.
  void validate(std::span<const VertexId> deletes,
                std::span<const InsertRecord> inserts) const;
  void validate(const BatchUpdate& batch) const {
    validate(batch.deletes, batch.inserts);
  }

  // Removes the vertices and their incident edges. Returns the alive
  // neighbors of the deleted vertices, ascending and unique.
  std::vector<VertexId> apply_deletes(std::span<const VertexId> deletes);

  // Adds the vertices and their edges. Returns the inserted ids together with
  // all their neighbors, ascending and unique.
  std::vector<VertexId> apply_inserts(std::span<const InsertRecord> inserts);

  // Fraction of stored adjacency slots that are masked or abandoned.
  double garbage_fraction() const;

  // Rewrites the adjacency arrays without masked entries or slack.
  void compact();

  // Full scan of the structural invariants (symmetry, no dead references,
  // cached counters). Returns an empty string when all hold, otherwise a
  // description of the first violation. Intended for tests.
  std::string check_invariants() const;

 private:
  enum : std::uint8_t { kAbsent = 0, kAlive = 1, kDead = 2 };

  struct Row {
    std::uint64_t begin = 0;
    std::uint32_t size = 0;
    std::uint32_t capacity = 0;
  };

  void ensure_id(VertexId u);
  void append_entry(VertexId u, VertexId v, double w);
  void maybe_compact();

  std::vector<std::uint8_t> state_;
  std::vector<Row> rows_;
  std::vector<VertexId> nbr_;
  std::vector<double> wt_;

  std::size_t num_alive_ = 0;
  std::size_t edge_count_ = 0;
  double total_weight_ = 0.0;
  // Slots holding an entry whose endpoint is dead.
  std::size_t masked_slots_ = 0;
  // Slots abandoned by row relocation.
  std::size_t abandoned_slots_ = 0;
};

}  // namespace dynlp

#endif  // DYNLP_DYNAMIC_GRAPH_HPP_
