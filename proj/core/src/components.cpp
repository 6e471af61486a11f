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

#include "dynlp/components.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <string>

#include "dynlp/error.hpp"

namespace dynlp {

std::vector<unsigned char> sparsify_mask(std::span<const WeightedEdge> edges,
                                         double tau) {
  std::vector<unsigned char> keep(edges.size());
  const auto n = static_cast<std::int64_t>(edges.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    keep[i] = edges[i].w > tau ? 1 : 0;
  }
  return keep;
}

std::vector<WeightedEdge> sparsify(std::span<const WeightedEdge> edges, double tau) {
  const auto keep = sparsify_mask(edges, tau);
  std::vector<WeightedEdge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (keep[i]) out.push_back(edges[i]);
  }
  return out;
}

ComponentLabeling find_components(const IntraBatchGraph& g) {
  const std::size_t n = g.vertices.size();
  ComponentLabeling out;
  if (n == 0) return out;

  // Local index = rank of the id, so min-label hooking picks the smallest id.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return g.vertices[a] < g.vertices[b];
  });
  std::vector<VertexId> sorted_ids(n);
  for (std::size_t r = 0; r < n; ++r) sorted_ids[r] = g.vertices[order[r]];
  for (std::size_t r = 1; r < n; ++r) {
    if (sorted_ids[r] == sorted_ids[r - 1]) {
      throw ValidationError("duplicate vertex " + std::to_string(sorted_ids[r]) +
                            " in batch graph");
    }
  }
  auto rank_of = [&](VertexId id) {
    auto it = std::lower_bound(sorted_ids.begin(), sorted_ids.end(), id);
    if (it == sorted_ids.end() || *it != id) {
      throw ValidationError("batch edge endpoint " + std::to_string(id) +
                            " is not a batch vertex");
    }
    return static_cast<std::size_t>(it - sorted_ids.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges) edges.emplace_back(rank_of(e.u), rank_of(e.v));

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto num_edges = static_cast<std::int64_t>(edges.size());
  const auto num_vertices = static_cast<std::int64_t>(n);

  while (true) {
    ++out.rounds;
    bool hooked = false;
    // Hook: every tree root adjacent to a smaller root adopts the smaller one.
    // Roots only ever decrease, so concurrent fetch-min updates are safe.
#pragma omp parallel for schedule(static) reduction(|| : hooked)
    for (std::int64_t i = 0; i < num_edges; ++i) {
      const auto [a, b] = edges[i];
      const std::size_t pa = std::atomic_ref(parent[a]).load(std::memory_order_relaxed);
      const std::size_t pb = std::atomic_ref(parent[b]).load(std::memory_order_relaxed);
      if (pa == pb) continue;
      const std::size_t hi = std::max(pa, pb);
      const std::size_t lo = std::min(pa, pb);
      std::atomic_ref slot(parent[hi]);
      std::size_t cur = slot.load(std::memory_order_relaxed);
      while (lo < cur && !slot.compare_exchange_weak(cur, lo, std::memory_order_relaxed)) {
      }
      if (lo < cur) hooked = true;
    }
    if (!hooked) break;
    // Jump: pointer doubling until every vertex points at its root.
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < num_vertices; ++i) {
      std::atomic_ref self(parent[i]);
      std::size_t p = self.load(std::memory_order_relaxed);
      while (true) {
        const std::size_t pp = std::atomic_ref(parent[p]).load(std::memory_order_relaxed);
        if (pp == p) break;
        p = pp;
      }
      self.store(p, std::memory_order_relaxed);
    }
  }

  // Dense ids by prefix scan over the root flags.
  std::vector<std::size_t> dense(n, 0);
  std::size_t next = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (parent[r] == r) dense[r] = next++;
  }
  out.num_components = next;
  out.parent.resize(n);
  out.component_id.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    out.parent[order[r]] = order[parent[r]];
    out.component_id[order[r]] = dense[parent[r]];
  }
  return out;
}

double default_tau(const DynamicGraph& graph) {
  if (graph.edge_count() == 0) {
    throw ValidationError("cannot derive tau from an edgeless graph; pass tau explicitly");
  }
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t u = 0; u < graph.id_bound(); ++u) {
    const auto uid = static_cast<VertexId>(u);
    if (!graph.is_alive(uid)) continue;
    graph.for_each_neighbor(uid, [&](VertexId v, double w) {
      if (uid < v) {
        sum += w;
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
    });
  }
  // Rounding must not move the mean outside the weight range.
  return std::clamp(sum / static_cast<double>(graph.edge_count()), lo, hi);
}

IntraBatchGraph build_intra_batch_graph(const DynamicGraph& graph,
                                        std::span<const VertexId> batch_vertices,
                                        double tau) {
  IntraBatchGraph out;
  out.vertices.assign(batch_vertices.begin(), batch_vertices.end());
  std::sort(out.vertices.begin(), out.vertices.end());
  out.tau = tau;
  std::vector<WeightedEdge> intra;
  for (VertexId u : out.vertices) {
    if (!graph.is_alive(u)) continue;
    graph.for_each_neighbor(u, [&](VertexId v, double w) {
      if (u < v && std::binary_search(out.vertices.begin(), out.vertices.end(), v)) {
        intra.push_back({u, v, w});
      }
    });
  }
  out.edges = sparsify(intra, tau);
  return out;
}

}  // namespace dynlp
