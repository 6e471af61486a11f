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

#include "dynlp/dynamic_graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <tuple>

#include "dynlp/error.hpp"

namespace dynlp {
namespace {

// Normalizes to u < v, sorts, and sums weights of repeated pairs. Zero
// weights are dropped after merging.
std::vector<WeightedEdge> merge_edges(std::vector<WeightedEdge> edges) {
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  std::vector<WeightedEdge> out;
  out.reserve(edges.size());
  for (const auto& e : edges) {
    if (!out.empty() && out.back().u == e.u && out.back().v == e.v) {
      out.back().w += e.w;
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [](const WeightedEdge& e) { return e.w == 0.0; });
  return out;
}

void sort_unique(std::vector<VertexId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool sorted_contains(const std::vector<VertexId>& v, VertexId x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

DynamicGraph DynamicGraph::from_edges(std::span<const VertexId> vertices,
                                      std::span<const WeightedEdge> edges) {
  DynamicGraph g;
  for (VertexId u : vertices) {
    if (u == kInvalidVertex) throw ValidationError("vertex id out of range");
    g.ensure_id(u);
    if (g.state_[u] == kAlive) {
      throw ValidationError("duplicate vertex id " + std::to_string(u));
    }
    g.state_[u] = kAlive;
    ++g.num_alive_;
  }
  for (const auto& e : edges) {
    if (!g.is_alive(e.u) || !g.is_alive(e.v)) {
      throw ValidationError("edge (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ") references an unknown vertex");
    }
    if (e.u == e.v) {
      throw ValidationError("self-loop at vertex " + std::to_string(e.u));
    }
    if (!(e.w >= 0.0) || !std::isfinite(e.w)) {
      throw ValidationError("invalid weight on edge (" + std::to_string(e.u) +
                            ", " + std::to_string(e.v) + ")");
    }
  }
  auto merged = merge_edges({edges.begin(), edges.end()});

  std::vector<std::uint32_t> degree(g.id_bound(), 0);
  for (const auto& e : merged) {
    ++degree[e.u];
    ++degree[e.v];
  }
  std::uint64_t offset = 0;
  for (std::size_t u = 0; u < g.id_bound(); ++u) {
    g.rows_[u] = Row{offset, 0, degree[u]};
    offset += degree[u];
  }
  g.nbr_.resize(offset);
  g.wt_.resize(offset);
  for (const auto& e : merged) {
    Row& ru = g.rows_[e.u];
    g.nbr_[ru.begin + ru.size] = e.v;
    g.wt_[ru.begin + ru.size] = e.w;
    ++ru.size;
    Row& rv = g.rows_[e.v];
    g.nbr_[rv.begin + rv.size] = e.u;
    g.wt_[rv.begin + rv.size] = e.w;
    ++rv.size;
    g.total_weight_ += e.w;
  }
  g.edge_count_ = merged.size();
  return g;
}

std::vector<std::pair<VertexId, double>> DynamicGraph::neighbors(VertexId u) const {
  std::vector<std::pair<VertexId, double>> out;
  if (!is_alive(u)) return out;
  out.reserve(rows_[u].size);
  for_each_neighbor(u, [&](VertexId v, double w) { out.emplace_back(v, w); });
  return out;
}

double DynamicGraph::weighted_degree(VertexId u) const {
  if (!is_alive(u)) {
    throw ValidationError("weighted_degree: vertex " + std::to_string(u) +
                          " is not alive");
  }
  double d = 0.0;
  for_each_neighbor(u, [&](VertexId, double w) { d += w; });
  return d;
}

std::vector<VertexId> DynamicGraph::alive_vertices() const {
  std::vector<VertexId> out;
  out.reserve(num_alive_);
  for (std::size_t u = 0; u < state_.size(); ++u) {
    if (state_[u] == kAlive) out.push_back(static_cast<VertexId>(u));
  }
  return out;
}

std::vector<WeightedEdge> DynamicGraph::edge_list() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < state_.size(); ++u) {
    if (state_[u] != kAlive) continue;
    const auto uid = static_cast<VertexId>(u);
    for_each_neighbor(uid, [&](VertexId v, double w) {
      if (uid < v) out.push_back({uid, v, w});
    });
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  return out;
}

void DynamicGraph::validate(std::span<const VertexId> deletes,
                            std::span<const InsertRecord> inserts) const {
  std::vector<VertexId> del(deletes.begin(), deletes.end());
  std::sort(del.begin(), del.end());
  for (std::size_t i = 0; i < del.size(); ++i) {
    if (!is_alive(del[i])) {
      throw ValidationError("cannot delete vertex " + std::to_string(del[i]) +
                            (contains(del[i]) ? ": already deleted" : ": unknown id"));
    }
    if (i > 0 && del[i] == del[i - 1]) {
      throw ValidationError("vertex " + std::to_string(del[i]) +
                            " is deleted twice in one batch");
    }
  }

  std::vector<VertexId> ins;
  ins.reserve(inserts.size());
  for (const auto& rec : inserts) ins.push_back(rec.id);
  std::sort(ins.begin(), ins.end());
  for (std::size_t i = 0; i < ins.size(); ++i) {
    if (ins[i] == kInvalidVertex) throw ValidationError("vertex id out of range");
    if (contains(ins[i])) {
      throw ValidationError("inserted vertex " + std::to_string(ins[i]) +
                            " is not fresh (ids are never reused)");
    }
    if (i > 0 && ins[i] == ins[i - 1]) {
      throw ValidationError("vertex " + std::to_string(ins[i]) +
                            " is inserted twice in one batch");
    }
  }

  for (const auto& rec : inserts) {
    for (const auto& [v, w] : rec.edges) {
      const std::string where = "edge (" + std::to_string(rec.id) + ", " +
                                std::to_string(v) + ")";
      if (!std::isfinite(w) || w < 0.0) {
        throw ValidationError(where + " has a negative or non-finite weight");
      }
      if (v == rec.id) throw ValidationError(where + " is a self-loop");
      const bool in_batch = sorted_contains(ins, v);
      const bool alive_after_deletes = is_alive(v) && !sorted_contains(del, v);
      if (!in_batch && !alive_after_deletes) {
        throw ValidationError(where + " references a dead or unknown vertex");
      }
    }
  }
}

std::vector<VertexId> DynamicGraph::apply_deletes(std::span<const VertexId> deletes) {
  validate(deletes, {});
  for (VertexId u : deletes) {
    for_each_neighbor(u, [&](VertexId, double w) {
      --edge_count_;
      total_weight_ -= w;
      masked_slots_ += 2;
    });
    state_[u] = kDead;
    --num_alive_;
  }
  std::vector<VertexId> affected;
  for (VertexId u : deletes) {
    // u is dead now; its row still lists the neighbors it had.
    const Row& r = rows_[u];
    for (std::uint32_t i = 0; i < r.size; ++i) {
      const VertexId v = nbr_[r.begin + i];
      if (state_[v] == kAlive) affected.push_back(v);
    }
  }
  sort_unique(affected);
  if (num_alive_ == 0) total_weight_ = 0.0;
  maybe_compact();
  return affected;
}

std::vector<VertexId> DynamicGraph::apply_inserts(std::span<const InsertRecord> inserts) {
  validate({}, inserts);
  std::vector<WeightedEdge> edges;
  for (const auto& rec : inserts) {
    ensure_id(rec.id);
    state_[rec.id] = kAlive;
    ++num_alive_;
    for (const auto& [v, w] : rec.edges) edges.push_back({rec.id, v, w});
  }
  for (const auto& e : merge_edges(std::move(edges))) {
    append_entry(e.u, e.v, e.w);
    append_entry(e.v, e.u, e.w);
    ++edge_count_;
    total_weight_ += e.w;
  }
  std::vector<VertexId> affected;
  for (const auto& rec : inserts) {
    affected.push_back(rec.id);
    for_each_neighbor(rec.id, [&](VertexId v, double) { affected.push_back(v); });
  }
  sort_unique(affected);
  maybe_compact();
  return affected;
}

double DynamicGraph::garbage_fraction() const {
  if (nbr_.empty()) return 0.0;
  return static_cast<double>(masked_slots_ + abandoned_slots_) /
         static_cast<double>(nbr_.size());
}

void DynamicGraph::compact() {
  std::vector<VertexId> nbr;
  std::vector<double> wt;
  nbr.reserve(nbr_.size() - masked_slots_ - abandoned_slots_);
  wt.reserve(nbr.capacity());
  double total = 0.0;
  for (std::size_t u = 0; u < rows_.size(); ++u) {
    Row& r = rows_[u];
    const std::uint64_t begin = nbr.size();
    if (state_[u] == kAlive) {
      for (std::uint32_t i = 0; i < r.size; ++i) {
        const VertexId v = nbr_[r.begin + i];
        if (state_[v] != kAlive) continue;
        nbr.push_back(v);
        wt.push_back(wt_[r.begin + i]);
        if (u < v) total += wt_[r.begin + i];
      }
    }
    const auto size = static_cast<std::uint32_t>(nbr.size() - begin);
    r = Row{begin, size, size};
  }
  nbr_ = std::move(nbr);
  wt_ = std::move(wt);
  masked_slots_ = 0;
  abandoned_slots_ = 0;
  total_weight_ = total;
}

std::string DynamicGraph::check_invariants() const {
  std::ostringstream err;
  std::size_t alive = 0;
  std::size_t masked = 0;
  std::vector<std::tuple<VertexId, VertexId, double>> forward;
  std::vector<std::tuple<VertexId, VertexId, double>> backward;
  double total = 0.0;
  for (std::size_t u = 0; u < rows_.size(); ++u) {
    const Row& r = rows_[u];
    if (r.size > r.capacity) return "row size exceeds capacity at " + std::to_string(u);
    if (state_[u] == kAlive) ++alive;
    for (std::uint32_t i = 0; i < r.size; ++i) {
      const VertexId v = nbr_[r.begin + i];
      const double w = wt_[r.begin + i];
      if (v == u) return "self-loop at " + std::to_string(u);
      if (state_[u] != kAlive || state_[v] != kAlive) {
        ++masked;
        continue;
      }
      if (!(w > 0.0)) return "non-positive weight stored at " + std::to_string(u);
      const auto uid = static_cast<VertexId>(u);
      if (uid < v) {
        forward.emplace_back(uid, v, w);
        total += w;
      } else {
        backward.emplace_back(v, uid, w);
      }
    }
  }
  std::sort(forward.begin(), forward.end());
  std::sort(backward.begin(), backward.end());
  if (forward != backward) return "adjacency is not symmetric";
  for (std::size_t i = 1; i < forward.size(); ++i) {
    if (std::get<0>(forward[i]) == std::get<0>(forward[i - 1]) &&
        std::get<1>(forward[i]) == std::get<1>(forward[i - 1])) {
      return "parallel edge stored twice";
    }
  }
  if (alive != num_alive_) {
    err << "num_alive " << num_alive_ << " != " << alive;
    return err.str();
  }
  if (forward.size() != edge_count_) {
    err << "edge_count " << edge_count_ << " != " << forward.size();
    return err.str();
  }
  if (masked != masked_slots_) {
    err << "masked slot count " << masked_slots_ << " != " << masked;
    return err.str();
  }
  if (std::abs(total - total_weight_) > 1e-9 * std::max(1.0, total)) {
    err << "total_weight " << total_weight_ << " != " << total;
    return err.str();
  }
  return {};
}

void DynamicGraph::ensure_id(VertexId u) {
  if (u >= state_.size()) {
    state_.resize(static_cast<std::size_t>(u) + 1, kAbsent);
    rows_.resize(static_cast<std::size_t>(u) + 1);
  }
}

void DynamicGraph::append_entry(VertexId u, VertexId v, double w) {
  Row& r = rows_[u];
  if (r.size == r.capacity) {
    const std::uint32_t cap = std::max<std::uint32_t>(4, 2 * r.capacity);
    const std::uint64_t begin = nbr_.size();
    nbr_.resize(begin + cap);
    wt_.resize(begin + cap);
    std::copy_n(nbr_.begin() + static_cast<std::ptrdiff_t>(r.begin), r.size,
                nbr_.begin() + static_cast<std::ptrdiff_t>(begin));
    std::copy_n(wt_.begin() + static_cast<std::ptrdiff_t>(r.begin), r.size,
                wt_.begin() + static_cast<std::ptrdiff_t>(begin));
    abandoned_slots_ += r.capacity;
    r.begin = begin;
    r.capacity = cap;
  }
  nbr_[r.begin + r.size] = v;
  wt_[r.begin + r.size] = w;
  ++r.size;
}

void DynamicGraph::maybe_compact() {
  if (garbage_fraction() > kCompactionThreshold) compact();
}

}  // namespace dynlp
