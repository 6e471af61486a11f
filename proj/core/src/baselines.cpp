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

#include "dynlp/baselines.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <string>

#include "dynlp/error.hpp"
#include "parallel.hpp"

namespace dynlp {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::size_t unlabeled_alive(const DynamicGraph& graph, const LabelState& labels) {
  std::size_t n = 0;
  for (VertexId u : graph.alive_vertices()) n += labels.is_labeled(u) ? 0 : 1;
  return n;
}

}  // namespace

std::vector<VertexId> settle_reachability(const DynamicGraph& graph, LabelState& labels) {
  labels.resize(graph.id_bound());
  std::vector<unsigned char> seen(graph.id_bound(), 0);
  std::deque<VertexId> queue;
  const std::vector<VertexId> alive = graph.alive_vertices();
  for (VertexId u : alive) {
    if (labels.is_labeled(u)) {
      seen[u] = 1;
      queue.push_back(u);
    }
  }
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    graph.for_each_neighbor(u, [&](VertexId v, double) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    });
  }
  std::vector<VertexId> reachable;
  for (VertexId u : alive) {
    if (labels.is_labeled(u)) continue;
    if (seen[u]) {
      labels.set_pin(u, PinReason::kNone);
      reachable.push_back(u);
    } else {
      bool has_edge = false;
      graph.for_each_neighbor(u, [&](VertexId, double) { has_edge = true; });
      labels.set_pin(u, has_edge ? PinReason::kUnreachable : PinReason::kIsolated);
      labels.set_value(u, LabelState::kNeutral);
    }
  }
  return reachable;
}

LaplacianBlocks build_laplacian_blocks(const DynamicGraph& graph, const LabelState& labels) {
  LabelState scratch = labels;
  LaplacianBlocks blocks;
  blocks.unlabeled = settle_reachability(graph, scratch);
  for (VertexId u : graph.alive_vertices()) {
    if (scratch.is_labeled(u)) {
      blocks.labeled.push_back(u);
    } else if (scratch.pin_reason(u) != PinReason::kNone) {
      blocks.excluded.push_back(u);
    }
  }
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> u_index(graph.id_bound(), kNone);
  std::vector<std::size_t> l_index(graph.id_bound(), kNone);
  for (std::size_t i = 0; i < blocks.unlabeled.size(); ++i) u_index[blocks.unlabeled[i]] = i;
  for (std::size_t k = 0; k < blocks.labeled.size(); ++k) l_index[blocks.labeled[k]] = k;

  const std::size_t nu = blocks.unlabeled.size();
  blocks.l_uu = DenseMatrix(nu, nu);
  blocks.l_ul = DenseMatrix(nu, blocks.labeled.size());
  for (std::size_t i = 0; i < nu; ++i) {
    const VertexId u = blocks.unlabeled[i];
    graph.for_each_neighbor(u, [&](VertexId v, double w) {
      blocks.l_uu(i, i) += w;
      if (u_index[v] != kNone) {
        blocks.l_uu(i, u_index[v]) -= w;
      } else {
        blocks.l_ul(i, l_index[v]) -= w;
      }
    });
  }
  return blocks;
}

LabelState harmonic_solve(const DynamicGraph& graph, const LabelState& labels,
                          std::size_t max_unlabeled) {
  LabelState out = labels;
  out.resize(graph.id_bound());
  if (out.class0_count() + out.class1_count() == 0) {
    throw ValidationError("harmonic_solve needs at least one ground-truth vertex");
  }
  const std::size_t candidates = unlabeled_alive(graph, out);
  if (candidates > max_unlabeled) {
    throw SizeLimitError("dense harmonic solve refused: " + std::to_string(candidates) +
                         " unlabeled vertices exceed the cap of " +
                         std::to_string(max_unlabeled));
  }
  const LaplacianBlocks blocks = build_laplacian_blocks(graph, out);
  settle_reachability(graph, out);
  const auto nu = static_cast<Eigen::Index>(blocks.unlabeled.size());
  if (nu == 0) return out;
  const auto nl = static_cast<Eigen::Index>(blocks.labeled.size());

  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> l_uu(blocks.l_uu.data.data(), nu, nu);
  const Eigen::Map<const RowMajor> l_ul(blocks.l_ul.data.data(), nu, nl);
  Eigen::VectorXd f_l(nl);
  for (Eigen::Index k = 0; k < nl; ++k) f_l[k] = out.value(blocks.labeled[k]);
  const Eigen::VectorXd rhs = -(l_ul * f_l);

  Eigen::LLT<Eigen::MatrixXd> llt(l_uu);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("L_UU is not positive definite on the reachable set (" +
                         std::to_string(nu) + " unknowns)");
  }
  const Eigen::VectorXd x = llt.solve(rhs);
  for (Eigen::Index i = 0; i < nu; ++i) {
    if (!std::isfinite(x[i])) throw NumericalError("harmonic solve produced a non-finite value");
    out.set_value(blocks.unlabeled[i], x[i]);
  }
  return out;
}

IterationReport itlp_solve(const DynamicGraph& graph, LabelState& labels, double delta,
                           std::size_t max_iterations, Schedule schedule,
                           const IterationObserver& observer) {
  IterationReport report;
  const auto start = Clock::now();
  const std::vector<VertexId> active = settle_reachability(graph, labels);
  report.initial_frontier = active.size();
  const std::size_t cap = max_iterations > 0
                              ? max_iterations
                              : 10 * std::max<std::size_t>(1, graph.num_alive());
  std::vector<double>& f = labels.mutable_values();
  std::vector<double> next(active.size());
  const auto n = static_cast<std::int64_t>(active.size());

  auto average = [&](VertexId u) {
    double d = 0.0;
    double s = 0.0;
    graph.for_each_neighbor(u, [&](VertexId v, double w) {
      d += w;
      s += w * f[v];
    });
    return s / d;
  };

  while (n > 0) {
    if (report.iterations >= cap) {
      report.converged = false;
      break;
    }
    double max_change = 0.0;
    if (schedule == Schedule::kSequentialGaussSeidel) {
      for (VertexId u : active) {
        const double x = average(u);
        max_change = std::max(max_change, std::abs(x - f[u]));
        f[u] = x;
      }
    } else {
#pragma omp parallel for schedule(dynamic, 512) reduction(max : max_change)
      for (std::int64_t i = 0; i < n; ++i) {
        next[i] = average(active[i]);
        max_change = std::max(max_change, std::abs(next[i] - f[active[i]]));
      }
#pragma omp parallel for schedule(static)
      for (std::int64_t i = 0; i < n; ++i) f[active[i]] = next[i];
    }
    ++report.iterations;
    report.updates += active.size();
    report.max_change = max_change;
    if (observer) observer(report.iterations);
    if (max_change <= delta) break;
  }
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

ReducedGraph stlp_reduce(const DynamicGraph& graph, const LabelState& labels) {
  if (labels.class0_count() == 0 || labels.class1_count() == 0) {
    throw ValidationError("short-circuit reduction needs ground truth in both classes");
  }
  ReducedGraph out;
  out.rep0 = static_cast<VertexId>(graph.id_bound());
  out.rep1 = out.rep0 + 1;
  std::vector<WeightedEdge> edges;
  for (VertexId u : graph.alive_vertices()) {
    if (labels.is_labeled(u)) continue;
    out.unlabeled.push_back(u);
    double w0 = 0.0;
    double w1 = 0.0;
    graph.for_each_neighbor(u, [&](VertexId v, double w) {
      switch (labels.role(v)) {
        case VertexRole::kClass0:
          w0 += w;
          break;
        case VertexRole::kClass1:
          w1 += w;
          break;
        case VertexRole::kUnlabeled:
          if (u < v) edges.push_back({u, v, w});
          break;
      }
    });
    if (w0 > 0.0) edges.push_back({u, out.rep0, w0});
    if (w1 > 0.0) edges.push_back({u, out.rep1, w1});
  }
  std::vector<VertexId> vertices = out.unlabeled;
  vertices.push_back(out.rep0);
  vertices.push_back(out.rep1);
  out.graph = DynamicGraph::from_edges(vertices, edges);
  out.labels.resize(out.graph.id_bound());
  for (VertexId u : out.unlabeled) out.labels.add_unlabeled(u);
  out.labels.set_ground_truth(out.rep0, Label::kZero);
  out.labels.set_ground_truth(out.rep1, Label::kOne);
  return out;
}

void apply_changes(DynamicGraph& graph, LabelState& labels, const BatchUpdate& batch) {
  graph.validate(batch);
  graph.apply_deletes(batch.deletes);
  for (VertexId u : batch.deletes) labels.remove(u);
  graph.apply_inserts(batch.inserts);
  labels.resize(graph.id_bound());
  for (const auto& rec : batch.inserts) {
    if (rec.ground_truth) {
      labels.set_ground_truth(rec.id, *rec.ground_truth);
    } else {
      labels.add_unlabeled(rec.id);
    }
  }
}

IterationReport itlp_batch_solve(DynamicGraph& graph, LabelState& labels,
                                 const BatchUpdate& batch, const EngineConfig& cfg) {
  cfg.validate();
  internal::ThreadScope threads(cfg.threads);
  const auto start = Clock::now();
  apply_changes(graph, labels, batch);
  IterationReport report = itlp_solve(graph, labels, cfg.delta, cfg.max_iterations, cfg.schedule);
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

IterationReport stlp_batch_solve(DynamicGraph& graph, LabelState& labels,
                                 const BatchUpdate& batch, const EngineConfig& cfg,
                                 std::size_t max_unlabeled) {
  cfg.validate();
  internal::ThreadScope threads(cfg.threads);
  const auto start = Clock::now();
  apply_changes(graph, labels, batch);
  IterationReport report;
  if (unlabeled_alive(graph, labels) > 0) {
    const ReducedGraph reduced = stlp_reduce(graph, labels);
    const LabelState solved = harmonic_solve(reduced.graph, reduced.labels, max_unlabeled);
    for (VertexId u : reduced.unlabeled) {
      labels.set_value(u, solved.value(u));
      labels.set_pin(u, solved.pin_reason(u));
    }
    report.updates = reduced.unlabeled.size();
  }
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

IterationReport oracle_batch_solve(DynamicGraph& graph, LabelState& labels,
                                   const BatchUpdate& batch, const EngineConfig& cfg,
                                   std::size_t max_unlabeled) {
  cfg.validate();
  internal::ThreadScope threads(cfg.threads);
  const auto start = Clock::now();
  apply_changes(graph, labels, batch);
  IterationReport report;
  if (unlabeled_alive(graph, labels) > 0) {
    labels = harmonic_solve(graph, labels, max_unlabeled);
    report.updates = unlabeled_alive(graph, labels);
  }
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

}  // namespace dynlp
