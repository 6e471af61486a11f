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

#include "dynlp/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
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

struct VertexUpdate {
  double value = 0.0;
  bool isolated = false;
};

// The adjustment form of the update rule. Labeled neighbors contribute
// through the class weights, unlabeled ones through the difference sum.
VertexUpdate compute_update(const DynamicGraph& graph, const LabelState& labels,
                            const std::vector<double>& f, VertexId u) {
  const double fu = f[u];
  double w_all = 0.0;
  double w0 = 0.0;
  double w1 = 0.0;
  double pull = 0.0;
  graph.for_each_neighbor(u, [&](VertexId v, double w) {
    w_all += w;
    switch (labels.role(v)) {
      case VertexRole::kClass0:
        w0 += w;
        break;
      case VertexRole::kClass1:
        w1 += w;
        break;
      case VertexRole::kUnlabeled:
        pull += (f[v] - fu) * w;
        break;
    }
  });
  if (w_all == 0.0) return {LabelState::kNeutral, true};
  double next = fu + (0.0 - fu) * (w0 / w_all) + (1.0 - fu) * (w1 / w_all) + pull / w_all;
  return {std::clamp(next, 0.0, 1.0), false};
}

// Appends v to `out` unless another caller already claimed it this epoch.
inline void claim(std::vector<std::uint32_t>& stamps, std::uint32_t epoch, VertexId v,
                  std::vector<VertexId>& out) {
  std::atomic_ref slot(stamps[v]);
  if (slot.load(std::memory_order_relaxed) == epoch) return;
  if (slot.exchange(epoch, std::memory_order_relaxed) != epoch) out.push_back(v);
}

}  // namespace

void EngineConfig::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ValidationError("delta must be a positive finite number");
  }
  if (tau && (!(*tau >= 0.0) || !std::isfinite(*tau))) {
    throw ValidationError("tau must be a non-negative finite number");
  }
}

double component_initial_label(double w_to_class0, double w_to_class1) {
  const double total = w_to_class0 + w_to_class1;
  if (total <= 0.0) return LabelState::kNeutral;
  return 0.5 - w_to_class0 / (2.0 * total) + w_to_class1 / (2.0 * total);
}

std::vector<ComponentSummary> initialize_component_labels(
    const DynamicGraph& graph, LabelState& labels, const IntraBatchGraph& batch,
    const ComponentLabeling& components, bool use_class_weights) {
  const std::size_t n = batch.vertices.size();
  std::vector<ComponentSummary> summary(components.num_components);
  for (std::size_t c = 0; c < summary.size(); ++c) summary[c].component_id = c;

  std::vector<double> w0(n, 0.0);
  std::vector<double> w1(n, 0.0);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < count; ++i) {
    const VertexId u = batch.vertices[i];
    graph.for_each_neighbor(u, [&](VertexId v, double w) {
      if (labels.role(v) == VertexRole::kClass0) w0[i] += w;
      if (labels.role(v) == VertexRole::kClass1) w1[i] += w;
    });
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = summary[components.component_id[i]];
    s.w_to_class0 += w0[i];
    s.w_to_class1 += w1[i];
    ++s.member_count;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId u = batch.vertices[i];
    if (labels.is_labeled(u)) continue;
    const auto& s = summary[components.component_id[i]];
    labels.set_value(u, use_class_weights
                            ? component_initial_label(s.w_to_class0, s.w_to_class1)
                            : LabelState::kNeutral);
  }
  return summary;
}

std::vector<unsigned char>& PropagationWorkspace::marks(std::size_t id_bound) {
  if (marks_.size() < id_bound) marks_.resize(id_bound, 0);
  return marks_;
}

std::uint32_t PropagationWorkspace::next_epoch(std::size_t id_bound) {
  if (stamps_.size() < id_bound) stamps_.resize(id_bound, 0);
  if (++epoch_ == 0) {
    std::fill(stamps_.begin(), stamps_.end(), 0);
    epoch_ = 1;
  }
  return epoch_;
}

StepResult propagate_step(const DynamicGraph& graph, LabelState& labels,
                          const Frontier& frontier, double delta, Schedule schedule,
                          PropagationWorkspace& workspace) {
  StepResult result;
  const std::size_t n = frontier.size();
  if (n == 0) return result;
  std::vector<double>& f = labels.mutable_values();
  const std::uint32_t epoch = workspace.next_epoch(graph.id_bound());
  auto& stamps = workspace.stamps();
  std::vector<VertexId>& next = result.next.members;

  auto enqueue = [&](VertexId u, std::vector<VertexId>& out) {
    claim(stamps, epoch, u, out);
    graph.for_each_neighbor(u, [&](VertexId v, double) {
      if (!labels.is_labeled(v)) claim(stamps, epoch, v, out);
    });
  };

  if (schedule == Schedule::kSequentialGaussSeidel) {
    for (VertexId u : frontier.members) {
      const VertexUpdate up = compute_update(graph, labels, f, u);
      ++result.updates;
      if (up.isolated) {
        f[u] = LabelState::kNeutral;
        labels.set_pin(u, PinReason::kIsolated);
        ++result.warnings;
        continue;
      }
      const double change = std::abs(up.value - f[u]);
      f[u] = up.value;
      labels.set_pin(u, PinReason::kNone);
      result.max_change = std::max(result.max_change, change);
      if (change > delta) enqueue(u, next);
    }
  } else {
    std::vector<double>& vals = workspace.values();
    vals.resize(n);
    std::vector<unsigned char> isolated(n, 0);
    const auto count = static_cast<std::int64_t>(n);
    double max_change = 0.0;
    std::size_t warnings = 0;
    // Reads only touch f, which is not written until every member is done.
#pragma omp parallel for schedule(dynamic, 256) reduction(max : max_change) reduction(+ : warnings)
    for (std::int64_t i = 0; i < count; ++i) {
      const VertexId u = frontier.members[i];
      const VertexUpdate up = compute_update(graph, labels, f, u);
      vals[i] = up.value;
      if (up.isolated) {
        isolated[i] = 1;
        ++warnings;
      } else {
        max_change = std::max(max_change, std::abs(up.value - f[u]));
      }
    }
    result.max_change = max_change;
    result.warnings = warnings;
    result.updates = n;

#pragma omp parallel
    {
      std::vector<VertexId> local;
#pragma omp for schedule(dynamic, 256) nowait
      for (std::int64_t i = 0; i < count; ++i) {
        if (isolated[i]) continue;
        const VertexId u = frontier.members[i];
        if (std::abs(vals[i] - f[u]) > delta) enqueue(u, local);
      }
#pragma omp critical(dynlp_frontier_merge)
      next.insert(next.end(), local.begin(), local.end());
    }

    for (std::size_t i = 0; i < n; ++i) {
      const VertexId u = frontier.members[i];
      f[u] = vals[i];
      labels.set_pin(u, isolated[i] ? PinReason::kIsolated : PinReason::kNone);
    }
  }
  std::sort(next.begin(), next.end());
  return result;
}

StepResult propagate_step(const DynamicGraph& graph, LabelState& labels,
                          const Frontier& frontier, double delta, Schedule schedule) {
  PropagationWorkspace workspace;
  return propagate_step(graph, labels, frontier, delta, schedule, workspace);
}

namespace {

// Frontier members whose label sits more than delta away from the average of
// their neighbors, taken over `evaluated` and the unlabeled neighbors of its
// vertices. Clears the marks it sets.
Frontier unsettled_vertices(const DynamicGraph& graph, const LabelState& labels,
                            const std::vector<VertexId>& evaluated, double delta,
                            std::vector<unsigned char>& marks) {
  std::vector<VertexId> candidates;
  auto add = [&](VertexId v) {
    if (marks[v] || labels.is_labeled(v) || labels.pin_reason(v) != PinReason::kNone) return;
    marks[v] = 1;
    candidates.push_back(v);
  };
  for (VertexId u : evaluated) {
    add(u);
    graph.for_each_neighbor(u, [&](VertexId v, double) { add(v); });
  }
  for (VertexId v : candidates) marks[v] = 0;
  std::sort(candidates.begin(), candidates.end());

  const std::vector<double>& f = labels.values();
  std::vector<unsigned char> keep(candidates.size(), 0);
  const auto count = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < count; ++i) {
    const VertexId u = candidates[i];
    const VertexUpdate up = compute_update(graph, labels, f, u);
    keep[i] = !up.isolated && std::abs(up.value - f[u]) > delta;
  }
  Frontier out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (keep[i]) out.members.push_back(candidates[i]);
  }
  return out;
}

}  // namespace

IterationReport propagate(const DynamicGraph& graph, LabelState& labels,
                          Frontier frontier, const EngineConfig& cfg,
                          PropagationWorkspace& workspace,
                          const IterationObserver& observer) {
  IterationReport report;
  report.initial_frontier = frontier.size();
  const std::size_t cap = cfg.max_iterations > 0
                              ? cfg.max_iterations
                              : 10 * std::max<std::size_t>(1, graph.num_alive());
  std::vector<unsigned char>& marks = workspace.marks(graph.id_bound());
  std::vector<VertexId> evaluated;
  while (!frontier.empty()) {
    while (!frontier.empty()) {
      if (report.iterations >= cap) {
        report.converged = false;
        for (VertexId u : evaluated) marks[u] = 0;
        return report;
      }
      for (VertexId u : frontier.members) {
        if (cfg.verify_fixed_point && !marks[u]) {
          marks[u] = 1;
          evaluated.push_back(u);
        }
      }
      StepResult step =
          propagate_step(graph, labels, frontier, cfg.delta, cfg.schedule, workspace);
      ++report.iterations;
      report.updates += step.updates;
      report.warnings += step.warnings;
      report.max_change = step.max_change;
      frontier = std::move(step.next);
      if (observer) observer(report.iterations);
    }
    for (VertexId u : evaluated) marks[u] = 0;
    if (cfg.verify_fixed_point) {
      // Neighbors may have drifted by up to delta several times after a
      // vertex left the frontier.
      frontier = unsettled_vertices(graph, labels, evaluated, cfg.delta, marks);
    }
    evaluated.clear();
  }
  return report;
}

std::size_t pin_unreachable(const DynamicGraph& graph, LabelState& labels,
                            std::span<const VertexId> seeds, std::vector<VertexId>* released) {
  enum : std::uint8_t { kUnknown = 0, kQueued = 1, kReachable = 2, kCut = 3 };
  std::vector<std::uint8_t> mark(graph.id_bound(), kUnknown);
  std::vector<VertexId> visited;
  std::deque<VertexId> queue;
  std::vector<VertexId> unpinned;
  std::size_t pinned = 0;
  for (VertexId s : seeds) {
    if (!graph.is_alive(s) || labels.is_labeled(s) || mark[s] != kUnknown) continue;
    visited.clear();
    queue.clear();
    mark[s] = kQueued;
    visited.push_back(s);
    queue.push_back(s);
    bool found = false;
    while (!queue.empty() && !found) {
      const VertexId u = queue.front();
      queue.pop_front();
      graph.for_each_neighbor(u, [&](VertexId v, double) {
        if (found) return;
        if (labels.is_labeled(v) || mark[v] == kReachable) {
          found = true;
        } else if (mark[v] == kUnknown) {
          mark[v] = kQueued;
          visited.push_back(v);
          queue.push_back(v);
        }
      });
    }
    if (found) {
      // Pinned vertices joined to this component are reachable again.
      std::size_t head = 0;
      for (VertexId x : visited) mark[x] = kReachable;
      while (head < visited.size()) {
        const VertexId x = visited[head++];
        if (labels.pin_reason(x) != PinReason::kNone) {
          labels.set_pin(x, PinReason::kNone);
          unpinned.push_back(x);
        }
        graph.for_each_neighbor(x, [&](VertexId v, double) {
          if (mark[v] == kReachable || labels.is_labeled(v) ||
              labels.pin_reason(v) == PinReason::kNone) {
            return;
          }
          mark[v] = kReachable;
          visited.push_back(v);
        });
      }
      continue;
    }
    for (VertexId x : visited) {
      mark[x] = kCut;
      bool has_edge = false;
      graph.for_each_neighbor(x, [&](VertexId, double) { has_edge = true; });
      const PinReason reason = has_edge ? PinReason::kUnreachable : PinReason::kIsolated;
      if (labels.pin_reason(x) == PinReason::kNone) ++pinned;
      labels.set_pin(x, reason);
      labels.set_value(x, LabelState::kNeutral);
    }
  }
  if (released) {
    std::sort(unpinned.begin(), unpinned.end());
    *released = std::move(unpinned);
  }
  return pinned;
}

IterationReport apply_batch(DynamicGraph& graph, LabelState& labels,
                            const BatchUpdate& batch, const EngineConfig& cfg,
                            const IterationObserver& observer) {
  PropagationWorkspace workspace;
  return apply_batch(graph, labels, batch, cfg, workspace, observer);
}

IterationReport apply_batch(DynamicGraph& graph, LabelState& labels,
                            const BatchUpdate& batch, const EngineConfig& cfg,
                            PropagationWorkspace& workspace,
                            const IterationObserver& observer) {
  cfg.validate();
  graph.validate(batch);
  internal::ThreadScope threads(cfg.threads);
  const auto start = Clock::now();

  // Step 1: change adjustment.
  std::vector<VertexId> affected = graph.apply_deletes(batch.deletes);
  for (VertexId u : batch.deletes) labels.remove(u);
  std::vector<VertexId> touched = graph.apply_inserts(batch.inserts);
  labels.resize(graph.id_bound());
  std::vector<VertexId> fresh_unlabeled;
  for (const auto& rec : batch.inserts) {
    if (rec.ground_truth) {
      labels.set_ground_truth(rec.id, *rec.ground_truth);
    } else {
      labels.add_unlabeled(rec.id);
      fresh_unlabeled.push_back(rec.id);
    }
  }
  affected.insert(affected.end(), touched.begin(), touched.end());
  std::sort(affected.begin(), affected.end());
  affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

  // Sparsified batch graph and its supernodes.
  double tau = 0.0;
  if (cfg.tau) {
    tau = *cfg.tau;
  } else if (graph.edge_count() > 0) {
    tau = default_tau(graph);
  }
  const IntraBatchGraph intra = build_intra_batch_graph(graph, fresh_unlabeled, tau);
  const ComponentLabeling components = find_components(intra);

  // Step 2: supernode initialization.
  initialize_component_labels(graph, labels, intra, components, cfg.component_init);

  std::vector<VertexId> released;
  const std::size_t pinned = pin_unreachable(graph, labels, affected, &released);
  affected.insert(affected.end(), released.begin(), released.end());
  std::sort(affected.begin(), affected.end());
  affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
  Frontier frontier;
  for (VertexId u : affected) {
    if (graph.is_alive(u) && !labels.is_labeled(u) &&
        labels.pin_reason(u) == PinReason::kNone) {
      frontier.members.push_back(u);
    }
  }

  // Step 3: frontier propagation.
  IterationReport report = propagate(graph, labels, std::move(frontier), cfg, workspace, observer);
  report.components = components.num_components;
  report.pinned_unreachable = pinned;
  report.tau = tau;
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

DynLpEngine::DynLpEngine(EngineConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

IterationReport DynLpEngine::apply(const BatchUpdate& batch, const IterationObserver& observer) {
  return apply_batch(graph_, labels_, batch, cfg_, workspace_, observer);
}

}  // namespace dynlp
