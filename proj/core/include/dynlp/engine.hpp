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

#ifndef DYNLP_ENGINE_HPP_
#define DYNLP_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dynlp/components.hpp"
#include "dynlp/dynamic_graph.hpp"
#include "dynlp/label_state.hpp"
#include "dynlp/types.hpp"

namespace dynlp {

enum class Schedule {
  // Every update in an iteration reads the previous iteration's labels.
  kParallelJacobi,
  // Frontier vertices are updated in ascending id order, in place.
  kSequentialGaussSeidel,
};

struct EngineConfig {
  double delta = 1e-4;
  // Intra-batch similarity threshold. Empty: mean edge weight of the updated
  // graph.
  std::optional<double> tau;
  // 0 selects 10 * |V| iterations.
  std::size_t max_iterations = 0;
  Schedule schedule = Schedule::kParallelJacobi;
  // When false every new unlabeled vertex starts at 0.5.
  bool component_init = true;
  // Re-test settled vertices whenever the frontier empties (see propagate).
  bool verify_fixed_point = false;
  // OpenMP team size; 0 keeps the runtime default.
  int threads = 0;

  // Throws ValidationError on delta <= 0 or a negative tau.
  void validate() const;
};

struct IterationReport {
  std::size_t iterations = 0;
  // Vertex updates summed over all iterations.
  std::size_t updates = 0;
  // Largest |F' - F| of the final iteration.
  double max_change = 0.0;
  bool converged = true;
  // Frontier vertices found with zero weighted degree.
  std::size_t warnings = 0;
  double wall_time_ms = 0.0;
  // Size of the frontier when propagation started.
  std::size_t initial_frontier = 0;
  std::size_t components = 0;
  // Vertices newly held at 0.5 because their component has no ground truth.
  std::size_t pinned_unreachable = 0;
  double tau = 0.0;
};

// V_aff: alive, unlabeled vertices whose labels still need updating.
struct Frontier {
  std::vector<VertexId> members;  // ascending, unique

  bool empty() const { return members.empty(); }
  std::size_t size() const { return members.size(); }
};

struct ComponentSummary {
  std::size_t component_id = 0;
  double w_to_class0 = 0.0;
  double w_to_class1 = 0.0;
  std::size_t member_count = 0;
};

// Initial label for a supernode given its edge-weight sums towards the two
// ground-truth classes. Neutral (0.5) when both sums are zero.
double component_initial_label(double w_to_class0, double w_to_class1);

// Sets every unlabeled vertex of `batch` to the initial label of its
// component (or 0.5 when use_class_weights is false).
std::vector<ComponentSummary> initialize_component_labels(
    const DynamicGraph& graph, LabelState& labels, const IntraBatchGraph& batch,
    const ComponentLabeling& components, bool use_class_weights = true);

// Scratch buffers reused across propagation steps.
class PropagationWorkspace {
 public:
  // Starts a fresh membership generation; marks from earlier generations are
  // ignored afterwards.
  std::uint32_t next_epoch(std::size_t id_bound);
  std::vector<std::uint32_t>& stamps() { return stamps_; }
  std::vector<double>& values() { return values_; }
  // Per-vertex flags, all zero between uses.
  std::vector<unsigned char>& marks(std::size_t id_bound);

 private:
  std::vector<std::uint32_t> stamps_;
  std::vector<double> values_;
  std::vector<unsigned char> marks_;
  std::uint32_t epoch_ = 0;
};

struct StepResult {
  Frontier next;
  double max_change = 0.0;
  std::size_t updates = 0;
  std::size_t warnings = 0;
};

// One iteration over the frontier. Each member u takes
//   F'_u = F_u + (0 - F_u) W0/W + (1 - F_u) W1/W + Σ_{v unlabeled} (F_v - F_u) w(u,v)/W
// where W is u's weighted degree and W0/W1 its weight towards each class.
// Members that moved by more than delta stay in the next frontier together
// with their unlabeled neighbors. Members with W = 0 are pinned at 0.5 and
// counted as warnings.
StepResult propagate_step(const DynamicGraph& graph, LabelState& labels,
                          const Frontier& frontier, double delta, Schedule schedule,
                          PropagationWorkspace& workspace);
StepResult propagate_step(const DynamicGraph& graph, LabelState& labels,
                          const Frontier& frontier, double delta,
                          Schedule schedule = Schedule::kParallelJacobi);

// Called after every completed iteration with its 1-based index.
using IterationObserver = std::function<void(std::size_t iteration)>;

// Runs propagate_step until the frontier is empty or the iteration cap is hit.
// With cfg.verify_fixed_point, an empty frontier triggers a re-test of every
// vertex evaluated since the last check and of its unlabeled neighbors; those
// more than delta from their neighbor average form a new frontier, so on
// convergence every such vertex is within delta of its neighbor average.
IterationReport propagate(const DynamicGraph& graph, LabelState& labels,
                          Frontier frontier, const EngineConfig& cfg,
                          PropagationWorkspace& workspace,
                          const IterationObserver& observer = {});

// Walks the components containing `seeds`. Unlabeled vertices of components
// without any ground-truth vertex are pinned at 0.5 (kUnreachable, or
// kIsolated for degree-0 vertices); vertices found reachable lose any stale
// pin, as do pinned vertices connected to them. Returns the number of
// vertices newly pinned; `released` receives the vertices unpinned.
std::size_t pin_unreachable(const DynamicGraph& graph, LabelState& labels,
                            std::span<const VertexId> seeds,
                            std::vector<VertexId>* released = nullptr);

// The full incremental update: deletions and insertions with affected-set
// tracking, batch components over tau, component-based initialization of
// new vertices, then frontier propagation at cfg.delta. New ground-truth
// vertices are pinned before initialization so they count towards the class
// weights. Throws ValidationError (state untouched) on an invalid batch.
IterationReport apply_batch(DynamicGraph& graph, LabelState& labels,
                            const BatchUpdate& batch, const EngineConfig& cfg,
                            const IterationObserver& observer = {});
IterationReport apply_batch(DynamicGraph& graph, LabelState& labels,
                            const BatchUpdate& batch, const EngineConfig& cfg,
                            PropagationWorkspace& workspace,
                            const IterationObserver& observer = {});

// Owns a graph and its labels and feeds batches through apply_batch.
class DynLpEngine {
 public:
  explicit DynLpEngine(EngineConfig cfg = {});

  IterationReport apply(const BatchUpdate& batch, const IterationObserver& observer = {});

  const DynamicGraph& graph() const { return graph_; }
  const LabelState& labels() const { return labels_; }
  const EngineConfig& config() const { return cfg_; }

 private:
  EngineConfig cfg_;
  DynamicGraph graph_;
  LabelState labels_;
  PropagationWorkspace workspace_;
};

}  // namespace dynlp

#endif  // DYNLP_ENGINE_HPP_
