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

#ifndef DYNLP_METRICS_HPP_
#define DYNLP_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dynlp/baselines.hpp"
#include "dynlp/dynamic_graph.hpp"
#include "dynlp/engine.hpp"
#include "dynlp/label_state.hpp"
#include "dynlp/types.hpp"

namespace dynlp {

enum class Method { kDynLp, kItLp, kStLp, kOracle };

std::string_view method_name(Method m);
// Throws ValidationError naming the valid choices.
Method parse_method(std::string_view name);
std::vector<Method> parse_method_list(std::string_view comma_separated);

struct BatchRecord {
  std::size_t batch_index = 0;
  std::size_t iterations = 0;
  std::size_t vertex_updates = 0;
  double wall_time_ms = 0.0;
  double max_change = 0.0;
  bool converged = true;
  std::size_t warnings = 0;
};

struct RunTotals {
  std::size_t iterations = 0;
  std::size_t vertex_updates = 0;
  double wall_time_ms = 0.0;
  std::size_t warnings = 0;
  bool converged = true;

  friend bool operator==(const RunTotals&, const RunTotals&) = default;
};

struct RunReport {
  Method method = Method::kDynLp;
  std::vector<BatchRecord> per_batch;
  RunTotals totals;
  nlohmann::json config_echo = nlohmann::json::object();

  void add(std::size_t batch_index, const IterationReport& r);
  // Totals as recomputed from per_batch.
  RunTotals sum() const;
};

struct AccuracyReport {
  Method reference_method = Method::kStLp;
  double agreement = 1.0;
  std::size_t compared_count = 0;
  std::size_t margin_excluded_count = 0;
};

// (vertex, fractional label) for the alive unlabeled vertices, ascending.
using LabelSnapshot = std::vector<std::pair<VertexId, double>>;

LabelSnapshot snapshot_unlabeled(const DynamicGraph& graph, const LabelState& labels);

// Fraction of vertices whose thresholded labels (f >= 0.5 is class 1) agree.
// With epsilon > 0, vertices whose reference label lies strictly within
// epsilon of 0.5 are excluded and counted separately. Throws ValidationError
// if the two snapshots cover different vertices.
AccuracyReport binary_accuracy(const LabelSnapshot& candidate, const LabelSnapshot& reference,
                               double epsilon = 0.0);

// E(F) = 1/2 Σ_{(u,v) in E} w(u,v) (F_u - F_v)^2, each undirected edge once.
double dirichlet_energy(const DynamicGraph& graph, const LabelState& labels);

// Spearman rank correlation (average ranks for ties); 0 for constant input.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

// One method's graph and labels, advanced batch by batch.
class MethodRunner {
 public:
  MethodRunner(Method method, EngineConfig cfg, std::size_t dense_cap = kDenseSolveCap);

  IterationReport apply(const BatchUpdate& batch);

  Method method() const { return method_; }
  const DynamicGraph& graph() const { return graph_; }
  const LabelState& labels() const { return labels_; }

 private:
  Method method_;
  EngineConfig cfg_;
  std::size_t dense_cap_;
  DynamicGraph graph_;
  LabelState labels_;
  PropagationWorkspace workspace_;
};

struct CompareConfig {
  EngineConfig engine;
  std::vector<Method> methods;
  // Accuracy reference, run in addition to `methods` when not among them.
  // Unset: StLP or the oracle if either is among `methods`, else no accuracy.
  std::optional<Method> reference;
  double epsilon = 0.0;
  std::size_t dense_cap = kDenseSolveCap;
};

struct ComparisonResult {
  std::vector<RunReport> reports;
  // Final-state accuracy of each report's method against the reference, in
  // report order. Empty when there is no reference.
  std::vector<AccuracyReport> accuracy;
  // Method whose wall time is the numerator of every speedup (ItLP when it
  // was run, otherwise the first method).
  Method speedup_baseline = Method::kItLp;
  // speedup[i][b]: baseline time / reports[i] time for batch b.
  std::vector<std::vector<double>> speedup;
  std::vector<double> total_speedup;
  std::vector<LabelSnapshot> final_labels;
};

// Largest number of alive unlabeled vertices at any point of the stream.
std::size_t peak_unlabeled(std::span<const BatchUpdate> stream);

// Runs every requested method (plus the reference, if missing) over the same
// stream, one method at a time. Throws SizeLimitError before running anything
// when a dense method would exceed cfg.dense_cap.
ComparisonResult compare_methods(std::span<const BatchUpdate> stream, const CompareConfig& cfg);

}  // namespace dynlp

#endif  // DYNLP_METRICS_HPP_
