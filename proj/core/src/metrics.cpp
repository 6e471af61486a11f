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

#include "dynlp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <optional>
#include <string>

#include "dynlp/error.hpp"

namespace dynlp {
namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::kDynLp, "dynlp"},
    {Method::kItLp, "itlp"},
    {Method::kStLp, "stlp"},
    {Method::kOracle, "oracle"},
};

std::vector<double> ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [method, n] : kMethodNames) {
    if (n == name) return method;
  }
  throw ValidationError("unknown method '" + std::string(name) +
                        "'; valid methods are dynlp, itlp, stlp, oracle");
}

std::vector<Method> parse_method_list(std::string_view comma_separated) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    const std::size_t end = std::min(comma_separated.find(',', start), comma_separated.size());
    const std::string_view item = comma_separated.substr(start, end - start);
    if (!item.empty()) {
      const Method m = parse_method(item);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    start = end + 1;
  }
  if (out.empty()) throw ValidationError("method list is empty");
  return out;
}

void RunReport::add(std::size_t batch_index, const IterationReport& r) {
  per_batch.push_back({batch_index, r.iterations, r.updates, r.wall_time_ms, r.max_change,
                       r.converged, r.warnings});
  totals = sum();
}

RunTotals RunReport::sum() const {
  RunTotals t;
  for (const auto& b : per_batch) {
    t.iterations += b.iterations;
    t.vertex_updates += b.vertex_updates;
    t.wall_time_ms += b.wall_time_ms;
    t.warnings += b.warnings;
    t.converged = t.converged && b.converged;
  }
  return t;
}

LabelSnapshot snapshot_unlabeled(const DynamicGraph& graph, const LabelState& labels) {
  LabelSnapshot out;
  for (VertexId u : graph.alive_vertices()) {
    if (!labels.is_labeled(u)) out.emplace_back(u, labels.value(u));
  }
  return out;
}

AccuracyReport binary_accuracy(const LabelSnapshot& candidate, const LabelSnapshot& reference,
                               double epsilon) {
  bool same = candidate.size() == reference.size();
  for (std::size_t i = 0; same && i < candidate.size(); ++i) {
    same = candidate[i].first == reference[i].first;
  }
  if (!same) {
    std::vector<VertexId> a;
    std::vector<VertexId> b;
    for (const auto& p : candidate) a.push_back(p.first);
    for (const auto& p : reference) b.push_back(p.first);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<VertexId> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(diff));
    throw ValidationError("label snapshots cover different vertices (symmetric difference of " +
                          std::to_string(diff.size()) + ")");
  }
  AccuracyReport report;
  std::size_t matches = 0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const double ref = reference[i].second;
    if (epsilon > 0.0 && ref > 0.5 - epsilon && ref < 0.5 + epsilon) {
      ++report.margin_excluded_count;
      continue;
    }
    ++report.compared_count;
    if (LabelState::binary(candidate[i].second) == LabelState::binary(ref)) ++matches;
  }
  report.agreement = report.compared_count == 0
                         ? 1.0
                         : static_cast<double>(matches) / static_cast<double>(report.compared_count);
  return report;
}

double dirichlet_energy(const DynamicGraph& graph, const LabelState& labels) {
  double energy = 0.0;
  for (std::size_t u = 0; u < graph.id_bound(); ++u) {
    const auto uid = static_cast<VertexId>(u);
    if (!graph.is_alive(uid)) continue;
    graph.for_each_neighbor(uid, [&](VertexId v, double w) {
      if (uid < v) {
        const double d = labels.value(uid) - labels.value(v);
        energy += w * d * d;
      }
    });
  }
  return 0.5 * energy;
}

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("spearman_correlation: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

MethodRunner::MethodRunner(Method method, EngineConfig cfg, std::size_t dense_cap)
    : method_(method), cfg_(std::move(cfg)), dense_cap_(dense_cap) {
  cfg_.validate();
}

IterationReport MethodRunner::apply(const BatchUpdate& batch) {
  switch (method_) {
    case Method::kDynLp:
      return apply_batch(graph_, labels_, batch, cfg_, workspace_);
    case Method::kItLp:
      return itlp_batch_solve(graph_, labels_, batch, cfg_);
    case Method::kStLp:
      return stlp_batch_solve(graph_, labels_, batch, cfg_, dense_cap_);
    case Method::kOracle:
      return oracle_batch_solve(graph_, labels_, batch, cfg_, dense_cap_);
  }
  return {};
}

std::size_t peak_unlabeled(std::span<const BatchUpdate> stream) {
  std::vector<unsigned char> unlabeled;
  std::size_t current = 0;
  std::size_t peak = 0;
  for (const auto& batch : stream) {
    for (VertexId d : batch.deletes) {
      if (d < unlabeled.size() && unlabeled[d]) {
        unlabeled[d] = 0;
        --current;
      }
    }
    for (const auto& rec : batch.inserts) {
      if (rec.ground_truth) continue;
      if (rec.id >= unlabeled.size()) unlabeled.resize(static_cast<std::size_t>(rec.id) + 1, 0);
      if (!unlabeled[rec.id]) {
        unlabeled[rec.id] = 1;
        ++current;
      }
    }
    peak = std::max(peak, current);
  }
  return peak;
}

ComparisonResult compare_methods(std::span<const BatchUpdate> stream, const CompareConfig& cfg) {
  if (cfg.methods.empty()) throw ValidationError("compare_methods needs at least one method");
  cfg.engine.validate();
  std::vector<Method> order = cfg.methods;
  std::optional<Method> reference = cfg.reference;
  if (!reference) {
    for (Method m : {Method::kStLp, Method::kOracle}) {
      if (!reference && std::find(order.begin(), order.end(), m) != order.end()) reference = m;
    }
  }
  if (reference && std::find(order.begin(), order.end(), *reference) == order.end()) {
    order.push_back(*reference);
  }
  const bool dense = std::any_of(order.begin(), order.end(), [](Method m) {
    return m == Method::kStLp || m == Method::kOracle;
  });
  if (dense) {
    const std::size_t peak = peak_unlabeled(stream);
    if (peak > cfg.dense_cap) {
      throw SizeLimitError("stlp/oracle refused: the stream reaches " + std::to_string(peak) +
                           " unlabeled vertices, above the dense-solve cap of " +
                           std::to_string(cfg.dense_cap));
    }
  }

  ComparisonResult result;
  for (Method m : order) {
    MethodRunner runner(m, cfg.engine, cfg.dense_cap);
    RunReport report;
    report.method = m;
    for (std::size_t b = 0; b < stream.size(); ++b) report.add(b, runner.apply(stream[b]));
    result.reports.push_back(std::move(report));
    result.final_labels.push_back(snapshot_unlabeled(runner.graph(), runner.labels()));
  }

  if (reference) {
    const auto ref_it = std::find(order.begin(), order.end(), *reference);
    const LabelSnapshot& ref_labels = result.final_labels[ref_it - order.begin()];
    for (std::size_t i = 0; i < order.size(); ++i) {
      AccuracyReport acc = binary_accuracy(result.final_labels[i], ref_labels, cfg.epsilon);
      acc.reference_method = *reference;
      result.accuracy.push_back(acc);
    }
  }

  const auto base_it = std::find(order.begin(), order.end(), Method::kItLp);
  const std::size_t base = base_it != order.end() ? static_cast<std::size_t>(base_it - order.begin()) : 0;
  result.speedup_baseline = order[base];
  const RunReport& base_report = result.reports[base];
  for (const auto& report : result.reports) {
    std::vector<double> per_batch;
    for (std::size_t b = 0; b < report.per_batch.size(); ++b) {
      const double t = report.per_batch[b].wall_time_ms;
      per_batch.push_back(t > 0.0 ? base_report.per_batch[b].wall_time_ms / t : 0.0);
    }
    result.speedup.push_back(std::move(per_batch));
    result.total_speedup.push_back(report.totals.wall_time_ms > 0.0
                                       ? base_report.totals.wall_time_ms / report.totals.wall_time_ms
                                       : 0.0);
  }
  return result;
}

}  // namespace dynlp
