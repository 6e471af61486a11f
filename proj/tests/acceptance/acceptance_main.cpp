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


// Acceptance suite: runs every criterion and prints one PASS/FAIL line each.
// Pass criterion numbers as arguments to run a subset.

#include <sys/resource.h>

#include <omp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dynlp/baselines.hpp"
#include "dynlp/builder.hpp"
#include "dynlp/components.hpp"
#include "dynlp/engine.hpp"
#include "dynlp/io.hpp"
#include "dynlp/metrics.hpp"
#include "dynlp/stream.hpp"
#include "oracles.hpp"

namespace dynlp {
namespace {

using Clock = std::chrono::steady_clock;
using testing::Instance;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) { return format_double(x); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::size_t total_iterations(const RunReport& r) { return r.sum().iterations; }

// Criterion 1. Pass/fail uses the default frontier rule; the re-checked
// variant is reported alongside.
Outcome harmonic_equivalence() {
  const auto start = Clock::now();
  double secs = 0.0;
  double worst[2] = {0.0, 0.0};
  double worst_solver = 0.0;
  for (int verify = 0; verify < 2; ++verify) {
    if (verify == 1) secs = seconds_since(start);
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> size(20, 500);
    const double degrees[] = {3.0, 5.0, 7.0};
    for (int i = 0; i < 200; ++i) {
      const Instance inst =
          testing::random_connected_instance(rng, size(rng), degrees[i % 3], 0.01);
      EngineConfig cfg;
      cfg.delta = 1e-9;
      cfg.max_iterations = 10'000'000;
      cfg.verify_fixed_point = verify == 1;
      DynLpEngine engine(cfg);
      if (!engine.apply(testing::as_batch(inst)).converged) {
        return {false, "instance " + std::to_string(i) + " hit the iteration cap"};
      }
      const auto& f = engine.labels().values();
      const auto exact = testing::gauss_harmonic(inst);
      worst[verify] = std::max(
          worst[verify], testing::max_unlabeled_diff(engine.graph(), engine.labels(), f, exact));
      if (verify == 0) {
        const auto solved =
            harmonic_solve(testing::build_graph(inst), testing::build_labels(inst));
        worst_solver = std::max(worst_solver, testing::max_unlabeled_diff(
                                                  engine.graph(), engine.labels(), f,
                                                  solved.values()));
      }
    }
  }
  return {worst[0] <= 1e-6 && worst_solver <= 1e-6 && secs < 60.0,
          "max diff vs elimination " + fmt(worst[0]) + ", vs harmonic_solve " +
              fmt(worst_solver) + "; with fixed-point re-check " + fmt(worst[1]) + "; " +
              fmt(secs) + " s"};
}

// Criterion 2
Outcome one_step_averaging() {
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> degree(1, 12);
  std::uniform_int_distribution<int> role(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.01, 2.0);
  PropagationWorkspace workspace;
  double worst = 0.0;
  for (int i = 0; i < 100'000; ++i) {
    const int d = degree(rng);
    std::vector<VertexId> vertices(static_cast<std::size_t>(d) + 1);
    std::vector<WeightedEdge> edges;
    for (int j = 0; j <= d; ++j) vertices[j] = static_cast<VertexId>(j);
    for (int j = 1; j <= d; ++j) edges.push_back({0, static_cast<VertexId>(j), weight(rng)});
    const DynamicGraph g = DynamicGraph::from_edges(vertices, edges);
    LabelState labels;
    labels.resize(vertices.size());
    labels.add_unlabeled(0);
    labels.set_value(0, unit(rng));
    double num = 0.0;
    double den = 0.0;
    for (const auto& e : edges) den += e.w;
    for (const auto& e : edges) {
      const int r = role(rng);
      if (r == 2) {
        labels.add_unlabeled(e.v);
        labels.set_value(e.v, unit(rng));
      } else {
        labels.set_ground_truth(e.v, static_cast<Label>(r));
      }
      num += (e.w / den) * labels.value(e.v);
    }
    const Schedule s = i % 2 ? Schedule::kSequentialGaussSeidel : Schedule::kParallelJacobi;
    propagate_step(g, labels, Frontier{{0}}, 0.0, s, workspace);
    worst = std::max(worst, std::abs(labels.value(0) - num));
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-12 && secs < 5.0,
          "max deviation " + fmt(worst) + " over 100000 updates, " + fmt(secs) + " s"};
}

// Criterion 3
Outcome short_circuit_lossless() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> size(10, 300);
  std::uniform_real_distribution<double> degree(2.0, 7.0);
  double worst = 0.0;
  std::size_t compared = 0;
  for (int i = 0; i < 100; ++i) {
    const Instance inst = testing::random_instance(rng, size(rng), degree(rng), 0.03);
    const DynamicGraph g = testing::build_graph(inst);
    const LabelState labels = testing::build_labels(inst);
    const LabelState full = harmonic_solve(g, labels);
    const ReducedGraph reduced = stlp_reduce(g, labels);
    const LabelState small = harmonic_solve(reduced.graph, reduced.labels);
    for (VertexId u : reduced.unlabeled) {
      worst = std::max(worst, std::abs(small.value(u) - full.value(u)));
      ++compared;
    }
  }
  return {worst <= 1e-9,
          "max diff " + fmt(worst) + " over " + std::to_string(compared) + " vertices"};
}

// Criterion 4
Outcome incremental_equals_scratch() {
  double worst = 0.0;
  std::size_t batches = 0;
  for (int i = 0; i < 50; ++i) {
    SyntheticSpec spec;
    spec.n = 1000;
    spec.avg_degree = 3.0 + 2.0 * (i % 3);
    spec.seed = 4000 + static_cast<std::uint64_t>(i);
    spec.labeled_fraction = 0.03;
    StreamSpec ss;
    ss.batch_size = 100;
    ss.seed = spec.seed;
    ss.num_batches = 10;
    const Stream stream = make_stream(erdos_renyi(spec), ss);
    EngineConfig cfg;
    cfg.delta = 1e-9;
    cfg.max_iterations = 10'000'000;
    DynLpEngine engine(cfg);
    for (const auto& b : stream.batches) {
      if (!engine.apply(b).converged) {
        return {false, "stream " + std::to_string(i) + " hit the iteration cap"};
      }
      ++batches;
    }
    const Instance snap = testing::snapshot_instance(engine.graph(), engine.labels());
    worst = std::max(worst, testing::max_unlabeled_diff(engine.graph(), engine.labels(),
                                                        engine.labels().values(),
                                                        testing::gauss_harmonic(snap)));
  }
  return {worst <= 1e-6, "max diff " + fmt(worst) + " after " + std::to_string(batches) +
                             " batches over 50 streams"};
}

// Criterion 5
Outcome iteration_advantage() {
  const auto start = Clock::now();
  int runs = 0;
  int fewer_updates = 0;
  int iterations_ok = 0;
  std::string misses;
  for (double degree : {3.0, 5.0, 7.0}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      SyntheticSpec spec;
      spec.n = 50'000;
      spec.avg_degree = degree;
      spec.seed = 500 + seed;
      spec.labeled_fraction = 0.012;
      StreamSpec ss;
      ss.batch_size = 5000;
      ss.seed = spec.seed;
      ss.num_batches = 10;
      const Stream stream = make_stream(erdos_renyi(spec), ss);
      CompareConfig cc;
      cc.engine.delta = 1e-4;
      cc.methods = {Method::kDynLp, Method::kItLp};
      const ComparisonResult res = compare_methods(stream.batches, cc);
      const RunReport& dyn = res.reports[0];
      const RunReport& it = res.reports[1];
      ++runs;
      if (dyn.sum().vertex_updates < it.sum().vertex_updates) ++fewer_updates;
      bool ok = true;
      for (std::size_t b = 1; b < dyn.per_batch.size(); ++b) {
        if (dyn.per_batch[b].iterations > it.per_batch[b].iterations) {
          ok = false;
          misses += " d" + fmt(degree) + "/s" + std::to_string(seed) + "/b" + std::to_string(b) +
                    ":" + std::to_string(dyn.per_batch[b].iterations) + ">" +
                    std::to_string(it.per_batch[b].iterations);
        }
      }
      if (ok) ++iterations_ok;
    }
  }
  const bool pass = 10 * fewer_updates >= 9 * runs && 10 * iterations_ok >= 9 * runs;
  return {pass, "fewer updates in " + std::to_string(fewer_updates) + "/" +
                    std::to_string(runs) + " runs, per-batch iterations <= in " +
                    std::to_string(iterations_ok) + "/" + std::to_string(runs) + " runs, " +
                    fmt(seconds_since(start)) + " s" + (misses.empty() ? "" : "; misses" + misses)};
}

// Criterion 6
Outcome degree_effect() {
  std::vector<double> medians;
  for (double degree : {3.0, 5.0, 7.0}) {
    std::vector<double> iterations;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SyntheticSpec spec;
      spec.n = 5000;
      spec.avg_degree = degree;
      spec.seed = 600 + seed;
      EngineConfig cfg;
      cfg.delta = 1e-4;
      DynLpEngine engine(cfg);
      const IterationReport r = engine.apply(whole_graph_batch(erdos_renyi(spec)));
      if (!r.converged) return {false, "seed " + std::to_string(seed) + " hit the iteration cap"};
      iterations.push_back(static_cast<double>(r.iterations));
    }
    medians.push_back(median(iterations));
  }
  return {medians[0] >= medians[1] && medians[1] >= medians[2],
          "median iterations at degree 3/5/7: " + fmt(medians[0]) + " / " + fmt(medians[1]) +
              " / " + fmt(medians[2])};
}

// Criterion 7
Outcome delta_tradeoff() {
  const double deltas[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  const std::size_t batch_sizes[] = {200, 500, 1000};
  bool monotone = true;
  bool accurate = true;
  std::string counts;
  std::string agreement;
  for (std::size_t batch_size : batch_sizes) {
    double worst = 1.0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      SyntheticSpec spec;
      spec.n = 4000;
      spec.avg_degree = 5.0;
      spec.seed = 700 + seed;
      spec.labeled_fraction = 0.03;
      StreamSpec ss;
      ss.batch_size = batch_size;
      ss.seed = spec.seed;
      ss.num_batches = 3000 / batch_size;
      const Stream stream = make_stream(erdos_renyi(spec), ss);
      // Deltas run from largest to smallest, so counts must not drop.
      std::size_t previous = 0;
      for (double delta : deltas) {
        EngineConfig cfg;
        cfg.delta = delta;
        DynLpEngine engine(cfg);
        std::size_t iterations = 0;
        for (const auto& b : stream.batches) iterations += engine.apply(b).iterations;
        if (iterations < previous) monotone = false;
        previous = iterations;
        if (seed == 1 && batch_size == batch_sizes[0]) {
          counts += (counts.empty() ? "" : "/") + std::to_string(iterations);
        }
        if (delta == 1e-4) {
          const LabelState exact = harmonic_solve(engine.graph(), engine.labels());
          const AccuracyReport acc =
              binary_accuracy(snapshot_unlabeled(engine.graph(), engine.labels()),
                              snapshot_unlabeled(engine.graph(), exact));
          worst = std::min(worst, acc.agreement);
        }
      }
    }
    const double target = batch_size == batch_sizes[2] ? 0.97 : 0.99;
    if (worst < target) accurate = false;
    agreement += (agreement.empty() ? "" : " / ") + fmt(worst);
  }
  return {monotone && accurate,
          std::string("iterations ") + (monotone ? "non-increasing" : "NOT non-increasing") +
              " in delta (batch 200, seed 1, delta 1e-1..1e-5: " + counts +
              "), min agreement at 1e-4 for batch 200/500/1000: " + agreement};
}

// Criterion 8
Outcome component_init_benefit() {
  int runs = 0;
  int wins = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    SyntheticSpec spec;
    spec.n = 5000;
    spec.avg_degree = 3.0 + 2.0 * static_cast<double>(seed % 3);
    spec.seed = 800 + seed;
    spec.labeled_fraction = 0.02;
    StreamSpec ss;
    ss.batch_size = 500;
    ss.seed = spec.seed;
    ss.num_batches = 9;
    const Stream stream = make_stream(erdos_renyi(spec), ss);
    std::size_t totals[2] = {0, 0};
    for (int init = 0; init < 2; ++init) {
      EngineConfig cfg;
      cfg.delta = 1e-4;
      cfg.component_init = init == 1;
      DynLpEngine engine(cfg);
      for (const auto& b : stream.batches) totals[init] += engine.apply(b).iterations;
    }
    ++runs;
    if (totals[1] <= totals[0]) ++wins;
  }
  return {10 * wins >= 8 * runs, "initialized run needed <= iterations in " +
                                     std::to_string(wins) + "/" + std::to_string(runs) + " runs"};
}

// Criterion 9
Outcome sv_correctness() {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<std::size_t> size(1, 600);
  std::uniform_int_distribution<int> shape(0, 3);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  int mismatches = 0;
  std::size_t worst_slack = 0;
  bool rounds_ok = true;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = size(rng);
    IntraBatchGraph g;
    VertexId id = 0;
    for (std::size_t j = 0; j < n; ++j) g.vertices.push_back(id += 1 + rng() % 3);
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < n; ++j) order[j] = j;
    std::shuffle(order.begin(), order.end(), rng);
    const int kind = shape(rng);
    if (kind == 0) {  // sparse random
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t e = 0; e < n; ++e) {
        const std::size_t a = pick(rng);
        const std::size_t b = pick(rng);
        if (a != b) g.edges.push_back({g.vertices[a], g.vertices[b], weight(rng)});
      }
    } else if (kind == 1) {  // shuffled paths
      for (std::size_t j = 1; j < n; ++j) {
        if (rng() % 8) g.edges.push_back({g.vertices[order[j - 1]], g.vertices[order[j]], weight(rng)});
      }
    } else if (kind == 2) {  // stars
      for (std::size_t j = 1; j < n; ++j) {
        g.edges.push_back({g.vertices[order[j % 5]], g.vertices[order[j]], weight(rng)});
      }
    }
    testing::UnionFind uf(n);
    for (const auto& e : g.edges) {
      const auto a = std::lower_bound(g.vertices.begin(), g.vertices.end(), e.u) - g.vertices.begin();
      const auto b = std::lower_bound(g.vertices.begin(), g.vertices.end(), e.v) - g.vertices.begin();
      uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    const ComponentLabeling c = find_components(g);
    if (c.parent != uf.canonical()) ++mismatches;
    const std::size_t bound =
        2 * static_cast<std::size_t>(std::ceil(std::log2(std::max<std::size_t>(n, 2)))) + 2;
    if (c.rounds > bound) rounds_ok = false;
    worst_slack = std::max(worst_slack, c.rounds);
  }
  return {mismatches == 0 && rounds_ok,
          std::to_string(mismatches) + " partition mismatches in 1000 instances, max rounds " +
              std::to_string(worst_slack) + (rounds_ok ? " within bound" : " above bound")};
}

// Criterion 10
Outcome energy_properties() {
  std::mt19937_64 rng(1010);
  std::normal_distribution<double> noise(0.0, 0.1);
  std::size_t sweeps = 0;
  std::size_t increases = 0;
  std::size_t beaten = 0;
  for (int i = 0; i < 50; ++i) {
    const Instance inst = testing::random_connected_instance(rng, 100 + 8 * i, 3.0 + i % 5, 0.02);
    const DynamicGraph g = testing::build_graph(inst);
    LabelState labels = testing::build_labels(inst);
    Frontier all;
    for (VertexId u = 0; u < inst.n; ++u) {
      if (!labels.is_labeled(u)) all.members.push_back(u);
    }
    EngineConfig cfg;
    cfg.delta = 1e-8;
    cfg.schedule = Schedule::kSequentialGaussSeidel;
    cfg.max_iterations = 1'000'000;
    PropagationWorkspace ws;
    double previous = dirichlet_energy(g, labels);
    propagate(g, labels, all, cfg, ws, [&](std::size_t) {
      const double e = dirichlet_energy(g, labels);
      ++sweeps;
      if (e > previous * (1.0 + 1e-12)) ++increases;
      previous = e;
    });

    const LabelState exact = harmonic_solve(g, testing::build_labels(inst));
    const double best = dirichlet_energy(g, exact);
    for (int p = 0; p < 100; ++p) {
      LabelState perturbed = exact;
      for (VertexId u : all.members) perturbed.set_value(u, exact.value(u) + noise(rng));
      if (dirichlet_energy(g, perturbed) < best * (1.0 - 1e-12)) ++beaten;
    }
  }
  return {increases == 0 && beaten == 0,
          std::to_string(increases) + " energy increases over " + std::to_string(sweeps) +
              " sweeps, " + std::to_string(beaten) + " of 5000 perturbations below the solution"};
}

std::string bits(const std::vector<double>& v) {
  std::ostringstream out;
  out << std::hex;
  for (double x : v) out << std::bit_cast<std::uint64_t>(x) << ',';
  return out.str();
}

// Every generator and engine output serialized exactly.
std::string pipeline_fingerprint(int threads) {
  omp_set_num_threads(threads);
  std::ostringstream out;
  SyntheticSpec spec;
  spec.n = 3000;
  spec.seed = 1111;
  spec.labeled_fraction = 0.02;
  const LabeledDataset data = erdos_renyi(spec);
  for (const auto& e : data.edges) out << e.u << ' ' << e.v << ' ' << bits({e.w});
  StreamSpec ss;
  ss.batch_size = 300;
  ss.seed = spec.seed;
  ss.initial_gt_count = 10;
  const Stream stream = make_stream(data, ss);
  for (const auto& b : stream.batches) out << batch_to_json_line(b) << '\n';

  std::mt19937_64 rng(1112);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FeatureMatrix features;
  features.dim = 16;
  for (VertexId id = 0; id < 800; ++id) {
    features.item_ids.push_back(id);
    std::vector<double> row(features.dim);
    for (double& x : row) x = gauss(rng);
    features.rows.push_back(std::move(row));
  }
  for (const auto& e : knn_graph(features, 7)) out << e.u << ' ' << e.v << ' ' << bits({e.w});

  for (Method m : {Method::kDynLp, Method::kItLp, Method::kStLp, Method::kOracle}) {
    for (Schedule s : {Schedule::kParallelJacobi, Schedule::kSequentialGaussSeidel}) {
      if (s == Schedule::kSequentialGaussSeidel && m != Method::kDynLp && m != Method::kItLp) continue;
      EngineConfig cfg;
      cfg.threads = threads;
      cfg.schedule = s;
      MethodRunner runner(m, cfg);
      for (const auto& b : stream.batches) {
        const IterationReport r = runner.apply(b);
        out << r.iterations << ' ' << r.updates << ' ';
      }
      out << bits(runner.labels().values()) << '\n';
    }
  }
  return out.str();
}

Outcome determinism() {
  const int max_threads = std::max(omp_get_num_procs(), 1);
  const int saved = omp_get_max_threads();
  const std::string reference = pipeline_fingerprint(1);
  std::string detail;
  bool same = true;
  for (int t : {1, 4, max_threads}) {
    for (int repeat = 0; repeat < 2; ++repeat) {
      if (pipeline_fingerprint(t) != reference) {
        same = false;
        detail += " differs at " + std::to_string(t) + " threads;";
      }
    }
  }
  omp_set_num_threads(saved);
  return {same, "generators and all engines compared at 1/4/" + std::to_string(max_threads) +
                    " threads, two runs each (" + std::to_string(reference.size()) +
                    " bytes)" + detail};
}

// Criterion 12
Outcome scale_smoke() {
  const auto gen_start = Clock::now();
  SyntheticSpec spec;
  spec.n = 1'000'000;
  spec.avg_degree = 5.0;
  spec.seed = 1212;
  spec.labeled_fraction = 0.012;
  StreamSpec ss;
  ss.batch_size = 50'000;
  ss.seed = spec.seed;
  ss.num_batches = 20;
  const Stream stream = make_stream(erdos_renyi(spec), ss);
  const double gen_secs = seconds_since(gen_start);

  const auto start = Clock::now();
  EngineConfig cfg;
  cfg.delta = 1e-4;
  DynLpEngine engine(cfg);
  bool converged = true;
  std::size_t iterations = 0;
  for (const auto& b : stream.batches) {
    const IterationReport r = engine.apply(b);
    converged = converged && r.converged;
    iterations += r.iterations;
  }
  const double secs = seconds_since(start);
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_gb = static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
  return {converged && secs < 600.0 && peak_gb < 4.0,
          std::string(converged ? "converged" : "NOT converged") + ", " +
              std::to_string(engine.graph().num_alive()) + " alive vertices, " +
              std::to_string(iterations) + " iterations, propagation " + fmt(secs) +
              " s, generation " + fmt(gen_secs) + " s, peak RSS " + fmt(peak_gb) + " GB on " +
              std::to_string(omp_get_max_threads()) + " threads"};
}

}  // namespace
}  // namespace dynlp

int main(int argc, char** argv) {
  using namespace dynlp;
  const std::vector<Criterion> criteria{
      {1, "harmonic-oracle equivalence", harmonic_equivalence},
      {2, "one-step averaging", one_step_averaging},
      {3, "short-circuit losslessness", short_circuit_lossless},
      {4, "incremental equals from-scratch", incremental_equals_scratch},
      {5, "iteration advantage over ItLP", iteration_advantage},
      {6, "degree effect", degree_effect},
      {7, "delta monotonicity and accuracy", delta_tradeoff},
      {8, "component initialization benefit", component_init_benefit},
      {9, "Shiloach-Vishkin correctness", sv_correctness},
      {10, "energy properties", energy_properties},
      {11, "determinism", determinism},
      {12, "scale smoke test", scale_smoke},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
