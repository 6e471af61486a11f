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


// dynlp: generate synthetic streams, run one method, compare methods, or dump
// intra-batch components.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "dynlp/baselines.hpp"
#include "dynlp/builder.hpp"
#include "dynlp/components.hpp"
#include "dynlp/engine.hpp"
#include "dynlp/error.hpp"
#include "dynlp/io.hpp"
#include "dynlp/metrics.hpp"
#include "dynlp/stream.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace dynlp::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  int threads = 0;
  std::string output_dir = ".";
};

struct EngineFlags {
  double delta = 1e-4;
  std::string tau = "auto";
  std::size_t max_iterations = 0;
  std::string mode = "jacobi";
  std::size_t dense_cap = kDenseSolveCap;
};

struct InputFlags {
  std::string batches;
  std::string graph;
  std::string ground_truth;
};

struct GenerateFlags {
  std::string model = "er";
  std::optional<std::size_t> n;
  double avg_degree = 5.0;
  double labeled = 0.01;
  std::string features;
  std::size_t k = 5;
  std::size_t batch_size = 1000;
  std::string fractions = "0.9:0.01:0.09";
  std::size_t initial_gt = 0;
  std::size_t num_batches = 0;
};

struct RunFlags {
  std::string method = "dynlp";
  bool snapshots = false;
};

struct CompareFlags {
  std::string methods = "dynlp,itlp";
  std::string reference;
  double epsilon = 0.0;
};

int resolved_threads(int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for every random choice")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (0 = available parallelism)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--output-dir", c.output_dir, "Directory for output files")
      ->capture_default_str();
}

void add_engine(CLI::App* cmd, EngineFlags& e) {
  cmd->add_option("--delta", e.delta, "Per-vertex convergence threshold")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tau", e.tau, "Similarity threshold for batch components, or auto")
      ->capture_default_str();
  cmd->add_option("--max-iterations", e.max_iterations,
                  "Iteration cap per batch (0 = 10 x alive vertices)")
      ->capture_default_str();
  cmd->add_option("--mode", e.mode, "Update schedule")
      ->check(CLI::IsMember({"jacobi", "gauss-seidel"}))
      ->capture_default_str();
  cmd->add_option("--dense-cap", e.dense_cap, "Largest unlabeled count for dense solves")
      ->capture_default_str();
}

void add_inputs(CLI::App* cmd, InputFlags& in) {
  cmd->add_option("--batches", in.batches, "Batch stream (JSON lines)");
  cmd->add_option("--graph", in.graph, "Static graph file, run as a single batch");
  cmd->add_option("--ground-truth", in.ground_truth, "Ground-truth CSV for --graph");
}

EngineConfig engine_config(const EngineFlags& e, const Common& c) {
  EngineConfig cfg;
  cfg.delta = e.delta;
  if (e.tau != "auto") {
    try {
      std::size_t used = 0;
      cfg.tau = std::stod(e.tau, &used);
      if (used != e.tau.size()) throw std::invalid_argument(e.tau);
    } catch (const std::logic_error&) {
      throw UsageError("--tau must be a number or auto, got '" + e.tau + "'");
    }
  }
  cfg.max_iterations = e.max_iterations;
  cfg.schedule =
      e.mode == "gauss-seidel" ? Schedule::kSequentialGaussSeidel : Schedule::kParallelJacobi;
  cfg.threads = resolved_threads(c.threads);
  cfg.validate();
  return cfg;
}

std::vector<Method> methods_or_usage(const std::string& list) {
  try {
    return parse_method_list(list);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

std::vector<BatchUpdate> load_stream(const InputFlags& in) {
  if (!in.batches.empty()) {
    if (!in.graph.empty()) throw UsageError("give either --batches or --graph, not both");
    auto file = open_input(in.batches);
    return read_batches(file);
  }
  if (in.graph.empty()) throw UsageError("an input is required: --batches or --graph");
  if (in.ground_truth.empty()) throw UsageError("--graph needs --ground-truth");
  auto graph_in = open_input(in.graph);
  const GraphFile graph = read_graph(graph_in);
  auto gt_in = open_input(in.ground_truth);
  const auto gt = read_ground_truth(gt_in);
  return {graph_batch(graph, gt)};
}

std::string absolute(const std::string& path) {
  return path.empty() ? path : fs::absolute(path).lexically_normal().string();
}

// Option values exactly as `--config` reads them back.
ordered_json common_json(const Common& c) {
  return {{"seed", c.seed}, {"threads", c.threads}, {"output-dir", absolute(c.output_dir)}};
}

void merge(ordered_json& into, const ordered_json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

ordered_json engine_json(const EngineFlags& e) {
  return {{"delta", e.delta},
          {"tau", e.tau},
          {"max-iterations", e.max_iterations},
          {"mode", e.mode},
          {"dense-cap", e.dense_cap}};
}

ordered_json inputs_json(const InputFlags& in) {
  ordered_json j = ordered_json::object();
  if (!in.batches.empty()) j["batches"] = absolute(in.batches);
  if (!in.graph.empty()) j["graph"] = absolute(in.graph);
  if (!in.ground_truth.empty()) j["ground-truth"] = absolute(in.ground_truth);
  return j;
}

fs::path prepare_output(const Common& c) {
  const fs::path dir(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_config(const fs::path& dir, const std::string& command, const ordered_json& options) {
  ordered_json j;
  j["command"] = command;
  j["version"] = "0.1.0";
  j["options"] = options;
  auto out = open_output(dir / "config.json");
  out << j.dump(2) << '\n';
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

std::vector<double> parse_fractions(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ':')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("--fractions expects ins:gt:del, got '" + s + "'");
    }
  }
  if (out.size() != 3) throw UsageError("--fractions expects ins:gt:del, got '" + s + "'");
  return out;
}

LabeledDataset knn_dataset(const GenerateFlags& g, std::uint64_t seed) {
  auto in = open_input(g.features);
  FeatureMatrix features = read_features(in);
  const std::size_t n = features.rows.size();
  LabeledDataset data;
  data.num_vertices = n;
  data.truth.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!features.true_labels[i]) {
      throw ValidationError("feature row " + std::to_string(features.item_ids[i]) +
                            " has no label; generate needs a label column");
    }
    data.truth[i] = *features.true_labels[i];
    features.item_ids[i] = static_cast<VertexId>(i);
  }
  data.edges = knn_graph(features, g.k);
  data.is_ground_truth = choose_ground_truth(data.truth, g.labeled, seed);
  return data;
}

int cmd_generate(const GenerateFlags& g, const Common& c) {
  if (g.model == "er" && !g.n) throw UsageError("--n is required for --model er");
  if (g.model == "knn" && g.features.empty()) {
    throw UsageError("--features is required for --model knn");
  }
  const auto fr = parse_fractions(g.fractions);
  LabeledDataset data;
  if (g.model == "er") {
    SyntheticSpec spec;
    spec.n = *g.n;
    spec.avg_degree = g.avg_degree;
    spec.seed = c.seed;
    spec.labeled_fraction = g.labeled;
    data = erdos_renyi(spec);
  } else {
    data = knn_dataset(g, c.seed);
  }
  StreamSpec ss;
  ss.batch_size = g.batch_size;
  ss.insert_fraction = fr[0];
  ss.gt_fraction = fr[1];
  ss.delete_fraction = fr[2];
  ss.seed = c.seed;
  ss.initial_gt_count = g.initial_gt;
  ss.num_batches = g.num_batches;
  const Stream stream = make_stream(data, ss);
  spdlog::info("generated {} vertices, {} edges, {} batches ({} ground-truth substitutions)",
               data.num_vertices, data.edges.size(), stream.batches.size(),
               stream.substitutions);

  const fs::path dir = prepare_output(c);
  {
    auto out = open_output(dir / "graph.txt");
    write_graph(out, data.num_vertices, data.edges);
  }
  {
    auto out = open_output(dir / "ground_truth.csv");
    write_ground_truth(out, data);
  }
  {
    auto out = open_output(dir / "batches.jsonl");
    write_batches(out, stream.batches);
  }
  ordered_json opts = common_json(c);
  merge(opts, {{"model", g.model},
               {"avg-degree", g.avg_degree},
               {"labeled", g.labeled},
               {"k", g.k},
               {"batch-size", g.batch_size},
               {"fractions", g.fractions},
               {"initial-gt", g.initial_gt},
               {"num-batches", g.num_batches}});
  if (g.n) opts["n"] = *g.n;
  if (!g.features.empty()) opts["features"] = absolute(g.features);
  write_config(dir, "generate", opts);
  return kExitOk;
}

void write_labels(const fs::path& path, const MethodRunner& runner) {
  auto out = open_output(path);
  write_labels_csv(out, runner.graph(), runner.labels());
}

int cmd_run(const RunFlags& r, const EngineFlags& e, const InputFlags& in, const Common& c) {
  const Method method = methods_or_usage(r.method).front();
  if (r.method.find(',') != std::string::npos) throw UsageError("--method takes one method");
  const EngineConfig cfg = engine_config(e, c);
  const auto batches = load_stream(in);
  if (method == Method::kStLp || method == Method::kOracle) {
    const std::size_t peak = peak_unlabeled(batches);
    if (peak > e.dense_cap) {
      throw SizeLimitError(std::string(method_name(method)) + " refused: the stream reaches " +
                           std::to_string(peak) + " unlabeled vertices, above --dense-cap " +
                           std::to_string(e.dense_cap));
    }
  }
  const fs::path dir = prepare_output(c);
  ordered_json opts = common_json(c);
  merge(opts, {{"method", std::string(method_name(method))}});
  merge(opts, engine_json(e));
  merge(opts, inputs_json(in));
  if (r.snapshots) opts["snapshots"] = true;

  MethodRunner runner(method, cfg, e.dense_cap);
  RunReport report;
  report.method = method;
  report.config_echo = nlohmann::json(opts);
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const IterationReport ir = runner.apply(batches[i]);
    report.add(i, ir);
    spdlog::info("batch {}: {} iterations, {} updates, converged={}", i, ir.iterations,
                 ir.updates, ir.converged);
    if (!ir.converged) spdlog::warn("batch {} stopped at the iteration cap", i);
    if (r.snapshots) write_labels(dir / ("labels_batch" + std::to_string(i) + ".csv"), runner);
  }
  report.totals = report.sum();
  write_labels(dir / "labels.csv", runner);
  write_json(dir / "report.json", to_json(report));
  write_config(dir, "run", opts);
  return kExitOk;
}

int cmd_compare(const CompareFlags& cf, const EngineFlags& e, const InputFlags& in,
                const Common& c) {
  CompareConfig cc;
  cc.methods = methods_or_usage(cf.methods);
  if (!cf.reference.empty()) cc.reference = methods_or_usage(cf.reference).front();
  cc.engine = engine_config(e, c);
  cc.epsilon = cf.epsilon;
  cc.dense_cap = e.dense_cap;
  const auto batches = load_stream(in);
  const fs::path dir = prepare_output(c);
  const ComparisonResult res = compare_methods(batches, cc);

  ordered_json opts = common_json(c);
  merge(opts, {{"methods", cf.methods}, {"epsilon", cf.epsilon}});
  if (!cf.reference.empty()) opts["reference"] = cf.reference;
  merge(opts, engine_json(e));
  merge(opts, inputs_json(in));
  nlohmann::json j = to_json(res);
  j["config"] = nlohmann::json(opts);
  {
    auto out = open_output(dir / "comparison.csv");
    write_comparison_csv(out, res);
  }
  if (!res.accuracy.empty()) {
    auto out = open_output(dir / "accuracy.csv");
    write_accuracy_csv(out, res);
  }
  write_json(dir / "comparison.json", j);
  write_config(dir, "compare", opts);
  for (std::size_t i = 0; i < res.reports.size(); ++i) {
    spdlog::info("{}: {} iterations, {} updates", method_name(res.reports[i].method),
                 res.reports[i].totals.iterations, res.reports[i].totals.vertex_updates);
  }
  return kExitOk;
}

int cmd_components(const EngineFlags& e, const InputFlags& in, const Common& c) {
  const EngineConfig cfg = engine_config(e, c);
  const auto batches = load_stream(in);
  const fs::path dir = prepare_output(c);
  DynamicGraph graph;
  LabelState labels;
  ordered_json summary = ordered_json::array();
  for (std::size_t i = 0; i < batches.size(); ++i) {
    apply_changes(graph, labels, batches[i]);
    std::vector<VertexId> fresh;
    for (const auto& rec : batches[i].inserts) {
      if (!rec.ground_truth) fresh.push_back(rec.id);
    }
    double tau = 0.0;
    if (cfg.tau) {
      tau = *cfg.tau;
    } else if (graph.edge_count() > 0) {
      tau = default_tau(graph);
    }
    const IntraBatchGraph intra = build_intra_batch_graph(graph, fresh, tau);
    const ComponentLabeling comp = find_components(intra);
    auto out = open_output(dir / ("components_batch" + std::to_string(i) + ".csv"));
    write_components_csv(out, intra, comp);
    summary.push_back({{"batch", i},
                       {"tau", tau},
                       {"vertices", intra.vertices.size()},
                       {"edges", intra.edges.size()},
                       {"components", comp.num_components},
                       {"rounds", comp.rounds}});
  }
  write_json(dir / "components.json", nlohmann::json(summary));
  ordered_json opts = common_json(c);
  merge(opts, engine_json(e));
  merge(opts, inputs_json(in));
  write_config(dir, "components", opts);
  return kExitOk;
}

// Expands `--config FILE` into the recorded command and options, placed before
// the remaining arguments so explicit flags override recorded ones.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    std::size_t width = 0;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[i + 1];
      width = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      width = 1;
    } else {
      continue;
    }
    auto in = open_input(path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw IoError("cannot parse " + path + ": " + e.what());
    }
    if (!j.contains("command") || !j.contains("options") || !j["options"].is_object()) {
      throw IoError(path + " is not a dynlp config file");
    }
    std::vector<std::string> rest(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(i));
    std::vector<std::string> tail(args.begin() + static_cast<std::ptrdiff_t>(i + width),
                                  args.end());
    std::vector<std::string> out;
    const std::string command = j["command"].get<std::string>();
    bool has_command = false;
    for (const auto& a : rest) has_command = has_command || a == command;
    if (!has_command) out.push_back(command);
    out.insert(out.end(), rest.begin(), rest.end());
    for (const auto& [key, value] : j["options"].items()) {
      if (value.is_boolean()) {
        if (value.get<bool>()) out.push_back("--" + key);
        continue;
      }
      out.push_back("--" + key);
      if (value.is_string()) {
        out.push_back(value.get<std::string>());
      } else if (value.is_number_float()) {
        out.push_back(format_double(value.get<double>()));
      } else {
        out.push_back(value.dump());
      }
    }
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  }
  return args;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("dynlp");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("DYNLP_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

int run_main(int argc, char** argv) {
  configure_logging();
  std::vector<std::string> args(argv + 1, argv + argc);

  CLI::App app{"Incremental label propagation on dynamic graphs", "dynlp"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", "dynlp 0.1.0");

  Common common;
  EngineFlags engine;
  InputFlags inputs;
  GenerateFlags gen;
  RunFlags run;
  CompareFlags cmp;

  auto* g = app.add_subcommand("generate", "Write a synthetic graph, ground truth and batch stream");
  add_common(g, common);
  g->add_option("--model", gen.model, "Graph model")
      ->check(CLI::IsMember({"er", "knn"}))
      ->capture_default_str();
  g->add_option("--n", gen.n, "Vertex count (er)");
  g->add_option("--avg-degree", gen.avg_degree, "Average degree (er)")->capture_default_str();
  g->add_option("--labeled", gen.labeled, "Ground-truth fraction per class")
      ->capture_default_str();
  g->add_option("--features", gen.features, "Feature CSV with a label column (knn)");
  g->add_option("--k", gen.k, "Neighbors per vertex (knn)")->capture_default_str();
  g->add_option("--batch-size", gen.batch_size, "Vertices touched per batch")
      ->capture_default_str();
  g->add_option("--fractions", gen.fractions, "Batch composition ins:gt:del")
      ->capture_default_str();
  g->add_option("--initial-gt", gen.initial_gt, "Ground-truth vertices in an initial batch")
      ->capture_default_str();
  g->add_option("--num-batches", gen.num_batches, "Batch count (0 = until all revealed)")
      ->capture_default_str();

  auto* r = app.add_subcommand("run", "Run one method over a stream");
  add_common(r, common);
  add_engine(r, engine);
  add_inputs(r, inputs);
  r->add_option("--method", run.method, "dynlp, itlp, stlp or oracle")->capture_default_str();
  r->add_flag("--snapshots", run.snapshots, "Write labels after every batch");

  auto* c = app.add_subcommand("compare", "Run several methods over a stream and compare them");
  add_common(c, common);
  add_engine(c, engine);
  add_inputs(c, inputs);
  c->add_option("--methods", cmp.methods, "Comma-separated methods")->capture_default_str();
  c->add_option("--reference", cmp.reference, "Method used as the accuracy reference");
  c->add_option("--epsilon", cmp.epsilon, "Exclude reference labels within this of 0.5")
      ->capture_default_str();

  auto* k = app.add_subcommand("components", "Write the intra-batch components of every batch");
  add_common(k, common);
  add_engine(k, engine);
  add_inputs(k, inputs);

  try {
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? kExitOk : kExitUsage;
    }
    if (*g) return cmd_generate(gen, common);
    if (*r) return cmd_run(run, engine, inputs, common);
    if (*c) return cmd_compare(cmp, engine, inputs, common);
    return cmd_components(engine, inputs, common);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    spdlog::error("{}", e.what());
    return kExitIo;
  } catch (const ValidationError& e) {
    spdlog::error("{}", e.what());
    return kExitValidation;
  } catch (const SizeLimitError& e) {
    spdlog::error("{}", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}

}  // namespace
}  // namespace dynlp::cli

int main(int argc, char** argv) { return dynlp::cli::run_main(argc, argv); }
