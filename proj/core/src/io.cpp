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

#include "dynlp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "dynlp/error.hpp"

namespace dynlp {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(s.substr(start)));
      return out;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::uint64_t parse_uint(std::string_view s, std::size_t line) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError(at_line(line) + "expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return x;
}

VertexId parse_vertex(std::string_view s, std::size_t line) {
  const std::uint64_t x = parse_uint(s, line);
  if (x >= kInvalidVertex) throw IoError(at_line(line) + "vertex id out of range");
  return static_cast<VertexId>(x);
}

double parse_double(std::string_view s, std::size_t line) {
  // strtod accepts the full decimal and exponent syntax on every libstdc++.
  const std::string buf(s);
  char* end = nullptr;
  const double x = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(x)) {
    throw IoError(at_line(line) + "expected a finite number, got '" + buf + "'");
  }
  return x;
}

Label parse_class(std::string_view s, std::size_t line) {
  if (s == "0") return Label::kZero;
  if (s == "1") return Label::kOne;
  throw IoError(at_line(line) + "class must be 0 or 1, got '" + std::string(s) + "'");
}

bool skip_line(std::string_view s) { return s.empty() || s.front() == '#'; }

// JSON field helpers for the batch format.
const json& field(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw IoError(at_line(line) + "missing field \"" + key + "\"");
  return *it;
}

VertexId json_vertex(const json& j, std::size_t line) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                 j.get<std::int64_t>() < 0)) {
    throw IoError(at_line(line) + "vertex id must be a non-negative integer");
  }
  const auto x = j.get<std::uint64_t>();
  if (x >= kInvalidVertex) throw IoError(at_line(line) + "vertex id out of range");
  return static_cast<VertexId>(x);
}

json iteration_json(const IterationReport& r) {
  ordered_json j;
  j["iterations"] = r.iterations;
  j["updates"] = r.updates;
  j["max_change"] = r.max_change;
  j["converged"] = r.converged;
  j["warnings"] = r.warnings;
  j["wall_time_ms"] = r.wall_time_ms;
  return json(j);
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

// ---------------------------------------------------------------------------

GraphFile read_graph(std::istream& in) {
  GraphFile g;
  std::string raw;
  std::size_t line = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  bool have_header = false;
  VertexId max_endpoint = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (skip_line(s)) continue;
    std::vector<std::string_view> tok;
    for (auto t : split(s, ' ')) {
      if (!t.empty()) tok.push_back(t);
    }
    if (!have_header) {
      if (tok.size() != 2) throw IoError(at_line(line) + "expected header \"N M\"");
      n = parse_uint(tok[0], line);
      m = parse_uint(tok[1], line);
      if (n >= kInvalidVertex) throw IoError(at_line(line) + "vertex count out of range");
      have_header = true;
      g.edges.reserve(std::min<std::uint64_t>(m, 1u << 24));
      continue;
    }
    if (tok.size() != 3) throw IoError(at_line(line) + "expected \"u v w\"");
    WeightedEdge e{parse_vertex(tok[0], line), parse_vertex(tok[1], line),
                   parse_double(tok[2], line)};
    if (e.u == e.v) throw IoError(at_line(line) + "self-loop");
    if (e.w < 0.0) throw IoError(at_line(line) + "negative weight");
    if (e.u > e.v) std::swap(e.u, e.v);
    max_endpoint = std::max(max_endpoint, e.v);
    g.edges.push_back(e);
  }
  if (!have_header) throw IoError("graph file is empty");
  if (g.edges.size() != m) {
    throw IoError("header declares " + std::to_string(m) + " edges, found " +
                  std::to_string(g.edges.size()));
  }
  if (g.edges.empty() || max_endpoint < n) {
    g.vertices.resize(n);
    for (std::size_t u = 0; u < n; ++u) g.vertices[u] = static_cast<VertexId>(u);
  } else {
    for (const auto& e : g.edges) {
      g.vertices.push_back(e.u);
      g.vertices.push_back(e.v);
    }
    std::sort(g.vertices.begin(), g.vertices.end());
    g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
    if (g.vertices.size() != n) {
      throw IoError("header declares " + std::to_string(n) + " vertices, edges reference " +
                    std::to_string(g.vertices.size()));
    }
  }
  return g;
}

void write_graph(std::ostream& out, std::size_t num_vertices,
                 std::span<const WeightedEdge> edges) {
  out << num_vertices << ' ' << edges.size() << '\n';
  for (const auto& e : edges) {
    out << std::min(e.u, e.v) << ' ' << std::max(e.u, e.v) << ' ' << format_double(e.w) << '\n';
  }
}

void write_graph(std::ostream& out, const DynamicGraph& graph) {
  const auto edges = graph.edge_list();
  write_graph(out, graph.num_alive(), edges);
}

std::vector<std::pair<VertexId, Label>> read_ground_truth(std::istream& in) {
  std::vector<std::pair<VertexId, Label>> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (skip_line(s)) continue;
    const auto tok = split(s, ',');
    if (tok.size() != 2) throw IoError(at_line(line) + "expected \"vertex,class\"");
    if (tok[0] == "vertex") continue;
    out.emplace_back(parse_vertex(tok[0], line), parse_class(tok[1], line));
  }
  return out;
}

void write_ground_truth(std::ostream& out, const LabeledDataset& dataset) {
  out << "vertex,class\n";
  for (std::size_t u = 0; u < dataset.num_vertices; ++u) {
    if (dataset.is_ground_truth[u]) out << u << ',' << static_cast<int>(dataset.truth[u]) << '\n';
  }
}

BatchUpdate graph_batch(const GraphFile& graph,
                        std::span<const std::pair<VertexId, Label>> ground_truth) {
  BatchUpdate batch;
  batch.inserts.resize(graph.vertices.size());
  auto index_of = [&](VertexId u) -> std::size_t {
    const auto it = std::lower_bound(graph.vertices.begin(), graph.vertices.end(), u);
    if (it == graph.vertices.end() || *it != u) {
      throw ValidationError("vertex " + std::to_string(u) + " is not in the graph");
    }
    return static_cast<std::size_t>(it - graph.vertices.begin());
  };
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) batch.inserts[i].id = graph.vertices[i];
  for (const auto& [u, l] : ground_truth) batch.inserts[index_of(u)].ground_truth = l;
  for (const auto& e : graph.edges) {
    batch.inserts[index_of(std::max(e.u, e.v))].edges.emplace_back(std::min(e.u, e.v), e.w);
  }
  return batch;
}

// ---------------------------------------------------------------------------

std::string batch_to_json_line(const BatchUpdate& batch) {
  ordered_json j;
  j["t"] = batch.t;
  ordered_json inserts = ordered_json::array();
  for (const auto& rec : batch.inserts) {
    ordered_json r;
    r["id"] = rec.id;
    if (rec.ground_truth) {
      r["gt"] = static_cast<int>(*rec.ground_truth);
    } else {
      r["gt"] = nullptr;
    }
    ordered_json edges = ordered_json::array();
    for (const auto& [v, w] : rec.edges) edges.push_back({v, w});
    r["edges"] = std::move(edges);
    inserts.push_back(std::move(r));
  }
  j["inserts"] = std::move(inserts);
  j["deletes"] = batch.deletes;
  return j.dump();
}

namespace {

BatchUpdate parse_batch_at(std::string_view text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(at_line(line) + "malformed JSON: " + e.what());
  }
  if (!j.is_object()) throw IoError(at_line(line) + "batch must be a JSON object");
  BatchUpdate batch;
  const json& t = field(j, "t", line);
  if (!t.is_number_integer()) throw IoError(at_line(line) + "\"t\" must be an integer");
  batch.t = t.get<std::int64_t>();

  const json& inserts = field(j, "inserts", line);
  if (!inserts.is_array()) throw IoError(at_line(line) + "\"inserts\" must be an array");
  for (const json& r : inserts) {
    if (!r.is_object()) throw IoError(at_line(line) + "insert record must be an object");
    InsertRecord rec;
    rec.id = json_vertex(field(r, "id", line), line);
    const auto gt = r.find("gt");
    if (gt != r.end() && !gt->is_null()) {
      if (!gt->is_number_integer() || (gt->get<std::int64_t>() != 0 && gt->get<std::int64_t>() != 1)) {
        throw IoError(at_line(line) + "\"gt\" must be 0, 1 or null");
      }
      rec.ground_truth = gt->get<std::int64_t>() == 0 ? Label::kZero : Label::kOne;
    }
    const auto edges = r.find("edges");
    if (edges != r.end()) {
      if (!edges->is_array()) throw IoError(at_line(line) + "\"edges\" must be an array");
      for (const json& e : *edges) {
        if (!e.is_array() || e.size() != 2 || !e[1].is_number()) {
          throw IoError(at_line(line) + "edge must be [vertex, weight]");
        }
        rec.edges.emplace_back(json_vertex(e[0], line), e[1].get<double>());
      }
    }
    batch.inserts.push_back(std::move(rec));
  }

  const auto deletes = j.find("deletes");
  if (deletes != j.end()) {
    if (!deletes->is_array()) throw IoError(at_line(line) + "\"deletes\" must be an array");
    for (const json& d : *deletes) batch.deletes.push_back(json_vertex(d, line));
  }
  return batch;
}

}  // namespace

BatchUpdate parse_batch_line(std::string_view line) { return parse_batch_at(line, 1); }

std::vector<BatchUpdate> read_batches(std::istream& in) {
  std::vector<BatchUpdate> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (s.empty()) continue;
    out.push_back(parse_batch_at(s, line));
  }
  return out;
}

void write_batches(std::ostream& out, std::span<const BatchUpdate> batches) {
  for (const auto& b : batches) out << batch_to_json_line(b) << '\n';
}

// ---------------------------------------------------------------------------

void write_labels_csv(std::ostream& out, const DynamicGraph& graph, const LabelState& labels) {
  out << "vertex,fractional_label,binary_label,is_ground_truth\n";
  for (VertexId u : graph.alive_vertices()) {
    const double f = labels.value(u);
    out << u << ',' << format_double(f) << ',' << LabelState::binary(f) << ','
        << (labels.is_labeled(u) ? 1 : 0) << '\n';
  }
}

FeatureMatrix read_features(std::istream& in) {
  FeatureMatrix fm;
  std::string raw;
  std::size_t line = 0;
  bool first_row = true;
  bool has_label = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto s = trim(raw);
    if (skip_line(s)) continue;
    const auto tok = split(s, ',');
    if (first_row) {
      first_row = false;
      const bool header = !tok.empty() && !tok[0].empty() &&
                          (tok[0].front() < '0' || tok[0].front() > '9');
      if (header) {
        has_label = tok.size() > 1 && tok[1] == "label";
        continue;
      }
    }
    const std::size_t offset = has_label ? 2 : 1;
    if (tok.size() <= offset) throw IoError(at_line(line) + "row has no feature columns");
    const std::size_t dim = tok.size() - offset;
    if (fm.rows.empty()) {
      fm.dim = dim;
    } else if (dim != fm.dim) {
      throw IoError(at_line(line) + "expected " + std::to_string(fm.dim) + " features, got " +
                    std::to_string(dim));
    }
    fm.item_ids.push_back(parse_vertex(tok[0], line));
    if (has_label && !tok[1].empty()) {
      fm.true_labels.emplace_back(parse_class(tok[1], line));
    } else {
      fm.true_labels.emplace_back(std::nullopt);
    }
    std::vector<double> row(dim);
    for (std::size_t i = 0; i < dim; ++i) row[i] = parse_double(tok[offset + i], line);
    fm.rows.push_back(std::move(row));
  }
  return fm;
}

void write_components_csv(std::ostream& out, const IntraBatchGraph& graph,
                          const ComponentLabeling& labeling) {
  out << "vertex,component\n";
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    out << graph.vertices[i] << ',' << labeling.component_id[i] << '\n';
  }
}

// ---------------------------------------------------------------------------

json to_json(const IterationReport& report, Method method) {
  ordered_json j = iteration_json(report);
  j["method"] = method_name(method);
  return json(j);
}

json to_json(const RunReport& report) {
  ordered_json j;
  j["method"] = method_name(report.method);
  ordered_json batches = ordered_json::array();
  for (const auto& b : report.per_batch) {
    ordered_json r;
    r["batch"] = b.batch_index;
    r["iterations"] = b.iterations;
    r["updates"] = b.vertex_updates;
    r["max_change"] = b.max_change;
    r["converged"] = b.converged;
    r["warnings"] = b.warnings;
    r["wall_time_ms"] = b.wall_time_ms;
    batches.push_back(std::move(r));
  }
  j["per_batch"] = std::move(batches);
  ordered_json t;
  t["iterations"] = report.totals.iterations;
  t["updates"] = report.totals.vertex_updates;
  t["converged"] = report.totals.converged;
  t["warnings"] = report.totals.warnings;
  t["wall_time_ms"] = report.totals.wall_time_ms;
  j["totals"] = std::move(t);
  j["config"] = report.config_echo;
  return json(j);
}

RunReport run_report_from_json(const json& j) {
  try {
    RunReport r;
    r.method = parse_method(j.at("method").get<std::string>());
    for (const json& b : j.at("per_batch")) {
      BatchRecord rec;
      rec.batch_index = b.at("batch").get<std::size_t>();
      rec.iterations = b.at("iterations").get<std::size_t>();
      rec.vertex_updates = b.at("updates").get<std::size_t>();
      rec.max_change = b.at("max_change").get<double>();
      rec.converged = b.at("converged").get<bool>();
      rec.warnings = b.at("warnings").get<std::size_t>();
      rec.wall_time_ms = b.at("wall_time_ms").get<double>();
      r.per_batch.push_back(rec);
    }
    const json& t = j.at("totals");
    r.totals.iterations = t.at("iterations").get<std::size_t>();
    r.totals.vertex_updates = t.at("updates").get<std::size_t>();
    r.totals.converged = t.at("converged").get<bool>();
    r.totals.warnings = t.at("warnings").get<std::size_t>();
    r.totals.wall_time_ms = t.at("wall_time_ms").get<double>();
    if (j.contains("config")) r.config_echo = j.at("config");
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed run report: ") + e.what());
  } catch (const ValidationError& e) {
    throw IoError(std::string("malformed run report: ") + e.what());
  }
}

json to_json(const AccuracyReport& report, Method method) {
  ordered_json j;
  j["method"] = method_name(method);
  j["reference"] = method_name(report.reference_method);
  j["agreement"] = report.agreement;
  j["compared"] = report.compared_count;
  j["margin_excluded"] = report.margin_excluded_count;
  return json(j);
}

json to_json(const ComparisonResult& result) {
  ordered_json j;
  j["speedup_baseline"] = method_name(result.speedup_baseline);
  ordered_json runs = ordered_json::array();
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    ordered_json r(to_json(result.reports[i]));
    r["speedup"] = result.speedup[i];
    r["total_speedup"] = result.total_speedup[i];
    if (i < result.accuracy.size()) {
      r["accuracy"] = ordered_json(to_json(result.accuracy[i], result.reports[i].method));
    }
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  return json(j);
}

void write_comparison_csv(std::ostream& out, const ComparisonResult& result) {
  out << "method,batch,iterations,updates,wall_time_ms,speedup\n";
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    for (std::size_t b = 0; b < r.per_batch.size(); ++b) {
      const auto& rec = r.per_batch[b];
      out << method_name(r.method) << ',' << rec.batch_index << ',' << rec.iterations << ','
          << rec.vertex_updates << ',' << format_double(rec.wall_time_ms) << ','
          << format_double(result.speedup[i][b]) << '\n';
    }
  }
}

void write_accuracy_csv(std::ostream& out, const ComparisonResult& result) {
  out << "method,reference,agreement,compared,margin_excluded\n";
  for (std::size_t i = 0; i < result.accuracy.size(); ++i) {
    const auto& a = result.accuracy[i];
    out << method_name(result.reports[i].method) << ',' << method_name(a.reference_method) << ','
        << format_double(a.agreement) << ',' << a.compared_count << ','
        << a.margin_excluded_count << '\n';
  }
}

}  // namespace dynlp
