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

#ifndef DYNLP_IO_HPP_
#define DYNLP_IO_HPP_

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dynlp/builder.hpp"
#include "dynlp/components.hpp"
#include "dynlp/dynamic_graph.hpp"
#include "dynlp/engine.hpp"
#include "dynlp/label_state.hpp"
#include "dynlp/metrics.hpp"
#include "dynlp/types.hpp"

namespace dynlp {

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Graph text format:
//   # comment
//   N M
//   u v w        (M lines, u < v)
// Vertices are 0..N-1 when every endpoint is below N; otherwise the endpoints
// themselves, which must then number exactly N.

struct GraphFile {
  std::vector<VertexId> vertices;
  std::vector<WeightedEdge> edges;
};

GraphFile read_graph(std::istream& in);
void write_graph(std::ostream& out, std::size_t num_vertices, std::span<const WeightedEdge> edges);
void write_graph(std::ostream& out, const DynamicGraph& graph);

// Ground truth CSV: header "vertex,class", then one row per labeled vertex.
std::vector<std::pair<VertexId, Label>> read_ground_truth(std::istream& in);
void write_ground_truth(std::ostream& out, const LabeledDataset& dataset);

// A static problem (graph plus ground truth) as one insertion batch.
BatchUpdate graph_batch(const GraphFile& graph,
                        std::span<const std::pair<VertexId, Label>> ground_truth);

// ---------------------------------------------------------------------------
// Batch stream, one JSON object per line:
//   {"t": 3, "inserts": [{"id": 7, "gt": 0|1|null, "edges": [[v, w], ...]}],
//    "deletes": [ids...]}

std::string batch_to_json_line(const BatchUpdate& batch);
// Throws IoError on malformed input.
BatchUpdate parse_batch_line(std::string_view line);
std::vector<BatchUpdate> read_batches(std::istream& in);
void write_batches(std::ostream& out, std::span<const BatchUpdate> batches);

// ---------------------------------------------------------------------------
// Label, feature and component tables.

// "vertex,fractional_label,binary_label,is_ground_truth" for alive vertices.
void write_labels_csv(std::ostream& out, const DynamicGraph& graph, const LabelState& labels);

// Rows "id[,label],x1,x2,...". A leading header whose second field is "label"
// marks the label column as present; without that header every column after
// the id is a feature.
FeatureMatrix read_features(std::istream& in);

// "vertex,component".
void write_components_csv(std::ostream& out, const IntraBatchGraph& graph,
                          const ComponentLabeling& labeling);

// ---------------------------------------------------------------------------
// Reports.

nlohmann::json to_json(const IterationReport& report, Method method);
nlohmann::json to_json(const RunReport& report);
RunReport run_report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AccuracyReport& report, Method method);
nlohmann::json to_json(const ComparisonResult& result);

// "method,batch,iterations,updates,wall_time_ms,speedup".
void write_comparison_csv(std::ostream& out, const ComparisonResult& result);
// "method,reference,agreement,compared,margin_excluded".
void write_accuracy_csv(std::ostream& out, const ComparisonResult& result);

}  // namespace dynlp

#endif  // DYNLP_IO_HPP_
