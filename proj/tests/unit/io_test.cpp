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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dynlp/error.hpp"
#include "dynlp/stream.hpp"

namespace dynlp {
namespace {

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.0001), "0.0001");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.3333333333333333");
  for (double x : {0.1, 1e-300, 123456.789, 2.0 / 3.0}) {
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(GraphFileTest, RoundTrip) {
  const std::vector<WeightedEdge> edges{{0, 1, 0.25}, {1, 3, 1.0 / 3.0}, {2, 3, 0.7}};
  std::stringstream buf;
  write_graph(buf, 4, edges);
  EXPECT_EQ(buf.str().substr(0, 4), "4 3\n");
  const auto g = read_graph(buf);
  EXPECT_EQ(g.vertices, (std::vector<VertexId>{0, 1, 2, 3}));
  EXPECT_EQ(g.edges, edges);
}

TEST(GraphFileTest, CommentsAndSparseIds) {
  std::istringstream in("# header comment\n2 1\n# edge\n10 20 0.5\n");
  const auto g = read_graph(in);
  EXPECT_EQ(g.vertices, (std::vector<VertexId>{10, 20}));
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0], (WeightedEdge{10, 20, 0.5}));
}

TEST(GraphFileTest, MalformedInputs) {
  for (const char* text : {"", "3\n", "2 1\n0 1\n", "2 2\n0 1 0.5\n", "2 1\n0 1 abc\n",
                           "2 1\n0 0 1\n", "2 1\n0 1 -1\n", "2 1\n0 x 1\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_graph(in), IoError) << text;
  }
}

TEST(GroundTruthFileTest, RoundTrip) {
  LabeledDataset d;
  d.num_vertices = 4;
  d.truth = {Label::kZero, Label::kOne, Label::kOne, Label::kZero};
  d.is_ground_truth = {1, 0, 1, 0};
  std::stringstream buf;
  write_ground_truth(buf, d);
  EXPECT_EQ(buf.str(), "vertex,class\n0,0\n2,1\n");
  const auto gt = read_ground_truth(buf);
  ASSERT_EQ(gt.size(), 2u);
  EXPECT_EQ(gt[1], (std::pair<VertexId, Label>{2, Label::kOne}));
  std::istringstream bad("vertex,class\n0,2\n");
  EXPECT_THROW(read_ground_truth(bad), IoError);
}

TEST(BatchFileTest, LineRoundTrip) {
  BatchUpdate b;
  b.t = 3;
  InsertRecord r;
  r.id = 7;
  r.ground_truth = Label::kOne;
  r.edges = {{1, 0.5}, {2, 1.0 / 3.0}};
  InsertRecord s;
  s.id = 8;
  b.inserts = {r, s};
  b.deletes = {4, 5};
  const auto line = batch_to_json_line(b);
  EXPECT_EQ(line,
            R"({"t":3,"inserts":[{"id":7,"gt":1,"edges":[[1,0.5],[2,0.3333333333333333]]},)"
            R"({"id":8,"gt":null,"edges":[]}],"deletes":[4,5]})");
  const auto back = parse_batch_line(line);
  EXPECT_EQ(back.t, 3);
  ASSERT_EQ(back.inserts.size(), 2u);
  EXPECT_EQ(back.inserts[0].ground_truth, Label::kOne);
  EXPECT_EQ(back.inserts[0].edges, r.edges);
  EXPECT_FALSE(back.inserts[1].ground_truth.has_value());
  EXPECT_EQ(back.deletes, b.deletes);
}

TEST(BatchFileTest, StreamRoundTripIsByteStable) {
  SyntheticSpec spec;
  spec.n = 800;
  spec.labeled_fraction = 0.05;
  StreamSpec ss;
  ss.batch_size = 100;
  ss.initial_gt_count = 4;
  ss.num_batches = 5;
  const auto stream = make_stream(erdos_renyi(spec), ss);
  std::stringstream first;
  write_batches(first, stream.batches);
  std::istringstream in(first.str());
  const auto parsed = read_batches(in);
  std::ostringstream second;
  write_batches(second, parsed);
  EXPECT_EQ(first.str(), second.str());
}

TEST(BatchFileTest, MalformedLinesNameTheLine) {
  for (const char* text : {"{\"t\":1,\"inserts\":[{\"id\":-1}]}", "{\"inserts\":[]}",
                           "{\"t\":1,\"inserts\":[{\"id\":2,\"gt\":2}]}",
                           "{\"t\":1,\"inserts\":[{\"id\":2,\"edges\":[[1]]}]}", "[1,2]",
                           "{\"t\":1,\"inserts\":[],\"deletes\":[\"a\"]}", "{not json"}) {
    std::istringstream in(std::string("{\"t\":0,\"inserts\":[]}\n") + text + "\n");
    try {
      read_batches(in);
      ADD_FAILURE() << text;
    } catch (const IoError& e) {
      EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
  }
}

TEST(GraphBatchTest, StaticProblemAsOneBatch) {
  std::istringstream in("3 2\n0 1 0.5\n1 2 0.25\n");
  const auto g = read_graph(in);
  const std::vector<std::pair<VertexId, Label>> gt{{0, Label::kZero}};
  const auto batch = graph_batch(g, gt);
  ASSERT_EQ(batch.inserts.size(), 3u);
  EXPECT_EQ(batch.inserts[0].ground_truth, Label::kZero);
  DynamicGraph graph;
  graph.apply_inserts(batch.inserts);
  EXPECT_EQ(graph.edge_list(), g.edges);
  const std::vector<std::pair<VertexId, Label>> bad{{9, Label::kOne}};
  EXPECT_THROW(graph_batch(g, bad), ValidationError);
}

TEST(LabelsCsvTest, Format) {
  const std::vector<VertexId> v{0, 1, 2};
  const auto g = DynamicGraph::from_edges(v, std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}});
  LabelState labels;
  labels.resize(3);
  labels.set_ground_truth(0, Label::kZero);
  labels.add_unlabeled(1);
  labels.set_value(1, 0.5);
  labels.set_ground_truth(2, Label::kOne);
  std::ostringstream out;
  write_labels_csv(out, g, labels);
  EXPECT_EQ(out.str(),
            "vertex,fractional_label,binary_label,is_ground_truth\n0,0,0,1\n1,0.5,1,0\n2,1,1,1\n");
}

TEST(FeatureFileTest, HeaderSelectsLabelColumn) {
  std::istringstream with("id,label,x,y\n3,1,0.5,1\n4,,1,0\n");
  const auto a = read_features(with);
  EXPECT_EQ(a.dim, 2u);
  EXPECT_EQ(a.item_ids, (std::vector<VertexId>{3, 4}));
  EXPECT_EQ(a.true_labels[0], Label::kOne);
  EXPECT_FALSE(a.true_labels[1].has_value());
  std::istringstream without("0,1,0.5,1\n1,0,1,0\n");
  const auto b = read_features(without);
  EXPECT_EQ(b.dim, 3u);
  EXPECT_EQ(b.rows[0], (std::vector<double>{1, 0.5, 1}));
  std::istringstream ragged("0,1,2\n1,1\n");
  EXPECT_THROW(read_features(ragged), IoError);
}

TEST(ReportJsonTest, RunReportRoundTrip) {
  RunReport r;
  r.method = Method::kItLp;
  IterationReport a;
  a.iterations = 5;
  a.updates = 50;
  a.max_change = 1e-5;
  a.wall_time_ms = 2.25;
  r.add(0, a);
  r.config_echo = {{"delta", 0.0001}, {"seed", 7}};
  const auto j = to_json(r);
  const auto back = run_report_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.method, Method::kItLp);
  EXPECT_EQ(back.totals, r.totals);
  ASSERT_EQ(back.per_batch.size(), 1u);
  EXPECT_EQ(back.per_batch[0].vertex_updates, 50u);
  EXPECT_EQ(back.config_echo, r.config_echo);
  EXPECT_EQ(back.config_echo.dump(), R"({"delta":0.0001,"seed":7})");
  EXPECT_THROW(run_report_from_json(nlohmann::json::parse("{}")), IoError);

  const auto it = to_json(a, Method::kDynLp);
  for (const char* key :
       {"iterations", "updates", "max_change", "converged", "warnings", "wall_time_ms", "method"}) {
    EXPECT_TRUE(it.contains(key)) << key;
  }
}

}  // namespace
}  // namespace dynlp
