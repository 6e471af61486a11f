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

#include "dynlp/stream.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "dynlp/dynamic_graph.hpp"
#include "dynlp/error.hpp"
#include "dynlp/io.hpp"
#include "dynlp/label_state.hpp"

namespace dynlp {
namespace {

LabeledDataset dataset(std::size_t n, std::uint64_t seed, double labeled = 0.05) {
  SyntheticSpec spec;
  spec.n = n;
  spec.seed = seed;
  spec.labeled_fraction = labeled;
  return erdos_renyi(spec);
}

std::string serialize(const Stream& s) {
  std::ostringstream out;
  write_batches(out, s.batches);
  return out.str();
}

TEST(StreamTest, DefaultCompositionPerBatch) {
  const auto data = dataset(5000, 1);
  StreamSpec spec;
  spec.batch_size = 100;
  spec.initial_gt_count = 20;
  spec.num_batches = 20;
  const auto stream = make_stream(data, spec);
  ASSERT_EQ(stream.batches.size(), 21u);
  EXPECT_EQ(stream.batches[0].inserts.size(), 20u);
  EXPECT_TRUE(stream.batches[0].deletes.empty());
  for (std::size_t b = 1; b < stream.batches.size(); ++b) {
    const auto& batch = stream.batches[b];
    std::size_t gt = 0;
    for (const auto& r : batch.inserts) gt += r.ground_truth.has_value();
    EXPECT_EQ(batch.inserts.size() - gt, 90u);
    EXPECT_EQ(gt, 1u);
    EXPECT_EQ(batch.deletes.size(), 9u);
    EXPECT_EQ(batch.t, static_cast<std::int64_t>(b));
  }
  EXPECT_EQ(stream.delete_shortfall, 0u);
}

TEST(StreamTest, PureGrowthReplaysSourceGraph) {
  const auto data = dataset(2000, 2);
  StreamSpec spec;
  spec.batch_size = 150;
  spec.insert_fraction = 1.0;
  spec.gt_fraction = 0.0;
  spec.delete_fraction = 0.0;
  spec.initial_gt_count = 10;
  const auto stream = make_stream(data, spec);
  DynamicGraph g;
  for (const auto& b : stream.batches) {
    g.apply_deletes(b.deletes);
    g.apply_inserts(b.inserts);
  }
  EXPECT_EQ(g.num_alive(), 2000u);
  EXPECT_EQ(g.edge_list(), data.edges);
  EXPECT_EQ(g.check_invariants(), "");
}

TEST(StreamTest, SameSeedSameBytes) {
  const auto data = dataset(3000, 3);
  StreamSpec spec;
  spec.batch_size = 200;
  spec.initial_gt_count = 10;
  spec.num_batches = 8;
  spec.seed = 99;
  EXPECT_EQ(serialize(make_stream(data, spec)), serialize(make_stream(data, spec)));
  StreamSpec other = spec;
  other.seed = 100;
  EXPECT_NE(serialize(make_stream(data, spec)), serialize(make_stream(data, other)));
}

TEST(StreamTest, ReplayIsValidAndSafe) {
  const auto data = dataset(1500, 4, 0.02);
  StreamSpec spec;
  spec.batch_size = 200;
  spec.insert_fraction = 0.5;
  spec.gt_fraction = 0.01;
  spec.delete_fraction = 0.49;
  spec.initial_gt_count = 4;
  spec.num_batches = 10;
  const auto stream = make_stream(data, spec);
  DynamicGraph g;
  LabelState labels;
  for (const auto& b : stream.batches) {
    ASSERT_NO_THROW(g.validate(b));
    std::set<VertexId> ins;
    for (const auto& r : b.inserts) {
      ins.insert(r.id);
      for (const auto& [v, w] : r.edges) ASSERT_GT(w, 0.0);
    }
    for (VertexId d : b.deletes) ASSERT_EQ(ins.count(d), 0u);
    g.apply_deletes(b.deletes);
    for (VertexId d : b.deletes) labels.remove(d);
    g.apply_inserts(b.inserts);
    for (const auto& r : b.inserts) {
      if (r.ground_truth) labels.set_ground_truth(r.id, *r.ground_truth);
      if (r.ground_truth && data.truth[r.id] != *r.ground_truth) FAIL();
    }
    ASSERT_GE(g.num_alive(), 1u);
    ASSERT_GE(labels.class0_count(), 1u);
    ASSERT_GE(labels.class1_count(), 1u);
  }
}

TEST(StreamTest, InfeasibleSpecIsRejected) {
  const auto data = dataset(500, 5, 0.01);
  StreamSpec spec;
  spec.batch_size = 100;
  spec.gt_fraction = 0.5;
  spec.insert_fraction = 0.5;
  spec.delete_fraction = 0.0;
  spec.num_batches = 5;
  EXPECT_THROW(make_stream(data, spec), ValidationError);
  StreamSpec bad;
  bad.insert_fraction = 0.5;
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = StreamSpec{};
  bad.batch_size = 0;
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(StreamTest, WholeGraphBatchCarriesEveryEdgeOnce) {
  const auto data = dataset(300, 6);
  const auto batch = whole_graph_batch(data);
  DynamicGraph g;
  g.apply_inserts(batch.inserts);
  EXPECT_EQ(g.edge_list(), data.edges);
  std::size_t gt = 0;
  for (const auto& r : batch.inserts) gt += r.ground_truth.has_value();
  EXPECT_EQ(gt, data.ground_truth_count());
}

}  // namespace
}  // namespace dynlp
