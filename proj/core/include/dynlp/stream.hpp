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

#ifndef DYNLP_STREAM_HPP_
#define DYNLP_STREAM_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dynlp/builder.hpp"
#include "dynlp/types.hpp"

namespace dynlp {

struct StreamSpec {
  std::size_t batch_size = 1000;
  double insert_fraction = 0.90;  // unlabeled vertices revealed per batch
  double gt_fraction = 0.01;      // ground-truth vertices revealed per batch
  double delete_fraction = 0.09;  // alive vertices deleted per batch
  std::uint64_t seed = 1;
  // Ground-truth vertices revealed by an initial batch t = 0, split evenly
  // between the classes.
  std::size_t initial_gt_count = 0;
  // Number of regular batches; 0 continues until every vertex is revealed.
  std::size_t num_batches = 0;

  void validate() const;
};

struct Stream {
  std::vector<BatchUpdate> batches;
  // Sampled deletions replaced by another candidate because they would have
  // removed the last alive ground-truth vertex of a class.
  std::size_t substitutions = 0;
  // Deletions dropped because too few vertices were alive.
  std::size_t delete_shortfall = 0;
};

// Turns a dataset into a reproducible batch sequence. Each regular batch
// reveals round(insert_fraction * batch_size) unlabeled and
// round(gt_fraction * batch_size) ground-truth vertices and deletes the rest
// of the batch from the vertices alive before it. An edge is revealed with
// the later of its two endpoints; edges to vertices deleted earlier or in the
// same batch are dropped. Deletions never take the last alive ground-truth
// vertex of a class and always leave at least one vertex alive. When
// num_batches is 0 and one pool runs dry, the other pool fills the whole
// insert budget so that every vertex is eventually revealed.
// Throws ValidationError if the spec asks for more vertices of a kind than
// the dataset holds.
Stream make_stream(const LabeledDataset& dataset, const StreamSpec& spec);

// A single batch revealing the whole dataset at once.
BatchUpdate whole_graph_batch(const LabeledDataset& dataset);

}  // namespace dynlp

#endif  // DYNLP_STREAM_HPP_
