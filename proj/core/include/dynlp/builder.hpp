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

#ifndef DYNLP_BUILDER_HPP_
#define DYNLP_BUILDER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dynlp/types.hpp"

namespace dynlp {

// Items as dense feature vectors. Row i belongs to item_ids[i].
struct FeatureMatrix {
  std::size_t dim = 0;
  std::vector<VertexId> item_ids;
  std::vector<std::vector<double>> rows;
  // Per-row class, if known.
  std::vector<std::optional<Label>> true_labels;
};

enum class SimilarityMode {
  // Cosine similarity; non-positive similarities produce no edge.
  kPruneNonPositive,
  // (1 + cos) / 2, so every pair gets a weight in [0, 1].
  kAffine,
};

// Ranking key of a cosine similarity: the value on a 2^-40 grid, so that
// mathematically equal similarities tie despite rounding differences.
std::int64_t similarity_rank_key(double similarity);

// Symmetrized k-nearest-neighbor graph over cosine similarity. Each row keeps
// its k most similar rows (equal rank keys go to the lower id); the union of these
// directed choices forms the undirected edges, weighted by similarity.
// Output edges have u < v, sorted. Throws ValidationError on k out of range,
// ragged rows, or an all-zero row.
std::vector<WeightedEdge> knn_graph(const FeatureMatrix& features, std::size_t k,
                                    SimilarityMode mode = SimilarityMode::kPruneNonPositive);

// Weight ranges for planted two-class synthetic graphs.
struct PlantedModel {
  double intra_lo = 0.6;
  double intra_hi = 1.0;
  double inter_lo = 0.0;
  double inter_hi = 0.4;
};

struct SyntheticSpec {
  std::size_t n = 1000;
  double avg_degree = 5.0;
  std::uint64_t seed = 1;
  // Fraction of each class revealed as ground truth (at least one per class
  // when positive).
  double labeled_fraction = 0.01;
  PlantedModel planted;

  void validate() const;
};

// A graph with ids 0..n-1, the hidden class of every vertex, and which
// vertices carry ground truth.
struct LabeledDataset {
  std::size_t num_vertices = 0;
  std::vector<WeightedEdge> edges;  // u < v, sorted
  std::vector<Label> truth;
  std::vector<unsigned char> is_ground_truth;

  std::size_t ground_truth_count() const;
};

// G(n, p) with p = avg_degree / (n - 1), classes split evenly at random and
// planted weights: intra-class edges draw from [intra_lo, intra_hi], inter-class
// from (inter_lo, inter_hi]. Output is a pure function of the spec.
LabeledDataset erdos_renyi(const SyntheticSpec& spec);

// Marks `fraction` of each class (at least one per non-empty class when
// fraction > 0) as ground truth, chosen by `seed`.
std::vector<unsigned char> choose_ground_truth(const std::vector<Label>& truth,
                                               double fraction, std::uint64_t seed);

}  // namespace dynlp

#endif  // DYNLP_BUILDER_HPP_
