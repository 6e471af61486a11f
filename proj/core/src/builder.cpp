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

#include "dynlp/builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "dynlp/error.hpp"
#include "random.hpp"

namespace dynlp {
namespace {

enum StreamTag : std::uint64_t {
  kClassStream = 1,
  kStructureStream = 2,
  kWeightStream = 3,
  kGroundTruthStream = 4,
};

}  // namespace

void SyntheticSpec::validate() const {
  if (n < 2) throw ValidationError("synthetic graph needs n >= 2");
  if (!(avg_degree > 0.0) || !(avg_degree < static_cast<double>(n))) {
    throw ValidationError("avg_degree must lie in (0, n)");
  }
  if (!(labeled_fraction >= 0.0 && labeled_fraction <= 1.0)) {
    throw ValidationError("labeled_fraction must lie in [0, 1]");
  }
  const auto& m = planted;
  if (!(m.intra_lo >= 0.0 && m.intra_lo <= m.intra_hi && m.inter_lo >= 0.0 &&
        m.inter_lo < m.inter_hi)) {
    throw ValidationError("planted weight ranges must be non-negative and ordered");
  }
}

std::size_t LabeledDataset::ground_truth_count() const {
  return static_cast<std::size_t>(std::count(is_ground_truth.begin(), is_ground_truth.end(), 1));
}

std::vector<unsigned char> choose_ground_truth(const std::vector<Label>& truth,
                                               double fraction, std::uint64_t seed) {
  std::vector<unsigned char> chosen(truth.size(), 0);
  internal::Rng rng(seed);
  for (Label cls : {Label::kZero, Label::kOne}) {
    std::vector<VertexId> members;
    for (std::size_t u = 0; u < truth.size(); ++u) {
      if (truth[u] == cls) members.push_back(static_cast<VertexId>(u));
    }
    if (members.empty() || fraction <= 0.0) continue;
    auto count = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(members.size())));
    count = std::clamp<std::size_t>(count, 1, members.size());
    rng.shuffle(members);
    for (std::size_t i = 0; i < count; ++i) chosen[members[i]] = 1;
  }
  return chosen;
}

LabeledDataset erdos_renyi(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  LabeledDataset out;
  out.num_vertices = n;

  // Balanced classes over a random permutation.
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  internal::Rng class_rng(internal::derive_seed(spec.seed, kClassStream));
  class_rng.shuffle(perm);
  out.truth.assign(n, Label::kOne);
  for (std::size_t i = 0; i < n / 2; ++i) out.truth[perm[i]] = Label::kZero;

  // Geometric skipping over the pairs (w, v), w < v (Batagelj & Brandes).
  const double p = std::min(1.0, spec.avg_degree / static_cast<double>(n - 1));
  internal::Rng structure_rng(internal::derive_seed(spec.seed, kStructureStream));
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(static_cast<std::size_t>(spec.avg_degree * static_cast<double>(n) / 2.0 * 1.1));
  if (p >= 1.0) {
    for (std::size_t v = 1; v < n; ++v) {
      for (std::size_t w = 0; w < v; ++w) {
        pairs.emplace_back(static_cast<VertexId>(w), static_cast<VertexId>(v));
      }
    }
  } else {
    const double log_q = std::log1p(-p);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      const double r = structure_rng.uniform();
      w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) pairs.emplace_back(static_cast<VertexId>(w), static_cast<VertexId>(v));
    }
  }
  std::sort(pairs.begin(), pairs.end());

  internal::Rng weight_rng(internal::derive_seed(spec.seed, kWeightStream));
  const auto& m = spec.planted;
  out.edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const double r = weight_rng.uniform();
    double w = out.truth[a] == out.truth[b]
                   ? m.intra_lo + (m.intra_hi - m.intra_lo) * r
                   : m.inter_hi - (m.inter_hi - m.inter_lo) * r;
    if (w > 0.0) out.edges.push_back({a, b, w});
  }

  out.is_ground_truth = choose_ground_truth(
      out.truth, spec.labeled_fraction, internal::derive_seed(spec.seed, kGroundTruthStream));
  return out;
}

std::int64_t similarity_rank_key(double similarity) {
  return std::llround(std::ldexp(similarity, 40));
}

std::vector<WeightedEdge> knn_graph(const FeatureMatrix& features, std::size_t k,
                                    SimilarityMode mode) {
  const std::size_t n = features.rows.size();
  if (features.item_ids.size() != n) {
    throw ValidationError("feature matrix has " + std::to_string(n) + " rows but " +
                          std::to_string(features.item_ids.size()) + " ids");
  }
  if (k < 1 || k >= n) {
    throw ValidationError("k must satisfy 1 <= k < n (k = " + std::to_string(k) +
                          ", n = " + std::to_string(n) + ")");
  }
  const std::size_t dim = features.rows.front().size();
  std::vector<double> unit(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = features.rows[i];
    if (row.size() != dim) {
      throw ValidationError("feature row for item " + std::to_string(features.item_ids[i]) +
                            " has dimension " + std::to_string(row.size()) + ", expected " +
                            std::to_string(dim));
    }
    double norm = 0.0;
    for (double x : row) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw ValidationError("feature row for item " + std::to_string(features.item_ids[i]) +
                            " is all zeros or non-finite; cosine similarity is undefined");
    }
    for (std::size_t d = 0; d < dim; ++d) unit[i * dim + d] = row[d] / norm;
  }

  // Directed choices, one slice of k per row.
  std::vector<WeightedEdge> chosen(n * k);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    std::vector<std::pair<double, VertexId>> cand;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
      cand.clear();
      const double* a = unit.data() + static_cast<std::size_t>(i) * dim;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == static_cast<std::size_t>(i)) continue;
        const double* b = unit.data() + j * dim;
        double dot = 0.0;
        for (std::size_t d = 0; d < dim; ++d) dot += a[d] * b[d];
        cand.emplace_back(std::clamp(dot, -1.0, 1.0), features.item_ids[j]);
      }
      // Similarities equal up to rounding noise rank as ties.
      auto better = [](const auto& x, const auto& y) {
        const auto kx = similarity_rank_key(x.first);
        const auto ky = similarity_rank_key(y.first);
        return kx > ky || (kx == ky && x.second < y.second);
      };
      std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k),
                        cand.end(), better);
      for (std::size_t r = 0; r < k; ++r) {
        chosen[static_cast<std::size_t>(i) * k + r] = {features.item_ids[i], cand[r].second,
                                                       cand[r].first};
      }
    }
  }

  for (auto& e : chosen) {
    if (e.u > e.v) std::swap(e.u, e.v);
    e.w = mode == SimilarityMode::kAffine ? std::clamp((1.0 + e.w) / 2.0, 0.0, 1.0)
                                          : std::min(e.w, 1.0);
  }
  std::sort(chosen.begin(), chosen.end(), [](const auto& x, const auto& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  std::vector<WeightedEdge> out;
  for (const auto& e : chosen) {
    if (!out.empty() && out.back().u == e.u && out.back().v == e.v) {
      out.back().w = std::max(out.back().w, e.w);
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [](const WeightedEdge& e) { return !(e.w > 0.0); });
  return out;
}

}  // namespace dynlp
