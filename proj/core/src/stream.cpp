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
#include <cmath>
#include <string>

#include "dynlp/error.hpp"
#include "random.hpp"

namespace dynlp {
namespace {

enum StreamTag : std::uint64_t {
  kPoolStream = 11,
  kDeleteStream = 12,
};

// Undirected adjacency of the source dataset, for edge revelation.
struct SourceAdjacency {
  std::vector<std::size_t> offsets;
  std::vector<std::pair<VertexId, double>> entries;

  explicit SourceAdjacency(const LabeledDataset& d) : offsets(d.num_vertices + 1, 0) {
    for (const auto& e : d.edges) {
      ++offsets[e.u + 1];
      ++offsets[e.v + 1];
    }
    for (std::size_t i = 0; i < d.num_vertices; ++i) offsets[i + 1] += offsets[i];
    entries.resize(offsets.back());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto& e : d.edges) {
      entries[fill[e.u]++] = {e.v, e.w};
      entries[fill[e.v]++] = {e.u, e.w};
    }
  }
};

}  // namespace

void StreamSpec::validate() const {
  if (batch_size < 1) throw ValidationError("batch_size must be at least 1");
  for (double f : {insert_fraction, gt_fraction, delete_fraction}) {
    if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("stream fractions must lie in [0, 1]");
  }
  if (std::abs(insert_fraction + gt_fraction + delete_fraction - 1.0) > 1e-9) {
    throw ValidationError("insert, ground-truth and delete fractions must sum to 1");
  }
}

BatchUpdate whole_graph_batch(const LabeledDataset& dataset) {
  BatchUpdate batch;
  batch.inserts.resize(dataset.num_vertices);
  for (std::size_t u = 0; u < dataset.num_vertices; ++u) {
    batch.inserts[u].id = static_cast<VertexId>(u);
    if (dataset.is_ground_truth[u]) batch.inserts[u].ground_truth = dataset.truth[u];
  }
  for (const auto& e : dataset.edges) batch.inserts[e.v].edges.emplace_back(e.u, e.w);
  return batch;
}

Stream make_stream(const LabeledDataset& dataset, const StreamSpec& spec) {
  spec.validate();
  const std::size_t n = dataset.num_vertices;
  if (dataset.truth.size() != n || dataset.is_ground_truth.size() != n) {
    throw ValidationError("dataset truth arrays do not match its vertex count");
  }
  const SourceAdjacency adj(dataset);

  internal::Rng pool_rng(internal::derive_seed(spec.seed, kPoolStream));
  internal::Rng delete_rng(internal::derive_seed(spec.seed, kDeleteStream));

  std::vector<VertexId> unlabeled_pool;
  std::vector<VertexId> gt_pool[2];
  for (std::size_t u = 0; u < n; ++u) {
    const auto id = static_cast<VertexId>(u);
    if (dataset.is_ground_truth[u]) {
      gt_pool[static_cast<int>(dataset.truth[u])].push_back(id);
    } else {
      unlabeled_pool.push_back(id);
    }
  }
  pool_rng.shuffle(unlabeled_pool);
  pool_rng.shuffle(gt_pool[0]);
  pool_rng.shuffle(gt_pool[1]);

  const std::size_t gt_total = gt_pool[0].size() + gt_pool[1].size();
  if (spec.initial_gt_count > gt_total) {
    throw ValidationError("initial_gt_count " + std::to_string(spec.initial_gt_count) +
                          " exceeds the " + std::to_string(gt_total) +
                          " ground-truth vertices available");
  }

  // Initial seeds alternate between the classes while both have vertices.
  std::vector<VertexId> initial;
  std::size_t take[2] = {0, 0};
  for (std::size_t i = 0; initial.size() < spec.initial_gt_count; ++i) {
    int cls = static_cast<int>(i % 2);
    if (take[cls] == gt_pool[cls].size()) cls = 1 - cls;
    initial.push_back(gt_pool[cls][take[cls]++]);
  }
  // Remaining ground truth revealed in a single interleaved order.
  std::vector<VertexId> gt_rest;
  gt_rest.insert(gt_rest.end(), gt_pool[0].begin() + static_cast<std::ptrdiff_t>(take[0]),
                 gt_pool[0].end());
  gt_rest.insert(gt_rest.end(), gt_pool[1].begin() + static_cast<std::ptrdiff_t>(take[1]),
                 gt_pool[1].end());
  pool_rng.shuffle(gt_rest);

  const auto per_batch = [&](double f) {
    return static_cast<std::size_t>(std::llround(f * static_cast<double>(spec.batch_size)));
  };
  const std::size_t n_ins = per_batch(spec.insert_fraction);
  const std::size_t n_gt = per_batch(spec.gt_fraction);
  const std::size_t n_del = spec.batch_size - std::min(spec.batch_size, n_ins + n_gt);

  if (spec.num_batches > 0) {
    if (n_ins * spec.num_batches > unlabeled_pool.size()) {
      throw ValidationError("stream needs " + std::to_string(n_ins * spec.num_batches) +
                            " unlabeled vertices but the dataset has " +
                            std::to_string(unlabeled_pool.size()));
    }
    if (n_gt * spec.num_batches > gt_rest.size()) {
      throw ValidationError("stream needs " + std::to_string(n_gt * spec.num_batches) +
                            " ground-truth vertices after the initial seeds but only " +
                            std::to_string(gt_rest.size()) + " remain");
    }
  } else if (n_ins + n_gt == 0 && (!unlabeled_pool.empty() || !gt_rest.empty())) {
    throw ValidationError("a stream without insertions never reveals the dataset");
  }

  enum : unsigned char { kHidden = 0, kAlive = 1, kGone = 2 };
  std::vector<unsigned char> status(n, kHidden);
  std::vector<VertexId> alive;
  std::size_t alive_gt[2] = {0, 0};
  Stream out;

  auto emit = [&](std::int64_t t, const std::vector<VertexId>& reveal,
                  std::vector<VertexId> deletes) {
    BatchUpdate batch;
    batch.t = t;
    batch.deletes = std::move(deletes);
    for (VertexId d : batch.deletes) status[d] = kGone;
    for (VertexId u : reveal) {
      InsertRecord rec;
      rec.id = u;
      if (dataset.is_ground_truth[u]) rec.ground_truth = dataset.truth[u];
      for (std::size_t k = adj.offsets[u]; k < adj.offsets[u + 1]; ++k) {
        const auto [v, w] = adj.entries[k];
        // Alive: revealed by an earlier batch or earlier in this one.
        if (status[v] == kAlive) rec.edges.emplace_back(v, w);
      }
      status[u] = kAlive;
      batch.inserts.push_back(std::move(rec));
    }
    for (VertexId u : reveal) {
      alive.push_back(u);
      if (dataset.is_ground_truth[u]) ++alive_gt[static_cast<int>(dataset.truth[u])];
    }
    out.batches.push_back(std::move(batch));
  };

  if (!initial.empty()) emit(0, initial, {});

  std::size_t next_unlabeled = 0;
  std::size_t next_gt = 0;
  for (std::int64_t t = 1;; ++t) {
    if (spec.num_batches > 0 && static_cast<std::size_t>(t) > spec.num_batches) break;
    const std::size_t unlabeled_left = unlabeled_pool.size() - next_unlabeled;
    const std::size_t gt_left = gt_rest.size() - next_gt;
    if (spec.num_batches == 0 && unlabeled_left + gt_left == 0) break;

    std::size_t want_ins = std::min(n_ins, unlabeled_left);
    std::size_t want_gt = std::min(n_gt, gt_left);
    if (spec.num_batches == 0) {
      const std::size_t budget = n_ins + n_gt;
      want_ins = std::min(unlabeled_left, budget - want_gt);
      want_gt = std::min(gt_left, budget - want_ins);
    }

    // Deletions from the vertices alive before this batch.
    std::vector<VertexId> deletes;
    const std::size_t del_target = n_del;
    const std::size_t del_cap = alive.empty() ? 0 : alive.size() - 1;
    std::size_t pos = 0;
    while (deletes.size() < std::min(del_target, del_cap) && pos < alive.size()) {
      const std::size_t r = pos + delete_rng.below(alive.size() - pos);
      std::swap(alive[pos], alive[r]);
      const VertexId cand = alive[pos++];
      if (dataset.is_ground_truth[cand]) {
        const int cls = static_cast<int>(dataset.truth[cand]);
        if (alive_gt[cls] <= 1) {
          ++out.substitutions;
          continue;
        }
        --alive_gt[cls];
      }
      deletes.push_back(cand);
    }
    out.delete_shortfall += del_target - deletes.size();
    std::sort(deletes.begin(), deletes.end());
    std::erase_if(alive, [&](VertexId u) {
      return std::binary_search(deletes.begin(), deletes.end(), u);
    });

    std::vector<VertexId> reveal(unlabeled_pool.begin() + static_cast<std::ptrdiff_t>(next_unlabeled),
                                 unlabeled_pool.begin() +
                                     static_cast<std::ptrdiff_t>(next_unlabeled + want_ins));
    reveal.insert(reveal.end(), gt_rest.begin() + static_cast<std::ptrdiff_t>(next_gt),
                  gt_rest.begin() + static_cast<std::ptrdiff_t>(next_gt + want_gt));
    next_unlabeled += want_ins;
    next_gt += want_gt;
    emit(t, reveal, std::move(deletes));
  }
  return out;
}

}  // namespace dynlp
