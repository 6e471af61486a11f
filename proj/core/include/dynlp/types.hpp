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

#ifndef DYNLP_TYPES_HPP_
#define DYNLP_TYPES_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace dynlp {

// Vertex ids are opaque, never reused within a run, and may have gaps once
// vertices are deleted.
using VertexId = std::uint32_t;
inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();

// Ground-truth class of a labeled vertex.
enum class Label : std::uint8_t { kZero = 0, kOne = 1 };

inline double label_value(Label l) { return l == Label::kOne ? 1.0 : 0.0; }

struct WeightedEdge {
  VertexId u = 0;
  VertexId v = 0;
  double w = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// One inserted vertex of a batch. `edges` hold (neighbor, weight) pairs where
// the neighbor is either alive before the batch or inserted by the same batch.
struct InsertRecord {
  VertexId id = 0;
  std::optional<Label> ground_truth;
  std::vector<std::pair<VertexId, double>> edges;
};

// One timestep of changes. Deletions are applied before insertions.
struct BatchUpdate {
  std::int64_t t = 0;
  std::vector<InsertRecord> inserts;
  std::vector<VertexId> deletes;

  bool empty() const { return inserts.empty() && deletes.empty(); }
};

}  // namespace dynlp

#endif  // DYNLP_TYPES_HPP_
