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

#ifndef DYNLP_LABEL_STATE_HPP_
#define DYNLP_LABEL_STATE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dynlp/types.hpp"

namespace dynlp {

enum class VertexRole : std::uint8_t { kUnlabeled = 0, kClass0 = 1, kClass1 = 2 };

// Why an unlabeled vertex is held at 0.5 instead of being propagated.
enum class PinReason : std::uint8_t {
  kNone = 0,
  kIsolated = 1,     // weighted degree 0
  kUnreachable = 2,  // its component has no ground-truth vertex
};

// Fractional labels plus the ground-truth partition, indexed by VertexId.
// Ground-truth vertices always hold exactly 0 or 1.
class LabelState {
 public:
  static constexpr double kNeutral = 0.5;

  LabelState() = default;

  void resize(std::size_t id_bound);
  std::size_t id_bound() const { return f_.size(); }

  double value(VertexId u) const { return f_[u]; }
  void set_value(VertexId u, double x) { f_[u] = x; }
  const std::vector<double>& values() const { return f_; }
  std::vector<double>& mutable_values() { return f_; }

  VertexRole role(VertexId u) const { return role_[u]; }
  bool is_labeled(VertexId u) const { return role_[u] != VertexRole::kUnlabeled; }

  PinReason pin_reason(VertexId u) const { return pin_[u]; }
  void set_pin(VertexId u, PinReason r) { pin_[u] = r; }

  // Makes u a ground-truth vertex of class `l` and sets its value.
  void set_ground_truth(VertexId u, Label l);
  // Adds u as an unlabeled vertex with the neutral value.
  void add_unlabeled(VertexId u);
  // Forgets u; a deleted ground-truth vertex leaves its class.
  void remove(VertexId u);

  std::size_t class0_count() const { return class0_count_; }
  std::size_t class1_count() const { return class1_count_; }
  std::vector<VertexId> class0() const;
  std::vector<VertexId> class1() const;

  // Hard class with ties to 1.
  static int binary(double f) { return f >= 0.5 ? 1 : 0; }

 private:
  std::vector<double> f_;
  std::vector<VertexRole> role_;
  std::vector<PinReason> pin_;
  std::size_t class0_count_ = 0;
  std::size_t class1_count_ = 0;
};

}  // namespace dynlp

#endif  // DYNLP_LABEL_STATE_HPP_
