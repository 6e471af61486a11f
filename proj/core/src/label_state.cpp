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

#include "dynlp/label_state.hpp"

namespace dynlp {

void LabelState::resize(std::size_t id_bound) {
  if (id_bound <= f_.size()) return;
  f_.resize(id_bound, kNeutral);
  role_.resize(id_bound, VertexRole::kUnlabeled);
  pin_.resize(id_bound, PinReason::kNone);
}

void LabelState::set_ground_truth(VertexId u, Label l) {
  resize(static_cast<std::size_t>(u) + 1);
  remove(u);
  role_[u] = l == Label::kOne ? VertexRole::kClass1 : VertexRole::kClass0;
  ++(l == Label::kOne ? class1_count_ : class0_count_);
  f_[u] = label_value(l);
}

void LabelState::add_unlabeled(VertexId u) {
  resize(static_cast<std::size_t>(u) + 1);
  remove(u);
  f_[u] = kNeutral;
}

void LabelState::remove(VertexId u) {
  if (u >= f_.size()) return;
  if (role_[u] == VertexRole::kClass0) --class0_count_;
  if (role_[u] == VertexRole::kClass1) --class1_count_;
  role_[u] = VertexRole::kUnlabeled;
  pin_[u] = PinReason::kNone;
  f_[u] = kNeutral;
}

std::vector<VertexId> LabelState::class0() const {
  std::vector<VertexId> out;
  for (std::size_t u = 0; u < role_.size(); ++u) {
    if (role_[u] == VertexRole::kClass0) out.push_back(static_cast<VertexId>(u));
  }
  return out;
}

std::vector<VertexId> LabelState::class1() const {
  std::vector<VertexId> out;
  for (std::size_t u = 0; u < role_.size(); ++u) {
    if (role_[u] == VertexRole::kClass1) out.push_back(static_cast<VertexId>(u));
  }
  return out;
}

}  // namespace dynlp
