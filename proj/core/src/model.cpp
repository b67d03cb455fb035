// Copyright 2026 The multiequi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "multiequi/model.hpp"

#include <utility>

#include "multiequi/errors.hpp"

namespace multiequi {

BlackBoxModel::BlackBoxModel(Index in_dim, Index out_dim, Fn fn, std::string name)
    : state_(std::make_shared<State>()) {
  if (in_dim == 0 || out_dim == 0) throw DimensionMismatch("model dims must be positive");
  if (!fn) throw Error("model function is empty");
  state_->in_dim = in_dim;
  state_->out_dim = out_dim;
  state_->fn = std::move(fn);
  state_->name = std::move(name);
}

Vector BlackBoxModel::operator()(const Vector& x) const {
  if (static_cast<Index>(x.size()) != state_->in_dim) {
    throw DimensionMismatch(state_->name + ": expected input of size " +
                            std::to_string(state_->in_dim) + ", got " +
                            std::to_string(x.size()));
  }
  state_->calls.fetch_add(1, std::memory_order_relaxed);
  Vector y = state_->fn(x);
  if (static_cast<Index>(y.size()) != state_->out_dim) {
    throw DimensionMismatch(state_->name + ": produced output of size " +
                            std::to_string(y.size()) + ", declared " +
                            std::to_string(state_->out_dim));
  }
  return y;
}

}  // namespace multiequi
