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
#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "multiequi/types.hpp"

namespace multiequi {

// Opaque vector -> vector function with an invocation counter.
//
// BlackBoxModel is a handle: copies share the function and the counter, so a
// wrapper holding a copy of an inner model reports its calls on the same
// counter the caller sees. The counter is atomic and may be bumped from
// concurrent evaluations.
class BlackBoxModel {
 public:
  using Fn = std::function<Vector(const Vector&)>;

  BlackBoxModel(Index in_dim, Index out_dim, Fn fn, std::string name = "model");

  Index in_dim() const { return state_->in_dim; }
  Index out_dim() const { return state_->out_dim; }
  const std::string& name() const { return state_->name; }

  // Checks both dims (DimensionMismatch) and counts exactly one call.
  Vector operator()(const Vector& x) const;

  std::uint64_t calls() const { return state_->calls.load(std::memory_order_relaxed); }
  void reset_calls() const { state_->calls.store(0, std::memory_order_relaxed); }

 private:
  struct State {
    Index in_dim;
    Index out_dim;
    Fn fn;
    std::string name;
    mutable std::atomic<std::uint64_t> calls{0};
  };
  std::shared_ptr<State> state_;
};

// Inner-call accounting for one wrapper evaluation.
struct CallBudget {
  std::uint64_t observed = 0;
  std::uint64_t bound = 0;

  bool within() const { return observed <= bound; }
};

// Runs f() and reports how many calls the listed models received meanwhile.
template <class F>
CallBudget measure_calls(std::span<const BlackBoxModel> models, std::uint64_t bound,
                         F&& f) {
  std::uint64_t before = 0;
  for (const auto& m : models) before += m.calls();
  std::forward<F>(f)();
  std::uint64_t after = 0;
  for (const auto& m : models) after += m.calls();
  return {after - before, bound};
}

}  // namespace multiequi
