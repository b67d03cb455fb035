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
// Small deterministic black boxes for exercising the wrappers.
//
// Weights come from a counter-based SplitMix64 generator: layer k draws from
// the stream keyed by splitmix64(seed + splitmix64(k)), taking the weights in
// row-major order followed by the biases, each mapped to uniform [-1, 1) via
// the top 53 bits. Equal seed and dims give bit-identical weights on every
// platform.

#pragma once

#include <cstdint>
#include <vector>

#include "multiequi/model.hpp"
#include "multiequi/types.hpp"

namespace multiequi::toy {

enum class Activation { tanh, relu, square };

struct DenseLayer {
  LinearMap weight;
  Vector bias;
};

// z -> splitmix64 finalizer of (z + golden gamma).
std::uint64_t splitmix64(std::uint64_t z);

// Uniform [-1, 1) value number `counter` of stream `stream`.
double uniform_pm1(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

// dim values from one stream; handy for seeded probe inputs.
Vector seeded_vector(std::uint64_t seed, std::uint64_t stream, Index dim);

// Layer k maps dims[k] -> dims[k+1]; the activation follows every layer.
class SeededMLP {
 public:
  SeededMLP(std::uint64_t seed, std::vector<Index> dims, Activation activation);
  SeededMLP(std::vector<DenseLayer> layers, Activation activation);

  Index in_dim() const { return in_dim_; }
  Index out_dim() const { return out_dim_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  Vector operator()(const Vector& x) const;

 private:
  std::vector<DenseLayer> layers_;
  Activation activation_;
  Index in_dim_ = 0;
  Index out_dim_ = 0;
};

// dims must be nonempty; dims == {d} is the identity on R^d.
BlackBoxModel mlp(std::uint64_t seed, std::vector<Index> dims, Activation activation);
BlackBoxModel mlp(std::vector<DenseLayer> layers, Activation activation);

BlackBoxModel linear_model(LinearMap weight);
BlackBoxModel constant_model(Index in_dim, Vector value);
BlackBoxModel elementwise_square(Index dim);

// Uniform [-1, 1) matrix from a seed, same generator as the MLP weights.
LinearMap seeded_matrix(std::uint64_t seed, Index rows, Index cols);

}  // namespace multiequi::toy
