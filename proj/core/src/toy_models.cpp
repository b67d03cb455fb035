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
#include "multiequi/toy_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "multiequi/errors.hpp"

namespace multiequi::toy {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

double activate(Activation a, double v) {
  switch (a) {
    case Activation::tanh:
      return std::tanh(v);
    case Activation::relu:
      return std::max(v, 0.0);
    case Activation::square:
      return v * v;
  }
  return v;
}

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::tanh:
      return "tanh";
    case Activation::relu:
      return "relu";
    case Activation::square:
      return "square";
  }
  return "?";
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform_pm1(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t key = splitmix64(seed + splitmix64(stream));
  const std::uint64_t bits = splitmix64(key + counter * kGolden);
  const double unit = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

Vector seeded_vector(std::uint64_t seed, std::uint64_t stream, Index dim) {
  Vector v(static_cast<Eigen::Index>(dim));
  for (Index i = 0; i < dim; ++i) v[static_cast<Eigen::Index>(i)] = uniform_pm1(seed, stream, i);
  return v;
}

LinearMap seeded_matrix(std::uint64_t seed, Index rows, Index cols) {
  LinearMap m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::uint64_t counter = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = uniform_pm1(seed, 0, counter++);
  }
  return m;
}

SeededMLP::SeededMLP(std::uint64_t seed, std::vector<Index> dims, Activation activation)
    : activation_(activation) {
  if (dims.empty()) throw Error("mlp: dims must be nonempty");
  if (std::find(dims.begin(), dims.end(), Index{0}) != dims.end()) {
    throw DimensionMismatch("mlp: layer widths must be positive");
  }
  in_dim_ = dims.front();
  out_dim_ = dims.back();
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    const auto rows = static_cast<Eigen::Index>(dims[k + 1]);
    const auto cols = static_cast<Eigen::Index>(dims[k]);
    DenseLayer layer{LinearMap(rows, cols), Vector(rows)};
    std::uint64_t counter = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) layer.weight(r, c) = uniform_pm1(seed, k, counter++);
    }
    for (Eigen::Index r = 0; r < rows; ++r) layer.bias[r] = uniform_pm1(seed, k, counter++);
    layers_.push_back(std::move(layer));
  }
}

SeededMLP::SeededMLP(std::vector<DenseLayer> layers, Activation activation)
    : layers_(std::move(layers)), activation_(activation) {
  if (layers_.empty()) throw Error("mlp: need at least one layer");
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const auto& l = layers_[k];
    if (l.bias.size() != l.weight.rows() ||
        (k > 0 && l.weight.cols() != layers_[k - 1].weight.rows())) {
      throw DimensionMismatch("mlp: layer shapes do not chain");
    }
  }
  in_dim_ = static_cast<Index>(layers_.front().weight.cols());
  out_dim_ = static_cast<Index>(layers_.back().weight.rows());
}

Vector SeededMLP::operator()(const Vector& x) const {
  Vector h = x;
  for (const auto& layer : layers_) {
    h = layer.weight * h + layer.bias;
    for (Eigen::Index i = 0; i < h.size(); ++i) h[i] = activate(activation_, h[i]);
  }
  return h;
}

BlackBoxModel mlp(std::uint64_t seed, std::vector<Index> dims, Activation activation) {
  SeededMLP net(seed, std::move(dims), activation);
  const Index in = net.in_dim();
  const Index out = net.out_dim();
  return BlackBoxModel(in, out, [net = std::move(net)](const Vector& x) { return net(x); },
                       std::string("mlp/") + activation_name(activation) + "/seed" +
                           std::to_string(seed));
}

BlackBoxModel mlp(std::vector<DenseLayer> layers, Activation activation) {
  SeededMLP net(std::move(layers), activation);
  const Index in = net.in_dim();
  const Index out = net.out_dim();
  return BlackBoxModel(in, out, [net = std::move(net)](const Vector& x) { return net(x); },
                       std::string("mlp/") + activation_name(activation));
}

BlackBoxModel linear_model(LinearMap weight) {
  const auto in = static_cast<Index>(weight.cols());
  const auto out = static_cast<Index>(weight.rows());
  return BlackBoxModel(
      in, out, [w = std::move(weight)](const Vector& x) { return Vector(w * x); }, "linear");
}

BlackBoxModel constant_model(Index in_dim, Vector value) {
  const auto out = static_cast<Index>(value.size());
  return BlackBoxModel(
      in_dim, out, [c = std::move(value)](const Vector&) { return c; }, "constant");
}

BlackBoxModel elementwise_square(Index dim) {
  return BlackBoxModel(
      dim, dim, [](const Vector& x) { return Vector(x.array().square()); }, "square");
}

}  // namespace multiequi::toy
