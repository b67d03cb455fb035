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
#include "oracles.hpp"

#include <numeric>
#include <utility>

#include "multiequi/toy_models.hpp"

namespace multiequi::testing {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(Index a, Index b) { parent_[find(a)] = find(b); }
  Index count() {
    Index n = 0;
    for (Index i = 0; i < parent_.size(); ++i) n += find(i) == i ? 1 : 0;
    return n;
  }

 private:
  std::vector<Index> parent_;
};

}  // namespace

Index pair_orbit_count(const PermAction& a_in, const PermAction& a_out) {
  const Index r = a_out.dim();
  const Index c = a_in.dim();
  DisjointSets sets(r * c);
  for (Index g = 0; g < a_in.order(); ++g) {
    for (Index i = 0; i < r; ++i) {
      for (Index j = 0; j < c; ++j) {
        sets.unite(i * c + j, a_out.perm(g)[i] * c + a_in.perm(g)[j]);
      }
    }
  }
  return sets.count();
}

Index is_pair_orbit_count(const PermAction& a_in, const PermAction& a_out) {
  const Index r = a_out.dim();
  const Index c = a_in.dim();
  DisjointSets sets(r * c);
  for (Index g2 = 0; g2 < a_out.order(); ++g2) {
    for (Index i = 0; i < r; ++i) {
      for (Index j = 0; j < c; ++j) sets.unite(i * c + j, a_out.perm(g2)[i] * c + j);
    }
  }
  for (Index g1 = 0; g1 < a_in.order(); ++g1) {
    for (Index i = 0; i < r; ++i) {
      for (Index j = 0; j < c; ++j) sets.unite(i * c + j, i * c + a_in.perm(g1)[j]);
    }
  }
  return sets.count();
}

Index multi_pair_orbit_count(const PermAction& a1, const PermAction& a2) {
  const Index d1 = a1.dim();
  const Index d = d1 + a2.dim();
  DisjointSets sets(d * d);
  auto block = [&](Index g1, Index g2, Index i) {
    return i < d1 ? a1.perm(g1)[i] : d1 + a2.perm(g2)[i - d1];
  };
  for (Index g1 = 0; g1 < a1.order(); ++g1) {
    for (Index g2 = 0; g2 < a2.order(); ++g2) {
      for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
          sets.unite(i * d + j, block(g1, g2, i) * d + block(g1, g2, j));
        }
      }
    }
  }
  return sets.count();
}

LinearMap kron(const LinearMap& a, const LinearMap& b) {
  LinearMap out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

LinearMap kron_sum(const LinearMap& a, const LinearMap& b) {
  return kron(a, LinearMap::Identity(b.rows(), b.cols())) +
         kron(LinearMap::Identity(a.rows(), a.cols()), b);
}

double equivariant_projector_trace(const PermAction& a) {
  const auto n = static_cast<Eigen::Index>(a.dim() * a.dim());
  LinearMap acc = LinearMap::Zero(n, n);
  for (Index g = 0; g < a.order(); ++g) {
    const LinearMap p = a.perm(g).matrix();
    acc += kron(p, p);
  }
  return acc.trace() / static_cast<double>(a.order());
}

double is_projector_trace(const PermAction& a_in, const PermAction& a_out) {
  const auto n = static_cast<Eigen::Index>(a_in.dim() * a_out.dim());
  LinearMap acc = LinearMap::Zero(n, n);
  for (Index g1 = 0; g1 < a_in.order(); ++g1) {
    for (Index g2 = 0; g2 < a_out.order(); ++g2) {
      acc += kron(a_in.perm(g1).matrix(), a_out.perm(g2).matrix());
    }
  }
  return acc.trace() / static_cast<double>(a_in.order() * a_out.order());
}

Index seeded_index(std::uint64_t seed, std::uint64_t counter, Index n) {
  const double u = 0.5 * (toy::uniform_pm1(seed, 7, counter) + 1.0);
  const auto k = static_cast<Index>(u * static_cast<double>(n));
  return k < n ? k : n - 1;
}

PermAction conjugated(const PermAction& a, std::uint64_t seed) {
  std::vector<Index> src(a.dim());
  std::iota(src.begin(), src.end(), Index{0});
  for (Index i = a.dim(); i > 1; --i) std::swap(src[i - 1], src[seeded_index(seed, i, i)]);
  const Permutation sigma(std::move(src));
  const Permutation sigma_inv = sigma.inverse();
  std::vector<Permutation> perms;
  for (Index g = 0; g < a.order(); ++g) perms.push_back(sigma_inv * a.perm(g) * sigma);
  return PermAction(a.group_ptr(), std::move(perms));
}

}  // namespace multiequi::testing
