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

#include "multiequi/group.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>

namespace multiequi {

Permutation::Permutation(std::vector<Index> source) : source_(std::move(source)) {
  std::vector<bool> seen(source_.size(), false);
  for (Index s : source_) {
    if (s >= source_.size() || seen[s]) {
      throw InvalidGroup("permutation is not a bijection");
    }
    seen[s] = true;
  }
}

Permutation Permutation::identity(Index n) {
  std::vector<Index> src(n);
  std::iota(src.begin(), src.end(), Index{0});
  return Permutation(std::move(src));
}

Permutation Permutation::inverse() const {
  std::vector<Index> inv(source_.size());
  for (Index i = 0; i < source_.size(); ++i) inv[source_[i]] = i;
  Permutation out;
  out.source_ = std::move(inv);
  return out;
}

bool Permutation::is_identity() const { return fixed_points() == size(); }

Index Permutation::fixed_points() const {
  Index n = 0;
  for (Index i = 0; i < source_.size(); ++i) n += source_[i] == i ? 1 : 0;
  return n;
}

Vector Permutation::apply(const Vector& x) const {
  if (static_cast<Index>(x.size()) != source_.size()) {
    throw DimensionMismatch("permutation of " + std::to_string(source_.size()) +
                            " points applied to vector of size " +
                            std::to_string(x.size()));
  }
  Vector y(x.size());
  for (Index i = 0; i < source_.size(); ++i) y[i] = x[source_[i]];
  return y;
}

LinearMap Permutation::matrix() const {
  const auto n = static_cast<Eigen::Index>(source_.size());
  LinearMap m = LinearMap::Zero(n, n);
  for (Index i = 0; i < source_.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(source_[i])) = 1.0;
  }
  return m;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("composing permutations of different sizes");
  }
  // (a . (b . x))[i] = (b . x)[a[i]] = x[b[a[i]]]
  std::vector<Index> src(a.size());
  for (Index i = 0; i < a.size(); ++i) src[i] = b.source_[a.source_[i]];
  Permutation out;
  out.source_ = std::move(src);
  return out;
}

// ---------------------------------------------------------------------------

FiniteGroup FiniteGroup::from_cayley(std::vector<std::vector<Index>> table,
                                     std::string name) {
  const Index n = table.size();
  if (n == 0) throw InvalidGroup("group must have at least one element");
  FiniteGroup g;
  g.order_ = n;
  g.name_ = std::move(name);
  g.cayley_.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) throw InvalidGroup("Cayley table is not square");
    for (Index v : row) {
      if (v >= n) throw InvalidGroup("Cayley table is not closed");
      g.cayley_.push_back(v);
    }
  }

  std::optional<Index> identity;
  for (Index e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (Index a = 0; a < n && ok; ++a) {
      ok = g.multiply(e, a) == a && g.multiply(a, e) == a;
    }
    if (ok) identity = e;
  }
  if (!identity) throw InvalidGroup("Cayley table has no identity element");
  g.identity_ = *identity;

  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c))) {
          throw InvalidGroup("Cayley table is not associative");
        }
      }
    }
  }

  g.inverse_.assign(n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (g.multiply(a, b) == g.identity_ && g.multiply(b, a) == g.identity_) {
        g.inverse_[a] = b;
        break;
      }
    }
    if (g.inverse_[a] == n) {
      throw InvalidGroup("element " + std::to_string(a) + " has no inverse");
    }
  }
  return g;
}

bool FiniteGroup::same_table(const FiniteGroup& other) const {
  return order_ == other.order_ && cayley_ == other.cayley_;
}

FiniteGroup cyclic_group(Index n) {
  if (n == 0) throw InvalidGroup("cyclic group order must be positive");
  std::vector<std::vector<Index>> table(n, std::vector<Index>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return FiniteGroup::from_cayley(std::move(table), "Z" + std::to_string(n));
}

GroupPtr make_cyclic(Index n) {
  return std::make_shared<const FiniteGroup>(cyclic_group(n));
}

FiniteGroup product_group(const FiniteGroup& left, const FiniteGroup& right) {
  const Index nl = left.order();
  const Index nr = right.order();
  const Index n = nl * nr;
  std::vector<std::vector<Index>> table(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Index l = left.multiply(a / nr, b / nr);
      const Index r = right.multiply(a % nr, b % nr);
      table[a][b] = l * nr + r;
    }
  }
  return FiniteGroup::from_cayley(std::move(table),
                                  left.name() + "x" + right.name());
}

// ---------------------------------------------------------------------------

PermAction::PermAction(GroupPtr group, std::vector<Permutation> perms)
    : group_(std::move(group)), perms_(std::move(perms)) {
  if (!group_) throw InvalidGroup("action needs a group");
  const Index n = group_->order();
  if (perms_.size() != n) {
    throw InvalidGroup("action needs one permutation per group element");
  }
  dim_ = perms_.front().size();
  if (dim_ == 0) throw InvalidGroup("action dimension must be positive");
  for (const auto& p : perms_) {
    if (p.size() != dim_) throw InvalidGroup("permutations differ in size");
  }
  if (!perms_[group_->identity()].is_identity()) {
    throw InvalidGroup("identity element does not act trivially");
  }
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (perms_[group_->multiply(a, b)] != perms_[a] * perms_[b]) {
        throw InvalidGroup("permutation list is not a homomorphism at (" +
                           std::to_string(a) + ", " + std::to_string(b) + ")");
      }
    }
  }
}

PermAction trivial_action(GroupPtr group, Index dim) {
  const Index n = group->order();
  return PermAction(std::move(group),
                    std::vector<Permutation>(n, Permutation::identity(dim)));
}

PermAction trivial_action(Index dim) { return trivial_action(make_cyclic(1), dim); }

PermAction regular_action(GroupPtr group) {
  const Index n = group->order();
  std::vector<Permutation> perms;
  perms.reserve(n);
  for (Index g = 0; g < n; ++g) {
    std::vector<Index> src(n);
    const Index g_inv = group->inverse(g);
    for (Index h = 0; h < n; ++h) src[h] = group->multiply(g_inv, h);
    perms.emplace_back(std::move(src));
  }
  return PermAction(std::move(group), std::move(perms));
}

PermAction regular_action(const FiniteGroup& group) {
  return regular_action(std::make_shared<const FiniteGroup>(group));
}

namespace {

// Powers 0..order-1 of a generator.
std::vector<Permutation> cyclic_powers(const Permutation& generator, Index order) {
  std::vector<Permutation> perms;
  perms.reserve(order);
  perms.push_back(Permutation::identity(generator.size()));
  for (Index k = 1; k < order; ++k) perms.push_back(perms.back() * generator);
  return perms;
}

}  // namespace

PermAction grid_action(GridTransform kind, Index side) {
  if (side == 0) throw InvalidGroup("grid side must be positive");
  std::vector<Index> src(side * side);
  for (Index r = 0; r < side; ++r) {
    for (Index c = 0; c < side; ++c) {
      const Index from = kind == GridTransform::rot90
                             ? c * side + (side - 1 - r)  // counterclockwise
                             : r * side + (side - 1 - c);
      src[r * side + c] = from;
    }
  }
  const Index order = kind == GridTransform::rot90 ? 4 : 2;
  return PermAction(make_cyclic(order), cyclic_powers(Permutation(std::move(src)), order));
}

PermAction swap_action(Index dim, Index i, Index j) {
  if (i >= dim || j >= dim || i == j) {
    throw InvalidGroup("swap indices must be distinct and below dim");
  }
  std::vector<Index> src(dim);
  std::iota(src.begin(), src.end(), Index{0});
  std::swap(src[i], src[j]);
  return PermAction(make_cyclic(2), cyclic_powers(Permutation(std::move(src)), 2));
}

PermAction torus_shift_action(std::span<const Index> extents, Index axis) {
  if (axis >= extents.size()) throw InvalidGroup("torus axis out of range");
  Index dim = 1;
  for (Index e : extents) {
    if (e == 0) throw InvalidGroup("torus extents must be positive");
    dim *= e;
  }
  Index stride = 1;
  for (Index k = axis + 1; k < extents.size(); ++k) stride *= extents[k];
  const Index n = extents[axis];
  std::vector<Index> src(dim);
  for (Index flat = 0; flat < dim; ++flat) {
    const Index coord = (flat / stride) % n;
    const Index from_coord = (coord + n - 1) % n;
    src[flat] = flat - coord * stride + from_coord * stride;
  }
  return PermAction(make_cyclic(n), cyclic_powers(Permutation(std::move(src)), n));
}

bool actions_commute(const PermAction& a1, const PermAction& a2) {
  if (a1.dim() != a2.dim()) {
    throw DimensionMismatch("actions_commute: dims " + std::to_string(a1.dim()) +
                            " and " + std::to_string(a2.dim()));
  }
  for (Index g1 = 0; g1 < a1.order(); ++g1) {
    for (Index g2 = 0; g2 < a2.order(); ++g2) {
      if (a1.perm(g1) * a2.perm(g2) != a2.perm(g2) * a1.perm(g1)) return false;
    }
  }
  return true;
}

LinearMap perm_matrix(const PermAction& a, Index g) {
  if (g >= a.order()) throw InvalidGroup("element index out of range");
  return a.perm(g).matrix();
}

void require_same_group(const PermAction& a, const PermAction& b) {
  if (a.group_ptr() == b.group_ptr()) return;
  if (!a.group().same_table(b.group())) {
    throw GroupMismatch("actions are over different groups (" + a.group().name() +
                        " vs " + b.group().name() + ")");
  }
}

// ---------------------------------------------------------------------------

ProductAction::ProductAction(PermAction left, PermAction right, ProductLayout layout)
    : left_(std::move(left)), right_(std::move(right)), layout_(layout) {
  if (layout_ == ProductLayout::same_space && left_.dim() != right_.dim()) {
    throw DimensionMismatch("same-space product needs equal dims, got " +
                            std::to_string(left_.dim()) + " and " +
                            std::to_string(right_.dim()));
  }
}

Index ProductAction::dim() const {
  return layout_ == ProductLayout::same_space ? left_.dim()
                                              : left_.dim() + right_.dim();
}

Permutation ProductAction::combined(Index g1, Index g2) const {
  if (layout_ == ProductLayout::same_space) return left_.perm(g1) * right_.perm(g2);
  const Index d1 = left_.dim();
  std::vector<Index> src(d1 + right_.dim());
  for (Index i = 0; i < d1; ++i) src[i] = left_.perm(g1)[i];
  for (Index i = 0; i < right_.dim(); ++i) src[d1 + i] = d1 + right_.perm(g2)[i];
  return Permutation(std::move(src));
}

PermAction ProductAction::as_action() const {
  if (layout_ == ProductLayout::same_space && !actions_commute(left_, right_)) {
    throw NonCommutativeActions(
        "same-space product of non-commuting actions is not a group action");
  }
  auto group = std::make_shared<const FiniteGroup>(
      product_group(left_.group(), right_.group()));
  const Index nr = right_.order();
  std::vector<Permutation> perms;
  perms.reserve(group->order());
  for (Index g = 0; g < group->order(); ++g) perms.push_back(combined(g / nr, g % nr));
  return PermAction(std::move(group), std::move(perms));
}

PermAction product_action(std::span<const PermAction> factors, ProductLayout layout) {
  if (factors.empty()) throw InvalidGroup("product of zero actions");
  PermAction acc = factors.front();
  for (const auto& f : factors.subspan(1)) {
    acc = ProductAction(acc, f, layout).as_action();
  }
  return acc;
}

}  // namespace multiequi
