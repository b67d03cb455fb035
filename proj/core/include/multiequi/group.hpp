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

// Finite groups given by explicit Cayley tables, and their permutation
// actions on R^d.
//
// Conventions used throughout the library:
//  * Group elements are dense indices 0..order-1.
//  * Vectors are column vectors. A permutation is stored in "gather" form:
//    (p . x)[i] = x[p[i]], so p[i] is the source slot that feeds slot i.
//    Its matrix has a single 1 per row at (i, p[i]).
//  * Composition is that of the acted maps: (a * b) . x == a . (b . x).
//  * Grids are flattened row-major; the rot90 generator turns the picture
//    a quarter turn counterclockwise.

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "multiequi/errors.hpp"
#include "multiequi/types.hpp"

namespace multiequi {

class Permutation {
 public:
  Permutation() = default;
  // Throws InvalidGroup unless `source` is a bijection of {0..n-1}.
  explicit Permutation(std::vector<Index> source);

  static Permutation identity(Index n);

  Index size() const { return source_.size(); }
  Index operator[](Index i) const { return source_[i]; }
  std::span<const Index> source() const { return source_; }

  Permutation inverse() const;
  bool is_identity() const;
  Index fixed_points() const;

  Vector apply(const Vector& x) const;
  // 0/1 matrix P with P * x == apply(x).
  LinearMap matrix() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Index> source_;
};

// Abstract finite group. Immutable after construction; the axioms are
// checked exhaustively when the table is accepted.
class FiniteGroup {
 public:
  // `table[a][b]` is the index of a*b. Throws InvalidGroup on any axiom
  // violation (closure, identity, inverses, associativity).
  static FiniteGroup from_cayley(std::vector<std::vector<Index>> table,
                                 std::string name = "G");

  Index order() const { return order_; }
  Index identity() const { return identity_; }
  Index inverse(Index g) const { return inverse_[g]; }
  Index multiply(Index a, Index b) const { return cayley_[a * order_ + b]; }
  const std::string& name() const { return name_; }

  // Same order and same Cayley table. Names are labels only.
  bool same_table(const FiniteGroup& other) const;

 private:
  FiniteGroup() = default;

  Index order_ = 0;
  Index identity_ = 0;
  std::vector<Index> cayley_;
  std::vector<Index> inverse_;
  std::string name_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Z_n with a*b = (a+b) mod n. Requires n >= 1.
FiniteGroup cyclic_group(Index n);
GroupPtr make_cyclic(Index n);

// Direct product; element (i, j) has index i * |right| + j.
FiniteGroup product_group(const FiniteGroup& left, const FiniteGroup& right);

// Homomorphism from a group into the permutations of {0..dim-1}.
class PermAction {
 public:
  // Validates perms[identity] == id and perms[a*b] == perms[a] * perms[b]
  // for every pair. Throws InvalidGroup otherwise.
  PermAction(GroupPtr group, std::vector<Permutation> perms);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  Index order() const { return group_->order(); }
  Index dim() const { return dim_; }

  const Permutation& perm(Index g) const { return perms_[g]; }
  Vector act(Index g, const Vector& x) const { return perms_[g].apply(x); }

 private:
  GroupPtr group_;
  Index dim_ = 0;
  std::vector<Permutation> perms_;
};

// Every element acts as the identity on `dim` points.
PermAction trivial_action(GroupPtr group, Index dim);
// Trivial group on `dim` points.
PermAction trivial_action(Index dim);

// Left multiplication: (g . x)[h] = x[g^-1 h].
PermAction regular_action(GroupPtr group);
PermAction regular_action(const FiniteGroup& group);

enum class GridTransform { rot90, flip };

// rot90: Z_4 rotating a side x side grid. flip: Z_2 horizontal mirror.
PermAction grid_action(GridTransform kind, Index side);

// Z_2 exchanging coordinates i and j of a dim-dimensional vector.
PermAction swap_action(Index dim, Index i, Index j);

// Z_n shifting the coordinates of axis `axis` of a row-major grid with the
// given extents by one step per generator power (a discrete torus).
PermAction torus_shift_action(std::span<const Index> extents, Index axis);

// Exhaustive check that perm1(g1) * perm2(g2) == perm2(g2) * perm1(g1).
// Throws DimensionMismatch if the dims differ.
bool actions_commute(const PermAction& a1, const PermAction& a2);

// Materialized P(g).
LinearMap perm_matrix(const PermAction& a, Index g);

// Both actions must share the same group (identical Cayley tables).
void require_same_group(const PermAction& a, const PermAction& b);

enum class ProductLayout {
  // Both factors act on one space; (g1, g2) acts as P1(g1) * P2(g2).
  same_space,
  // Factors act on independent blocks of a concatenated vector.
  block_diagonal,
};

// Pair of factor actions combined into an action of the direct product.
class ProductAction {
 public:
  // Throws DimensionMismatch for same_space with unequal dims.
  ProductAction(PermAction left, PermAction right, ProductLayout layout);

  const PermAction& left() const { return left_; }
  const PermAction& right() const { return right_; }
  ProductLayout layout() const { return layout_; }
  Index dim() const;

  Permutation combined(Index g1, Index g2) const;

  // Action of product_group(left, right). In same_space layout this is a
  // homomorphism only when the factors commute; NonCommutativeActions is
  // thrown otherwise.
  PermAction as_action() const;

 private:
  PermAction left_;
  PermAction right_;
  ProductLayout layout_;
};

// N-fold versions. Element indices are mixed-radix with the first factor
// most significant, matching repeated product_group folding.
PermAction product_action(std::span<const PermAction> factors,
                          ProductLayout layout);

}  // namespace multiequi
