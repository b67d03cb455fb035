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

// Model-agnostic symmetrization wrappers.
//
// Every wrapper returns a new BlackBoxModel whose evaluation calls the inner
// model(s) a fixed number of times:
//
//   equitune               |G|          calls
//   is_wrapper             |G_in|       calls
//   alt_is_wrapper         1            call
//   multi_input_wrapper    sum_j |G_j| + sum_{i != j} |G_i|
//   product_equi_wrapper   sum_i |G_i|  calls (vs prod_i |G_i| for equitune
//                                              over the product group)
//
// Group averages are accumulated per output coordinate in ascending value
// order. The sum is therefore a function of the multiset of terms only, which
// makes invariance and equivariance hold bit-for-bit on permutation actions
// and keeps results reproducible run to run.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "multiequi/group.hpp"
#include "multiequi/model.hpp"
#include "multiequi/types.hpp"

namespace multiequi {

// (1/|G|) sum_g P_out(g)^-1 m(P_in(g) x). a_in and a_out must share a group
// (GroupMismatch) and match m's dims (DimensionMismatch).
BlackBoxModel equitune(const BlackBoxModel& m, const PermAction& a_in,
                       const PermAction& a_out);

// (1/(|G_in||G_out|)) sum_g2 P_out(g2) sum_g1 m(P_in(g1) x).
// Invariant to a_in's group, fixed by a_out's group.
BlackBoxModel is_wrapper(const BlackBoxModel& m, const PermAction& a_in,
                         const PermAction& a_out);

// (1/(|G_in||G_out|)) sum_g2 P_out(g2) m(sum_g1 P_in(g1) x).
// Agrees with is_wrapper for linear m only.
BlackBoxModel alt_is_wrapper(const BlackBoxModel& m, const PermAction& a_in,
                             const PermAction& a_out);

// Models for the N-input design. diagonal[i] maps X_i -> Y_i. cross[i][j]
// (i != j) maps X_i -> Y_j; diagonal entries of `cross` are ignored.
struct MultiInputModels {
  std::vector<BlackBoxModel> diagonal;
  std::vector<std::vector<std::optional<BlackBoxModel>>> cross;
};

// Group G_i acting on input X_i and on output Y_i.
struct ChannelActions {
  PermAction in;
  PermAction out;
};

// Y_j = equitune(M_j)(X_j) + sum_{i != j} is_wrapper(M_ij, G_i -> G_j)(X_i).
// The returned model reads the concatenation [X_1, ..., X_N] and writes
// [Y_1, ..., Y_N]; each Y_j is G_j-equivariant in X_j and unaffected by the
// other groups. Throws Error for a missing cross model.
BlackBoxModel multi_input_wrapper(const MultiInputModels& models,
                                  std::span<const ChannelActions> actions);

// Orbit-minimum canonicalization: the lexicographically smallest element of
// {P(g) x : g in G}. Exactly invariant, and always a member of the orbit.
class Canonicalizer {
 public:
  explicit Canonicalizer(PermAction action) : action_(std::move(action)) {}

  const PermAction& action() const { return action_; }

  // Smallest element index attaining the minimum.
  Index argmin(const Vector& x) const;
  Vector operator()(const Vector& x) const;

 private:
  PermAction action_;
};

Vector canonicalize(const Canonicalizer& c, const Vector& x);

// Group mean (1/|G|) sum_g P(g) y; fixed by every element of the group.
Vector symmetrize_output(const Vector& y, const PermAction& a);

enum class ProductMode {
  // Output transforms under the product group; factor actions must commute.
  equivariant,
  // Output is invariant to the product; no commutativity needed.
  invariant,
};

// One factor G_i of a product group, with the model made G_i-equivariant.
struct ProductFactor {
  BlackBoxModel model;
  PermAction in;
  PermAction out;
};

// Efficient product-group wrapper:
//   sum_i Sym_{G\G_i}( equitune_{G_i}(M_i)( Inv_{G\G_i}(x) ) ).
//
// Inv_{G\G_i}(x) is computed from one canonical representative x0 of x's
// orbit under the whole product: with (k_1, ..., k_N) the first tuple (in
// ascending mixed-radix order) such that k_1 ... k_N x == x0, it equals
// (prod_{j != i} k_j) x. It is invariant to G\G_i and equivariant to G_i,
// exactly, whenever the minimizing tuple is unique (true for inputs with a
// trivial stabilizer, which is the generic case for a faithful product
// action). Sym_{G\G_i} is the group mean over every factor but G_i.
//
// Invariant mode evaluates (1/|G_i|) sum_g M_i(P_i(g) x0) per factor with x0
// the canonical representative under the group generated by all factors, and
// sums the branches; outputs are identical across each orbit.
//
// Throws NonCommutativeActions in equivariant mode when any pair of input or
// output factor actions fails to commute.
BlackBoxModel product_equi_wrapper_n(std::vector<ProductFactor> factors, ProductMode mode);

// Factors acting on one space with the same action on input and output.
BlackBoxModel product_equi_wrapper_n(std::span<const BlackBoxModel> models,
                                     std::span<const PermAction> actions,
                                     ProductMode mode);

BlackBoxModel product_equi_wrapper(const BlackBoxModel& m1, const BlackBoxModel& m2,
                                   const PermAction& a1, const PermAction& a2,
                                   ProductMode mode);

// Baseline: plain equitune over the full product group (prod_i |G_i| calls).
// Requires commuting actions.
BlackBoxModel product_group_equitune(const BlackBoxModel& m,
                                     std::span<const PermAction> actions);

}  // namespace multiequi
