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

// Linear layers that respect permutation actions: closed-form dimensions of
// the equivariant and invariant-symmetric (IS) spaces, a numerical null-space
// oracle that recovers the same dimensions from the raw constraints, and the
// group-averaging projectors that build such layers from an arbitrary L.
//
// A layer L : R^cols -> R^rows is
//   * equivariant for (a_in, a_out) over one group G when
//       P_out(g) L == L P_in(g)            for all g,
//   * (G1, G2)-invariant-symmetric when
//       P_out(g2) L P_in(g1) == L          for all g1 in G1, g2 in G2,
//     i.e. the output ignores G1 on the input and is fixed by G2.

#pragma once

#include <vector>

#include "multiequi/group.hpp"
#include "multiequi/types.hpp"

namespace multiequi {

// Dimension of the equivariant space for one action on both sides:
//   (1/|G|) sum_g fix(g)^2.
// Evaluated in integer arithmetic; throws NonIntegralDimension if the sum is
// not divisible by |G|.
Index equi_dim(const PermAction& a);
// Rectangular variant: (1/|G|) sum_g fix_in(g) * fix_out(g).
Index equi_dim(const PermAction& a_in, const PermAction& a_out);

// Dimension of the IS space, a_in's group acting on the input and a_out's
// group on the output:
//   (1/(|G1||G2|)) sum_g1 sum_g2 fix_in(g1) * fix_out(g2).
Index is_dim(const PermAction& a_in, const PermAction& a_out);

// Dimension of all block maps on [X1, X2] satisfying the two-group
// equivariance constraint: E(G1) + E(G2) + IS(G1, G2) + IS(G2, G1).
Index multi_equi_dim(const PermAction& a1, const PermAction& a2);

// One fixed-point constraint A * L * B == L.
struct FixedPointConstraint {
  LinearMap left;   // A, rows x rows
  LinearMap right;  // B, cols x cols
};

struct EquiSpaceReport {
  Index formula_dim = 0;
  Index nullspace_dim = 0;
  // Singular values of the stacked constraint matrix, descending.
  std::vector<double> singular_values;

  bool match() const { return formula_dim == nullspace_dim; }
};

// Relative SVD threshold: singular values below
// kRankTolerance * max(largest, 1) count as zero.
inline constexpr double kRankTolerance = 1e-8;

// Stacks (B^T kron A - I) vec(L) = 0 for every constraint and returns the
// null-space dimension by singular-value thresholding. `formula_dim` is left
// at zero for the caller to fill. Throws Error on an empty list and
// DimensionMismatch if shapes disagree.
EquiSpaceReport nullspace_oracle(const std::vector<FixedPointConstraint>& constraints);

// Constraint systems for the three spaces above.
std::vector<FixedPointConstraint> equivariance_constraints(const PermAction& a_in,
                                                           const PermAction& a_out);
std::vector<FixedPointConstraint> invariant_symmetric_constraints(
    const PermAction& a_in, const PermAction& a_out);
// Block-diagonal action of G1 x G2 on [X1, X2], conjugation constraint.
std::vector<FixedPointConstraint> multi_equivariance_constraints(const PermAction& a1,
                                                                 const PermAction& a2);

// Formula plus oracle in one report.
EquiSpaceReport equi_report(const PermAction& a);
EquiSpaceReport is_report(const PermAction& a_in, const PermAction& a_out);
EquiSpaceReport multi_equi_report(const PermAction& a1, const PermAction& a2);

// (1/|G|) sum_g P(g)^-1 L P(g). L must be a.dim() x a.dim().
LinearMap project_equivariant(const LinearMap& l, const PermAction& a);
// Rectangular generalization; a_in and a_out must share a group.
LinearMap project_equivariant(const LinearMap& l, const PermAction& a_in,
                              const PermAction& a_out);

// (1/(|G1||G2|)) sum_g2 sum_g1 P_out(g2) L P_in(g1).
LinearMap project_invariant_symmetric(const LinearMap& l, const PermAction& a_in,
                                      const PermAction& a_out);

// Two-input layer
//   [[Eq_G1(l1),      IS_{G2,G1}(l21)],
//    [IS_{G1,G2}(l12), Eq_G2(l2)     ]]
// acting on [X1, X2]. l1: d1 x d1, l2: d2 x d2, l21: d1 x d2 (X2 -> Y1),
// l12: d2 x d1 (X1 -> Y2).
LinearMap build_multi_linear(const LinearMap& l1, const LinearMap& l2,
                             const LinearMap& l12, const LinearMap& l21,
                             const PermAction& a1, const PermAction& a2);

}  // namespace multiequi
