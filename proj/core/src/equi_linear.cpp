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

#include "multiequi/equi_linear.hpp"

#include <algorithm>
#include <string>

#include <Eigen/SVD>

namespace multiequi {
namespace {

using EIndex = Eigen::Index;

Index exact_quotient(Index numerator, Index denominator, const char* what) {
  if (numerator % denominator != 0) {
    throw NonIntegralDimension(std::string(what) + ": " + std::to_string(numerator) +
                               " / " + std::to_string(denominator) +
                               " is not an integer");
  }
  return numerator / denominator;
}

std::vector<Index> fixed_point_counts(const PermAction& a) {
  std::vector<Index> out(a.order());
  for (Index g = 0; g < a.order(); ++g) out[g] = a.perm(g).fixed_points();
  return out;
}

Index total_fixed_points(const PermAction& a) {
  Index sum = 0;
  for (Index g = 0; g < a.order(); ++g) sum += a.perm(g).fixed_points();
  return sum;
}

void check_shape(const LinearMap& l, Index rows, Index cols, const char* what) {
  if (static_cast<Index>(l.rows()) != rows || static_cast<Index>(l.cols()) != cols) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(rows) +
                            "x" + std::to_string(cols) + ", got " +
                            std::to_string(l.rows()) + "x" + std::to_string(l.cols()));
  }
}

LinearMap block_diag(const LinearMap& a, const LinearMap& b) {
  LinearMap out = LinearMap::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace

Index equi_dim(const PermAction& a) { return equi_dim(a, a); }

Index equi_dim(const PermAction& a_in, const PermAction& a_out) {
  require_same_group(a_in, a_out);
  const auto fin = fixed_point_counts(a_in);
  const auto fout = fixed_point_counts(a_out);
  Index sum = 0;
  for (Index g = 0; g < a_in.order(); ++g) sum += fin[g] * fout[g];
  return exact_quotient(sum, a_in.order(), "equi_dim");
}

Index is_dim(const PermAction& a_in, const PermAction& a_out) {
  // The double sum factorizes into a product of two single sums.
  const Index sum = total_fixed_points(a_in) * total_fixed_points(a_out);
  return exact_quotient(sum, a_in.order() * a_out.order(), "is_dim");
}

Index multi_equi_dim(const PermAction& a1, const PermAction& a2) {
  return equi_dim(a1) + equi_dim(a2) + is_dim(a1, a2) + is_dim(a2, a1);
}

EquiSpaceReport nullspace_oracle(const std::vector<FixedPointConstraint>& constraints) {
  if (constraints.empty()) throw Error("nullspace_oracle: empty constraint list");
  const EIndex rows = constraints.front().left.rows();
  const EIndex cols = constraints.front().right.cols();
  for (const auto& c : constraints) {
    if (c.left.rows() != rows || c.left.cols() != rows || c.right.rows() != cols ||
        c.right.cols() != cols) {
      throw DimensionMismatch("nullspace_oracle: constraint shapes disagree");
    }
  }

  // vec is column-major: vec(L)[q * rows + p] = L(p, q), and
  // vec(A L B) = (B^T kron A) vec(L).
  const EIndex n = rows * cols;
  LinearMap stacked(n * static_cast<EIndex>(constraints.size()), n);
  for (std::size_t k = 0; k < constraints.size(); ++k) {
    const auto& a = constraints[k].left;
    const auto& b = constraints[k].right;
    auto block = stacked.middleRows(static_cast<EIndex>(k) * n, n);
    for (EIndex j = 0; j < cols; ++j) {
      for (EIndex q = 0; q < cols; ++q) {
        block.block(j * rows, q * rows, rows, rows) = b(q, j) * a;
      }
    }
    block -= LinearMap::Identity(n, n);
  }

  Eigen::JacobiSVD<LinearMap> svd(stacked);
  const Vector& sv = svd.singularValues();
  EquiSpaceReport report;
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double largest = sv.size() > 0 ? sv[0] : 0.0;
  const double cutoff = kRankTolerance * std::max(largest, 1.0);
  Index rank = 0;
  for (EIndex i = 0; i < sv.size(); ++i) rank += sv[i] >= cutoff ? 1 : 0;
  report.nullspace_dim = static_cast<Index>(n) - rank;
  return report;
}

std::vector<FixedPointConstraint> equivariance_constraints(const PermAction& a_in,
                                                           const PermAction& a_out) {
  require_same_group(a_in, a_out);
  std::vector<FixedPointConstraint> out;
  out.reserve(a_in.order());
  for (Index g = 0; g < a_in.order(); ++g) {
    // P_out(g)^-1 L P_in(g) = L, and P^-1 = P^T for permutations.
    out.push_back({perm_matrix(a_out, g).transpose(), perm_matrix(a_in, g)});
  }
  return out;
}

std::vector<FixedPointConstraint> invariant_symmetric_constraints(
    const PermAction& a_in, const PermAction& a_out) {
  std::vector<FixedPointConstraint> out;
  out.reserve(a_in.order() * a_out.order());
  for (Index g1 = 0; g1 < a_in.order(); ++g1) {
    const LinearMap p1 = perm_matrix(a_in, g1);
    for (Index g2 = 0; g2 < a_out.order(); ++g2) {
      out.push_back({perm_matrix(a_out, g2), p1});
    }
  }
  return out;
}

std::vector<FixedPointConstraint> multi_equivariance_constraints(const PermAction& a1,
                                                                 const PermAction& a2) {
  std::vector<FixedPointConstraint> out;
  out.reserve(a1.order() * a2.order());
  for (Index g1 = 0; g1 < a1.order(); ++g1) {
    const LinearMap p1 = perm_matrix(a1, g1);
    for (Index g2 = 0; g2 < a2.order(); ++g2) {
      const LinearMap p = block_diag(p1, perm_matrix(a2, g2));
      out.push_back({p.transpose(), p});
    }
  }
  return out;
}

EquiSpaceReport equi_report(const PermAction& a) {
  auto report = nullspace_oracle(equivariance_constraints(a, a));
  report.formula_dim = equi_dim(a);
  return report;
}

EquiSpaceReport is_report(const PermAction& a_in, const PermAction& a_out) {
  auto report = nullspace_oracle(invariant_symmetric_constraints(a_in, a_out));
  report.formula_dim = is_dim(a_in, a_out);
  return report;
}

EquiSpaceReport multi_equi_report(const PermAction& a1, const PermAction& a2) {
  auto report = nullspace_oracle(multi_equivariance_constraints(a1, a2));
  report.formula_dim = multi_equi_dim(a1, a2);
  return report;
}

LinearMap project_equivariant(const LinearMap& l, const PermAction& a) {
  return project_equivariant(l, a, a);
}

LinearMap project_equivariant(const LinearMap& l, const PermAction& a_in,
                              const PermAction& a_out) {
  require_same_group(a_in, a_out);
  check_shape(l, a_out.dim(), a_in.dim(), "project_equivariant");
  LinearMap acc = LinearMap::Zero(l.rows(), l.cols());
  for (Index g = 0; g < a_in.order(); ++g) {
    acc += perm_matrix(a_out, g).transpose() * l * perm_matrix(a_in, g);
  }
  return acc / static_cast<double>(a_in.order());
}

LinearMap project_invariant_symmetric(const LinearMap& l, const PermAction& a_in,
                                      const PermAction& a_out) {
  check_shape(l, a_out.dim(), a_in.dim(), "project_invariant_symmetric");
  LinearMap inner = LinearMap::Zero(l.rows(), l.cols());
  for (Index g1 = 0; g1 < a_in.order(); ++g1) inner += l * perm_matrix(a_in, g1);
  LinearMap acc = LinearMap::Zero(l.rows(), l.cols());
  for (Index g2 = 0; g2 < a_out.order(); ++g2) acc += perm_matrix(a_out, g2) * inner;
  return acc / static_cast<double>(a_in.order() * a_out.order());
}

LinearMap build_multi_linear(const LinearMap& l1, const LinearMap& l2,
                             const LinearMap& l12, const LinearMap& l21,
                             const PermAction& a1, const PermAction& a2) {
  const Index d1 = a1.dim();
  const Index d2 = a2.dim();
  check_shape(l1, d1, d1, "build_multi_linear l1");
  check_shape(l2, d2, d2, "build_multi_linear l2");
  check_shape(l12, d2, d1, "build_multi_linear l12");
  check_shape(l21, d1, d2, "build_multi_linear l21");
  const auto e1 = static_cast<EIndex>(d1);
  const auto e2 = static_cast<EIndex>(d2);
  LinearMap out(e1 + e2, e1 + e2);
  out.topLeftCorner(e1, e1) = project_equivariant(l1, a1);
  out.topRightCorner(e1, e2) = project_invariant_symmetric(l21, a2, a1);
  out.bottomLeftCorner(e2, e1) = project_invariant_symmetric(l12, a1, a2);
  out.bottomRightCorner(e2, e2) = project_equivariant(l2, a2);
  return out;
}

}  // namespace multiequi
