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

#include "multiequi/symmetrize.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace multiequi {
namespace {

bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

// Per-coordinate mean of the terms, each coordinate summed in ascending value
// order so the result depends only on the multiset of terms.
Vector ordered_mean(const std::vector<Vector>& terms, double divisor) {
  const Eigen::Index n = terms.front().size();
  Vector out(n);
  std::vector<double> column(terms.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < terms.size(); ++t) column[t] = terms[t][i];
    std::sort(column.begin(), column.end());
    double acc = 0.0;
    for (double v : column) acc += v;
    out[i] = acc / divisor;
  }
  return out;
}

void check_model_dims(const BlackBoxModel& m, Index in_dim, Index out_dim,
                      const char* what) {
  if (m.in_dim() != in_dim || m.out_dim() != out_dim) {
    throw DimensionMismatch(std::string(what) + ": model " + m.name() + " is " +
                            std::to_string(m.in_dim()) + "->" +
                            std::to_string(m.out_dim()) + ", actions need " +
                            std::to_string(in_dim) + "->" + std::to_string(out_dim));
  }
}

Vector equitune_eval(const BlackBoxModel& m, const PermAction& in, const PermAction& out,
                     const Vector& x) {
  std::vector<Vector> terms;
  terms.reserve(in.order());
  for (Index g = 0; g < in.order(); ++g) {
    terms.push_back(out.perm(g).inverse().apply(m(in.act(g, x))));
  }
  return ordered_mean(terms, static_cast<double>(in.order()));
}

Vector orbit_mean(const Vector& y, const PermAction& a) {
  std::vector<Vector> terms;
  terms.reserve(a.order());
  for (Index g = 0; g < a.order(); ++g) terms.push_back(a.act(g, y));
  return ordered_mean(terms, static_cast<double>(a.order()));
}

// Sum over the input orbit followed by the output orbit mean.
Vector is_eval(const BlackBoxModel& m, const PermAction& in, const PermAction& out,
               const Vector& x) {
  std::vector<Vector> terms;
  terms.reserve(in.order());
  for (Index g1 = 0; g1 < in.order(); ++g1) terms.push_back(m(in.act(g1, x)));
  const Vector inner = ordered_mean(terms, 1.0);
  return orbit_mean(inner, out) / static_cast<double>(in.order());
}

// All compositions of the given generators (closure under multiplication).
std::vector<Permutation> generated_group(const std::vector<Permutation>& generators,
                                         Index dim) {
  std::set<std::vector<Index>> seen;
  std::vector<Permutation> out{Permutation::identity(dim)};
  seen.emplace(out.front().source().begin(), out.front().source().end());
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& gen : generators) {
      Permutation next = out[head] * gen;
      if (seen.emplace(next.source().begin(), next.source().end()).second) {
        out.push_back(std::move(next));
      }
    }
  }
  return out;
}

class ProductWrapper {
 public:
  ProductWrapper(std::vector<ProductFactor> factors, ProductMode mode)
      : factors_(std::move(factors)), mode_(mode) {
    if (factors_.empty()) throw Error("product wrapper needs at least one factor");
    in_dim_ = factors_.front().in.dim();
    // Invariant mode ignores the output actions.
    out_dim_ = mode_ == ProductMode::equivariant ? factors_.front().out.dim()
                                                 : factors_.front().model.out_dim();
    for (const auto& f : factors_) {
      if (f.in.dim() != in_dim_) {
        throw DimensionMismatch("product wrapper: factor input actions differ in dim");
      }
      if (mode_ == ProductMode::equivariant) {
        require_same_group(f.in, f.out);
        if (f.out.dim() != out_dim_) {
          throw DimensionMismatch("product wrapper: factor output actions differ in dim");
        }
      }
      check_model_dims(f.model, in_dim_, out_dim_, "product wrapper");
    }

    if (mode_ == ProductMode::equivariant) {
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        for (std::size_t j = i + 1; j < factors_.size(); ++j) {
          if (!actions_commute(factors_[i].in, factors_[j].in) ||
              !actions_commute(factors_[i].out, factors_[j].out)) {
            throw NonCommutativeActions(
                "equivariant product symmetrization needs commuting factor actions; "
                "factors " +
                std::to_string(i) + " and " + std::to_string(j) +
                " do not commute (use invariant mode if only invariance is needed)");
          }
        }
      }
      build_tuples();
    } else {
      std::vector<Permutation> generators;
      for (const auto& f : factors_) {
        for (Index g = 0; g < f.in.order(); ++g) generators.push_back(f.in.perm(g));
      }
      closure_ = generated_group(generators, in_dim_);
    }
  }

  Index in_dim() const { return in_dim_; }
  Index out_dim() const { return out_dim_; }

  Vector operator()(const Vector& x) const {
    return mode_ == ProductMode::equivariant ? eval_equivariant(x) : eval_invariant(x);
  }

 private:
  // Mixed-radix enumeration of the product, first factor most significant.
  void build_tuples() {
    Index total = 1;
    for (const auto& f : factors_) total *= f.in.order();
    tuples_.reserve(total);
    combined_.reserve(total);
    std::vector<Index> digits(factors_.size(), 0);
    for (Index t = 0; t < total; ++t) {
      Index rest = t;
      for (std::size_t k = factors_.size(); k-- > 0;) {
        digits[k] = rest % factors_[k].in.order();
        rest /= factors_[k].in.order();
      }
      Permutation p = Permutation::identity(in_dim_);
      for (std::size_t k = 0; k < factors_.size(); ++k) p = p * factors_[k].in.perm(digits[k]);
      tuples_.push_back(digits);
      combined_.push_back(std::move(p));
    }
  }

  Vector eval_equivariant(const Vector& x) const {
    Index best = 0;
    Vector best_vec = combined_[0].apply(x);
    for (Index t = 1; t < combined_.size(); ++t) {
      Vector v = combined_[t].apply(x);
      if (lex_less(v, best_vec)) {
        best = t;
        best_vec = std::move(v);
      }
    }
    const auto& k = tuples_[best];

    Vector total = Vector::Zero(static_cast<Eigen::Index>(out_dim_));
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      Vector inv = x;
      for (std::size_t j = factors_.size(); j-- > 0;) {
        if (j != i) inv = factors_[j].in.act(k[j], inv);
      }
      Vector y = equitune_eval(factors_[i].model, factors_[i].in, factors_[i].out, inv);
      for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (j != i) y = orbit_mean(y, factors_[j].out);
      }
      total += y;
    }
    return total;
  }

  Vector eval_invariant(const Vector& x) const {
    Vector x0 = closure_.front().apply(x);
    for (std::size_t t = 1; t < closure_.size(); ++t) {
      Vector v = closure_[t].apply(x);
      if (lex_less(v, x0)) x0 = std::move(v);
    }
    Vector total = Vector::Zero(static_cast<Eigen::Index>(out_dim_));
    for (const auto& f : factors_) {
      std::vector<Vector> terms;
      terms.reserve(f.in.order());
      for (Index g = 0; g < f.in.order(); ++g) terms.push_back(f.model(f.in.act(g, x0)));
      total += ordered_mean(terms, static_cast<double>(f.in.order()));
    }
    return total;
  }

  std::vector<ProductFactor> factors_;
  ProductMode mode_;
  Index in_dim_ = 0;
  Index out_dim_ = 0;
  std::vector<std::vector<Index>> tuples_;
  std::vector<Permutation> combined_;
  std::vector<Permutation> closure_;
};

}  // namespace

BlackBoxModel equitune(const BlackBoxModel& m, const PermAction& a_in,
                       const PermAction& a_out) {
  require_same_group(a_in, a_out);
  check_model_dims(m, a_in.dim(), a_out.dim(), "equitune");
  return BlackBoxModel(
      a_in.dim(), a_out.dim(),
      [m, a_in, a_out](const Vector& x) { return equitune_eval(m, a_in, a_out, x); },
      "equitune(" + m.name() + ")");
}

BlackBoxModel is_wrapper(const BlackBoxModel& m, const PermAction& a_in,
                         const PermAction& a_out) {
  check_model_dims(m, a_in.dim(), a_out.dim(), "is_wrapper");
  return BlackBoxModel(
      a_in.dim(), a_out.dim(),
      [m, a_in, a_out](const Vector& x) { return is_eval(m, a_in, a_out, x); },
      "is(" + m.name() + ")");
}

BlackBoxModel alt_is_wrapper(const BlackBoxModel& m, const PermAction& a_in,
                             const PermAction& a_out) {
  check_model_dims(m, a_in.dim(), a_out.dim(), "alt_is_wrapper");
  return BlackBoxModel(
      a_in.dim(), a_out.dim(),
      [m, a_in, a_out](const Vector& x) {
        std::vector<Vector> terms;
        terms.reserve(a_in.order());
        for (Index g1 = 0; g1 < a_in.order(); ++g1) terms.push_back(a_in.act(g1, x));
        const Vector pooled = ordered_mean(terms, 1.0);
        return Vector(orbit_mean(m(pooled), a_out) / static_cast<double>(a_in.order()));
      },
      "alt_is(" + m.name() + ")");
}

BlackBoxModel multi_input_wrapper(const MultiInputModels& models,
                                  std::span<const ChannelActions> actions) {
  const std::size_t n = actions.size();
  if (n == 0) throw Error("multi_input_wrapper: no channels");
  if (models.diagonal.size() != n) {
    throw DimensionMismatch("multi_input_wrapper: need one diagonal model per channel");
  }
  for (std::size_t j = 0; j < n; ++j) {
    require_same_group(actions[j].in, actions[j].out);
    check_model_dims(models.diagonal[j], actions[j].in.dim(), actions[j].out.dim(),
                     "multi_input_wrapper diagonal");
  }
  std::vector<std::vector<std::optional<BlackBoxModel>>> cross(
      n, std::vector<std::optional<BlackBoxModel>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (models.cross.size() <= i || models.cross[i].size() <= j || !models.cross[i][j]) {
        throw Error("multi_input_wrapper: missing cross model from input " +
                    std::to_string(i) + " to output " + std::to_string(j));
      }
      check_model_dims(*models.cross[i][j], actions[i].in.dim(), actions[j].out.dim(),
                       "multi_input_wrapper cross");
      cross[i][j] = models.cross[i][j];
    }
  }

  std::vector<ChannelActions> acts(actions.begin(), actions.end());
  std::vector<Index> in_offset(n + 1, 0);
  std::vector<Index> out_offset(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    in_offset[i + 1] = in_offset[i] + acts[i].in.dim();
    out_offset[i + 1] = out_offset[i] + acts[i].out.dim();
  }

  auto fn = [diagonal = models.diagonal, cross = std::move(cross), acts, in_offset,
             out_offset, n](const Vector& x) {
    auto seg = [](const Vector& v, Index from, Index to) {
      return Vector(v.segment(static_cast<Eigen::Index>(from),
                              static_cast<Eigen::Index>(to - from)));
    };
    Vector y(static_cast<Eigen::Index>(out_offset[n]));
    for (std::size_t j = 0; j < n; ++j) {
      Vector yj = equitune_eval(diagonal[j], acts[j].in, acts[j].out,
                                seg(x, in_offset[j], in_offset[j + 1]));
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        yj += is_eval(*cross[i][j], acts[i].in, acts[j].out,
                      seg(x, in_offset[i], in_offset[i + 1]));
      }
      y.segment(static_cast<Eigen::Index>(out_offset[j]), yj.size()) = yj;
    }
    return y;
  };
  return BlackBoxModel(in_offset[n], out_offset[n], std::move(fn), "multi_input");
}

Index Canonicalizer::argmin(const Vector& x) const {
  Index best = 0;
  Vector best_vec = action_.act(0, x);
  for (Index g = 1; g < action_.order(); ++g) {
    Vector v = action_.act(g, x);
    if (lex_less(v, best_vec)) {
      best = g;
      best_vec = std::move(v);
    }
  }
  return best;
}

Vector Canonicalizer::operator()(const Vector& x) const {
  return action_.act(argmin(x), x);
}

Vector canonicalize(const Canonicalizer& c, const Vector& x) { return c(x); }

Vector symmetrize_output(const Vector& y, const PermAction& a) {
  if (static_cast<Index>(y.size()) != a.dim()) {
    throw DimensionMismatch("symmetrize_output: vector size " + std::to_string(y.size()) +
                            " vs action dim " + std::to_string(a.dim()));
  }
  return orbit_mean(y, a);
}

BlackBoxModel product_equi_wrapper_n(std::vector<ProductFactor> factors, ProductMode mode) {
  std::string name = "product(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    name += (i ? "," : "") + factors[i].model.name();
  }
  name += ")";
  auto wrapper = std::make_shared<const ProductWrapper>(std::move(factors), mode);
  const Index in = wrapper->in_dim();
  const Index out = wrapper->out_dim();
  return BlackBoxModel(
      in, out, [wrapper](const Vector& x) { return (*wrapper)(x); }, std::move(name));
}

BlackBoxModel product_equi_wrapper_n(std::span<const BlackBoxModel> models,
                                     std::span<const PermAction> actions,
                                     ProductMode mode) {
  if (models.size() != actions.size()) {
    throw DimensionMismatch("product wrapper: one model per factor action required");
  }
  std::vector<ProductFactor> factors;
  factors.reserve(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    factors.push_back({models[i], actions[i], actions[i]});
  }
  return product_equi_wrapper_n(std::move(factors), mode);
}

BlackBoxModel product_equi_wrapper(const BlackBoxModel& m1, const BlackBoxModel& m2,
                                   const PermAction& a1, const PermAction& a2,
                                   ProductMode mode) {
  const BlackBoxModel models[] = {m1, m2};
  const PermAction actions[] = {a1, a2};
  return product_equi_wrapper_n(models, actions, mode);
}

BlackBoxModel product_group_equitune(const BlackBoxModel& m,
                                     std::span<const PermAction> actions) {
  const PermAction full = product_action(actions, ProductLayout::same_space);
  return equitune(m, full, full);
}

}  // namespace multiequi
