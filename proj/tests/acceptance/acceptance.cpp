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

// Acceptance driver: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "multiequi/multiequi.hpp"
#include "oracles.hpp"

namespace {

using namespace multiequi;
namespace fs = std::filesystem;

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Named {
  std::string name;
  PermAction action;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

std::vector<Vector> probes(Index dim, Index count, std::uint64_t seed) {
  std::vector<Vector> xs;
  for (Index t = 0; t < count; ++t) xs.push_back(toy::seeded_vector(seed, t + 1, dim));
  return xs;
}

double equivariance_gap(const BlackBoxModel& f, const PermAction& in, const PermAction& out,
                        const std::vector<Vector>& xs) {
  double worst = 0.0;
  for (const auto& x : xs) {
    const Vector fx = f(x);
    for (Index g = 0; g < in.order(); ++g) {
      worst = std::max(worst, max_abs(f(in.act(g, x)) - out.act(g, fx)));
    }
  }
  return worst;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<Named> battery() {
  const Index torus[] = {3, 2};
  return {
      {"trivial(3)", trivial_action(3)},
      {"Z2 regular", regular_action(make_cyclic(2))},
      {"Z3 regular", regular_action(make_cyclic(3))},
      {"Z4 regular", regular_action(make_cyclic(4))},
      {"rot90 2x2", grid_action(GridTransform::rot90, 2)},
      {"rot90 3x3", grid_action(GridTransform::rot90, 3)},
      {"flip 2x2", grid_action(GridTransform::flip, 2)},
      {"flip 3x3", grid_action(GridTransform::flip, 3)},
      {"Z2xZ2 regular", regular_action(product_group(cyclic_group(2), cyclic_group(2)))},
      {"Z2xZ3 regular", regular_action(product_group(cyclic_group(2), cyclic_group(3)))},
      {"rot90 2x2 (+) flip 2x2",
       ProductAction(grid_action(GridTransform::rot90, 2), grid_action(GridTransform::flip, 2),
                     ProductLayout::block_diagonal)
           .as_action()},
      {"swap(4;0,2)", swap_action(4, 0, 2)},
      {"torus 3x2 axis 0", torus_shift_action(torus, 0)},
  };
}

Verdict criterion1() {
  const auto start = std::chrono::steady_clock::now();
  const auto b = battery();
  Verdict v;
  int checked = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& a = b[i].action;
    const auto r = equi_report(a);
    const Index orbit = testing::pair_orbit_count(a, a);
    if (r.formula_dim != r.nullspace_dim || r.formula_dim != orbit) {
      v.pass = false;
      v.detail += " equi mismatch on " + b[i].name + ";";
    }
    const auto& out = b[(i + 1) % b.size()].action;
    const auto s = is_report(a, out);
    if (s.formula_dim != s.nullspace_dim ||
        s.formula_dim != testing::is_pair_orbit_count(a, out)) {
      v.pass = false;
      v.detail += " IS mismatch on " + b[i].name + " -> " + b[(i + 1) % b.size()].name + ";";
    }
    checked += 2;
  }
  const double t = seconds_since(start);
  if (t >= 10.0) v.pass = false;
  v.detail = std::to_string(b.size()) + " configurations, " + std::to_string(checked) +
             " equi/IS dimensions equal to the SVD oracle and orbit count, " +
             fmt("%.2f s (< 10 s)", t) + v.detail;
  return v;
}

Verdict criterion2() {
  struct Case {
    PermAction a1;
    PermAction a2;
    Index expected;  // 0 means: compare with the orbit count only
  };
  const std::vector<Case> cases = {
      {regular_action(make_cyclic(2)), regular_action(make_cyclic(2)), 6},
      {regular_action(make_cyclic(4)), regular_action(make_cyclic(2)), 8},
      {trivial_action(2), trivial_action(3), 25},
      {grid_action(GridTransform::rot90, 2), grid_action(GridTransform::flip, 2), 0},
      {regular_action(make_cyclic(3)), grid_action(GridTransform::rot90, 3), 0},
      {regular_action(product_group(cyclic_group(2), cyclic_group(2))), swap_action(3, 0, 1), 0},
      {grid_action(GridTransform::flip, 3), regular_action(make_cyclic(3)), 0},
  };
  Verdict v;
  std::string dims;
  for (const auto& c : cases) {
    const auto r = multi_equi_report(c.a1, c.a2);
    const Index orbit = testing::multi_pair_orbit_count(c.a1, c.a2);
    const bool ok = r.formula_dim == r.nullspace_dim && r.formula_dim == orbit &&
                    (c.expected == 0 || r.formula_dim == c.expected);
    v.pass = v.pass && ok;
    dims += (dims.empty() ? "" : ",") + std::to_string(r.nullspace_dim) + (ok ? "" : "!");
  }
  v.detail = std::to_string(cases.size()) + " pairs, oracle dims [" + dims +
             "] equal the formula; (Z2,Z2) -> 6";
  return v;
}

Verdict criterion3() {
  using toy::Activation;
  double equi = 0.0;
  double multi = 0.0;
  double product = 0.0;
  double is_in = 0.0;
  double is_out = 0.0;
  bool control_failed_everywhere = true;
  int sweeps = 0;

  for (const auto& [name, a] : battery()) {
    const auto m = toy::mlp(sweeps + 1, {a.dim(), 10, a.dim()}, Activation::tanh);
    const auto xs = probes(a.dim(), 6, sweeps + 100);
    equi = std::max(equi, equivariance_gap(equitune(m, a, a), a, a, xs));
    const auto is = is_wrapper(m, a, a);
    for (const auto& x : xs) {
      const Vector y = is(x);
      for (Index g = 0; g < a.order(); ++g) {
        is_in = std::max(is_in, max_abs(is(a.act(g, x)) - y));
        is_out = std::max(is_out, max_abs(a.act(g, y) - y));
      }
    }
    if (name != "trivial(3)" && equivariance_gap(m, a, a, xs) <= 1e-9) {
      control_failed_everywhere = false;
    }
    ++sweeps;
  }

  const std::vector<std::pair<PermAction, PermAction>> pairs = {
      {regular_action(make_cyclic(2)), regular_action(make_cyclic(4))},
      {grid_action(GridTransform::rot90, 2), grid_action(GridTransform::flip, 3)},
      {regular_action(make_cyclic(3)), regular_action(make_cyclic(2))}};
  for (const auto& [a1, a2] : pairs) {
    const Index d1 = a1.dim();
    const Index d2 = a2.dim();
    MultiInputModels models{
        {toy::mlp(1, {d1, 8, d1}, Activation::tanh), toy::mlp(2, {d2, 8, d2}, Activation::relu)},
        {{std::nullopt, toy::mlp(3, {d1, 8, d2}, Activation::tanh)},
         {toy::mlp(4, {d2, 8, d1}, Activation::square), std::nullopt}}};
    const ChannelActions acts[] = {{a1, a1}, {a2, a2}};
    const auto joint = ProductAction(a1, a2, ProductLayout::block_diagonal).as_action();
    multi = std::max(multi, equivariance_gap(multi_input_wrapper(models, acts), joint, joint,
                                             probes(d1 + d2, 6, 7)));
    const auto control = toy::mlp(5, {d1 + d2, 8, d1 + d2}, Activation::tanh);
    if (equivariance_gap(control, joint, joint, probes(d1 + d2, 6, 7)) <= 1e-9) {
      control_failed_everywhere = false;
    }
    ++sweeps;
  }

  const Index t42[] = {4, 2};
  const Index t33[] = {3, 3};
  const std::vector<std::vector<PermAction>> products = {
      {torus_shift_action(t42, 0), torus_shift_action(t42, 1)},
      {torus_shift_action(t33, 0), torus_shift_action(t33, 1)},
      {swap_action(6, 0, 1), swap_action(6, 2, 3), swap_action(6, 4, 5)}};
  for (const auto& actions : products) {
    const Index d = actions.front().dim();
    std::vector<BlackBoxModel> models;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      models.push_back(toy::mlp(20 + i, {d, 10, d}, Activation::tanh));
    }
    const auto w = product_equi_wrapper_n(models, actions, ProductMode::equivariant);
    const auto joint = product_action(actions, ProductLayout::same_space);
    product = std::max(product, equivariance_gap(w, joint, joint, probes(d, 6, 9)));
    if (equivariance_gap(models.front(), joint, joint, probes(d, 6, 9)) <= 1e-9) {
      control_failed_everywhere = false;
    }
    ++sweeps;
  }

  Verdict v;
  v.pass = equi < 1e-9 && multi < 1e-9 && product < 1e-9 && is_in == 0.0 && is_out < 1e-12 &&
           control_failed_everywhere;
  v.detail = std::to_string(sweeps) + " exhaustive sweeps; max violation equitune " +
             fmt("%.1e", equi) + ", multi_input " + fmt("%.1e", multi) + ", product " +
             fmt("%.1e", product) + " (< 1e-9); IS input " + fmt("%.1e", is_in) +
             " (exact), output " + fmt("%.1e", is_out) + " (< 1e-12); unwrapped control " +
             (control_failed_everywhere ? "fails as required" : "DID NOT FAIL");
  return v;
}

Verdict criterion4() {
  const std::vector<std::pair<PermAction, PermAction>> pairs = {
      {regular_action(make_cyclic(2)), regular_action(make_cyclic(2))},
      {regular_action(make_cyclic(3)), grid_action(GridTransform::rot90, 2)},
      {grid_action(GridTransform::flip, 3), regular_action(make_cyclic(4))},
      {regular_action(make_cyclic(4)), trivial_action(3)}};
  double proj_gap = 0.0;
  double alt_gap = 0.0;
  std::uint64_t seed = 1;
  for (const auto& [in, out] : pairs) {
    const LinearMap l = toy::seeded_matrix(seed++, out.dim(), in.dim());
    const auto lin = toy::linear_model(l);
    const auto is = is_wrapper(lin, in, out);
    const auto alt = alt_is_wrapper(lin, in, out);
    const LinearMap p = project_invariant_symmetric(l, in, out);
    for (const auto& x : probes(in.dim(), 8, seed)) {
      proj_gap = std::max(proj_gap, max_abs(is(x) - p * x));
      alt_gap = std::max(alt_gap, max_abs(is(x) - alt(x)));
    }
  }
  const auto z2 = regular_action(make_cyclic(2));
  const auto sq = toy::elementwise_square(2);
  double square_gap = 0.0;
  std::vector<Vector> xs = {(Vector(2) << 1, 2).finished()};
  for (const auto& x : probes(2, 4, 3)) xs.push_back(x);
  for (const auto& x : xs) {
    const Vector diff = is_wrapper(sq, z2, z2)(x) - alt_is_wrapper(sq, z2, z2)(x);
    square_gap = std::max(square_gap, max_abs(diff));
  }
  Verdict v;
  v.pass = proj_gap <= 1e-12 && alt_gap <= 1e-9 && square_gap > 1e-3;
  v.detail = "is_wrapper vs projector " + fmt("%.1e", proj_gap) + " (<= 1e-12); is vs alt linear " +
             fmt("%.1e", alt_gap) + " (<= 1e-9); is vs alt on x^2 " + fmt("%.2f", square_gap) +
             " (> 1e-3)";
  return v;
}

Verdict criterion5() {
  const std::vector<std::vector<Index>> cases = {{4, 2}, {2, 2, 2}, {3, 3}, {4, 4}, {2, 3, 2}};
  Verdict v;
  std::string pairs;
  for (const auto& sizes : cases) {
    std::vector<PermAction> actions;
    for (Index k = 0; k < sizes.size(); ++k) actions.push_back(torus_shift_action(sizes, k));
    const Index d = actions.front().dim();
    std::vector<BlackBoxModel> models;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      models.push_back(toy::mlp(i, {d, 6, d}, toy::Activation::tanh));
    }
    const auto w = product_equi_wrapper_n(models, actions, ProductMode::equivariant);
    const auto ref = product_group_equitune(models.front(), actions);
    const Vector x = toy::seeded_vector(4, 4, d);
    const auto a = measure_calls(models, 0, [&] { w(x); });
    const auto b = measure_calls(models, 0, [&] { ref(x); });
    Index sum = 0;
    Index prod = 1;
    for (Index s : sizes) {
      sum += s;
      prod *= s;
    }
    const bool ok = a.observed == sum && b.observed == prod && sum < prod;
    v.pass = v.pass && ok;
    std::string label;
    for (Index s : sizes) label += (label.empty() ? "" : ",") + std::to_string(s);
    pairs += (pairs.empty() ? "" : " ") + std::string("(") + label + ")->(" +
             std::to_string(a.observed) + "," + std::to_string(b.observed) + ")" + (ok ? "" : "!");
  }
  const bool anchors = pairs.find("(4,2)->(6,8)") != std::string::npos &&
                       pairs.find("(2,2,2)->(6,8)") != std::string::npos;
  v.pass = v.pass && anchors;
  v.detail = "inner calls (sum, product) " + pairs;
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict criterion6() {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  struct Ex {
    const char* command;
    const char* actions;
  };
  const Ex examples[] = {{"jump", "JUMP"},
                         {"turn around left", "LTURN LTURN LTURN LTURN"},
                         {"jump left twice", "LTURN JUMP LTURN JUMP"}};
  int examples_ok = 0;
  for (const auto& e : examples) {
    examples_ok += scan::to_string(scan::interpret(scan::parse_command(e.command))) == e.actions;
  }
  const auto corpus = scan::enumerate_commands();
  const scan::VocabSwap swaps[] = {scan::VocabSwap::jump_walk(), scan::VocabSwap::left_right(),
                                   scan::VocabSwap::up_down()};
  const auto report = scan::verify_semantic_equivariance(swaps, corpus);
  const std::size_t fragment = scan::enumerate_commands(scan::kLeftRight).size();

  const auto base = fs::temp_directory_path() / "multiequi_acceptance_scan";
  fs::remove_all(base);
  bool reproducible = true;
  for (const char* run : {"a", "b"}) {
    fs::create_directories(base / run);
    for (const auto& ds : scan::make_splits(scan::enumerate_commands())) {
      scan::write_dataset(ds.examples, base / run / (std::string(scan::name(ds.split)) + ".txt"));
    }
  }
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    const auto twin = base / "b" / entry.path().filename();
    reproducible = reproducible && slurp(entry.path()) == slurp(twin);
    ++files;
  }
  fs::remove_all(base);
  const double t = seconds_since(start);

  v.pass = examples_ok == 3 && report.ok() && report.group_order == 8 && fragment == 20910 &&
           reproducible && files == 5 && t < 60.0;
  v.detail = std::to_string(examples_ok) + "/3 translation examples; " +
             std::to_string(report.violations) + " violations over " +
             std::to_string(report.commands_checked) + " commands x " +
             std::to_string(report.group_order) + " group elements; left/right fragment " +
             std::to_string(fragment) + "; " + std::to_string(files) + " split files " +
             (reproducible ? "byte-identical" : "DIFFER") + " across runs; " +
             fmt("%.1f s (< 60 s)", t);
  return v;
}

Verdict criterion7() {
  const auto r = grid_action(GridTransform::rot90, 4);
  const auto f = grid_action(GridTransform::flip, 4);
  const auto m1 = toy::mlp(1, {16, 8, 4}, toy::Activation::tanh);
  const auto m2 = toy::mlp(2, {16, 8, 4}, toy::Activation::relu);
  bool raised = false;
  try {
    product_equi_wrapper(toy::mlp(1, {16, 16}, toy::Activation::tanh),
                         toy::mlp(2, {16, 16}, toy::Activation::tanh), r, f,
                         ProductMode::equivariant);
  } catch (const NonCommutativeActions&) {
    raised = true;
  }
  const auto w = product_equi_wrapper(m1, m2, r, f, ProductMode::invariant);
  double worst = 0.0;
  int transforms = 0;
  for (const auto& x : probes(16, 6, 11)) {
    const Vector y = w(x);
    transforms = 0;
    for (Index g1 = 0; g1 < r.order(); ++g1) {
      for (Index g2 = 0; g2 < f.order(); ++g2) {
        worst = std::max(worst, max_abs(w(r.act(g1, f.act(g2, x))) - y));
        ++transforms;
      }
    }
  }
  Verdict v;
  v.pass = raised && worst <= 1e-9 && transforms == 8;
  v.detail = std::string("equivariant mode (rot90, flip) ") +
             (raised ? "raises NonCommutativeActions" : "DID NOT RAISE") +
             "; invariant mode max change over " + std::to_string(transforms) +
             " combined transforms " + fmt("%.1e", worst);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"dimension formulas vs null-space oracle", criterion1},
      {"two-group characterization", criterion2},
      {"wrapper equivariance", criterion3},
      {"linear-regime equivalences", criterion4},
      {"call accounting", criterion5},
      {"SCAN-II semantics", criterion6},
      {"noncommutativity guard", criterion7},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [title, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("[%s] criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", index++, title,
                v.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
