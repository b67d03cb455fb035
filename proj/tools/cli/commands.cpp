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

#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <numeric>

#include "cli/app.hpp"
#include "cli/specs.hpp"
#include "multiequi/equi_linear.hpp"
#include "multiequi/scan.hpp"
#include "multiequi/symmetrize.hpp"
#include "multiequi/toy_models.hpp"

namespace multiequi::cli {
namespace {

constexpr double kWrapperTol = 1e-9;
constexpr double kSymmetryTol = 1e-12;
constexpr Index kHidden = 8;
constexpr std::size_t kLeftRightCommands = 20910;

using Transform = std::function<Vector(const Vector&)>;

Json header(const char* command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

std::vector<PermAction> parse_actions(const std::string& list) {
  std::vector<PermAction> out;
  for (const auto& spec : split_list(list)) out.push_back(parse_action_spec(spec));
  return out;
}

std::pair<PermAction, PermAction> parse_pair(const std::string& list, const char* flag) {
  auto actions = parse_actions(list);
  if (actions.size() != 2) {
    throw UsageError(std::string(flag) + " takes exactly two action specs, got '" + list + "'");
  }
  return {actions[0], actions[1]};
}

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool is_trivial(const PermAction& a) {
  for (Index g = 0; g < a.order(); ++g) {
    if (!a.perm(g).is_identity()) return false;
  }
  return true;
}

std::vector<Vector> probes(std::uint64_t seed, Index count, Index dim) {
  std::vector<Vector> xs;
  for (Index t = 0; t < count; ++t) xs.push_back(toy::seeded_vector(seed, 1000 + t, dim));
  return xs;
}

// Max over probes and transforms of |f(T_in x) - T_out f(x)|.
double violation(const BlackBoxModel& f, const std::vector<std::pair<Transform, Transform>>& ts,
                 const std::vector<Vector>& xs) {
  double worst = 0.0;
  for (const auto& x : xs) {
    const Vector fx = f(x);
    for (const auto& [tin, tout] : ts) worst = std::max(worst, max_abs(f(tin(x)) - tout(fx)));
  }
  return worst;
}

std::vector<std::pair<Transform, Transform>> equivariance_transforms(const PermAction& in,
                                                                     const PermAction& out) {
  std::vector<std::pair<Transform, Transform>> ts;
  for (Index g = 0; g < in.order(); ++g) {
    ts.emplace_back([&in, g](const Vector& x) { return in.act(g, x); },
                    [&out, g](const Vector& y) { return out.act(g, y); });
  }
  return ts;
}

Json check_row(const std::string& wrapper, const std::string& property, double value,
               double tolerance, bool expect_hold) {
  const bool holds = expect_hold ? value <= tolerance : value > tolerance;
  Json row;
  row["wrapper"] = wrapper;
  row["property"] = property;
  row["violation"] = value;
  row["tolerance"] = tolerance;
  row["expect"] = expect_hold ? "hold" : "break";
  row["pass"] = holds;
  return row;
}

Json calls_json(std::uint64_t observed, std::uint64_t expected) {
  Json j;
  j["observed"] = observed;
  j["expected"] = expected;
  j["pass"] = observed == expected;
  return j;
}

Outcome finish(Json report, bool ok) {
  report["status"] = ok ? "PASS" : "FAIL";
  return {std::move(report), ok ? kExitPass : kExitFail};
}

bool all_pass(const Json& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const Json& r) { return r["pass"].get<bool>(); });
}

Outcome check_group(const CheckOptions& opts) {
  const PermAction a = parse_group_action(opts.group, opts.action);
  const Index d = a.dim();
  const auto xs = probes(opts.seed, opts.trials, d);
  const auto m = toy::mlp(opts.seed, {d, kHidden, d}, toy::Activation::tanh);
  const auto eq = equitune(m, a, a);
  const auto is = is_wrapper(m, a, a);

  Json rows = Json::array();
  rows.push_back(check_row("equitune", "equivariance",
                           violation(eq, equivariance_transforms(a, a), xs), kWrapperTol, true));
  const Transform same = [](const Vector& y) { return y; };
  std::vector<std::pair<Transform, Transform>> inv;
  for (Index g = 0; g < a.order(); ++g) {
    inv.emplace_back([&a, g](const Vector& x) { return a.act(g, x); }, same);
  }
  rows.push_back(check_row("is_wrapper", "input_invariance", violation(is, inv, xs), 0.0, true));
  double sym = 0.0;
  for (const auto& x : xs) {
    const Vector y = is(x);
    for (Index g = 0; g < a.order(); ++g) sym = std::max(sym, max_abs(a.act(g, y) - y));
  }
  rows.push_back(check_row("is_wrapper", "output_symmetry", sym, kSymmetryTol, true));
  if (!is_trivial(a)) {
    rows.push_back(check_row("unwrapped", "equivariance",
                             violation(m, equivariance_transforms(a, a), xs), kWrapperTol, false));
  }

  m.reset_calls();
  eq(xs.front());
  const Json calls = calls_json(m.calls(), a.order());

  Json report = header("check");
  report["suite"] = "group";
  report["group"] = opts.group;
  report["group_order"] = a.order();
  report["dim"] = d;
  report["seed"] = opts.seed;
  report["trials"] = opts.trials;
  report["calls"] = calls;
  report["checks"] = rows;
  return finish(std::move(report), all_pass(rows) && calls["pass"].get<bool>());
}

Outcome check_product(const CheckOptions& opts) {
  const auto actions = parse_actions(opts.product);
  ProductMode mode;
  if (opts.mode == "equivariant") {
    mode = ProductMode::equivariant;
  } else if (opts.mode == "invariant") {
    mode = ProductMode::invariant;
  } else {
    throw UsageError("--mode must be 'equivariant' or 'invariant'");
  }
  const Index d = actions.front().dim();
  for (const auto& a : actions) {
    if (a.dim() != d) throw UsageError("--product factors must act on the same space");
  }
  const Index out = mode == ProductMode::equivariant ? d : 3;
  std::vector<BlackBoxModel> models;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    models.push_back(toy::mlp(opts.seed + i, {d, kHidden, out}, toy::Activation::tanh));
  }
  const auto w = product_equi_wrapper_n(models, actions, mode);

  // Every combined transform a_1(g_1) ... a_N(g_N).
  std::vector<Permutation> combined{Permutation::identity(d)};
  for (const auto& a : actions) {
    std::vector<Permutation> next;
    for (const auto& p : combined) {
      for (Index g = 0; g < a.order(); ++g) next.push_back(p * a.perm(g));
    }
    combined = std::move(next);
  }
  std::vector<std::pair<Transform, Transform>> ts;
  for (const auto& p : combined) {
    const Transform tin = [&p](const Vector& x) { return p.apply(x); };
    if (mode == ProductMode::equivariant) {
      ts.emplace_back(tin, tin);
    } else {
      ts.emplace_back(tin, [](const Vector& y) { return y; });
    }
  }
  const auto xs = probes(opts.seed, opts.trials, d);
  const char* property = mode == ProductMode::equivariant ? "equivariance" : "invariance";
  Json rows = Json::array();
  rows.push_back(
      check_row("product_equi_wrapper", property, violation(w, ts, xs), kWrapperTol, true));
  const bool trivial = std::all_of(actions.begin(), actions.end(),
                                   [](const PermAction& a) { return is_trivial(a); });
  if (!trivial) {
    rows.push_back(check_row("unwrapped", property, violation(models.front(), ts, xs), kWrapperTol,
                             false));
  }

  std::uint64_t before = 0;
  for (const auto& m : models) before += m.calls();
  w(xs.front());
  std::uint64_t after = 0;
  for (const auto& m : models) after += m.calls();
  Index sum = 0;
  for (const auto& a : actions) sum += a.order();

  Json report = header("check");
  report["suite"] = "product";
  report["mode"] = opts.mode;
  report["factors"] = split_list(opts.product);
  report["product_order"] = combined.size();
  report["dim"] = d;
  report["seed"] = opts.seed;
  report["trials"] = opts.trials;
  report["calls"] = calls_json(after - before, sum);
  report["checks"] = rows;
  return finish(std::move(report), all_pass(rows) && report["calls"]["pass"].get<bool>());
}

Outcome check_multi(const CheckOptions& opts) {
  const auto [a1, a2] = parse_pair(opts.multi, "--multi");
  const Index d1 = a1.dim();
  const Index d2 = a2.dim();
  const auto act = toy::Activation::tanh;
  MultiInputModels models{
      {toy::mlp(opts.seed, {d1, kHidden, d1}, act),
       toy::mlp(opts.seed + 1, {d2, kHidden, d2}, act)},
      {{std::nullopt, toy::mlp(opts.seed + 2, {d1, kHidden, d2}, act)},
       {toy::mlp(opts.seed + 3, {d2, kHidden, d1}, act), std::nullopt}}};
  const ChannelActions acts[] = {{a1, a1}, {a2, a2}};
  const auto w = multi_input_wrapper(models, acts);
  const PermAction joint = ProductAction(a1, a2, ProductLayout::block_diagonal).as_action();
  const auto unwrapped = toy::mlp(opts.seed, {d1 + d2, kHidden, d1 + d2}, act);
  const auto xs = probes(opts.seed, opts.trials, d1 + d2);

  Json rows = Json::array();
  rows.push_back(check_row("multi_input_wrapper", "equivariance",
                           violation(w, equivariance_transforms(joint, joint), xs), kWrapperTol,
                           true));
  if (!is_trivial(joint)) {
    rows.push_back(check_row("unwrapped", "equivariance",
                             violation(unwrapped, equivariance_transforms(joint, joint), xs),
                             kWrapperTol, false));
  }

  Json report = header("check");
  report["suite"] = "multi";
  report["factors"] = split_list(opts.multi);
  report["product_order"] = joint.order();
  report["dim"] = joint.dim();
  report["seed"] = opts.seed;
  report["trials"] = opts.trials;
  report["checks"] = rows;
  return finish(std::move(report), all_pass(rows));
}

}  // namespace

Outcome cmd_dims(const DimsOptions& opts) {
  const int chosen = !opts.group.empty() + !opts.is_pair.empty() + !opts.multi_pair.empty();
  if (chosen != 1) throw UsageError("dims needs exactly one of --group, --is, --multi");

  Json report = header("dims");
  EquiSpaceReport r;
  if (!opts.group.empty()) {
    const PermAction a = parse_group_action(opts.group, opts.action);
    report["kind"] = "equivariant";
    report["spec"] = opts.group + (opts.action.empty() ? "" : "/" + opts.action);
    report["group_order"] = a.order();
    report["dim"] = a.dim();
    r = equi_report(a);
  } else if (!opts.is_pair.empty()) {
    const auto [in, out] = parse_pair(opts.is_pair, "--is");
    report["kind"] = "invariant_symmetric";
    report["spec"] = opts.is_pair;
    r = is_report(in, out);
  } else {
    const auto [a1, a2] = parse_pair(opts.multi_pair, "--multi");
    report["kind"] = "multi";
    report["spec"] = opts.multi_pair;
    r = multi_equi_report(a1, a2);
  }
  report["formula"] = r.formula_dim;
  report["oracle"] = r.nullspace_dim;
  report["match"] = r.match();
  report["status"] = r.match() ? "MATCH" : "MISMATCH";
  return {std::move(report), r.match() ? kExitPass : kExitFail};
}

Outcome cmd_check(const CheckOptions& opts) {
  const int chosen = !opts.group.empty() + !opts.product.empty() + !opts.multi.empty();
  if (chosen != 1) throw UsageError("check needs exactly one of --group, --product, --multi");
  if (opts.trials == 0) throw UsageError("--trials must be positive");
  if (!opts.group.empty()) return check_group(opts);
  if (!opts.multi.empty()) return check_multi(opts);
  try {
    return check_product(opts);
  } catch (const NonCommutativeActions& e) {
    Json report = header("check");
    report["suite"] = "product";
    report["mode"] = opts.mode;
    report["factors"] = split_list(opts.product);
    report["error"] = "NonCommutativeActions";
    report["detail"] = e.what();
    report["status"] = "NONCOMMUTATIVE";
    return {std::move(report), kExitNonCommutative};
  }
}

Outcome cmd_bench(const BenchOptions& opts) {
  if (opts.sizes.empty()) throw UsageError("--sizes needs at least one group size");
  if (opts.repeat == 0) throw UsageError("--repeat must be positive");
  std::vector<PermAction> actions;
  for (Index k = 0; k < opts.sizes.size(); ++k) {
    actions.push_back(torus_shift_action(opts.sizes, k));
  }
  const Index d = actions.front().dim();
  std::vector<BlackBoxModel> models;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    models.push_back(toy::mlp(opts.seed + i, {d, opts.hidden, d}, toy::Activation::tanh));
  }
  const auto wrapper = product_equi_wrapper_n(models, actions, ProductMode::equivariant);
  const auto reference = product_group_equitune(models.front(), actions);
  const auto xs = probes(opts.seed, opts.repeat, d);

  auto time_calls = [&](const BlackBoxModel& f) {
    for (const auto& m : models) m.reset_calls();
    const auto start = std::chrono::steady_clock::now();
    for (const auto& x : xs) f(x);
    const auto stop = std::chrono::steady_clock::now();
    std::uint64_t calls = 0;
    for (const auto& m : models) calls += m.calls();
    const double us = std::chrono::duration<double, std::micro>(stop - start).count();
    return std::pair{calls / opts.repeat, us / static_cast<double>(opts.repeat)};
  };
  const auto [product_calls, product_us] = time_calls(wrapper);
  const auto [reference_calls, reference_us] = time_calls(reference);

  const Index sum = std::accumulate(opts.sizes.begin(), opts.sizes.end(), Index{0});
  const Index prod = std::accumulate(opts.sizes.begin(), opts.sizes.end(), Index{1},
                                     std::multiplies<>());
  const bool all_ge2 = std::all_of(opts.sizes.begin(), opts.sizes.end(),
                                   [](Index s) { return s >= 2; });
  const bool some_gt2 = std::any_of(opts.sizes.begin(), opts.sizes.end(),
                                    [](Index s) { return s > 2; });
  const bool strict = opts.sizes.size() >= 2 && all_ge2 && (some_gt2 || opts.sizes.size() > 2);
  const bool ok = product_calls == sum && reference_calls == prod && (!strict || sum < prod);

  Json report = header("bench");
  report["sizes"] = opts.sizes;
  report["dim"] = d;
  report["seed"] = opts.seed;
  report["repeat"] = opts.repeat;
  report["product_calls"] = product_calls;
  report["reference_calls"] = reference_calls;
  report["expected_product_calls"] = sum;
  report["expected_reference_calls"] = prod;
  report["strict_required"] = strict;
  report["product_us_per_eval"] = product_us;
  report["reference_us_per_eval"] = reference_us;
  return finish(std::move(report), ok);
}

Outcome cmd_scan_gen(const ScanGenOptions& opts) {
  namespace fs = std::filesystem;
  if (opts.out.empty()) throw UsageError("scan-gen needs --out DIR");
  const auto corpus = scan::enumerate_commands();
  const scan::VocabSwap swaps[] = {scan::VocabSwap::jump_walk(), scan::VocabSwap::left_right(),
                                   scan::VocabSwap::up_down()};
  const auto eq = scan::verify_semantic_equivariance(swaps, corpus);
  const std::size_t left_right = scan::enumerate_commands(scan::kLeftRight).size();

  Json manifest = header("scan-gen");
  manifest["total_commands"] = corpus.size();
  manifest["group_order"] = eq.group_order;
  manifest["equivariance_violations"] = eq.violations;
  manifest["left_right_commands"] = left_right;
  manifest["left_right_expected"] = kLeftRightCommands;

  if (!eq.ok() || left_right != kLeftRightCommands) {
    manifest["examples"] = eq.examples;
    manifest["status"] = "FAIL";
    return {std::move(manifest), kExitFail};
  }

  fs::create_directories(opts.out);
  Json files = Json::array();
  for (const auto& ds : scan::make_splits(corpus)) {
    const std::string file = std::string(scan::name(ds.split)) + ".txt";
    scan::write_dataset(ds.examples, opts.out / file);
    Json entry;
    entry["split"] = scan::name(ds.split);
    entry["file"] = file;
    entry["examples"] = ds.examples.size();
    files.push_back(entry);
  }
  manifest["files"] = files;
  manifest["status"] = "PASS";

  const fs::path path = opts.out / "manifest.json";
  std::ofstream os(path, std::ios::binary);
  os << manifest.dump(2) << '\n';
  if (!os) throw Error("failed to write " + path.string());
  return {std::move(manifest), kExitPass};
}

}  // namespace multiequi::cli
