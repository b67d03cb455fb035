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

#include "cli/app.hpp"

#include <cstdlib>
#include <fstream>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "cli/specs.hpp"
#include "multiequi/errors.hpp"

namespace multiequi::cli {
namespace {

std::string default_format() {
  const char* env = std::getenv(kFormatEnv);
  return env != nullptr && *env != '\0' ? env : "text";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant layer dimensions, symmetrization checks and SCAN-II generation",
               "multiequi"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = default_format();
  std::string output;
  app.add_option("--format", format, std::string("Output format: text or json (default from ") +
                                         kFormatEnv + ", else text)");
  app.add_option("-o,--output", output, "Write the report to this file instead of stdout");

  DimsOptions dims;
  auto* dims_cmd = app.add_subcommand("dims", "Compare dimension formulas with the SVD oracle");
  dims_cmd->add_option("--group", dims.group, "Group spec, e.g. cyclic:4");
  dims_cmd->add_option("--action", dims.action, "Action kind: regular, grid or trivial:D");
  dims_cmd->add_option("--is", dims.is_pair, "Invariant-symmetric pair IN,OUT of action specs");
  dims_cmd->add_option("--multi", dims.multi_pair, "Two-input pair A,B of action specs");

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Run the wrapper property suite");
  check_cmd->add_option("--group", check.group, "Group spec for equitune and the IS wrapper");
  check_cmd->add_option("--action", check.action, "Action kind for --group");
  check_cmd->add_option("--product", check.product, "Comma-separated factor action specs");
  check_cmd->add_option("--mode", check.mode, "Product mode: equivariant or invariant")
      ->check(CLI::IsMember({"equivariant", "invariant"}));
  check_cmd->add_option("--multi", check.multi, "Two-input pair A,B of action specs");
  check_cmd->add_option("--seed", check.seed, "Seed for models and probes");
  check_cmd->add_option("--trials", check.trials, "Probe inputs per check");

  BenchOptions bench;
  std::string sizes;
  auto* bench_cmd = app.add_subcommand("bench", "Count inner calls: product wrapper vs equitune");
  bench_cmd->add_option("--sizes", sizes, "Comma-separated factor group sizes, e.g. 4,2")
      ->required();
  bench_cmd->add_option("--seed", bench.seed, "Seed for models and probes");
  bench_cmd->add_option("--repeat", bench.repeat, "Evaluations per timing");

  ScanGenOptions scan_gen;
  auto* scan_cmd = app.add_subcommand("scan-gen", "Write the SCAN-II splits and a manifest");
  scan_cmd->add_option("--out", scan_gen.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  Outcome outcome;
  Format fmt;
  try {
    fmt = parse_format(format);
    if (dims_cmd->parsed()) {
      outcome = cmd_dims(dims);
    } else if (check_cmd->parsed()) {
      outcome = cmd_check(check);
    } else if (bench_cmd->parsed()) {
      bench.sizes = parse_sizes(sizes);
      outcome = cmd_bench(bench);
    } else {
      outcome = cmd_scan_gen(scan_gen);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }

  const std::string text = render(outcome.report, fmt);
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream os(output, std::ios::binary);
    os << text;
    if (!os) {
      err << "error: failed to write " << output << "\n";
      return kExitFail;
    }
  }
  if (outcome.exit_code == kExitNonCommutative) {
    err << "NonCommutativeActions: " << outcome.report["detail"].get<std::string>() << "\n";
  }
  return outcome.exit_code;
}

}  // namespace multiequi::cli
