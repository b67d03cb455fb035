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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cli/report.hpp"
#include "multiequi/types.hpp"

namespace multiequi::cli {

struct Outcome {
  Json report;
  int exit_code = 0;
};

struct DimsOptions {
  std::string group;
  std::string action;
  std::string is_pair;
  std::string multi_pair;
};

struct CheckOptions {
  std::string group;
  std::string action;
  std::string product;
  std::string mode = "equivariant";
  std::string multi;
  std::uint64_t seed = 0;
  Index trials = 8;
};

struct BenchOptions {
  std::vector<Index> sizes;
  std::uint64_t seed = 0;
  Index repeat = 20;
  Index hidden = 16;
};

struct ScanGenOptions {
  std::filesystem::path out;
};

Outcome cmd_dims(const DimsOptions& opts);
Outcome cmd_check(const CheckOptions& opts);
Outcome cmd_bench(const BenchOptions& opts);
Outcome cmd_scan_gen(const ScanGenOptions& opts);

}  // namespace multiequi::cli
