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

// Textual group and action specifications.
//
//   cyclic:N        Z_N, regular action on N points
//   klein           Z_2 x Z_2, regular action on 4 points
//   rot90:S         Z_4 rotating an S x S grid
//   flip:S          Z_2 mirroring an S x S grid left to right
//   trivial:D       trivial group on D points
//   swap:D:I:J      Z_2 exchanging coordinates I and J of R^D
//   torus:AxB..:K   Z_(extent K) shifting axis K of a periodic grid
//
// `dims --group` additionally takes an action kind: "regular", "grid"
// (rot90/flip only) or "trivial:D".

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "multiequi/group.hpp"

namespace multiequi::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PermAction parse_action_spec(std::string_view spec);

PermAction parse_group_action(std::string_view group, std::string_view action);

std::vector<std::string> split_list(std::string_view text, char sep = ',');

std::vector<Index> parse_sizes(std::string_view text);

}  // namespace multiequi::cli
