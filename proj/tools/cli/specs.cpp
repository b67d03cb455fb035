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

#include "cli/specs.hpp"

#include <charconv>

namespace multiequi::cli {
namespace {

Index parse_index(std::string_view text, std::string_view what) {
  Index value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError("expected a non-negative integer for " + std::string(what) + ", got '" +
                     std::string(text) + "'");
  }
  return value;
}

Index parse_positive(std::string_view text, std::string_view what) {
  const Index v = parse_index(text, what);
  if (v == 0) throw UsageError(std::string(what) + " must be positive");
  return v;
}

// Wraps construction errors from the core library as usage errors.
template <class F>
PermAction guarded(std::string_view spec, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError("invalid spec '" + std::string(spec) + "': " + e.what());
  }
}

GroupPtr abstract_group(const std::vector<std::string>& parts, std::string_view spec) {
  const auto& family = parts[0];
  if (family == "cyclic" && parts.size() == 2) return make_cyclic(parse_positive(parts[1], "N"));
  if (family == "klein" && parts.size() == 1) {
    return std::make_shared<const FiniteGroup>(
        product_group(cyclic_group(2), cyclic_group(2)));
  }
  if (family == "rot90" && parts.size() == 2) return make_cyclic(4);
  if (family == "flip" && parts.size() == 2) return make_cyclic(2);
  if (family == "trivial" && parts.size() <= 2) return make_cyclic(1);
  throw UsageError("unknown group spec '" + std::string(spec) + "'");
}

}  // namespace

std::vector<std::string> split_list(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<Index> parse_sizes(std::string_view text) {
  std::vector<Index> sizes;
  for (const auto& s : split_list(text)) sizes.push_back(parse_positive(s, "size"));
  return sizes;
}

PermAction parse_action_spec(std::string_view spec) {
  const auto parts = split_list(spec, ':');
  const auto& family = parts[0];
  return guarded(spec, [&]() -> PermAction {
    if (family == "cyclic" && parts.size() == 2) {
      return regular_action(make_cyclic(parse_positive(parts[1], "N")));
    }
    if (family == "klein" && parts.size() == 1) {
      return regular_action(product_group(cyclic_group(2), cyclic_group(2)));
    }
    if (family == "rot90" && parts.size() == 2) {
      return grid_action(GridTransform::rot90, parse_positive(parts[1], "S"));
    }
    if (family == "flip" && parts.size() == 2) {
      return grid_action(GridTransform::flip, parse_positive(parts[1], "S"));
    }
    if (family == "trivial" && parts.size() == 2) {
      return trivial_action(parse_positive(parts[1], "D"));
    }
    if (family == "swap" && parts.size() == 4) {
      return swap_action(parse_positive(parts[1], "D"), parse_index(parts[2], "I"),
                         parse_index(parts[3], "J"));
    }
    if (family == "torus" && parts.size() == 3) {
      std::vector<Index> extents;
      for (const auto& e : split_list(parts[1], 'x')) {
        extents.push_back(parse_positive(e, "extent"));
      }
      return torus_shift_action(extents, parse_index(parts[2], "axis"));
    }
    throw UsageError("unknown action spec '" + std::string(spec) + "'");
  });
}

PermAction parse_group_action(std::string_view group, std::string_view action) {
  const auto parts = split_list(group, ':');
  const bool grid = parts[0] == "rot90" || parts[0] == "flip";
  if (action == "grid" || (action.empty() && grid)) {
    if (!grid) throw UsageError("action 'grid' needs a rot90 or flip group");
    return parse_action_spec(group);
  }
  const GroupPtr g = abstract_group(parts, group);
  if (action.empty() || action == "regular") {
    return guarded(group, [&] { return regular_action(g); });
  }
  const auto aparts = split_list(action, ':');
  if (aparts[0] == "trivial" && aparts.size() == 2) {
    const Index d = parse_positive(aparts[1], "D");
    return guarded(action, [&] { return trivial_action(g, d); });
  }
  throw UsageError("unknown action kind '" + std::string(action) + "'");
}

}  // namespace multiequi::cli
