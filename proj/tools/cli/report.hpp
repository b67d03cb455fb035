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

#include <string>
#include <string_view>

#include "nlohmann/json.hpp"

namespace multiequi::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum class Format { text, json };

// Accepts "text" or "json"; throws UsageError otherwise.
Format parse_format(std::string_view name);

// Text form of a report: one aligned "key  value" line per scalar field in
// insertion order, nested objects flattened with dotted keys, and arrays of
// objects printed as tables. Carries exactly the fields of the JSON form.
std::string render_text(const Json& report);

std::string render(const Json& report, Format format);

}  // namespace multiequi::cli
