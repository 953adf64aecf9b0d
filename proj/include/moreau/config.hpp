// Copyright 2026 The Moreau Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOREAU_CONFIG_HPP_
#define MOREAU_CONFIG_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "moreau/scenarios.hpp"

namespace moreau {

/// Parses a scenario document. `source` names the document in error
/// messages, which carry the line of the offending key.
ScenarioBundle parse_scenario(const std::string& text, const std::string& source = "<config>");

ScenarioBundle load_scenario_file(const std::filesystem::path& path);

/// A built-in name ("example1", "example2") or a path to a scenario file.
ScenarioBundle resolve_scenario(const std::string& name_or_path);

/// Scenario document for `bundle`. Infinite bounds are written as null.
nlohmann::json scenario_to_json(const ScenarioBundle& bundle);

/// Static set document: half_space, box or ball. A positive `dimension`
/// is enforced and supplies the default for half-spaces.
StaticSet parse_static_set(const std::string& text, const std::string& source = "<set>",
                           int dimension = 0);
nlohmann::json static_set_to_json(const StaticSet& set);

/// `flag` if given, else $MOREAU_OUT_DIR, else the working directory.
std::filesystem::path output_directory(const std::optional<std::string>& flag);

}  // namespace moreau

#endif  // MOREAU_CONFIG_HPP_
