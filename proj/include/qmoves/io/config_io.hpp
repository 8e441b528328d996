/*
 Copyright 2026 The qmoves Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <filesystem>

#include <json.hpp>

#include "qmoves/physics/problem.hpp"

namespace qmoves {

/// Versioned JSON form of a problem configuration.
nlohmann::json config_to_json(const ProblemConfig& cfg);

/// Missing fields keep their defaults. Throws std::invalid_argument for an
/// unknown schema version or an inconsistent configuration.
ProblemConfig config_from_json(const nlohmann::json& j);

ProblemConfig load_config(const std::filesystem::path& file);
void save_config(const std::filesystem::path& file, const ProblemConfig& cfg);

}  // namespace qmoves
