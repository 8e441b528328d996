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
#include <iosfwd>

#include <json.hpp>

#include "qmoves/control/control_path.hpp"
#include "qmoves/physics/evolve.hpp"

namespace qmoves {

/// CSV with header `t,x0,amp`, one row per sample, 17 significant digits.
void write_path_csv(std::ostream& out, const ControlPath& path);

/// Parses the CSV written by write_path_csv. The time column must advance by
/// `dt` per row; otherwise StructuralError.
ControlPath read_path_csv(std::istream& in, double dt);

void save_path_csv(const std::filesystem::path& file, const ControlPath& path);
ControlPath load_path_csv(const std::filesystem::path& file, double dt);

/// {duration, dt, x0[], amp[]}
nlohmann::json path_to_json(const ControlPath& path);
ControlPath path_from_json(const nlohmann::json& j);

/// Long-format CSV `t,x,re,im` of every stored state.
void write_trajectory_csv(std::ostream& out, const StateTrajectory& traj);

}  // namespace qmoves
