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

#include <string>

#include <json.hpp>

#include "qmoves/physics/problem.hpp"

namespace qmoves::service {

struct ScoringParams {
  /// Weight of the time bonus.
  double beta = 0.5;
};

/// One playable level: a transport problem plus game parameters.
struct LevelConfig {
  std::string id;
  std::string name;
  ProblemConfig problem;
  /// Allowed path durations, inclusive.
  double t_min = 0.1;
  double t_max = 1.0;
  /// Wall-clock slowdown applied to physical time during play.
  double playback_factor = 3e4;
  /// Physical seconds per dimensionless time unit.
  double time_unit_seconds = 3.9e-4;
  ScoringParams scoring{};
  /// |client F - server F| above this is flagged.
  double flag_tolerance = 1e-3;
  /// Density samples per session frame.
  std::size_t frame_points = 64;

  /// Wall-clock seconds between session ticks (one dt of model time).
  double tick_interval_seconds() const noexcept {
    return problem.dt * time_unit_seconds * playback_factor;
  }

  /// Throws std::invalid_argument on inconsistent fields.
  void check() const;
};

/// round(1000 F (1 + beta (T_max - T) / T_max))
long score(double fidelity, double duration, const LevelConfig& level);

nlohmann::json level_to_json(const LevelConfig& level);
/// Missing fields take their defaults; calls check().
LevelConfig level_from_json(const nlohmann::json& j);

}  // namespace qmoves::service
