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

#include "qmoves/service/level.hpp"

#include <cmath>
#include <stdexcept>

#include "qmoves/io/config_io.hpp"

namespace qmoves::service {

using nlohmann::json;

void LevelConfig::check() const {
  if (id.empty()) throw std::invalid_argument("level id must not be empty");
  if (id.find_first_of("/?#& ") != std::string::npos) {
    throw std::invalid_argument("level id '" + id + "' contains reserved characters");
  }
  problem.check();
  if (!(t_min > 0.0 && t_min < t_max)) throw std::invalid_argument("level needs 0 < t_min < t_max");
  if (!(playback_factor > 0.0)) throw std::invalid_argument("playback_factor must be positive");
  if (!(time_unit_seconds > 0.0)) throw std::invalid_argument("time_unit_seconds must be positive");
  if (!(scoring.beta >= 0.0)) throw std::invalid_argument("scoring beta must be non-negative");
  if (!(flag_tolerance >= 0.0)) throw std::invalid_argument("flag_tolerance must be non-negative");
  if (frame_points < 2 || frame_points > problem.grid.size()) {
    throw std::invalid_argument("frame_points must lie in [2, n_points]");
  }
}

long score(double fidelity, double duration, const LevelConfig& level) {
  const double bonus = 1.0 + level.scoring.beta * (level.t_max - duration) / level.t_max;
  return std::lround(1000.0 * fidelity * bonus);
}

json level_to_json(const LevelConfig& l) {
  return {{"id", l.id},
          {"name", l.name},
          {"problem", config_to_json(l.problem)},
          {"duration_window", {l.t_min, l.t_max}},
          {"playback_factor", l.playback_factor},
          {"time_unit_seconds", l.time_unit_seconds},
          {"tick_interval_ms", 1e3 * l.tick_interval_seconds()},
          {"scoring", {{"beta", l.scoring.beta}}},
          {"flag_tolerance", l.flag_tolerance},
          {"frame_points", l.frame_points}};
}

LevelConfig level_from_json(const json& j) {
  LevelConfig l;
  l.id = j.at("id").get<std::string>();
  l.name = j.value("name", l.id);
  if (j.contains("problem")) l.problem = config_from_json(j.at("problem"));
  if (j.contains("duration_window")) {
    const auto& w = j.at("duration_window");
    if (!w.is_array() || w.size() != 2) throw std::invalid_argument("duration_window must be [t_min, t_max]");
    l.t_min = w[0].get<double>();
    l.t_max = w[1].get<double>();
  }
  l.playback_factor = j.value("playback_factor", l.playback_factor);
  l.time_unit_seconds = j.value("time_unit_seconds", l.time_unit_seconds);
  if (j.contains("scoring")) l.scoring.beta = j.at("scoring").value("beta", l.scoring.beta);
  l.flag_tolerance = j.value("flag_tolerance", l.flag_tolerance);
  l.frame_points = j.value("frame_points", l.frame_points);
  l.check();
  return l;
}

}  // namespace qmoves::service
