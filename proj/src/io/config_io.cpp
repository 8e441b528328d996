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

#include "qmoves/io/config_io.hpp"

#include <fstream>
#include <stdexcept>

namespace qmoves {

using nlohmann::json;

namespace {

json trap_json(const TweezerState& t) {
  return {{"x0", t.x0}, {"amplitude", t.amplitude}, {"waist", t.waist}};
}

TweezerState trap_from(const json& j, TweezerState t) {
  t.x0 = j.value("x0", t.x0);
  t.amplitude = j.value("amplitude", t.amplitude);
  t.waist = j.value("waist", t.waist);
  return t;
}

}  // namespace

json config_to_json(const ProblemConfig& cfg) {
  const auto& b = cfg.tweezer_bounds;
  return {{"schema_version", ProblemConfig::kSchemaVersion},
          {"static_trap", trap_json(cfg.static_trap)},
          {"target_trap", trap_json(cfg.target_trap)},
          {"tweezer_bounds",
           {{"x_min", b.x_min},
            {"x_max", b.x_max},
            {"amp_min", b.amp_min},
            {"amp_max", b.amp_max},
            {"max_speed", b.max_speed}}},
          {"grid", {{"x_min", cfg.grid.x_min()}, {"x_max", cfg.grid.x_max()}, {"n_points", cfg.grid.size()}}},
          {"dt", cfg.dt}};
}

ProblemConfig config_from_json(const json& j) {
  const int version = j.value("schema_version", ProblemConfig::kSchemaVersion);
  if (version != ProblemConfig::kSchemaVersion) {
    throw std::invalid_argument("unsupported config schema version " + std::to_string(version));
  }
  ProblemConfig cfg;
  try {
    if (j.contains("static_trap")) cfg.static_trap = trap_from(j["static_trap"], cfg.static_trap);
    if (j.contains("target_trap")) cfg.target_trap = trap_from(j["target_trap"], cfg.target_trap);
    if (j.contains("tweezer_bounds")) {
      const auto& jb = j["tweezer_bounds"];
      auto& b = cfg.tweezer_bounds;
      b.x_min = jb.value("x_min", b.x_min);
      b.x_max = jb.value("x_max", b.x_max);
      b.amp_min = jb.value("amp_min", b.amp_min);
      b.amp_max = jb.value("amp_max", b.amp_max);
      b.max_speed = jb.value("max_speed", b.max_speed);
    }
    if (j.contains("grid")) {
      const auto& jg = j["grid"];
      cfg.grid = Grid(jg.value("x_min", cfg.grid.x_min()), jg.value("x_max", cfg.grid.x_max()),
                      jg.value("n_points", cfg.grid.size()));
    }
    cfg.dt = j.value("dt", cfg.dt);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config json: ") + e.what());
  }
  cfg.check();
  return cfg;
}

ProblemConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  try {
    return config_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(file.string() + ": " + e.what());
  }
}

void save_config(const std::filesystem::path& file, const ProblemConfig& cfg) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << config_to_json(cfg).dump(2) << '\n';
}

}  // namespace qmoves
