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
#include <fstream>
#include <string>

#include <spdlog/spdlog.h>

#include "qmoves/io/config_io.hpp"

namespace tools {

/// Problem configuration from --config, else the defaults with --points
/// grid points.
inline qmoves::ProblemConfig resolve_config(const std::string& file, std::size_t points) {
  qmoves::ProblemConfig cfg = file.empty() ? qmoves::ProblemConfig{} : qmoves::load_config(file);
  if (file.empty() && points != 0) cfg.grid = qmoves::Grid(cfg.grid.x_min(), cfg.grid.x_max(), points);
  cfg.check();
  return cfg;
}

inline void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
}

}  // namespace tools
