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

#include "qmoves/physics/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace qmoves {

void ProblemConfig::check() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(static_trap.waist > 0.0) || !(target_trap.waist > 0.0)) {
    throw std::invalid_argument("trap waist must be positive");
  }
  const auto& b = tweezer_bounds;
  if (!(b.x_max > b.x_min) || !(b.amp_max > b.amp_min) || !(b.max_speed > 0.0)) {
    throw std::invalid_argument("tweezer bounds are empty");
  }
  if (target_trap.x0 < b.x_min || target_trap.x0 > b.x_max ||
      target_trap.amplitude < b.amp_min || target_trap.amplitude > b.amp_max) {
    throw std::invalid_argument("target trap lies outside the tweezer bounds");
  }
  if (b.x_min < grid.x_min() || b.x_max > grid.x_max()) {
    throw std::invalid_argument("tweezer position range exceeds the grid");
  }
}

ProblemConfig acceptance_config() {
  ProblemConfig cfg;
  cfg.grid = Grid(-1.5, 1.5, 512);
  return cfg;
}

long steps_for(double duration, double dt) noexcept {
  return std::lround(duration / dt);
}

}  // namespace qmoves
