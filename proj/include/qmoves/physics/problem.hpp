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

#include "qmoves/physics/grid.hpp"

namespace qmoves {

/// A Gaussian optical well V(x) = amplitude * exp(-2 (x - x0)^2 / waist^2).
/// Wells have negative amplitude.
struct TweezerState {
  double x0 = 0.0;
  double amplitude = 0.0;
  double waist = 0.25;
};

struct TweezerBounds {
  double x_min = -1.0;
  double x_max = 1.0;
  double amp_min = -200.0;
  double amp_max = 0.0;
  /// Upper bound on |dx0/dt|.
  double max_speed = 20.0;

  double x_range() const noexcept { return x_max - x_min; }
  double amp_range() const noexcept { return amp_max - amp_min; }
};

/// Everything that defines one transport problem instance.
///
/// The atom starts in the ground state of `static_trap` alone; the target is
/// the ground state of `target_trap` alone. The movable tweezer starts and
/// ends at the target trap configuration.
struct ProblemConfig {
  static constexpr int kSchemaVersion = 1;

  TweezerState static_trap{0.5, -130.0, 0.25};
  TweezerState target_trap{-0.5, -100.0, 0.25};
  TweezerBounds tweezer_bounds{};
  Grid grid{-1.5, 1.5, 256};
  double dt = 0.002;

  /// Tweezer waist used for the controllable beam.
  double tweezer_waist() const noexcept { return target_trap.waist; }

  /// Throws std::invalid_argument if any field is inconsistent.
  void check() const;
};

/// The defaults with the finer grid used for acceptance runs.
ProblemConfig acceptance_config();

/// Number of time steps for duration T, N = round(T / dt).
long steps_for(double duration, double dt) noexcept;

}  // namespace qmoves
