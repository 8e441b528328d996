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

#include <span>
#include <vector>

#include "qmoves/physics/problem.hpp"

namespace qmoves {

/// Samples a single Gaussian well on the grid.
std::vector<double> gaussian_well(const Grid& grid, const TweezerState& trap);

/// Static trap plus the movable tweezer. Throws BoundsError naming the
/// offending field when the tweezer lies outside cfg.tweezer_bounds.
std::vector<double> build_potential(const TweezerState& tweezer, const ProblemConfig& cfg);

/// Cached evaluator for the hot loop: static trap precomputed, tweezer and
/// its control derivatives evaluated pointwise. No bounds checks.
class PotentialField {
 public:
  explicit PotentialField(const ProblemConfig& cfg);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> static_part() const noexcept { return static_; }

  /// V = V_static + amp * g(x - x0)
  void evaluate(double x0, double amp, std::span<double> out) const;
  /// dV/d(amp) = g(x - x0)
  void d_amplitude(double x0, std::span<double> out) const;
  /// dV/d(x0) = amp * 4 (x - x0) / w^2 * g(x - x0)
  void d_position(double x0, double amp, std::span<double> out) const;

 private:
  Grid grid_;
  std::vector<double> xs_;
  std::vector<double> static_;
  double inv_w2_;
};

}  // namespace qmoves
