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

#include "qmoves/physics/potential.hpp"

#include <cmath>
#include <sstream>

#include "qmoves/errors.hpp"

namespace qmoves {

namespace {

// exp(-50) is far below anything that matters next to |V| ~ 100.
constexpr double kGaussianCutoff = 50.0;

inline double gaussian(double dx, double inv_w2) {
  const double arg = 2.0 * dx * dx * inv_w2;
  return arg > kGaussianCutoff ? 0.0 : std::exp(-arg);
}

void check_in_range(const char* field, double value, double lo, double hi) {
  if (value < lo || value > hi || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "tweezer " << field << " = " << value << " outside [" << lo << ", " << hi << "]";
    throw BoundsError(field, msg.str());
  }
}

}  // namespace

std::vector<double> gaussian_well(const Grid& grid, const TweezerState& trap) {
  const double inv_w2 = 1.0 / (trap.waist * trap.waist);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = trap.amplitude * gaussian(grid.x(i) - trap.x0, inv_w2);
  }
  return v;
}

std::vector<double> build_potential(const TweezerState& tweezer, const ProblemConfig& cfg) {
  const auto& b = cfg.tweezer_bounds;
  check_in_range("x0", tweezer.x0, b.x_min, b.x_max);
  check_in_range("amplitude", tweezer.amplitude, b.amp_min, b.amp_max);
  if (!(tweezer.waist > 0.0)) throw BoundsError("waist", "tweezer waist must be positive");

  auto v = gaussian_well(cfg.grid, cfg.static_trap);
  const auto t = gaussian_well(cfg.grid, tweezer);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += t[i];
  return v;
}

PotentialField::PotentialField(const ProblemConfig& cfg)
    : grid_(cfg.grid),
      xs_(cfg.grid.positions()),
      static_(gaussian_well(cfg.grid, cfg.static_trap)),
      inv_w2_(1.0 / (cfg.tweezer_waist() * cfg.tweezer_waist())) {}

void PotentialField::evaluate(double x0, double amp, std::span<double> out) const {
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    out[i] = static_[i] + amp * gaussian(xs_[i] - x0, inv_w2_);
  }
}

void PotentialField::d_amplitude(double x0, std::span<double> out) const {
  for (std::size_t i = 0; i < xs_.size(); ++i) out[i] = gaussian(xs_[i] - x0, inv_w2_);
}

void PotentialField::d_position(double x0, double amp, std::span<double> out) const {
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    const double d = xs_[i] - x0;
    out[i] = amp * 4.0 * d * inv_w2_ * gaussian(d, inv_w2_);
  }
}

}  // namespace qmoves
