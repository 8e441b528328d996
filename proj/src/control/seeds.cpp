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

#include "qmoves/control/seeds.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qmoves/control/transform.hpp"
#include "qmoves/errors.hpp"

namespace qmoves {

double min_round_trip_duration(const ProblemConfig& cfg) noexcept {
  const double d = std::abs(cfg.static_trap.x0 - cfg.target_trap.x0);
  return 2.0 * d / cfg.tweezer_bounds.max_speed;
}

ControlPath base_motion(const ProblemConfig& cfg, double duration) {
  const double t_min = min_round_trip_duration(cfg);
  if (duration < t_min - 1e-12) {
    std::ostringstream msg;
    msg << "round trip needs T >= " << t_min << " at max_speed " << cfg.tweezer_bounds.max_speed
        << ", got T = " << duration;
    throw InfeasibleError(msg.str());
  }
  const long n = steps_for(duration, cfg.dt);
  if (n < 1) throw InfeasibleError("duration shorter than one time step");
  const double half = 0.5 * static_cast<double>(n) * cfg.dt;
  const double xt = cfg.target_trap.x0;
  const double xs = cfg.static_trap.x0;

  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    const double s = t <= half ? t / half : (2.0 * half - t) / half;
    x[k] = xt + (xs - xt) * s;
  }
  x.front() = xt;
  x.back() = xt;
  std::vector<double> amp(x.size(), cfg.target_trap.amplitude);
  return ControlPath(cfg.dt, std::move(x), std::move(amp));
}

SineCoefficients draw_sine_coefficients(const SeedSpectrum& spectrum, const ProblemConfig& cfg) {
  std::mt19937_64 rng(spectrum.rng_seed);
  std::bernoulli_distribution coin(0.5);
  auto draw = [&](double range, double scale) {
    std::vector<double> c(spectrum.n_modes);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double n = static_cast<double>(i + 1);
      const double magnitude = scale * range / std::pow(n + 1.0, spectrum.decay);
      c[i] = coin(rng) ? magnitude : -magnitude;
    }
    return c;
  };
  SineCoefficients out;
  out.x0 = draw(cfg.tweezer_bounds.x_range(), spectrum.x_scale);
  out.amp = draw(cfg.tweezer_bounds.amp_range(), spectrum.amp_scale);
  return out;
}

SeedResult sine_seed(const ProblemConfig& cfg, double duration, const SineCoefficients& coeffs) {
  ControlPath path = base_motion(cfg, duration);
  const std::size_t n = path.steps();
  if (coeffs.x0.size() > n || coeffs.amp.size() > n) {
    throw std::invalid_argument("more sine modes than time steps");
  }
  const double xs = path.x0().back();
  const double as = path.amp().back();
  const double base = std::numbers::pi / static_cast<double>(n);
  for (std::size_t k = 1; k < n; ++k) {
    double dx = 0.0;
    double da = 0.0;
    for (std::size_t i = 0; i < coeffs.x0.size(); ++i) {
      dx += coeffs.x0[i] * std::sin(base * static_cast<double>((i + 1) * k));
    }
    for (std::size_t i = 0; i < coeffs.amp.size(); ++i) {
      da += coeffs.amp[i] * std::sin(base * static_cast<double>((i + 1) * k));
    }
    path.x0()[k] += dx;
    path.amp()[k] += da;
  }
  // sin(n pi) vanishes only up to rounding; the endpoints are pinned exactly.
  path.x0().back() = xs;
  path.amp().back() = as;

  auto projected = project(path, cfg);
  return {std::move(projected.path), projected.clipped};
}

SeedResult random_sin_seed(const ProblemConfig& cfg, double duration, const SeedSpectrum& spectrum) {
  return sine_seed(cfg, duration, draw_sine_coefficients(spectrum, cfg));
}

}  // namespace qmoves
