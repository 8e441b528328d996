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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmoves/control/control_path.hpp"

namespace qmoves {

/// Linear round trip of the tweezer from the target trap to the static trap
/// and back, at the target trap amplitude. Throws InfeasibleError when the
/// round trip needs more than max_speed.
ControlPath base_motion(const ProblemConfig& cfg, double duration);

/// Shortest duration base_motion accepts.
double min_round_trip_duration(const ProblemConfig& cfg) noexcept;

/// Random sine-series perturbation spectrum. Mode n = 1..n_modes gets a
/// coefficient of random sign with magnitude scale * range / (n + 1)^decay,
/// where range is the control's bound interval.
struct SeedSpectrum {
  std::size_t n_modes = 8;
  double x_scale = 0.05;
  double amp_scale = 0.05;
  double decay = 1.0;
  std::uint64_t rng_seed = 0;
};

struct SineCoefficients {
  std::vector<double> x0;   // index n-1 holds mode n
  std::vector<double> amp;
};

/// Deterministic coefficient draw for `spectrum` under the bounds of `cfg`.
SineCoefficients draw_sine_coefficients(const SeedSpectrum& spectrum, const ProblemConfig& cfg);

struct SeedResult {
  ControlPath path;
  /// Samples moved by bound or speed projection.
  std::size_t clipped = 0;
};

/// base_motion plus sum_n X[n] sin(n pi k / N) on each control, endpoints
/// pinned, projected onto the feasible set.
SeedResult random_sin_seed(const ProblemConfig& cfg, double duration, const SeedSpectrum& spectrum);

/// Same, with explicit coefficients.
SeedResult sine_seed(const ProblemConfig& cfg, double duration, const SineCoefficients& coeffs);

}  // namespace qmoves
