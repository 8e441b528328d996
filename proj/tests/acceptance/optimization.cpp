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

#include <algorithm>
#include <cmath>
#include <random>

#include "acceptance.hpp"
#include "qmoves/control/seeds.hpp"
#include "qmoves/optim/optimizer.hpp"

namespace acceptance {

using namespace qmoves;

Outcome gradient_fidelity() {
  Stopwatch clock;
  ProblemConfig cfg;
  cfg.grid = Grid(cfg.grid.x_min(), cfg.grid.x_max(), limits::kGradientPoints);
  FidelityEvaluator ev(TransportProblem::from_config(cfg));
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int probe = 0; probe < limits::kGradientProbes; ++probe) {
    SeedSpectrum sp;
    sp.rng_seed = 500 + static_cast<std::uint64_t>(probe);
    ControlPath path = random_sin_seed(cfg, 0.2, sp).path;
    const auto g = ev.gradient(path);
    // Interior samples only: the endpoints are pinned and never move.
    std::uniform_int_distribution<std::size_t> pick(1, path.steps() - 1);
    const std::size_t k = pick(rng);
    const bool position = probe % 2 == 0;
    auto& v = position ? path.x0() : path.amp();
    const double h = position ? 1e-5 : 1e-3;
    const double base = v[k];
    v[k] = base + h;
    const double up = ev.fidelity(path);
    v[k] = base - h;
    const double down = ev.fidelity(path);
    const double fd = (up - down) / (2.0 * h);
    const double an = position ? g.x0[k] : g.amp[k];
    worst = std::max(worst, std::abs(an - fd) / std::max(std::abs(fd), 1e-300));
  }
  const double secs = clock.seconds();
  return {worst < limits::kGradient && secs < limits::kGradientSeconds,
          format("%d probes on %zu points, worst relative error %.2e (< %.0e); %.1f s", limits::kGradientProbes,
                 limits::kGradientPoints, worst, limits::kGradient, secs)};
}

Outcome monotone_optimization() {
  Stopwatch clock;
  const ProblemConfig cfg = acceptance_config();
  FidelityEvaluator ev(TransportProblem::from_config(cfg));
  const OptimizerParams params{.max_iters = 300};
  std::size_t non_monotone = 0;
  std::size_t at_stretch = 0;
  double best = 0.0;
  for (int s = 0; s < limits::kMonotoneSeeds; ++s) {
    SeedSpectrum sp;
    sp.rng_seed = static_cast<std::uint64_t>(s);
    const auto r = optimize(ev, random_sin_seed(cfg, limits::kMonotoneDuration, sp).path, params);
    const auto& h = r.solution.history;
    if (!std::is_sorted(h.begin(), h.end())) ++non_monotone;
    if (r.solution.fidelity >= 0.999) ++at_stretch;
    best = std::max(best, r.solution.fidelity);
  }
  const double secs = clock.seconds();
  return {non_monotone == 0 && best >= limits::kMonotoneBest && secs < limits::kMonotoneSeconds,
          format("%d seeds at T = %.2f: %zu non-monotone histories; best F = %.6f (>= %.2f), %zu/%d reach 0.999; "
                 "%.0f s (< %.0f s)",
                 limits::kMonotoneSeeds, limits::kMonotoneDuration, non_monotone, best, limits::kMonotoneBest,
                 at_stretch, limits::kMonotoneSeeds, secs, limits::kMonotoneSeconds)};
}

}  // namespace acceptance
