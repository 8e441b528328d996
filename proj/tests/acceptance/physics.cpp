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

#include <cmath>

#include "../oracles.hpp"
#include "acceptance.hpp"
#include "qmoves/physics/evolve.hpp"
#include "qmoves/physics/potential.hpp"
#include "qmoves/physics/stationary.hpp"

namespace acceptance {

using namespace qmoves;

namespace {

double width(const Wavefunction& psi) {
  const auto& g = psi.grid();
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double p = std::norm(psi[i]) * g.dx();
    m1 += p * g.x(i);
    m2 += p * g.x(i) * g.x(i);
  }
  return std::sqrt(m2 - m1 * m1);
}

// Norm after kNormSteps steps along a moving, breathing tweezer.
double norm_drift(const ProblemConfig& cfg) {
  const auto psi0 = well_ground_state(cfg, cfg.static_trap);
  std::vector<double> x(limits::kNormSteps + 1);
  std::vector<double> a(limits::kNormSteps + 1);
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = 0.8 * std::sin(0.01 * static_cast<double>(k));
    a[k] = -100.0 - 50.0 * std::sin(0.003 * static_cast<double>(k));
  }
  ControlledEvolution engine(cfg);
  std::vector<cplx> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  engine.forward(psi, ControlPath(cfg.dt, x, a));
  return std::abs(norm_squared(psi, cfg.grid.dx()) - 1.0);
}

double dispersion_error(const ProblemConfig& cfg) {
  const double sigma0 = 0.08;
  std::vector<cplx> amp(cfg.grid.size());
  for (std::size_t i = 0; i < amp.size(); ++i) {
    const double d = cfg.grid.x(i);
    amp[i] = std::exp(-d * d / (4.0 * sigma0 * sigma0));
  }
  auto psi = Wavefunction::normalized(cfg.grid, amp);
  const std::vector<double> zero(cfg.grid.size(), 0.0);
  double worst = 0.0;
  for (int step = 1; step <= 20; ++step) {
    psi = split_step(psi, zero, cfg.dt);
    const double expected = oracle::free_gaussian_width(sigma0, cfg.dt * step);
    worst = std::max(worst, std::abs(width(psi) / expected - 1.0));
  }
  return worst;
}

double phase_error(const ProblemConfig& cfg) {
  const auto v = gaussian_well(cfg.grid, cfg.static_trap);
  double worst = 0.0;
  for (const auto& [energy, phi] : stationary_states(v, 3, cfg)) {
    const cplx o = overlap(phi, split_step(phi, v, cfg.dt));
    worst = std::max(worst, std::abs(std::arg(o * std::polar(1.0, energy * cfg.dt))));
  }
  return worst;
}

double ground_energy_error(const ProblemConfig& cfg) {
  const auto& trap = cfg.static_trap;
  const auto v = gaussian_well(cfg.grid, trap);
  const double e0 = stationary_states(v, 1, cfg)[0].energy;
  auto vf = [&](double x) {
    const double d = x - trap.x0;
    return trap.amplitude * std::exp(-2.0 * d * d / (trap.waist * trap.waist));
  };
  const double reference = oracle::fd_richardson_ground(vf, cfg.grid.x_min(), cfg.grid.x_max(), 2047);
  return std::abs(e0 / reference - 1.0);
}

}  // namespace

Outcome physics_correctness() {
  Stopwatch clock;
  const ProblemConfig cfg = acceptance_config();
  const double drift = norm_drift(cfg);
  const double disp = dispersion_error(cfg);
  const double phase = phase_error(cfg);
  const double energy = ground_energy_error(cfg);
  const double secs = clock.seconds();
  const bool pass = drift < limits::kNormDrift && disp < limits::kDispersion && phase < limits::kPhasePerStep &&
                    energy < limits::kGroundEnergy && secs < limits::kPhysicsSeconds;
  return {pass, format("norm drift %.2e over %d steps (< %.0e); free-Gaussian width error %.2e (< %.0e); "
                       "eigenphase error per step %.2e (< %.0e); ground energy vs dense grid %.2e (< %.0e); "
                       "%.1f s (< %.0f s)",
                       drift, limits::kNormSteps, limits::kNormDrift, disp, limits::kDispersion, phase,
                       limits::kPhasePerStep, energy, limits::kGroundEnergy, secs, limits::kPhysicsSeconds)};
}

}  // namespace acceptance
