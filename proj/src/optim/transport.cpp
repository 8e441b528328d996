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

#include "qmoves/optim/transport.hpp"

#include <algorithm>
#include <cmath>

#include "qmoves/physics/stationary.hpp"

namespace qmoves {

TransportProblem TransportProblem::from_config(const ProblemConfig& cfg) {
  cfg.check();
  return {cfg, well_ground_state(cfg, cfg.static_trap), well_ground_state(cfg, cfg.target_trap)};
}

FidelityEvaluator::FidelityEvaluator(const TransportProblem& problem)
    : problem_(problem),
      engine_(problem.cfg),
      psi_(problem.cfg.grid.size()),
      chi_(problem.cfg.grid.size()),
      dv_(problem.cfg.grid.size()) {}

double FidelityEvaluator::fidelity(const ControlPath& path) {
  const auto init = problem_.initial.amplitudes();
  std::copy(init.begin(), init.end(), psi_.begin());
  engine_.forward(psi_, path);
  ++propagations_;
  const cplx o = inner_product(problem_.target.amplitudes(), psi_, problem_.cfg.grid.dx());
  return std::min(1.0, std::norm(o));
}

Wavefunction FidelityEvaluator::final_state(const ControlPath& path) {
  const auto init = problem_.initial.amplitudes();
  std::copy(init.begin(), init.end(), psi_.begin());
  engine_.forward(psi_, path);
  ++propagations_;
  return Wavefunction(problem_.cfg.grid, psi_);
}

FidelityGradient FidelityEvaluator::gradient(const ControlPath& path) {
  const std::size_t n = problem_.cfg.grid.size();
  const std::size_t samples = path.samples();
  const double dx = problem_.cfg.grid.dx();
  states_.resize(samples * n);

  const auto init = problem_.initial.amplitudes();
  std::copy(init.begin(), init.end(), psi_.begin());
  engine_.forward(psi_, path, [&](std::size_t k, std::span<const cplx> s) {
    std::copy(s.begin(), s.end(), states_.begin() + static_cast<std::ptrdiff_t>(k * n));
  });
  const auto target = problem_.target.amplitudes();
  const cplx o = inner_product(target, psi_, dx);

  FidelityGradient g;
  g.fidelity = std::min(1.0, std::norm(o));
  g.x0.assign(samples, 0.0);
  g.amp.assign(samples, 0.0);

  const auto& field = engine_.field();
  std::copy(target.begin(), target.end(), chi_.begin());
  engine_.backward(chi_, path, [&](std::size_t k, std::span<const cplx> chi) {
    const cplx* psi = states_.data() + k * n;
    const double w = (k == 0 || k + 1 == samples) ? 0.5 * path.dt() : path.dt();
    const double x0 = path.x0()[k];
    const double amp = path.amp()[k];
    field.d_amplitude(x0, dv_);
    cplx sa{};
    cplx sx{};
    const double four_over_w2 = 4.0 / (problem_.cfg.tweezer_waist() * problem_.cfg.tweezer_waist());
    const auto& grid = problem_.cfg.grid;
    for (std::size_t i = 0; i < n; ++i) {
      if (dv_[i] == 0.0) continue;
      const cplx c = std::conj(chi[i]) * psi[i];
      sa += c * dv_[i];
      sx += c * (amp * four_over_w2 * (grid.x(i) - x0) * dv_[i]);
    }
    g.amp[k] = 2.0 * w * (std::conj(o) * sa * dx).imag();
    g.x0[k] = 2.0 * w * (std::conj(o) * sx * dx).imag();
  });
  propagations_ += 2;
  return g;
}

}  // namespace qmoves
