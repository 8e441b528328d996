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

#include "qmoves/physics/evolve.hpp"

#include <stdexcept>

#include "qmoves/errors.hpp"

namespace qmoves {

ControlledEvolution::ControlledEvolution(const ProblemConfig& cfg)
    : cfg_(cfg),
      field_(cfg),
      prop_(cfg.grid, cfg.dt),
      v_(cfg.grid.size()),
      phase_a_(cfg.grid.size()),
      phase_b_(cfg.grid.size()) {}

void ControlledEvolution::half_kick_phase(const ControlPath& path, std::size_t k,
                                          std::span<cplx> phase) {
  field_.evaluate(path.x0()[k], path.amp()[k], v_);
  Propagator::phase_factors(v_, 0.5 * prop_.dt(), phase);
}

void ControlledEvolution::forward(std::span<cplx> psi, const ControlPath& path,
                                  const Visitor& visit) {
  if (psi.size() != cfg_.grid.size()) throw StructuralError("state does not match the grid");
  if (std::abs(path.dt() - prop_.dt()) > 1e-15) {
    throw StructuralError("control path dt differs from the propagator dt");
  }
  if (visit) visit(0, psi);
  if (path.steps() == 0) return;
  half_kick_phase(path, 0, phase_a_);
  for (std::size_t k = 0; k < path.steps(); ++k) {
    Propagator::apply_phase(psi, phase_a_);
    prop_.drift(psi);
    half_kick_phase(path, k + 1, phase_b_);
    Propagator::apply_phase(psi, phase_b_);
    std::swap(phase_a_, phase_b_);
    if (visit) visit(k + 1, psi);
  }
}

void ControlledEvolution::backward(std::span<cplx> chi, const ControlPath& path,
                                   const Visitor& visit) {
  if (chi.size() != cfg_.grid.size()) throw StructuralError("state does not match the grid");
  if (std::abs(path.dt() - prop_.dt()) > 1e-15) {
    throw StructuralError("control path dt differs from the propagator dt");
  }
  const std::size_t n = path.steps();
  if (visit) visit(n, chi);
  if (n == 0) return;
  half_kick_phase(path, n, phase_a_);
  for (std::size_t k = n; k-- > 0;) {
    Propagator::apply_phase(chi, phase_a_, true);
    prop_.drift(chi, true);
    half_kick_phase(path, k, phase_b_);
    Propagator::apply_phase(chi, phase_b_, true);
    std::swap(phase_a_, phase_b_);
    if (visit) visit(k, chi);
  }
}

void ControlledEvolution::apply_hamiltonian(const ControlPath& path, std::size_t k,
                                            std::span<const cplx> psi, std::span<cplx> out) {
  prop_.kinetic(psi, out);
  field_.evaluate(path.x0()[k], path.amp()[k], v_);
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] += v_[i] * psi[i];
}

StateTrajectory evolve(const Wavefunction& psi0, const ControlPath& path, const ProblemConfig& cfg,
                       SamplingPolicy store) {
  if (!(psi0.grid() == cfg.grid)) throw StructuralError("initial state is not on the problem grid");
  if (store.stride == 0) throw std::invalid_argument("sampling stride must be positive");
  ControlledEvolution engine(cfg);
  StateTrajectory traj;
  traj.dt = path.dt();
  std::vector<cplx> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  const std::size_t n = path.steps();
  engine.forward(psi, path, [&](std::size_t k, std::span<const cplx> state) {
    if (k % store.stride == 0 || k == n) {
      traj.sample_index.push_back(k);
      traj.states.emplace_back(cfg.grid, std::vector<cplx>(state.begin(), state.end()));
    }
  });
  return traj;
}

}  // namespace qmoves
