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
#include <functional>
#include <span>
#include <vector>

#include "qmoves/control/control_path.hpp"
#include "qmoves/physics/potential.hpp"
#include "qmoves/physics/propagator.hpp"

namespace qmoves {

/// Split-step driver along a control path.
///
/// Step k carries the state from t_k to t_{k+1}: half kick with V(u_k),
/// kinetic drift over dt, half kick with V(u_{k+1}). Each sample's kick
/// phase is computed once and shared by the two steps that use it.
class ControlledEvolution {
 public:
  using Visitor = std::function<void(std::size_t k, std::span<const cplx> state)>;

  explicit ControlledEvolution(const ProblemConfig& cfg);

  const PotentialField& field() const noexcept { return field_; }
  Propagator& propagator() noexcept { return prop_; }

  /// Propagates `psi` in place from t = 0 to T, calling `visit` at every
  /// sample k = 0..N with the state at t_k.
  void forward(std::span<cplx> psi, const ControlPath& path, const Visitor& visit = {});

  /// Propagates `chi` in place from t = T back to 0 with the exact inverse
  /// of forward(), calling `visit` at k = N..0.
  void backward(std::span<cplx> chi, const ControlPath& path, const Visitor& visit = {});

  /// H(t_k) psi for the Hamiltonian at sample k.
  void apply_hamiltonian(const ControlPath& path, std::size_t k, std::span<const cplx> psi,
                         std::span<cplx> out);

 private:
  void half_kick_phase(const ControlPath& path, std::size_t k, std::span<cplx> phase);

  ProblemConfig cfg_;
  PotentialField field_;
  Propagator prop_;
  std::vector<double> v_;
  std::vector<cplx> phase_a_;
  std::vector<cplx> phase_b_;
};

struct SamplingPolicy {
  /// Keep every `stride`-th sample; the final sample is always kept.
  std::size_t stride = 1;
};

struct StateTrajectory {
  double dt = 0.0;
  std::vector<std::size_t> sample_index;
  std::vector<Wavefunction> states;

  double time(std::size_t i) const noexcept { return static_cast<double>(sample_index[i]) * dt; }
  const Wavefunction& final_state() const { return states.back(); }
  std::size_t size() const noexcept { return states.size(); }
};

/// Evolves psi0 along `path`, keeping states per `store`.
StateTrajectory evolve(const Wavefunction& psi0, const ControlPath& path, const ProblemConfig& cfg,
                       SamplingPolicy store = {});

}  // namespace qmoves
