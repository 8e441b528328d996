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

#include "qmoves/physics/wavefunction.hpp"

namespace qmoves {

/// Spectral split-step machinery for H = -1/2 d^2/dx^2 + V(x) on a periodic
/// grid. Owns FFT plans and scratch space, so one instance per thread.
class Propagator {
 public:
  Propagator(const Grid& grid, double dt);
  ~Propagator();
  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;
  Propagator(Propagator&&) noexcept;
  Propagator& operator=(Propagator&&) noexcept;

  const Grid& grid() const noexcept { return grid_; }
  double dt() const noexcept { return dt_; }

  /// psi <- exp(-i K dt) psi, or its inverse when `adjoint` is set.
  void drift(std::span<cplx> psi, bool adjoint = false);

  /// out <- -1/2 psi'' (spectral derivative).
  void kinetic(std::span<const cplx> psi, std::span<cplx> out);

  /// phase_i = exp(-i v_i tau)
  static void phase_factors(std::span<const double> v, double tau, std::span<cplx> phase);
  /// psi_i *= phase_i, or conj(phase_i) when `adjoint` is set.
  static void apply_phase(std::span<cplx> psi, std::span<const cplx> phase, bool adjoint = false);

  /// One Strang step with a single potential: half kick, drift, half kick.
  void step(std::span<cplx> psi, std::span<const double> v);
  /// Strang step with the potential switching from v_start to v_end over
  /// the step: half kick with v_start, drift, half kick with v_end.
  void step(std::span<cplx> psi, std::span<const double> v_start, std::span<const double> v_end);
  /// Exact inverse of step(psi, v_start, v_end).
  void step_back(std::span<cplx> psi, std::span<const double> v_start,
                 std::span<const double> v_end);

 private:
  struct Plans;
  Grid grid_;
  double dt_;
  std::vector<cplx> kinetic_phase_;
  std::vector<double> k2_half_;
  std::vector<cplx> phase_scratch_;
  Plans* plans_ = nullptr;
};

/// One symmetric split step of `psi` in a static potential. Requires dt > 0.
Wavefunction split_step(const Wavefunction& psi, std::span<const double> potential, double dt);

}  // namespace qmoves
