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
#include <span>
#include <vector>

#include "qmoves/physics/problem.hpp"
#include "qmoves/physics/wavefunction.hpp"

namespace qmoves {

struct Eigenpair {
  double energy;
  Wavefunction state;
};

/// Lowest `k` eigenpairs of H = -1/2 d^2/dx^2 + V on the grid, energies
/// ascending. The kinetic term uses the same Fourier representation as the
/// split-step drift. Each state is real with its largest-magnitude sample
/// positive.
///
/// Throws CapacityError unless 1 <= k < n_points / 4.
std::vector<Eigenpair> hamiltonian_eigenpairs(std::span<const double> potential, std::size_t k,
                                              const Grid& grid);

/// Eigenpairs as seen by the time-discretized dynamics: the Hamiltonian
/// eigenstates are refined (Rayleigh-Ritz in the span of the lowest
/// k + 16 of them) into eigenvectors of the split-step propagator for
/// cfg.dt, so they stay stationary under `Propagator::step` to round-off.
/// Energies are the Hamiltonian eigenvalues of the levels the states refine.
std::vector<Eigenpair> stationary_states(std::span<const double> potential, std::size_t k,
                                         const ProblemConfig& cfg);

/// Ground state of a single Gaussian well, refined for `cfg.dt`.
Wavefunction well_ground_state(const ProblemConfig& cfg, const TweezerState& trap);

/// |<phi_n|psi>|^2 for the lowest k Hamiltonian eigenstates of `potential`.
std::vector<double> populations(const Wavefunction& psi, std::span<const double> potential,
                                std::size_t k);

/// <psi|H|psi> for H = -1/2 d^2/dx^2 + V.
double energy_expectation(const Wavefunction& psi, std::span<const double> potential);

}  // namespace qmoves
