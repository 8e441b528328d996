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

#include <complex>
#include <span>
#include <vector>

#include "qmoves/physics/grid.hpp"

namespace qmoves {

using cplx = std::complex<double>;

/// Normalized complex amplitudes bound to a grid.
///
/// Construction checks that sum |psi_i|^2 dx is 1 within 1e-8; use
/// `normalized()` to build from arbitrary amplitudes.
class Wavefunction {
 public:
  static constexpr double kNormTolerance = 1e-8;

  Wavefunction(Grid grid, std::vector<cplx> amplitudes);

  /// Rescales `amplitudes` to unit norm. Throws on an all-zero input.
  static Wavefunction normalized(Grid grid, std::vector<cplx> amplitudes);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  const cplx& operator[](std::size_t i) const noexcept { return amps_[i]; }
  std::size_t size() const noexcept { return amps_.size(); }

  double norm_squared() const noexcept;
  std::vector<double> density() const;

 private:
  Grid grid_;
  std::vector<cplx> amps_;
};

/// sum conj(a_i) b_i dx on a shared grid spacing.
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b, double dx) noexcept;
double norm_squared(std::span<const cplx> a, double dx) noexcept;

/// <chi|psi> with grid check.
cplx overlap(const Wavefunction& chi, const Wavefunction& psi);

/// |<chi|psi>|^2, clamped to [0, 1].
double fidelity(const Wavefunction& psi, const Wavefunction& chi);

}  // namespace qmoves
