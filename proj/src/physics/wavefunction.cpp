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

#include "qmoves/physics/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qmoves/errors.hpp"

namespace qmoves {

Wavefunction::Wavefunction(Grid grid, std::vector<cplx> amplitudes)
    : grid_(grid), amps_(std::move(amplitudes)) {
  if (amps_.size() != grid_.size()) {
    throw StructuralError("wavefunction has " + std::to_string(amps_.size()) +
                          " amplitudes for a grid of " + std::to_string(grid_.size()));
  }
  const double n2 = norm_squared();
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    throw std::invalid_argument("wavefunction is not normalized (norm^2 = " +
                                std::to_string(n2) + ")");
  }
}

Wavefunction Wavefunction::normalized(Grid grid, std::vector<cplx> amplitudes) {
  const double n2 = qmoves::norm_squared(amplitudes, grid.dx());
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite wavefunction");
  }
  const double s = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= s;
  return Wavefunction(grid, std::move(amplitudes));
}

double Wavefunction::norm_squared() const noexcept {
  return qmoves::norm_squared(amps_, grid_.dx());
}

std::vector<double> Wavefunction::density() const {
  std::vector<double> rho(amps_.size());
  std::transform(amps_.begin(), amps_.end(), rho.begin(),
                 [](const cplx& a) { return std::norm(a); });
  return rho;
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b, double dx) noexcept {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc * dx;
}

double norm_squared(std::span<const cplx> a, double dx) noexcept {
  double acc = 0.0;
  for (const auto& v : a) acc += std::norm(v);
  return acc * dx;
}

cplx overlap(const Wavefunction& chi, const Wavefunction& psi) {
  if (!(chi.grid() == psi.grid())) {
    throw StructuralError("overlap of wavefunctions on different grids");
  }
  return inner_product(chi.amplitudes(), psi.amplitudes(), psi.grid().dx());
}

double fidelity(const Wavefunction& psi, const Wavefunction& chi) {
  return std::clamp(std::norm(overlap(chi, psi)), 0.0, 1.0);
}

}  // namespace qmoves
