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

#include "qmoves/physics/stationary.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "qmoves/errors.hpp"
#include "qmoves/physics/potential.hpp"
#include "qmoves/physics/propagator.hpp"

namespace qmoves {

namespace {

// Row of the Fourier-grid kinetic matrix: T_ij = t[|i - j|].
std::vector<double> kinetic_kernel(const Grid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> t(n, 0.0);
  for (std::size_t d = 0; d < n; ++d) {
    const double r = static_cast<double>(d) * grid.dx();
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double k = grid.wavenumber(m);
      acc += 0.5 * k * k * std::cos(k * r);
    }
    t[d] = acc / static_cast<double>(n);
  }
  return t;
}

}  // namespace

std::vector<Eigenpair> hamiltonian_eigenpairs(std::span<const double> potential, std::size_t k,
                                              const Grid& grid) {
  const std::size_t n = grid.size();
  if (potential.size() != n) throw StructuralError("potential does not match the grid");
  if (k == 0 || 4 * k >= n) {
    throw CapacityError("requested " + std::to_string(k) + " eigenpairs on a grid of " +
                        std::to_string(n) + " points (need 1 <= k < n/4)");
  }

  const auto t = kinetic_kernel(grid);
  Eigen::MatrixXd h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(i, j) = t[i > j ? i - j : j - i];
    }
    h(i, i) += potential[i];
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError(0, "eigen-decomposition failed");

  const double scale = 1.0 / std::sqrt(grid.dx());
  std::vector<Eigenpair> out;
  out.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    const auto col = solver.eigenvectors().col(static_cast<Eigen::Index>(s));
    Eigen::Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    const double sign = col(imax) < 0.0 ? -1.0 : 1.0;
    std::vector<cplx> amps(n);
    for (std::size_t i = 0; i < n; ++i) amps[i] = sign * scale * col(static_cast<Eigen::Index>(i));
    out.push_back({solver.eigenvalues()(static_cast<Eigen::Index>(s)),
                   Wavefunction::normalized(grid, std::move(amps))});
  }
  return out;
}

std::vector<Eigenpair> stationary_states(std::span<const double> potential, std::size_t k,
                                         const ProblemConfig& cfg) {
  const Grid& grid = cfg.grid;
  const std::size_t n = grid.size();
  if (k == 0 || 4 * k >= n) {
    throw CapacityError("requested " + std::to_string(k) + " eigenpairs on a grid of " +
                        std::to_string(n) + " points (need 1 <= k < n/4)");
  }
  const std::size_t m = std::min(k + 16, n / 2);
  const auto basis = hamiltonian_eigenpairs(potential, std::min(m, n / 4 - 1), grid);
  const auto mb = static_cast<Eigen::Index>(basis.size());
  const double dx = grid.dx();

  Propagator prop(grid, cfg.dt);
  Eigen::MatrixXcd u(mb, mb);
  std::vector<cplx> work(n);
  for (Eigen::Index j = 0; j < mb; ++j) {
    const auto& phi = basis[static_cast<std::size_t>(j)].state.amplitudes();
    std::copy(phi.begin(), phi.end(), work.begin());
    prop.step(work, potential);
    for (Eigen::Index i = 0; i < mb; ++i) {
      u(i, j) = inner_product(basis[static_cast<std::size_t>(i)].state.amplitudes(), work, dx);
    }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(u);
  if (solver.info() != Eigen::Success) throw NumericalError(0, "propagator eigen-solve failed");

  // eigenvalue exp(-i E dt): order by the implied energy
  std::vector<std::pair<double, Eigen::Index>> order;
  for (Eigen::Index j = 0; j < mb; ++j) {
    order.emplace_back(-std::arg(solver.eigenvalues()(j)) / cfg.dt, j);
  }
  std::sort(order.begin(), order.end());

  std::vector<Eigenpair> out;
  out.reserve(k);
  for (std::size_t s = 0; s < k; ++s) {
    const auto c = solver.eigenvectors().col(order[s].second);
    std::vector<cplx> amps(n, cplx{});
    for (Eigen::Index j = 0; j < mb; ++j) {
      const auto& phi = basis[static_cast<std::size_t>(j)].state.amplitudes();
      for (std::size_t i = 0; i < n; ++i) amps[i] += c(j) * phi[i];
    }
    for (const auto& prev : out) {
      const cplx o = inner_product(prev.state.amplitudes(), amps, dx);
      for (std::size_t i = 0; i < n; ++i) amps[i] -= o * prev.state[i];
    }
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(amps[i]) > std::abs(amps[imax])) imax = i;
    }
    const cplx rot = std::conj(amps[imax]) / std::abs(amps[imax]);
    for (auto& a : amps) a *= rot;
    out.push_back({basis[s].energy, Wavefunction::normalized(grid, std::move(amps))});
  }
  return out;
}

Wavefunction well_ground_state(const ProblemConfig& cfg, const TweezerState& trap) {
  const auto v = gaussian_well(cfg.grid, trap);
  return stationary_states(v, 1, cfg).front().state;
}

std::vector<double> populations(const Wavefunction& psi, std::span<const double> potential,
                                std::size_t k) {
  const auto states = hamiltonian_eigenpairs(potential, k, psi.grid());
  std::vector<double> p(k);
  for (std::size_t s = 0; s < k; ++s) p[s] = std::norm(overlap(states[s].state, psi));
  return p;
}

double energy_expectation(const Wavefunction& psi, std::span<const double> potential) {
  if (potential.size() != psi.size()) throw StructuralError("potential does not match the grid");
  Propagator prop(psi.grid(), 1.0);
  std::vector<cplx> hpsi(psi.size());
  prop.kinetic(psi.amplitudes(), hpsi);
  for (std::size_t i = 0; i < psi.size(); ++i) hpsi[i] += potential[i] * psi[i];
  return inner_product(psi.amplitudes(), hpsi, psi.grid().dx()).real();
}

}  // namespace qmoves
