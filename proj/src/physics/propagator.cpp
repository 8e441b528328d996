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

#include "qmoves/physics/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "qmoves/errors.hpp"

namespace qmoves {

namespace {
// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Propagator::Plans {
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::size_t n = 0;

  explicit Plans(std::size_t size) : n(size) {
    std::lock_guard lock(planner_mutex());
    buffer = fftw_alloc_complex(n);
    const int ni = static_cast<int>(n);
    forward = fftw_plan_dft_1d(ni, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(ni, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(buffer);
  }
  cplx* data() noexcept { return reinterpret_cast<cplx*>(buffer); }
};

Propagator::Propagator(const Grid& grid, double dt)
    : grid_(grid),
      dt_(dt),
      kinetic_phase_(grid.size()),
      k2_half_(grid.size()),
      phase_scratch_(grid.size()),
      plans_(new Plans(grid.size())) {
  if (!(dt != 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be finite and nonzero");
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double k = grid.wavenumber(m);
    k2_half_[m] = 0.5 * k * k;
    // The 1/n of the inverse transform is folded into the phase.
    kinetic_phase_[m] = std::polar(inv_n, -k2_half_[m] * dt);
  }
}

Propagator::~Propagator() { delete plans_; }

Propagator::Propagator(Propagator&& other) noexcept
    : grid_(other.grid_),
      dt_(other.dt_),
      kinetic_phase_(std::move(other.kinetic_phase_)),
      k2_half_(std::move(other.k2_half_)),
      phase_scratch_(std::move(other.phase_scratch_)),
      plans_(std::exchange(other.plans_, nullptr)) {}

Propagator& Propagator::operator=(Propagator&& other) noexcept {
  if (this != &other) {
    delete plans_;
    grid_ = other.grid_;
    dt_ = other.dt_;
    kinetic_phase_ = std::move(other.kinetic_phase_);
    k2_half_ = std::move(other.k2_half_);
    phase_scratch_ = std::move(other.phase_scratch_);
    plans_ = std::exchange(other.plans_, nullptr);
  }
  return *this;
}

void Propagator::drift(std::span<cplx> psi, bool adjoint) {
  cplx* buf = plans_->data();
  std::memcpy(buf, psi.data(), psi.size() * sizeof(cplx));
  fftw_execute(plans_->forward);
  if (adjoint) {
    for (std::size_t m = 0; m < psi.size(); ++m) buf[m] *= std::conj(kinetic_phase_[m]);
  } else {
    for (std::size_t m = 0; m < psi.size(); ++m) buf[m] *= kinetic_phase_[m];
  }
  fftw_execute(plans_->backward);
  std::memcpy(psi.data(), buf, psi.size() * sizeof(cplx));
}

void Propagator::kinetic(std::span<const cplx> psi, std::span<cplx> out) {
  cplx* buf = plans_->data();
  std::memcpy(buf, psi.data(), psi.size() * sizeof(cplx));
  fftw_execute(plans_->forward);
  const double inv_n = 1.0 / static_cast<double>(psi.size());
  for (std::size_t m = 0; m < psi.size(); ++m) buf[m] *= k2_half_[m] * inv_n;
  fftw_execute(plans_->backward);
  std::memcpy(out.data(), buf, psi.size() * sizeof(cplx));
}

void Propagator::phase_factors(std::span<const double> v, double tau, std::span<cplx> phase) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = -v[i] * tau;
    phase[i] = cplx(std::cos(a), std::sin(a));
  }
}

void Propagator::apply_phase(std::span<cplx> psi, std::span<const cplx> phase, bool adjoint) {
  if (adjoint) {
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= std::conj(phase[i]);
  } else {
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= phase[i];
  }
}

void Propagator::step(std::span<cplx> psi, std::span<const double> v) {
  step(psi, v, v);
}

void Propagator::step(std::span<cplx> psi, std::span<const double> v_start,
                      std::span<const double> v_end) {
  phase_factors(v_start, 0.5 * dt_, phase_scratch_);
  apply_phase(psi, phase_scratch_);
  drift(psi);
  phase_factors(v_end, 0.5 * dt_, phase_scratch_);
  apply_phase(psi, phase_scratch_);
}

void Propagator::step_back(std::span<cplx> psi, std::span<const double> v_start,
                           std::span<const double> v_end) {
  phase_factors(v_end, 0.5 * dt_, phase_scratch_);
  apply_phase(psi, phase_scratch_, true);
  drift(psi, true);
  phase_factors(v_start, 0.5 * dt_, phase_scratch_);
  apply_phase(psi, phase_scratch_, true);
}

Wavefunction split_step(const Wavefunction& psi, std::span<const double> potential, double dt) {
  if (potential.size() != psi.size()) {
    throw StructuralError("potential is not sampled on the wavefunction grid");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("split_step requires dt > 0");
  Propagator prop(psi.grid(), dt);
  std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
  prop.step(amps, potential);
  return Wavefunction(psi.grid(), std::move(amps));
}

}  // namespace qmoves
