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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../oracles.hpp"
#include "qmoves/errors.hpp"
#include "qmoves/physics/evolve.hpp"
#include "qmoves/physics/potential.hpp"
#include "qmoves/physics/propagator.hpp"
#include "qmoves/physics/stationary.hpp"

using namespace qmoves;

namespace {

double stddev(const Wavefunction& psi) {
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

Wavefunction gaussian_packet(const Grid& g, double center, double sigma) {
  std::vector<cplx> a(g.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = g.x(i) - center;
    a[i] = std::exp(-d * d / (4.0 * sigma * sigma));
  }
  return Wavefunction::normalized(g, std::move(a));
}

}  // namespace

TEST_CASE("grid rejects sizes that are not powers of two or too small") {
  CHECK_THROWS(Grid(-1, 1, 100));
  CHECK_THROWS(Grid(-1, 1, 32));
  CHECK_THROWS(Grid(1, -1, 64));
  Grid g(-1.5, 1.5, 256);
  CHECK(g.dx() == doctest::Approx(3.0 / 256));
}

TEST_CASE("build_potential") {
  ProblemConfig cfg;
  SUBCASE("zero tweezer amplitude leaves the static trap") {
    const auto v = build_potential({0.0, 0.0, 0.25}, cfg);
    const auto s = gaussian_well(cfg.grid, cfg.static_trap);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == s[i]);
  }
  SUBCASE("direct evaluation with the static trap off") {
    cfg.static_trap.amplitude = 0.0;
    cfg.grid = Grid(-1.0, 1.0, 64);  // x = 0 and x = 0.25 are grid points
    const auto v = build_potential({0.0, -100.0, 0.25}, cfg);
    CHECK(v[32] == doctest::Approx(-100.0));
    CHECK(v[40] == doctest::Approx(-100.0 * std::exp(-2.0)));
  }
  SUBCASE("single well is mirror symmetric about x0") {
    cfg.static_trap.amplitude = 0.0;
    cfg.grid = Grid(-1.0, 1.0, 128);
    const auto v = build_potential({0.0, -80.0, 0.25}, cfg);
    for (std::size_t d = 1; d < 64; ++d) CHECK(v[64 + d] == doctest::Approx(v[64 - d]).epsilon(1e-14));
  }
  SUBCASE("out-of-bounds tweezer names the field") {
    try {
      build_potential({2.0, -100.0, 0.25}, cfg);
      FAIL("expected BoundsError");
    } catch (const BoundsError& e) {
      CHECK(e.field() == "x0");
    }
    try {
      build_potential({0.0, 10.0, 0.25}, cfg);
      FAIL("expected BoundsError");
    } catch (const BoundsError& e) {
      CHECK(e.field() == "amplitude");
    }
  }
}

TEST_CASE("fidelity") {
  const Grid g(-10, 10, 256);
  std::vector<double> harmonic(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) harmonic[i] = 0.5 * g.x(i) * g.x(i);
  const auto states = hamiltonian_eigenpairs(harmonic, 3, g);
  const auto& p0 = states[0].state;
  const auto& p1 = states[1].state;
  CHECK(fidelity(p0, p0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(p0, p1) == doctest::Approx(0.0).epsilon(1e-12));
  std::vector<cplx> sup(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) sup[i] = (p0[i] + p1[i]) / std::sqrt(2.0);
  CHECK(fidelity(p0, Wavefunction(g, sup)) == doctest::Approx(0.5).epsilon(1e-10));

  const Wavefunction other = gaussian_packet(Grid(-5, 5, 256), 0.0, 1.0);
  CHECK_THROWS_AS(fidelity(p0, other), StructuralError);
}

TEST_CASE("split_step: plane wave picks up the free phase") {
  const Grid g(-1.5, 1.5, 128);
  const double k = 2.0 * std::numbers::pi * 3.0 / g.length();
  std::vector<cplx> a(g.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::polar(1.0 / std::sqrt(g.length()), k * g.x(i));
  const Wavefunction psi(g, a);
  const std::vector<double> zero(g.size(), 0.0);
  const auto out = split_step(psi, zero, 0.002);
  const cplx expected = std::polar(1.0, -0.5 * k * k * 0.002);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(out[i] - expected * psi[i]) < 1e-12);
    CHECK(std::norm(out[i]) == doctest::Approx(std::norm(psi[i])).epsilon(1e-12));
  }
  CHECK_THROWS_AS(split_step(psi, std::vector<double>(64, 0.0), 0.002), StructuralError);
  CHECK_THROWS(split_step(psi, zero, -0.002));
}

TEST_CASE("split_step: free Gaussian follows the analytic dispersion law") {
  const Grid g(-1.5, 1.5, 512);
  const double sigma0 = 0.08;
  auto psi = gaussian_packet(g, 0.0, sigma0);
  const std::vector<double> zero(g.size(), 0.0);
  for (int step = 1; step <= 20; ++step) {
    psi = split_step(psi, zero, 0.002);
    if (step % 5 == 0) {
      const double expected = oracle::free_gaussian_width(sigma0, 0.002 * step);
      CHECK(std::abs(stddev(psi) / expected - 1.0) < 1e-3);
    }
  }
}

TEST_CASE("stationary_states: Gaussian well against harmonic estimate and FD oracle") {
  const ProblemConfig cfg = acceptance_config();
  const auto v = gaussian_well(cfg.grid, cfg.static_trap);
  const auto states = stationary_states(v, 4, cfg);
  // Harmonic expansion of the well, plus the first-order quartic correction
  // A * 2 <x^4> / w^4 with <x^4> = 3 / (4 omega^2).
  const double omega = 2.0 * std::sqrt(130.0) / 0.25;
  const double harmonic = -130.0 + 0.5 * omega;
  const double quartic = -130.0 * 2.0 * 3.0 / (4.0 * omega * omega) / std::pow(0.25, 4);
  CHECK(std::abs(states[0].energy / harmonic - 1.0) < 0.10);
  CHECK(std::abs(states[0].energy / (harmonic + quartic) - 1.0) < 0.01);

  auto vf = [](double x) { return -130.0 * std::exp(-2.0 * (x - 0.5) * (x - 0.5) / 0.0625); };
  const double reference = oracle::fd_richardson_ground(vf, -1.5, 1.5, 2047);
  CHECK(std::abs(states[0].energy / reference - 1.0) < 1e-6);

  for (std::size_t i = 1; i < states.size(); ++i) CHECK(states[i].energy > states[i - 1].energy);
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const double o = std::abs(overlap(states[i].state, states[j].state));
      CHECK(o == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("stationary_states: imaginary-time oracle agrees on the ground state") {
  const ProblemConfig cfg;
  const auto v = gaussian_well(cfg.grid, cfg.static_trap);
  const auto ground = stationary_states(v, 1, cfg)[0].state;
  const auto it = oracle::imaginary_time_ground(v, cfg.grid.dx(), 20000);
  std::vector<cplx> a(it.begin(), it.end());
  const Wavefunction reference = Wavefunction::normalized(cfg.grid, a);
  CHECK(fidelity(ground, reference) > 1.0 - 1e-4);
}

TEST_CASE("stationary_states: harmonic oscillator levels") {
  const Grid g(-12, 12, 256);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = 0.5 * g.x(i) * g.x(i);
  const auto states = hamiltonian_eigenpairs(v, 6, g);
  for (std::size_t n = 0; n < states.size(); ++n) {
    CHECK(std::abs(states[n].energy - (static_cast<double>(n) + 0.5)) < 1e-3);
  }
}

TEST_CASE("stationary_states: hard box follows n^2 scaling") {
  const Grid g(-1.5, 1.5, 512);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::abs(g.x(i)) < 1.0 ? 0.0 : 1e5;
  const auto states = hamiltonian_eigenpairs(v, 5, g);
  for (std::size_t n = 1; n < states.size(); ++n) {
    const double ratio = states[n].energy / states[0].energy;
    const double expected = static_cast<double>((n + 1) * (n + 1));
    CHECK(std::abs(ratio / expected - 1.0) < 1e-2);
  }
  CHECK_THROWS_AS(hamiltonian_eigenpairs(v, 128, g), CapacityError);
  CHECK_THROWS_AS(hamiltonian_eigenpairs(v, 0, g), CapacityError);
  ProblemConfig cfg;
  cfg.grid = g;
  CHECK_THROWS_AS(stationary_states(v, 128, cfg), CapacityError);
}

TEST_CASE("populations") {
  const ProblemConfig cfg;
  const auto v = gaussian_well(cfg.grid, cfg.static_trap);
  const auto states = stationary_states(v, 6, cfg);
  auto p = populations(states[0].state, v, 6);
  const auto exact = hamiltonian_eigenpairs(v, 3, cfg.grid);
  CHECK(p[0] == doctest::Approx(1.0).epsilon(1e-6));
  for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] < 1e-6);

  std::vector<cplx> sup(cfg.grid.size());
  for (std::size_t i = 0; i < sup.size(); ++i) {
    sup[i] = (exact[0].state[i] + exact[2].state[i]) / std::sqrt(2.0);
  }
  p = populations(Wavefunction(cfg.grid, sup), v, 6);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(p[1] < 1e-12);
  CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-8));
  double total = 0.0;
  for (double x : p) total += x;
  CHECK(total <= 1.0 + 1e-8);
}

TEST_CASE("split_step: static-trap ground state is stationary") {
  const ProblemConfig cfg;
  const auto v = gaussian_well(cfg.grid, cfg.static_trap);
  const auto ground = stationary_states(v, 1, cfg)[0].state;
  auto psi = ground;
  for (int i = 0; i < 100; ++i) psi = split_step(psi, v, cfg.dt);
  CHECK(fidelity(psi, ground) >= 1.0 - 1e-6);
}

TEST_CASE("evolve: zero duration, stationarity and unitarity") {
  const ProblemConfig cfg;
  const auto psi0 = well_ground_state(cfg, cfg.static_trap);
  const auto traj0 = evolve(psi0, ControlPath::constant(cfg.dt, 0, -0.5, -100.0), cfg);
  REQUIRE(traj0.size() == 1);
  CHECK(fidelity(traj0.final_state(), psi0) == doctest::Approx(1.0));

  // A zero-amplitude tweezer leaves the static ground state stationary.
  const auto still = ControlPath::constant(cfg.dt, 200, -0.5, 0.0);
  const auto traj = evolve(psi0, still, cfg, {10});
  CHECK(traj.size() == 21);
  CHECK(fidelity(traj.final_state(), psi0) >= 1.0 - 1e-6);

  // Arbitrary motion keeps the norm.
  std::vector<double> x(401);
  std::vector<double> a(401);
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = 0.6 * std::sin(0.02 * static_cast<double>(k));
    a[k] = -100.0 - 50.0 * std::cos(0.03 * static_cast<double>(k));
  }
  const auto moving = evolve(psi0, ControlPath(cfg.dt, x, a), cfg, {50});
  CHECK(std::abs(moving.final_state().norm_squared() - 1.0) < 1e-8);
}

TEST_CASE("unitarity over 10^4 steps") {
  const ProblemConfig cfg;
  const auto psi0 = well_ground_state(cfg, cfg.static_trap);
  ControlledEvolution engine(cfg);
  std::vector<double> x(10001);
  std::vector<double> a(10001);
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = 0.8 * std::sin(0.01 * static_cast<double>(k));
    a[k] = -150.0;
  }
  std::vector<cplx> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  double worst_step = 0.0;
  double previous = 1.0;
  double final_norm = 1.0;
  engine.forward(psi, ControlPath(cfg.dt, x, a), [&](std::size_t, std::span<const cplx> s) {
    const double n2 = norm_squared(s, cfg.grid.dx());
    worst_step = std::max(worst_step, std::abs(n2 - previous));
    previous = n2;
    final_norm = n2;
  });
  CHECK(worst_step < 1e-12);
  CHECK(std::abs(final_norm - 1.0) < 1e-8);
}

TEST_CASE("time reversal returns the initial state") {
  const ProblemConfig cfg;
  const auto psi0 = well_ground_state(cfg, cfg.static_trap);
  std::vector<double> x(301);
  std::vector<double> a(301);
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = -0.5 + 0.9 * std::sin(0.01 * static_cast<double>(k));
    a[k] = -120.0 + 20.0 * std::sin(0.05 * static_cast<double>(k));
  }
  const ControlPath path(cfg.dt, x, a);

  SUBCASE("negated time step") {
    PotentialField field(cfg);
    Propagator fwd(cfg.grid, cfg.dt);
    Propagator rev(cfg.grid, -cfg.dt);
    std::vector<double> v0(cfg.grid.size()), v1(cfg.grid.size());
    std::vector<cplx> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      field.evaluate(x[k], a[k], v0);
      field.evaluate(x[k + 1], a[k + 1], v1);
      fwd.step(psi, v0, v1);
    }
    for (std::size_t k = x.size() - 1; k > 0; --k) {
      field.evaluate(x[k], a[k], v0);
      field.evaluate(x[k - 1], a[k - 1], v1);
      rev.step(psi, v0, v1);
    }
    CHECK(fidelity(Wavefunction(cfg.grid, psi), psi0) >= 1.0 - 1e-8);
  }
  SUBCASE("engine backward pass") {
    ControlledEvolution engine(cfg);
    std::vector<cplx> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
    engine.forward(psi, path);
    engine.backward(psi, path);
    CHECK(fidelity(Wavefunction(cfg.grid, psi), psi0) >= 1.0 - 1e-8);
  }
}

TEST_CASE("eigenstate phase advance under one split step") {
  const ProblemConfig cfg;
  const auto v = gaussian_well(cfg.grid, cfg.static_trap);
  const auto states = stationary_states(v, 3, cfg);
  for (const auto& [energy, phi] : states) {
    const auto out = split_step(phi, v, cfg.dt);
    const cplx o = overlap(phi, out);
    const double phase_error = std::abs(std::arg(o * std::polar(1.0, energy * cfg.dt)));
    MESSAGE("E = " << energy << " phase error per step " << phase_error);
    CHECK(phase_error < 1e-4);
  }
}
