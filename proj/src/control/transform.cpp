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

#include "qmoves/control/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmoves/errors.hpp"

namespace qmoves {

ControlPath resample(const ControlPath& path, std::size_t new_steps) {
  if (new_steps == 0) throw std::invalid_argument("resampled path needs at least one step");
  const double ratio = static_cast<double>(path.steps()) / static_cast<double>(new_steps);
  std::vector<double> x(new_steps + 1);
  std::vector<double> a(new_steps + 1);
  for (std::size_t j = 0; j <= new_steps; ++j) {
    const double t = path.time(j) * ratio;
    x[j] = path.x0_at(t);
    a[j] = path.amp_at(t);
  }
  x.back() = path.x0().back();
  a.back() = path.amp().back();
  return ControlPath(path.dt(), std::move(x), std::move(a));
}

namespace {

std::size_t scaled_steps(const ControlPath& path, double a) {
  const double target = a * static_cast<double>(path.steps());
  const double rounded = std::round(target);
  if (std::abs(target - rounded) > 1e-9 * std::max(1.0, target)) {
    throw std::invalid_argument("time scaling must map the path onto whole time steps");
  }
  if (rounded < 1.0) throw std::invalid_argument("scaled path would be shorter than one step");
  return static_cast<std::size_t>(rounded);
}

}  // namespace

ControlPath contract(const ControlPath& path, double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("contraction factor must lie in (0, 1)");
  return resample(path, scaled_steps(path, a));
}

ControlPath dilate(const ControlPath& path, double a) {
  if (!(a > 1.0) || !std::isfinite(a)) throw std::invalid_argument("dilation factor must exceed 1");
  return resample(path, scaled_steps(path, a));
}

ControlPath contract_by_step(const ControlPath& path) {
  if (path.steps() < 2) throw std::invalid_argument("cannot contract a path below one step");
  return resample(path, path.steps() - 1);
}

ControlPath dilate_by_step(const ControlPath& path) { return resample(path, path.steps() + 1); }

namespace {

// Sequential repair: each interior sample is clamped to what the previous
// sample and the pinned final sample allow. Feasible, but not the nearest
// feasible path.
void clamp_positions(std::vector<double>& x, const TweezerBounds& b, double delta) {
  const std::size_t n = x.size() - 1;
  for (std::size_t k = 1; k < n; ++k) {
    const double remaining = static_cast<double>(n - k) * delta;
    const double lo = std::max({b.x_min, x[k - 1] - delta, x[n] - remaining});
    const double hi = std::min({b.x_max, x[k - 1] + delta, x[n] + remaining});
    if (lo > hi + 1e-12) {
      throw InfeasibleError("path endpoints are farther apart than max_speed allows");
    }
    x[k] = std::clamp(x[k], lo, std::max(lo, hi));
  }
}

bool positions_feasible(const std::vector<double>& x, const TweezerBounds& b, double delta) {
  for (std::size_t k = 1; k < x.size(); ++k) {
    if (std::abs(x[k] - x[k - 1]) > delta) return false;
    if (k + 1 < x.size() && (x[k] < b.x_min || x[k] > b.x_max)) return false;
  }
  return true;
}

// Nearest point (Euclidean) to z with |y_k - y_{k-1}| <= delta, interior
// samples inside [x_min, x_max] and both ends fixed. Log-barrier Newton
// iterations; the Hessian is tridiagonal. Returns false when no strictly
// feasible starting path exists.
bool nearest_feasible_positions(std::vector<double>& z, const TweezerBounds& b, double delta) {
  const std::size_t n = z.size() - 1;
  const double a = z.front();
  const double e = z.back();
  if (n < 2) return true;
  const double slope = (e - a) / static_cast<double>(n);
  const double spare = delta - std::abs(slope);
  if (!(spare > 1e-9 * delta)) return false;

  // Straight line, bent toward the middle of the box so no sample sits on a
  // position bound.
  const double centre = 0.5 * (b.x_min + b.x_max);
  const double bend = 0.5 * (centre - 0.5 * (a + e)) >= 0.0 ? 1.0 : -1.0;
  const double cap = 0.25 * (b.x_max - b.x_min);
  std::vector<double> y(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double tent = 0.5 * spare * static_cast<double>(std::min(k, n - k));
    y[k] = a + slope * static_cast<double>(k) + bend * std::min(tent, cap);
  }
  y.back() = e;
  for (std::size_t k = 1; k < n; ++k) {
    if (!(y[k] > b.x_min && y[k] < b.x_max)) return false;
  }

  std::vector<double> grad(n + 1);
  std::vector<double> diag(n + 1);
  std::vector<double> off(n + 1);  // off[k] couples k and k + 1
  std::vector<double> step(n + 1);
  std::vector<double> trial(n + 1);

  auto barrier = [&](const std::vector<double>& v, double mu) {
    double f = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double d = v[k] - v[k - 1];
      const double lo = delta + d;
      const double hi = delta - d;
      if (!(lo > 0.0 && hi > 0.0)) return std::numeric_limits<double>::infinity();
      f -= mu * (std::log(lo) + std::log(hi));
      if (k < n) {
        const double up = b.x_max - v[k];
        const double dn = v[k] - b.x_min;
        if (!(up > 0.0 && dn > 0.0)) return std::numeric_limits<double>::infinity();
        f += 0.5 * (v[k] - z[k]) * (v[k] - z[k]) - mu * (std::log(up) + std::log(dn));
      }
    }
    return f;
  };

  for (double mu = 1e-3 * delta * delta; mu > 1e-18; mu *= 0.1) {
    for (int newton = 0; newton < 50; ++newton) {
      std::fill(grad.begin(), grad.end(), 0.0);
      std::fill(diag.begin(), diag.end(), 0.0);
      std::fill(off.begin(), off.end(), 0.0);
      for (std::size_t k = 1; k <= n; ++k) {
        const double d = y[k] - y[k - 1];
        const double lo = delta + d;
        const double hi = delta - d;
        const double g1 = mu * (1.0 / hi - 1.0 / lo);
        const double h1 = mu * (1.0 / (hi * hi) + 1.0 / (lo * lo));
        grad[k] += g1;
        grad[k - 1] -= g1;
        diag[k] += h1;
        diag[k - 1] += h1;
        off[k - 1] -= h1;
        if (k < n) {
          const double up = b.x_max - y[k];
          const double dn = y[k] - b.x_min;
          grad[k] += (y[k] - z[k]) + mu * (1.0 / up - 1.0 / dn);
          diag[k] += 1.0 + mu * (1.0 / (up * up) + 1.0 / (dn * dn));
        }
      }
      // Thomas solve on the interior unknowns 1..n-1 for step = -H^-1 grad.
      for (std::size_t k = 1; k < n; ++k) step[k] = -grad[k];
      for (std::size_t k = 2; k < n; ++k) {
        const double w = off[k - 1] / diag[k - 1];
        diag[k] -= w * off[k - 1];
        step[k] -= w * step[k - 1];
      }
      step[n - 1] /= diag[n - 1];
      for (std::size_t k = n - 1; k-- > 1;) step[k] = (step[k] - off[k] * step[k + 1]) / diag[k];
      step[0] = 0.0;
      step[n] = 0.0;

      double decrement = 0.0;
      for (std::size_t k = 1; k < n; ++k) decrement -= grad[k] * step[k];
      if (decrement < 1e-24) break;

      const double f0 = barrier(y, mu);
      double t = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
        for (std::size_t k = 0; k <= n; ++k) trial[k] = y[k] + t * step[k];
        if (barrier(trial, mu) <= f0 - 0.25 * t * decrement) {
          moved = true;
          break;
        }
      }
      if (!moved) break;
      y.swap(trial);
    }
  }
  z.swap(y);
  return true;
}

}  // namespace

Projection project(const ControlPath& path, const ProblemConfig& cfg) {
  const auto& b = cfg.tweezer_bounds;
  std::vector<double> x = path.x0();
  std::vector<double> a = path.amp();
  const std::size_t n = path.steps();
  const double delta = b.max_speed * path.dt();

  for (std::size_t k = 1; k < n; ++k) a[k] = std::clamp(a[k], b.amp_min, b.amp_max);
  if (n >= 2 && !positions_feasible(x, b, delta)) {
    if (std::abs(x[n] - x[0]) > static_cast<double>(n) * delta * (1.0 + 1e-12)) {
      throw InfeasibleError("path endpoints are farther apart than max_speed allows");
    }
    nearest_feasible_positions(x, b, delta);
    clamp_positions(x, b, delta);
  }

  std::size_t clipped = 0;
  for (std::size_t k = 1; k < n; ++k) {
    if (x[k] != path.x0()[k] || a[k] != path.amp()[k]) ++clipped;
  }
  return {ControlPath(path.dt(), std::move(x), std::move(a)), clipped};
}

}  // namespace qmoves
