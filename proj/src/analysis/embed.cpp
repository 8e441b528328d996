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

#include "qmoves/analysis/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qmoves/analysis/nelder_mead.hpp"

namespace qmoves {

double Embedding2D::total_stress() const {
  double s = 0.0;
  for (double v : stress) s += v;
  return s;
}

Embedding2D embed_2d(const DistanceMatrix& dm, std::uint64_t rng_seed, std::span<const double> fidelity,
                     std::size_t restarts) {
  const std::size_t n = dm.size();
  if (n < 3) throw std::invalid_argument("embedding needs at least three points");
  if (!fidelity.empty() && fidelity.size() != n) throw std::invalid_argument("fidelity channel size mismatch");

  Embedding2D e;
  e.x.assign(n, 0.0);
  e.y.assign(n, 0.0);
  e.stress.assign(n, 0.0);
  e.fidelity.assign(fidelity.begin(), fidelity.end());

  double largest = 0.0;
  for (double v : dm.data()) largest = std::max(largest, v);
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t first = pick(rng);
  if (largest == 0.0) {
    e.collapsed = true;
    e.placement.push_back(first);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != first) e.placement.push_back(i);
    }
    return e;
  }

  std::vector<bool> placed(n, false);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  auto place = [&](std::size_t k, double x, double y) {
    e.x[k] = x;
    e.y[k] = y;
    placed[k] = true;
    e.placement.push_back(k);
    for (std::size_t j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], dm(k, j));
  };
  auto next_point = [&] {
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!placed[j] && (best == n || nearest[j] < nearest[best])) best = j;
    }
    return best;
  };
  auto stress_at = [&](std::size_t k, double x, double y) {
    double s = 0.0;
    for (std::size_t j : e.placement) s += std::abs(std::hypot(x - e.x[j], y - e.y[j]) - dm(j, k));
    return s;
  };

  place(first, 0.0, 0.0);
  const std::size_t second = next_point();
  place(second, dm(first, second), 0.0);
  {
    const std::size_t third = next_point();
    const double a = dm(first, second);
    const double b = dm(first, third);
    const double c = dm(second, third);
    double x = 0.0;
    double y = 0.0;
    if (a > 0.0) {
      x = (a * a + b * b - c * c) / (2.0 * a);
      y = std::sqrt(std::max(0.0, b * b - x * x));
    } else {
      x = b;
    }
    e.stress[third] = stress_at(third, x, y);
    place(third, x, y);
  }

  NelderMeadParams nm;
  nm.x_tolerance = 1e-13 * std::max(1.0, largest);
  nm.f_tolerance = 1e-15 * std::max(1.0, largest);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t k = next_point(); k < n; k = next_point()) {
    // Start around the closest placed point, at the distance it should have.
    std::size_t anchor = e.placement.front();
    for (std::size_t j : e.placement) {
      if (dm(j, k) < dm(anchor, k)) anchor = j;
    }
    const double r = dm(anchor, k);
    nm.initial_step = std::max(0.1 * largest, 1e-6);
    NelderMeadResult best{{0.0, 0.0}, std::numeric_limits<double>::infinity(), 0};
    for (std::size_t attempt = 0; attempt < std::max<std::size_t>(restarts, 1); ++attempt) {
      const double phi = angle(rng);
      const std::vector<double> start{e.x[anchor] + r * std::cos(phi), e.y[anchor] + r * std::sin(phi)};
      auto res = nelder_mead([&](const std::vector<double>& p) { return stress_at(k, p[0], p[1]); }, start, nm);
      if (res.value < best.value) best = std::move(res);
    }
    e.stress[k] = best.value;
    place(k, best.x[0], best.x[1]);
  }
  return e;
}

}  // namespace qmoves
