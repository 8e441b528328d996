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

#include "qmoves/analysis/qsl_fit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

#include "qmoves/errors.hpp"

namespace qmoves {

QslFit qsl_fit(std::span<const double> durations, std::span<const double> fidelities) {
  if (durations.size() != fidelities.size()) throw std::invalid_argument("qsl_fit: size mismatch");
  std::vector<double> t;
  std::vector<double> f;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    if (fidelities[i] < 0.999) {
      t.push_back(durations[i]);
      f.push_back(fidelities[i]);
    }
  }
  const std::size_t n = t.size();
  if (n < 5) throw DegenerateError("qsl_fit needs at least 5 points with F < 0.999");

  // Linear start: asin(sqrt F) = a T + b on the first branch.
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = std::asin(std::sqrt(std::clamp(f[i], 0.0, 1.0)));
    st += t[i];
    sy += y;
    stt += t[i] * t[i];
    sty += t[i] * y;
  }
  const double nn = static_cast<double>(n);
  const double var = stt - st * st / nn;
  if (!(var > 0.0)) throw DegenerateError("qsl_fit: all durations coincide");
  double a = (sty - st * sy / nn) / var;
  double b = (sy - a * st) / nn;

  auto cost = [&](double aa, double bb) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = std::sin(aa * t[i] + bb);
      c += (s * s - f[i]) * (s * s - f[i]);
    }
    return c;
  };
  double c = cost(a, b);
  double lambda = 1e-3;
  for (int it = 0; it < 200; ++it) {
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Eigen::Vector2d jtr = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const double arg = a * t[i] + b;
      const double r = std::sin(arg) * std::sin(arg) - f[i];
      const double d = std::sin(2.0 * arg);  // d sin^2 / d arg
      const Eigen::Vector2d g(d * t[i], d);
      jtj += g * g.transpose();
      jtr += g * r;
    }
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::Matrix2d lhs = jtj;
      lhs.diagonal() *= 1.0 + lambda;
      const Eigen::Vector2d step = lhs.ldlt().solve(-jtr);
      const double c_new = cost(a + step(0), b + step(1));
      if (std::isfinite(c_new) && c_new < c) {
        const double rel = std::abs(step(0)) / std::max(std::abs(a), 1e-300) + std::abs(step(1));
        a += step(0);
        b += step(1);
        c = c_new;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
        if (rel < 1e-15) it = 200;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  if (!(std::abs(a) > 1e-12)) throw DegenerateError("qsl_fit: fidelity does not vary with duration");

  QslFit out;
  out.a = a;
  out.b = b;
  out.t_qsl = (std::numbers::pi / 2.0 - b) / a;
  out.residual = std::sqrt(c / nn);
  out.points = n;
  return out;
}

QslFit qsl_fit(const SweepFamily& family) {
  std::vector<double> t;
  std::vector<double> f;
  for (const auto& m : family.members) {
    t.push_back(m.duration());
    f.push_back(m.fidelity);
  }
  return qsl_fit(t, f);
}

}  // namespace qmoves
