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

// Test-only reference computations. Nothing here may call into the library's
// propagation or diagonalization code.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

/// Lowest eigenvalues of -1/2 d^2/dx^2 + V with a second-order finite
/// difference Laplacian and hard walls at [a, b], n interior points.
inline std::vector<double> fd_eigenvalues(const std::function<double(double)>& v, double a,
                                          double b, int n, int count) {
  const double h = (b - a) / (n + 1);
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n - 1);
  for (int i = 0; i < n; ++i) diag(i) = 1.0 / (h * h) + v(a + (i + 1) * h);
  off.setConstant(-0.5 / (h * h));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

/// Richardson extrapolation of the O(h^2) finite-difference eigenvalue.
inline double fd_richardson_ground(const std::function<double(double)>& v, double a, double b,
                                   int n) {
  const double coarse = fd_eigenvalues(v, a, b, n, 1)[0];
  const double fine = fd_eigenvalues(v, a, b, 2 * n + 1, 1)[0];
  return (4.0 * fine - coarse) / 3.0;
}

/// Ground state by imaginary-time power iteration with a finite-difference
/// Hamiltonian on a periodic grid: psi <- (1 - tau (H - shift)) psi.
inline std::vector<double> imaginary_time_ground(const std::vector<double>& v, double dx,
                                                 int iterations) {
  const std::size_t n = v.size();
  double vmax = v[0];
  double vmin = v[0];
  for (double x : v) {
    vmax = std::max(vmax, x);
    vmin = std::min(vmin, x);
  }
  const double emax = 2.0 / (dx * dx) + vmax;
  const double tau = 1.0 / (emax - vmin);
  std::vector<double> psi(n, 1.0);
  std::vector<double> next(n);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      const double l = psi[(i + n - 1) % n] - 2.0 * psi[i] + psi[(i + 1) % n];
      const double h = -0.5 * l / (dx * dx) + v[i] * psi[i];
      next[i] = psi[i] - tau * (h - vmin * psi[i]);
    }
    double norm = 0.0;
    for (double x : next) norm += x * x * dx;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) psi[i] = next[i] / norm;
  }
  return psi;
}

/// Free Gaussian packet width (std of |psi|^2) after time t, hbar = m = 1.
inline double free_gaussian_width(double sigma0, double t) {
  const double r = t / (2.0 * sigma0 * sigma0);
  return sigma0 * std::sqrt(1.0 + r * r);
}

/// Euclidean projection of z onto {|y_k - y_{k-1}| <= delta, lo <= y_k <= hi
/// for interior k, y_0 and y_n fixed} by Dykstra's alternating projections
/// over three sets: the box, the even-indexed steps and the odd-indexed steps.
inline std::vector<double> dykstra_speed_projection(const std::vector<double>& z, double delta,
                                                    double lo, double hi, int sweeps) {
  const std::size_t n = z.size() - 1;
  std::vector<double> y = z;
  std::vector<std::vector<double>> incr(3, std::vector<double>(z.size(), 0.0));
  auto project_pair = [&](std::vector<double>& v, std::size_t k) {
    const double d = v[k] - v[k - 1];
    if (std::abs(d) <= delta) return;
    const double excess = d - (d > 0 ? delta : -delta);
    const bool left_fixed = k - 1 == 0;
    const bool right_fixed = k == n;
    if (left_fixed && right_fixed) return;
    if (left_fixed) {
      v[k] -= excess;
    } else if (right_fixed) {
      v[k - 1] += excess;
    } else {
      v[k] -= 0.5 * excess;
      v[k - 1] += 0.5 * excess;
    }
  };
  for (int it = 0; it < sweeps; ++it) {
    for (int set = 0; set < 3; ++set) {
      std::vector<double> w(y.size());
      for (std::size_t k = 0; k <= n; ++k) w[k] = y[k] + incr[set][k];
      std::vector<double> p = w;
      if (set == 0) {
        for (std::size_t k = 1; k < n; ++k) p[k] = std::clamp(p[k], lo, hi);
      } else {
        for (std::size_t k = static_cast<std::size_t>(set); k <= n; k += 2) project_pair(p, k);
      }
      for (std::size_t k = 0; k <= n; ++k) incr[set][k] = w[k] - p[k];
      y = p;
    }
  }
  return y;
}

}  // namespace oracle
