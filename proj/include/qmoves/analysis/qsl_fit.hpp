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

#include <span>

#include "qmoves/kass/sweep.hpp"

namespace qmoves {

/// F(T) ~ sin^2(a T + b); t_qsl = (pi/2 - b) / a is where the fit reaches 1.
struct QslFit {
  double a = 0.0;
  double b = 0.0;
  double t_qsl = 0.0;
  /// Root-mean-square fidelity residual over the fitted points.
  double residual = 0.0;
  std::size_t points = 0;
};

/// Least-squares fit over the points with F < 0.999: start from a straight
/// line through asin(sqrt F), then Levenberg-Marquardt. Throws
/// DegenerateError for fewer than 5 such points or a flat F(T).
QslFit qsl_fit(std::span<const double> durations, std::span<const double> fidelities);
QslFit qsl_fit(const SweepFamily& family);

}  // namespace qmoves
