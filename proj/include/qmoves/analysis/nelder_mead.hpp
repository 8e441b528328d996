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

#include <cstddef>
#include <functional>
#include <vector>

namespace qmoves {

struct NelderMeadParams {
  /// Edge length of the initial simplex around the start point.
  double initial_step = 0.1;
  /// Stop once the simplex diameter and the spread of its values are below
  /// these.
  double x_tolerance = 1e-12;
  double f_tolerance = 1e-15;
  std::size_t max_evaluations = 20000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free minimization with the standard reflection, expansion,
/// contraction and shrink moves (coefficients 1, 2, 1/2, 1/2).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, const NelderMeadParams& params = {});

}  // namespace qmoves
