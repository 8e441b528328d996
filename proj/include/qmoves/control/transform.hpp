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

#include "qmoves/control/control_path.hpp"

namespace qmoves {

/// Linear resampling onto `new_steps` steps of the same dt: the new path at
/// time t' equals the old one at t' * N / new_steps. Endpoints are kept.
ControlPath resample(const ControlPath& path, std::size_t new_steps);

/// Time contraction u(t) -> u(t / a) for a in (0, 1); a * N must be an
/// integer so the result stays on the dt grid.
ControlPath contract(const ControlPath& path, double a);
/// Dilation, the a > 1 analogue of contract.
ControlPath dilate(const ControlPath& path, double a);

/// Contraction (dilation) that shortens (lengthens) the path by one dt.
ControlPath contract_by_step(const ControlPath& path);
ControlPath dilate_by_step(const ControlPath& path);

struct Projection {
  ControlPath path;
  std::size_t clipped = 0;
};

/// Nearest feasible path: amplitudes are clamped to their bounds and the
/// positions replaced by the closest (least squares) sequence that respects
/// the position bounds and the per-step displacement limit. The first and
/// last samples are left untouched; a feasible path is returned unchanged.
/// Throws InfeasibleError when the endpoints cannot be joined at max_speed.
Projection project(const ControlPath& path, const ProblemConfig& cfg);

}  // namespace qmoves
