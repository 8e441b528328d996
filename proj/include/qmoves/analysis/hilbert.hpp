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

#include <vector>

#include "qmoves/optim/transport.hpp"

namespace qmoves {

struct HilbertVelocity {
  std::vector<double> time;
  /// Q(t_k) = Im <xi|H(t_k)|psi_k>, xi the normalized part of the
  /// back-propagated target orthogonal to psi_k.
  std::vector<double> q;
  /// Trapezoid time average of q over [0, T].
  double mean = 0.0;
  double fidelity = 0.0;
};

/// Direct Hilbert velocity along `path`. Throws UndefinedXiError at the
/// first sample whose fidelity is within 1e-12 of 1.
HilbertVelocity hilbert_velocity(const TransportProblem& problem, const ControlPath& path);

}  // namespace qmoves
