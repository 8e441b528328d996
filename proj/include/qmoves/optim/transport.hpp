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

#include "qmoves/control/control_path.hpp"
#include "qmoves/physics/evolve.hpp"
#include "qmoves/physics/wavefunction.hpp"

namespace qmoves {

/// A problem configuration together with its initial and target states.
struct TransportProblem {
  ProblemConfig cfg;
  Wavefunction initial;
  Wavefunction target;

  /// Initial state: ground state of the static trap alone. Target: ground
  /// state of the target trap alone.
  static TransportProblem from_config(const ProblemConfig& cfg);
};

struct FidelityGradient {
  double fidelity = 0.0;
  std::vector<double> x0;   // dF/dx0[k]
  std::vector<double> amp;  // dF/damp[k]
};

/// Fidelity and its exact discrete gradient for one problem. Holds FFT
/// plans and scratch space: one instance per thread.
///
/// With psi_k the forward state at sample k, chi_k the target propagated
/// back to sample k and O = <chi|psi(T)>, the kick at sample k has weight
/// w_k (dt/2 at the ends, dt inside) and
///   dF/du_k = 2 w_k Im( conj(O) <chi_k| dV/du_k |psi_k> ).
class FidelityEvaluator {
 public:
  explicit FidelityEvaluator(const TransportProblem& problem);

  const TransportProblem& problem() const noexcept { return problem_; }

  double fidelity(const ControlPath& path);
  FidelityGradient gradient(const ControlPath& path);

  /// Final state psi(T) for `path`.
  Wavefunction final_state(const ControlPath& path);

  /// Number of forward propagations performed so far (gradients count 2).
  std::size_t propagations() const noexcept { return propagations_; }

 private:
  TransportProblem problem_;
  ControlledEvolution engine_;
  std::vector<cplx> psi_;
  std::vector<cplx> chi_;
  std::vector<cplx> states_;
  std::vector<double> dv_;
  std::size_t propagations_ = 0;
};

}  // namespace qmoves
