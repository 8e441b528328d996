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
#include <string>

#include "qmoves/optim/solution.hpp"
#include "qmoves/optim/transport.hpp"

namespace qmoves {

struct OptimizerParams {
  /// Initial step in normalized control units; 0 picks it from the first
  /// gradient so the largest normalized change is `initial_change`.
  double step_size = 0.0;
  double initial_change = 0.02;
  std::size_t max_iters = 200;
  double fidelity_goal = 0.999;
  /// Stop once `stall_window` consecutive accepted iterations each gain
  /// less than this.
  double stall_tolerance = 1e-7;
  std::size_t stall_window = 5;
  /// Sobolev smoothing weight on the ascent direction; 0 is plain gradient.
  double gradient_regularization = 0.0;
  /// Backtracking attempts per iteration before declaring a stall.
  std::size_t max_backtracks = 25;
  /// L-BFGS memory; 0 gives steepest ascent.
  std::size_t memory = 8;

  void check() const;
};

enum class StopReason { GoalReached, MaxIterations, Stalled, LineSearchFailed };
const char* to_string(StopReason r) noexcept;

struct OptimizeResult {
  Solution solution;
  StopReason reason = StopReason::MaxIterations;
  std::size_t propagations = 0;
};

/// Monotone local ascent of the final-state fidelity starting from `seed`.
///
/// Each iteration moves along a (quasi-Newton preconditioned) gradient in
/// controls normalized by their bound ranges, projects onto the feasible
/// set with both endpoints pinned, and accepts the trial only if the
/// fidelity strictly increases; otherwise the step is shrunk. The returned
/// history is therefore non-decreasing.
///
/// Throws std::invalid_argument for an invalid seed and NumericalError if a
/// fidelity evaluation is not finite.
OptimizeResult optimize(FidelityEvaluator& evaluator, const ControlPath& seed,
                        const OptimizerParams& params, Lineage lineage = {});

}  // namespace qmoves
