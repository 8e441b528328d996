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
#include <optional>
#include <string>
#include <vector>

#include "qmoves/optim/optimizer.hpp"

namespace qmoves {

/// Solutions traced from one root across durations, one dt apart. The root
/// is the first member; each later member was seeded by contracting (or
/// dilating) its predecessor by one step and re-optimizing.
struct SweepFamily {
  std::string root_id;
  bool descending = true;
  std::vector<Solution> members;
  /// Set when an optimizer error cut the family short.
  std::optional<std::string> error;

  std::size_t size() const noexcept { return members.size(); }
};

/// Sweeps from root.T down to t_min (inclusive). Throws std::invalid_argument
/// unless root.T > t_min >= dt.
SweepFamily sweep_down(FidelityEvaluator& evaluator, const Solution& root, double t_min,
                       const OptimizerParams& params);

/// Sweeps from root.T up to t_max (inclusive); t_max == root.T gives the
/// root alone.
SweepFamily sweep_up(FidelityEvaluator& evaluator, const Solution& root, double t_max,
                     const OptimizerParams& params);

/// Id of the member of family `root_id` with `steps` time steps.
std::string member_id(const std::string& root_id, std::size_t steps);

}  // namespace qmoves
