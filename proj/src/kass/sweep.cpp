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

#include "qmoves/kass/sweep.hpp"

#include <stdexcept>

#include "qmoves/control/transform.hpp"

namespace qmoves {

std::string member_id(const std::string& root_id, std::size_t steps) {
  return root_id + "@" + std::to_string(steps);
}

namespace {

SweepFamily sweep(FidelityEvaluator& evaluator, const Solution& root, std::size_t last_steps,
                  bool descending, const OptimizerParams& params) {
  const auto& cfg = evaluator.problem().cfg;
  SweepFamily family;
  family.root_id = root.id;
  family.descending = descending;
  family.members.push_back(root);
  const std::string family_root = root.lineage.root.empty() ? root.id : root.lineage.root;

  while (family.members.back().path.steps() != last_steps) {
    const Solution& prev = family.members.back();
    const ControlPath stretched =
        descending ? contract_by_step(prev.path) : dilate_by_step(prev.path);
    try {
      const ControlPath seed = project(stretched, cfg).path;
      auto result = optimize(evaluator, seed, params, Lineage{SeedKind::Sweep, prev.id, family_root});
      result.solution.id = member_id(root.id, seed.steps());
      family.members.push_back(std::move(result.solution));
    } catch (const std::exception& e) {
      family.error = "T = " + std::to_string(stretched.duration()) + ": " + e.what();
      break;
    }
  }
  return family;
}

}  // namespace

SweepFamily sweep_down(FidelityEvaluator& evaluator, const Solution& root, double t_min,
                       const OptimizerParams& params) {
  const double dt = root.path.dt();
  const long last = steps_for(t_min, dt);
  if (!(t_min >= dt - 1e-12) || last >= static_cast<long>(root.path.steps())) {
    throw std::invalid_argument("sweep_down needs root.T > t_min >= dt");
  }
  return sweep(evaluator, root, static_cast<std::size_t>(last), true, params);
}

SweepFamily sweep_up(FidelityEvaluator& evaluator, const Solution& root, double t_max,
                     const OptimizerParams& params) {
  const long last = steps_for(t_max, root.path.dt());
  if (last < static_cast<long>(root.path.steps())) {
    throw std::invalid_argument("sweep_up needs t_max >= root.T");
  }
  return sweep(evaluator, root, static_cast<std::size_t>(last), false, params);
}

}  // namespace qmoves
