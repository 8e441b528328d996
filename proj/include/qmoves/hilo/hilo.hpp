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

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qmoves/kass/campaign.hpp"

namespace qmoves {

/// Three-parameter seed: a fast move from the target trap to x1, a slow move
/// to x2 reached at time t2, then a straight return to the target trap.
struct HiloParams {
  double x1 = 0.0;
  double x2 = 0.0;
  double t2 = 0.0;

  friend bool operator==(const HiloParams&, const HiloParams&) = default;
};

/// Amplitude profile of the seed: held at the target trap amplitude until t1,
/// then relaxing exponentially toward `settle_amplitude`.
struct HiloShape {
  double settle_amplitude = -150.0;
  /// Decay time; empty means t2 - t1.
  std::optional<double> tau;
};

/// Time of the first turning point: |x1 - x_t| at max_speed.
double hilo_t1(const HiloParams& p, const ProblemConfig& cfg) noexcept;

/// Whether `p` can be executed within `duration` under the bounds of `cfg`.
bool hilo_feasible(const HiloParams& p, double duration, const ProblemConfig& cfg) noexcept;

/// The seed path on the dt grid. Both end samples equal the target trap
/// configuration. Throws InfeasibleError if !hilo_feasible(p, duration, cfg).
ControlPath hilo_path(const HiloParams& p, double duration, const ProblemConfig& cfg,
                      const HiloShape& shape = {});

struct DirectSearchParams {
  double duration = 0.15;
  std::array<std::size_t, 3> grid{5, 5, 5};  // x1, x2, t2
  /// Evaluate at most this many feasible grid points, evenly spread; 0 means
  /// all of them.
  std::size_t budget = 0;
  OptimizerParams optimizer{.max_iters = 150};
  HiloShape shape{};
  std::size_t workers = 0;
};

struct HiloResult {
  HiloParams params;
  double seed_fidelity = 0.0;
  Solution solution;
};

/// Feasible grid points in evaluation order: x1 over [x_s, x_s + 0.3], x2
/// over [x_t, x_s], t2 over [0.3 T, 0.9 T], before the budget is applied.
std::vector<HiloParams> hilo_grid(const DirectSearchParams& params, const ProblemConfig& cfg);

/// Optimizes the seed of every selected grid point; ranked by fidelity,
/// best first. Throws std::invalid_argument if no grid point is feasible.
std::vector<HiloResult> direct_search(const TransportProblem& problem,
                                      const DirectSearchParams& params);

struct HiloCampaignParams {
  DirectSearchParams search{};
  std::size_t top_k = 1;
  double t_min = 0.07;
  double t_max = 0.40;
  OptimizerParams sweep_optimizer{.max_iters = 100};
};

/// Sweeps the top_k direct-search results down to t_min and up to t_max.
/// Families come in pairs (down, up) per result.
CampaignResult hilo_campaign(const TransportProblem& problem, const HiloCampaignParams& params,
                             SolutionArchive* archive = nullptr, const FamilyCallback& done = {});

/// Same, from an existing ranked search.
CampaignResult hilo_sweeps(const TransportProblem& problem, const std::vector<HiloResult>& ranked,
                           const HiloCampaignParams& params, SolutionArchive* archive = nullptr,
                           const FamilyCallback& done = {});

}  // namespace qmoves
