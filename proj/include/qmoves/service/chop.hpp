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

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmoves/io/archive.hpp"
#include "qmoves/kass/sweep.hpp"
#include "qmoves/service/store.hpp"

namespace qmoves::service {

struct ChopParams {
  double t_min = 0.07;
  double t_max = 0.40;
  OptimizerParams seed_optimizer{.max_iters = 300};
  OptimizerParams sweep_optimizer{.max_iters = 100};

  void check() const;
};

/// Records strictly shorter than max_duration, best server fidelity first
/// (ties by id), cut to ceil(top_fraction * count). Deterministic in the
/// record set.
std::vector<TrajectoryRecord> select_records(std::span<const TrajectoryRecord> records,
                                             const ChopSelection& rule);

/// Id of the optimized root grown from `record_id` in job `job_id`.
std::string chop_root_id(const std::string& job_id, const std::string& record_id);

/// Called after each input record with the number processed so far.
using ChopProgress = std::function<void(std::size_t done, std::span<const SweepFamily> families)>;

/// Optimizes each record's path (lineage: player, parent = record id), then
/// sweeps the optimum down to t_min and up to t_max. Two families per
/// record; the up family's root_id carries a "+up" suffix. Every solution is
/// appended to `archive` once.
std::vector<SweepFamily> run_chop(FidelityEvaluator& evaluator, std::span<const TrajectoryRecord> selected,
                                  const std::string& job_id, const ChopParams& params,
                                  SolutionArchive* archive = nullptr, const ChopProgress& progress = {});

/// Follows parent links from solution `id` to the player record that seeded
/// it. nullopt when a link is missing or the chain ends elsewhere.
std::optional<std::string> seeding_record(const std::string& id,
                                          const std::map<std::string, Lineage>& lineages);

}  // namespace qmoves::service
