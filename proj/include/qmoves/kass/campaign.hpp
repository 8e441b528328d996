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
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmoves/control/seeds.hpp"
#include "qmoves/io/archive.hpp"
#include "qmoves/kass/envelope.hpp"

namespace qmoves {

struct KassParams {
  std::size_t n_seeds = 16;
  double t_start = 0.40;
  double t_min = 0.07;
  /// Seed i draws its coefficients with rng_seed = spectrum.rng_seed + i.
  SeedSpectrum spectrum{};
  OptimizerParams root_optimizer{.max_iters = 300};
  OptimizerParams sweep_optimizer{.max_iters = 100};
  /// Worker threads; 0 uses the hardware concurrency.
  std::size_t workers = 0;

  void check() const;
};

struct CampaignResult {
  std::vector<SweepFamily> families;
  Envelope envelope;
  std::optional<double> apparent_qsl;
  /// One message per seed that failed.
  std::vector<std::string> failures;
};

/// Called after each finished family, from the worker that ran it.
using FamilyCallback = std::function<void(const SweepFamily&)>;

/// Random sine seeds optimized at t_start and swept down to t_min. Families
/// appear in seed order regardless of scheduling. Every member is appended
/// to `archive` when one is given.
CampaignResult kass_campaign(const TransportProblem& problem, const KassParams& params,
                             SolutionArchive* archive = nullptr, const FamilyCallback& done = {});

/// Optimizes n_seeds random sine seeds at a single duration, without
/// sweeps. Seed i uses rng_seed = spectrum.rng_seed + i and id "rand<seed>".
/// Returned best first (stable in seed order).
std::vector<Solution> random_direct(const TransportProblem& problem, double duration, std::size_t n_seeds,
                                    const SeedSpectrum& spectrum, const OptimizerParams& optimizer,
                                    std::size_t workers = 0);

/// Runs `count` independent jobs on `workers` threads (0 = hardware
/// concurrency). `job(i, evaluator)` gets a per-thread evaluator.
void run_parallel(const TransportProblem& problem, std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t, FidelityEvaluator&)>& job);

}  // namespace qmoves
