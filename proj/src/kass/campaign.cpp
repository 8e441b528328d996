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

#include "qmoves/kass/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qmoves {

void KassParams::check() const {
  if (n_seeds == 0) throw std::invalid_argument("campaign needs at least one seed");
  if (!(t_start > t_min)) throw std::invalid_argument("t_start must exceed t_min");
  root_optimizer.check();
  sweep_optimizer.check();
}

void run_parallel(const TransportProblem& problem, std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t, FidelityEvaluator&)>& job) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    FidelityEvaluator evaluator(problem);
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i, evaluator);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (first_error) std::rethrow_exception(first_error);
}

CampaignResult kass_campaign(const TransportProblem& problem, const KassParams& params,
                             SolutionArchive* archive, const FamilyCallback& done) {
  params.check();
  const auto& cfg = problem.cfg;
  std::vector<std::optional<SweepFamily>> slots(params.n_seeds);
  std::vector<std::string> errors(params.n_seeds);

  run_parallel(problem, params.n_seeds, params.workers, [&](std::size_t i, FidelityEvaluator& ev) {
    try {
      SeedSpectrum spectrum = params.spectrum;
      spectrum.rng_seed += i;
      const auto seed = random_sin_seed(cfg, params.t_start, spectrum).path;
      const std::string id = "kass" + std::to_string(spectrum.rng_seed);
      auto root = optimize(ev, seed, params.root_optimizer, Lineage{SeedKind::Random, "", id});
      root.solution.id = id;
      auto family = sweep_down(ev, root.solution, params.t_min, params.sweep_optimizer);
      if (archive) {
        for (const auto& m : family.members) archive->append(m);
      }
      if (family.error) errors[i] = "seed " + std::to_string(spectrum.rng_seed) + ": " + *family.error;
      if (done) done(family);
      slots[i] = std::move(family);
    } catch (const std::exception& e) {
      errors[i] = "seed " + std::to_string(params.spectrum.rng_seed + i) + ": " + e.what();
    }
  });

  CampaignResult out;
  for (std::size_t i = 0; i < params.n_seeds; ++i) {
    if (!errors[i].empty()) out.failures.push_back(errors[i]);
    if (slots[i]) out.families.push_back(std::move(*slots[i]));
  }
  out.envelope = envelope_of(out.families);
  out.apparent_qsl = apparent_qsl(out.envelope);
  return out;
}

std::vector<Solution> random_direct(const TransportProblem& problem, double duration, std::size_t n_seeds,
                                    const SeedSpectrum& spectrum, const OptimizerParams& optimizer,
                                    std::size_t workers) {
  optimizer.check();
  if (n_seeds == 0) throw std::invalid_argument("random_direct needs at least one seed");
  std::vector<std::optional<Solution>> slots(n_seeds);
  run_parallel(problem, n_seeds, workers, [&](std::size_t i, FidelityEvaluator& ev) {
    SeedSpectrum sp = spectrum;
    sp.rng_seed += i;
    const std::string id = "rand" + std::to_string(sp.rng_seed);
    auto r = optimize(ev, random_sin_seed(problem.cfg, duration, sp).path, optimizer,
                      Lineage{SeedKind::Random, "", id});
    r.solution.id = id;
    slots[i] = std::move(r.solution);
  });
  std::vector<Solution> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  std::stable_sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) { return a.fidelity > b.fidelity; });
  return out;
}

}  // namespace qmoves
