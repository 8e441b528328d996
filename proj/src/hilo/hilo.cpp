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

#include "qmoves/hilo/hilo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qmoves/errors.hpp"

namespace qmoves {

double hilo_t1(const HiloParams& p, const ProblemConfig& cfg) noexcept {
  return std::abs(p.x1 - cfg.target_trap.x0) / cfg.tweezer_bounds.max_speed;
}

bool hilo_feasible(const HiloParams& p, double duration, const ProblemConfig& cfg) noexcept {
  const auto& b = cfg.tweezer_bounds;
  const double v = b.max_speed * (1.0 + 1e-12);
  const double t1 = hilo_t1(p, cfg);
  if (p.x1 < b.x_min || p.x1 > b.x_max || p.x2 < b.x_min || p.x2 > b.x_max) return false;
  if (!(t1 < p.t2 && p.t2 < duration)) return false;
  if (std::abs(p.x2 - p.x1) > v * (p.t2 - t1)) return false;
  if (std::abs(cfg.target_trap.x0 - p.x2) > v * (duration - p.t2)) return false;
  return true;
}

ControlPath hilo_path(const HiloParams& p, double duration, const ProblemConfig& cfg,
                      const HiloShape& shape) {
  if (!hilo_feasible(p, duration, cfg)) {
    std::ostringstream msg;
    msg << "infeasible seed (x1 = " << p.x1 << ", x2 = " << p.x2 << ", t2 = " << p.t2
        << ") for T = " << duration;
    throw InfeasibleError(msg.str());
  }
  const double xt = cfg.target_trap.x0;
  const double a_hold = cfg.target_trap.amplitude;
  const double t1 = hilo_t1(p, cfg);
  const double tau = shape.tau.value_or(p.t2 - t1);
  if (!(tau > 0.0)) throw std::invalid_argument("amplitude decay time must be positive");
  const std::size_t n = static_cast<std::size_t>(steps_for(duration, cfg.dt));

  std::vector<double> x(n + 1);
  std::vector<double> a(n + 1);
  const double amp_lo = cfg.tweezer_bounds.amp_min;
  const double amp_hi = cfg.tweezer_bounds.amp_max;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    if (t <= t1) {
      x[k] = t1 > 0.0 ? xt + (p.x1 - xt) * (t / t1) : xt;
      a[k] = a_hold;
    } else {
      x[k] = t <= p.t2 ? p.x1 + (p.x2 - p.x1) * (t - t1) / (p.t2 - t1)
                       : p.x2 + (xt - p.x2) * (t - p.t2) / (duration - p.t2);
      a[k] = shape.settle_amplitude + (a_hold - shape.settle_amplitude) * std::exp(-(t - t1) / tau);
    }
    a[k] = std::clamp(a[k], amp_lo, amp_hi);
  }
  x.front() = x.back() = xt;
  a.front() = a.back() = a_hold;
  return ControlPath(cfg.dt, std::move(x), std::move(a));
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 1) return {0.5 * (lo + hi)};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

}  // namespace

std::vector<HiloParams> hilo_grid(const DirectSearchParams& params, const ProblemConfig& cfg) {
  for (auto n : params.grid) {
    if (n == 0) throw std::invalid_argument("search grid dimensions must be positive");
  }
  const double xs = cfg.static_trap.x0;
  const double xt = cfg.target_trap.x0;
  const double T = params.duration;
  std::vector<HiloParams> out;
  for (double x1 : linspace(xs, xs + 0.3, params.grid[0])) {
    for (double x2 : linspace(xt, xs, params.grid[1])) {
      for (double t2 : linspace(0.3 * T, 0.9 * T, params.grid[2])) {
        const HiloParams p{x1, x2, t2};
        if (hilo_feasible(p, T, cfg)) out.push_back(p);
      }
    }
  }
  return out;
}

std::vector<HiloResult> direct_search(const TransportProblem& problem,
                                      const DirectSearchParams& params) {
  params.optimizer.check();
  const auto& cfg = problem.cfg;
  auto points = hilo_grid(params, cfg);
  if (points.empty()) throw std::invalid_argument("no feasible seed on the search grid");
  if (params.budget > 0 && params.budget < points.size()) {
    std::vector<HiloParams> picked;
    for (std::size_t i = 0; i < params.budget; ++i) {
      picked.push_back(points[i * points.size() / params.budget]);
    }
    points = std::move(picked);
  }

  std::vector<std::optional<HiloResult>> slots(points.size());
  run_parallel(problem, points.size(), params.workers, [&](std::size_t i, FidelityEvaluator& ev) {
    const auto seed = hilo_path(points[i], params.duration, cfg, params.shape);
    std::ostringstream id;
    id << "hilo" << i;
    auto r = optimize(ev, seed, params.optimizer, Lineage{SeedKind::Hilo, "", id.str()});
    r.solution.id = id.str();
    slots[i] = HiloResult{points[i], r.solution.history.front(), std::move(r.solution)};
  });

  std::vector<HiloResult> ranked;
  for (auto& s : slots) ranked.push_back(std::move(*s));
  std::stable_sort(ranked.begin(), ranked.end(), [](const HiloResult& a, const HiloResult& b) {
    return a.solution.fidelity > b.solution.fidelity;
  });
  return ranked;
}

CampaignResult hilo_sweeps(const TransportProblem& problem, const std::vector<HiloResult>& ranked,
                           const HiloCampaignParams& params, SolutionArchive* archive,
                           const FamilyCallback& done) {
  params.sweep_optimizer.check();
  const std::size_t k = std::min(params.top_k, ranked.size());
  if (k == 0) throw std::invalid_argument("hilo campaign needs at least one search result");
  const double T = params.search.duration;
  if (!(params.t_min < T && T <= params.t_max)) {
    throw std::invalid_argument("hilo sweeps need t_min < T <= t_max");
  }
  // Job 2i sweeps result i down, job 2i + 1 sweeps it up.
  std::vector<std::optional<SweepFamily>> slots(2 * k);
  std::vector<std::string> errors(2 * k);
  run_parallel(problem, 2 * k, params.search.workers, [&](std::size_t j, FidelityEvaluator& ev) {
    const Solution& root = ranked[j / 2].solution;
    try {
      auto family = j % 2 == 0 ? sweep_down(ev, root, params.t_min, params.sweep_optimizer)
                               : sweep_up(ev, root, params.t_max, params.sweep_optimizer);
      if (j % 2 == 1) family.root_id += "+up";
      if (archive) {
        // Member ids stay root@steps: the two directions never share a duration.
        for (std::size_t m = (j % 2 == 0 ? 0 : 1); m < family.members.size(); ++m) {
          archive->append(family.members[m]);
        }
      }
      if (family.error) errors[j] = root.id + ": " + *family.error;
      if (done) done(family);
      slots[j] = std::move(family);
    } catch (const std::exception& e) {
      errors[j] = root.id + ": " + e.what();
    }
  });

  CampaignResult out;
  for (std::size_t j = 0; j < slots.size(); ++j) {
    if (!errors[j].empty()) out.failures.push_back(errors[j]);
    if (slots[j]) out.families.push_back(std::move(*slots[j]));
  }
  out.envelope = envelope_of(out.families);
  out.apparent_qsl = apparent_qsl(out.envelope);
  return out;
}

CampaignResult hilo_campaign(const TransportProblem& problem, const HiloCampaignParams& params,
                             SolutionArchive* archive, const FamilyCallback& done) {
  return hilo_sweeps(problem, direct_search(problem, params.search), params, archive, done);
}

}  // namespace qmoves
