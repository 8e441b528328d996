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

#include "qmoves/optim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qmoves/control/transform.hpp"
#include "qmoves/errors.hpp"

namespace qmoves {

void OptimizerParams::check() const {
  if (step_size < 0.0 || !(initial_change > 0.0)) throw std::invalid_argument("step sizes must be positive");
  if (!(fidelity_goal > 0.0 && fidelity_goal <= 1.0)) {
    throw std::invalid_argument("fidelity goal must lie in (0, 1]");
  }
  if (stall_window == 0 || max_backtracks == 0) {
    throw std::invalid_argument("stall window and backtrack budget must be positive");
  }
  if (gradient_regularization < 0.0) throw std::invalid_argument("regularization must be >= 0");
}

const char* to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::GoalReached: return "goal-reached";
    case StopReason::MaxIterations: return "max-iterations";
    case StopReason::Stalled: return "stalled";
    case StopReason::LineSearchFailed: return "line-search-failed";
  }
  return "unknown";
}

namespace {

// Controls stacked as [x0 / x_range..., amp / amp_range...]; endpoint
// entries are carried along but never moved.
using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

struct Layout {
  std::size_t samples;
  double x_range;
  double amp_range;

  Vec normalized_gradient(const FidelityGradient& g) const {
    Vec out(2 * samples, 0.0);
    for (std::size_t k = 1; k + 1 < samples; ++k) {
      out[k] = g.x0[k] * x_range;
      out[samples + k] = g.amp[k] * amp_range;
    }
    return out;
  }

  Vec normalized(const ControlPath& p) const {
    Vec out(2 * samples);
    for (std::size_t k = 0; k < samples; ++k) {
      out[k] = p.x0()[k] / x_range;
      out[samples + k] = p.amp()[k] / amp_range;
    }
    return out;
  }

  ControlPath moved(const ControlPath& p, const Vec& d, double alpha) const {
    ControlPath out = p;
    for (std::size_t k = 1; k + 1 < samples; ++k) {
      out.x0()[k] += alpha * d[k] * x_range;
      out.amp()[k] += alpha * d[samples + k] * amp_range;
    }
    return out;
  }
};

// Solves (I - lambda D2) z = g on each control's interior with zero ends.
void sobolev_smooth(Vec& v, std::size_t samples, double lambda) {
  if (lambda <= 0.0 || samples < 3) return;
  const std::size_t m = samples - 2;
  Vec c(m);
  Vec z(m);
  for (std::size_t block = 0; block < 2; ++block) {
    double* g = v.data() + block * samples + 1;
    const double diag = 1.0 + 2.0 * lambda;
    const double off = -lambda;
    c[0] = off / diag;
    z[0] = g[0] / diag;
    for (std::size_t i = 1; i < m; ++i) {
      const double den = diag - off * c[i - 1];
      c[i] = off / den;
      z[i] = (g[i] - off * z[i - 1]) / den;
    }
    for (std::size_t i = m - 1; i-- > 0;) z[i] -= c[i] * z[i + 1];
    std::copy(z.begin(), z.end(), g);
  }
}

void require_finite(double f, std::size_t iteration) {
  if (!std::isfinite(f)) {
    std::ostringstream msg;
    msg << "non-finite fidelity at iteration " << iteration;
    throw NumericalError(iteration, msg.str());
  }
}

}  // namespace

OptimizeResult optimize(FidelityEvaluator& evaluator, const ControlPath& seed,
                        const OptimizerParams& params, Lineage lineage) {
  params.check();
  const ProblemConfig& cfg = evaluator.problem().cfg;
  if (const auto v = validate(seed, cfg); !v.empty()) {
    throw std::invalid_argument("invalid seed: " + v.front().message);
  }
  const std::size_t start_props = evaluator.propagations();

  OptimizeResult result{Solution{"", seed, 0.0, std::move(lineage), 0, {}, nullptr},
                        StopReason::MaxIterations, 0};
  Solution& sol = result.solution;

  const Layout layout{seed.samples(), cfg.tweezer_bounds.x_range(), cfg.tweezer_bounds.amp_range()};
  ControlPath current = seed;
  FidelityGradient grad = evaluator.gradient(current);
  require_finite(grad.fidelity, 0);
  double fid = grad.fidelity;
  sol.history.push_back(fid);

  auto finish = [&](StopReason reason) {
    sol.path = current;
    sol.fidelity = fid;
    sol.iterations = sol.history.size() - 1;
    result.reason = reason;
    result.propagations = evaluator.propagations() - start_props;
    return result;
  };

  if (fid >= params.fidelity_goal) return finish(StopReason::GoalReached);
  if (seed.steps() < 2) return finish(StopReason::Stalled);

  std::deque<std::pair<Vec, Vec>> memory;  // (s, y) for the minimization of -F
  Vec g = layout.normalized_gradient(grad);
  double steepest_alpha = params.step_size;
  std::size_t small_gains = 0;

  for (std::size_t it = 1; it <= params.max_iters; ++it) {
    // Ascent direction: the two-loop recursion is linear, so feeding it +grad F
    // with (s, y) pairs of -F yields the ascent step directly.
    Vec d = g;
    bool quasi_newton = !memory.empty();
    if (quasi_newton) {
      std::vector<double> a(memory.size());
      for (std::size_t i = memory.size(); i-- > 0;) {
        const auto& [s, y] = memory[i];
        a[i] = dot(s, d) / dot(y, s);
        for (std::size_t j = 0; j < d.size(); ++j) d[j] -= a[i] * y[j];
      }
      const auto& [s_last, y_last] = memory.back();
      const double gamma = dot(s_last, y_last) / dot(y_last, y_last);
      sobolev_smooth(d, layout.samples, params.gradient_regularization);
      for (auto& v : d) v *= gamma;
      for (std::size_t i = 0; i < memory.size(); ++i) {
        const auto& [s, y] = memory[i];
        const double b = dot(y, d) / dot(y, s);
        for (std::size_t j = 0; j < d.size(); ++j) d[j] += s[j] * (a[i] - b);
      }
      if (dot(d, g) <= 0.0) {
        memory.clear();
        quasi_newton = false;
        d = g;
      }
    }
    if (!quasi_newton) sobolev_smooth(d, layout.samples, params.gradient_regularization);

    double alpha = 1.0;
    if (!quasi_newton) {
      if (steepest_alpha <= 0.0) {
        double dmax = 0.0;
        for (double v : d) dmax = std::max(dmax, std::abs(v));
        if (dmax == 0.0) return finish(StopReason::Stalled);
        steepest_alpha = params.initial_change / dmax;
      }
      alpha = steepest_alpha;
    }

    bool accepted = false;
    ControlPath trial = current;
    FidelityGradient trial_grad;
    for (std::size_t bt = 0; bt < params.max_backtracks; ++bt) {
      trial = project(layout.moved(current, d, alpha), cfg).path;
      trial_grad = evaluator.gradient(trial);
      require_finite(trial_grad.fidelity, it);
      if (trial_grad.fidelity > fid) {
        accepted = true;
        break;
      }
      alpha *= 0.3;
    }

    if (!accepted) {
      if (quasi_newton) {
        memory.clear();
        continue;
      }
      return finish(StopReason::LineSearchFailed);
    }

    if (!quasi_newton) steepest_alpha = alpha * 2.0;

    const Vec g_new = layout.normalized_gradient(trial_grad);
    Vec s = layout.normalized(trial);
    const Vec prev = layout.normalized(current);
    Vec y(g.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      s[j] -= prev[j];
      y[j] = g[j] - g_new[j];  // gradient of -F
    }
    if (params.memory > 0 && dot(s, y) > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      memory.emplace_back(std::move(s), std::move(y));
      if (memory.size() > params.memory) memory.pop_front();
    }

    const double gain = trial_grad.fidelity - fid;
    current = std::move(trial);
    fid = trial_grad.fidelity;
    g = g_new;
    sol.history.push_back(fid);

    if (fid >= params.fidelity_goal) return finish(StopReason::GoalReached);
    small_gains = gain < params.stall_tolerance ? small_gains + 1 : 0;
    if (small_gains >= params.stall_window) return finish(StopReason::Stalled);
  }
  return finish(StopReason::MaxIterations);
}

}  // namespace qmoves
