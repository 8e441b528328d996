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

#include "qmoves/service/session.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qmoves/errors.hpp"

namespace qmoves::service {

using nlohmann::json;

json frame_to_json(const Frame& f, const Grid& grid, std::size_t stride) {
  return {{"step", f.step},
          {"t", f.t},
          {"x0", f.x0},
          {"amp", f.amp},
          {"fidelity", f.fidelity},
          {"clamped", f.clamped},
          {"density", f.density},
          {"x_first", grid.x(0)},
          {"x_stride", grid.dx() * static_cast<double>(stride)}};
}

PlaySession::PlaySession(std::string id, const LevelConfig& level, std::shared_ptr<const TransportProblem> problem)
    : id_(std::move(id)),
      level_(level),
      problem_(std::move(problem)),
      engine_(problem_->cfg),
      psi_(problem_->initial.amplitudes().begin(), problem_->initial.amplitudes().end()),
      v_prev_(problem_->cfg.grid.size()),
      v_next_(problem_->cfg.grid.size()),
      x0_{problem_->cfg.target_trap.x0},
      amp_{problem_->cfg.target_trap.amplitude},
      stride_(std::max<std::size_t>(1, problem_->cfg.grid.size() / level.frame_points)) {
  engine_.field().evaluate(x0_.back(), amp_.back(), v_prev_);
}

Frame PlaySession::frame() const {
  const auto& grid = problem_->cfg.grid;
  Frame f;
  f.step = x0_.size() - 1;
  f.t = static_cast<double>(f.step) * problem_->cfg.dt;
  f.x0 = x0_.back();
  f.amp = amp_.back();
  for (std::size_t i = 0; i < psi_.size(); i += stride_) f.density.push_back(std::norm(psi_[i]));
  f.fidelity = std::min(1.0, std::norm(inner_product(problem_->target.amplitudes(), psi_, grid.dx())));
  f.clamped = last_clamped_;
  return f;
}

Frame PlaySession::tick(double t, double x0, double amp) {
  const auto& cfg = problem_->cfg;
  const std::size_t next = x0_.size();
  if (static_cast<double>(next) * cfg.dt > level_.t_max + 1e-9) {
    throw std::out_of_range("session " + id_ + " reached the level's maximum duration");
  }
  if (!std::isfinite(t) || std::abs(t - static_cast<double>(next) * cfg.dt) > 1e-9) {
    throw StructuralError("tick time " + std::to_string(t) + " is not the next sample time " +
                          std::to_string(static_cast<double>(next) * cfg.dt));
  }
  if (!std::isfinite(x0) || !std::isfinite(amp)) throw StructuralError("non-finite tick controls");
  const auto& b = cfg.tweezer_bounds;
  const double reach = b.max_speed * cfg.dt;
  double x = std::clamp(x0, b.x_min, b.x_max);
  x = std::clamp(x, x0_.back() - reach, x0_.back() + reach);
  const double a = std::clamp(amp, b.amp_min, b.amp_max);
  last_clamped_ = x != x0 || a != amp;

  engine_.field().evaluate(x, a, v_next_);
  engine_.propagator().step(psi_, v_prev_, v_next_);
  std::swap(v_prev_, v_next_);
  x0_.push_back(x);
  amp_.push_back(a);
  return frame();
}

ControlPath PlaySession::recording() const { return ControlPath(problem_->cfg.dt, x0_, amp_); }

}  // namespace qmoves::service
