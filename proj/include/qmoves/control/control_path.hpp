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
#include <vector>

#include "qmoves/physics/problem.hpp"

namespace qmoves {

/// Tweezer position and amplitude sampled at t_k = k * dt, k = 0..N.
class ControlPath {
 public:
  ControlPath(double dt, std::vector<double> x0, std::vector<double> amp);

  /// Constant controls over N steps.
  static ControlPath constant(double dt, std::size_t steps, double x0, double amp);

  double dt() const noexcept { return dt_; }
  std::size_t steps() const noexcept { return x0_.size() - 1; }
  std::size_t samples() const noexcept { return x0_.size(); }
  double duration() const noexcept { return static_cast<double>(steps()) * dt_; }
  double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt_; }

  const std::vector<double>& x0() const noexcept { return x0_; }
  const std::vector<double>& amp() const noexcept { return amp_; }
  std::vector<double>& x0() noexcept { return x0_; }
  std::vector<double>& amp() noexcept { return amp_; }

  /// Piecewise-linear evaluation; t is clamped to [0, T].
  double x0_at(double t) const noexcept;
  double amp_at(double t) const noexcept;

  friend bool operator==(const ControlPath&, const ControlPath&) = default;

 private:
  double dt_;
  std::vector<double> x0_;
  std::vector<double> amp_;
};

/// Structure covers malformed samples (NaN, infinities).
enum class ViolationKind { Structure, PositionBounds, AmplitudeBounds, Speed, Duration };

struct Violation {
  ViolationKind kind;
  std::size_t index;  // offending sample (for Speed: the later sample of the step)
  std::string message;
};

const char* to_string(ViolationKind kind) noexcept;

/// All constraint violations of `path` under `cfg`; empty means valid.
std::vector<Violation> validate(const ControlPath& path, const ProblemConfig& cfg);

/// Tolerance on |dx0|/dt above max_speed that still counts as feasible.
inline constexpr double kSpeedSlack = 1e-9;

}  // namespace qmoves
