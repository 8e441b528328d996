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

#include "qmoves/control/control_path.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qmoves {

namespace {

double interpolate(const std::vector<double>& s, double dt, double t) noexcept {
  const std::size_t n = s.size() - 1;
  if (n == 0 || t <= 0.0) return s.front();
  const double pos = t / dt;
  if (pos >= static_cast<double>(n)) return s.back();
  const auto k = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(k);
  return s[k] + frac * (s[k + 1] - s[k]);
}

}  // namespace

ControlPath::ControlPath(double dt, std::vector<double> x0, std::vector<double> amp)
    : dt_(dt), x0_(std::move(x0)), amp_(std::move(amp)) {
  if (!(dt_ > 0.0)) throw std::invalid_argument("control path dt must be positive");
  if (x0_.empty() || x0_.size() != amp_.size()) {
    throw std::invalid_argument("control path needs equal, non-empty sample arrays");
  }
}

ControlPath ControlPath::constant(double dt, std::size_t steps, double x0, double amp) {
  return ControlPath(dt, std::vector<double>(steps + 1, x0), std::vector<double>(steps + 1, amp));
}

double ControlPath::x0_at(double t) const noexcept { return interpolate(x0_, dt_, t); }
double ControlPath::amp_at(double t) const noexcept { return interpolate(amp_, dt_, t); }

const char* to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::Structure: return "structure";
    case ViolationKind::PositionBounds: return "position-bounds";
    case ViolationKind::AmplitudeBounds: return "amplitude-bounds";
    case ViolationKind::Speed: return "speed";
    case ViolationKind::Duration: return "duration";
  }
  return "unknown";
}

std::vector<Violation> validate(const ControlPath& path, const ProblemConfig& cfg) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind kind, std::size_t k, auto&&... parts) {
    std::ostringstream msg;
    (msg << ... << parts);
    out.push_back({kind, k, msg.str()});
  };

  if (std::abs(path.dt() - cfg.dt) > 1e-12) {
    report(ViolationKind::Duration, 0, "path dt ", path.dt(), " differs from problem dt ", cfg.dt);
  }

  const auto& b = cfg.tweezer_bounds;
  const auto& x = path.x0();
  const auto& a = path.amp();
  bool finite = true;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!std::isfinite(x[k]) || !std::isfinite(a[k])) {
      report(ViolationKind::Structure, k, "non-finite control at sample ", k);
      finite = false;
      continue;
    }
    if (x[k] < b.x_min || x[k] > b.x_max) {
      report(ViolationKind::PositionBounds, k, "x0[", k, "] = ", x[k], " outside [", b.x_min,
             ", ", b.x_max, "]");
    }
    if (a[k] < b.amp_min || a[k] > b.amp_max) {
      report(ViolationKind::AmplitudeBounds, k, "amp[", k, "] = ", a[k], " outside [", b.amp_min,
             ", ", b.amp_max, "]");
    }
  }
  if (!finite) return out;

  const double limit = b.max_speed * path.dt() * (1.0 + kSpeedSlack) + 1e-15;
  for (std::size_t k = 1; k < x.size(); ++k) {
    const double step = std::abs(x[k] - x[k - 1]);
    if (step > limit) {
      report(ViolationKind::Speed, k, "speed ", step / path.dt(), " between samples ", k - 1,
             " and ", k, " exceeds ", b.max_speed);
    }
  }
  return out;
}

}  // namespace qmoves
