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

#include "qmoves/kass/envelope.hpp"

namespace qmoves {

void Envelope::add(const Solution& sol, const std::string& family_id) {
  const std::size_t steps = sol.path.steps();
  auto it = points_.find(steps);
  if (it == points_.end()) {
    points_.emplace(steps, EnvelopePoint{sol.duration(), sol.fidelity, family_id});
  } else if (sol.fidelity > it->second.best_fidelity) {
    it->second.best_fidelity = sol.fidelity;
    it->second.family_id = family_id;
  }
}

void Envelope::add(const SweepFamily& family) {
  for (const auto& m : family.members) add(m, family.root_id);
}

std::optional<EnvelopePoint> Envelope::at(std::size_t steps) const {
  const auto it = points_.find(steps);
  if (it == points_.end()) return std::nullopt;
  return it->second;
}

Envelope envelope_of(std::span<const SweepFamily> families) {
  Envelope env;
  for (const auto& f : families) env.add(f);
  return env;
}

std::optional<double> apparent_qsl(const Envelope& env, double threshold, std::size_t persistence) {
  const auto& pts = env.points();
  if (pts.empty() || pts.rbegin()->second.best_fidelity < threshold) return std::nullopt;
  std::optional<double> last_good;
  std::size_t misses = 0;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    if (it->second.best_fidelity >= threshold) {
      last_good = it->second.duration;
      misses = 0;
    } else if (++misses >= persistence) {
      break;
    }
  }
  return last_good;
}

}  // namespace qmoves
