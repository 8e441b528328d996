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
#include <map>
#include <optional>
#include <span>
#include <string>

#include "qmoves/kass/sweep.hpp"

namespace qmoves {

struct EnvelopePoint {
  double duration = 0.0;
  double best_fidelity = 0.0;
  std::string family_id;
};

/// Best fidelity per duration over a set of families, keyed by step count.
class Envelope {
 public:
  /// Adds every member of `family`; ties keep the earlier entry.
  void add(const SweepFamily& family);
  void add(const Solution& sol, const std::string& family_id);

  const std::map<std::size_t, EnvelopePoint>& points() const noexcept { return points_; }
  std::optional<EnvelopePoint> at(std::size_t steps) const;
  bool empty() const noexcept { return points_.empty(); }

 private:
  std::map<std::size_t, EnvelopePoint> points_;
};

Envelope envelope_of(std::span<const SweepFamily> families);

/// Scanning downward from the longest duration, the shortest duration that
/// still reaches `threshold` before the envelope stays below it for
/// `persistence` consecutive grid points. Empty if the longest duration
/// already misses the threshold.
std::optional<double> apparent_qsl(const Envelope& env, double threshold = 0.999,
                                   std::size_t persistence = 3);

}  // namespace qmoves
