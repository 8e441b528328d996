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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qmoves/control/control_path.hpp"
#include "qmoves/physics/evolve.hpp"

namespace qmoves {

enum class SeedKind { Random, Player, Hilo, Sweep };

const char* to_string(SeedKind kind) noexcept;
std::optional<SeedKind> seed_kind_from_string(const std::string& s) noexcept;

/// Where a solution's seed came from. `parent` is the id of the solution (for
/// sweeps) or player record it was derived from; `root` names the family.
struct Lineage {
  SeedKind kind = SeedKind::Random;
  std::string parent;
  std::string root;

  friend bool operator==(const Lineage&, const Lineage&) = default;
};

struct Solution {
  std::string id;
  ControlPath path;
  double fidelity = 0.0;
  Lineage lineage;
  std::size_t iterations = 0;
  /// Fidelity after each accepted iteration, seed value first.
  std::vector<double> history;
  /// Stored state trajectory, when one was kept.
  std::shared_ptr<const StateTrajectory> trajectory;

  double duration() const noexcept { return path.duration(); }
};

}  // namespace qmoves
