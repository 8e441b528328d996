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

#include "qmoves/optim/solution.hpp"

namespace qmoves {

const char* to_string(SeedKind kind) noexcept {
  switch (kind) {
    case SeedKind::Random: return "random";
    case SeedKind::Player: return "player";
    case SeedKind::Hilo: return "hilo";
    case SeedKind::Sweep: return "sweep";
  }
  return "random";
}

std::optional<SeedKind> seed_kind_from_string(const std::string& s) noexcept {
  if (s == "random") return SeedKind::Random;
  if (s == "player") return SeedKind::Player;
  if (s == "hilo") return SeedKind::Hilo;
  if (s == "sweep") return SeedKind::Sweep;
  return std::nullopt;
}

}  // namespace qmoves
