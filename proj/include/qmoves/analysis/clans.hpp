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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmoves/analysis/distance.hpp"

namespace qmoves {

/// Greedy nearest-unvisited chain through all solutions. distances[i] is the
/// distance from order[i] to order[i + 1].
struct Reachability {
  std::vector<std::size_t> order;
  std::vector<double> distances;
};

/// Starts at a point drawn with `rng_seed`. Ties go to the lower index.
Reachability reachability_order(const DistanceMatrix& dm, std::uint64_t rng_seed);
Reachability reachability_order_from(const DistanceMatrix& dm, std::size_t start);

struct Clan {
  int label = 0;
  /// Indices into the analysed set, in reachability order.
  std::vector<std::size_t> members;
  /// Per-sample mean and standard deviation of each control over the
  /// members; empty when no paths were supplied.
  std::vector<double> mean_x0, mean_amp, std_x0, std_amp;
};

/// Maximal runs of the order whose consecutive distances are all
/// <= threshold and that hold at least min_size solutions. When `sols` is
/// non-empty (indexed like the distance matrix), the clans carry mean and
/// spread of their control paths, which must then share a duration.
std::vector<Clan> extract_clans(const Reachability& r, double threshold = 0.05,
                                std::size_t min_size = 10, std::span<const Solution> sols = {});

}  // namespace qmoves
