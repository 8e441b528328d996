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
#include <vector>

#include "qmoves/analysis/distance.hpp"

namespace qmoves {

struct Embedding2D {
  std::vector<double> x, y;
  /// S_k = sum over previously placed j of |planar distance - D_jk|, at the
  /// time point k was placed.
  std::vector<double> stress;
  /// Fidelity per point when supplied, else empty.
  std::vector<double> fidelity;
  /// Indices in placement order.
  std::vector<std::size_t> placement;
  /// Set when all distances vanish; every point then sits at the origin.
  bool collapsed = false;

  double total_stress() const;
};

/// Incremental planar embedding. A point drawn with `rng_seed` goes to the
/// origin; the point nearest to the placed set comes next. The second point
/// goes on the positive x axis and the third by triangle construction (upper
/// half plane); each later point minimizes its S_k by Nelder-Mead from
/// `restarts` starting points.
Embedding2D embed_2d(const DistanceMatrix& dm, std::uint64_t rng_seed,
                     std::span<const double> fidelity = {}, std::size_t restarts = 8);

}  // namespace qmoves
