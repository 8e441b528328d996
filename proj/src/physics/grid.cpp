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

#include "qmoves/physics/grid.hpp"

#include <bit>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qmoves {

Grid::Grid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_(n_points) {
  if (n_points < 64 || !std::has_single_bit(n_points)) {
    throw std::invalid_argument("grid size must be a power of two >= 64, got " +
                                std::to_string(n_points));
  }
  if (!(x_max > x_min)) {
    throw std::invalid_argument("grid extent must satisfy x_max > x_min");
  }
}

std::vector<double> Grid::positions() const {
  std::vector<double> xs(n_);
  for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
  return xs;
}

double Grid::wavenumber(std::size_t m) const noexcept {
  const auto n = static_cast<long>(n_);
  long j = static_cast<long>(m);
  if (j >= n / 2) j -= n;
  return 2.0 * std::numbers::pi * static_cast<double>(j) / length();
}

}  // namespace qmoves
