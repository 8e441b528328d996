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
#include <vector>

namespace qmoves {

/// Uniform periodic grid on [x_min, x_max). Sample i sits at x_min + i*dx.
class Grid {
 public:
  Grid(double x_min, double x_max, std::size_t n_points);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  double dx() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_); }
  double length() const noexcept { return x_max_ - x_min_; }

  double x(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * dx(); }
  std::vector<double> positions() const;

  /// Angular wavenumber of FFT bin m, in the standard FFT ordering.
  double wavenumber(std::size_t m) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
};

}  // namespace qmoves
