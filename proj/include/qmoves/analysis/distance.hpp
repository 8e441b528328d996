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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qmoves/optim/solution.hpp"
#include "qmoves/optim/transport.hpp"

namespace qmoves {

enum class Metric { State, Control };
const char* to_string(Metric m) noexcept;
Metric metric_from_string(const std::string& s);

/// Time average of <f|f> with f = psi_a - psi_b, i.e. (1/T) * integral of
/// 2 - 2 Re<psi_a|psi_b>, by the trapezoid rule over the stored samples.
/// Both trajectories must share dt, sampling and grid (StructuralError
/// otherwise). The result lies in [0, 4].
double state_distance(const StateTrajectory& a, const StateTrajectory& b);

/// Sum over both controls of the time integral of |u_a - u_b|, each control
/// rescaled to unit range by its bounds. Exact for the piecewise-linear
/// paths. Throws StructuralError for different durations or dt.
double control_distance(const ControlPath& a, const ControlPath& b, const TweezerBounds& bounds);

/// Symmetric matrix of pairwise distances with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t n, Metric metric);

  std::size_t size() const noexcept { return n_; }
  Metric metric() const noexcept { return metric_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) noexcept;
  std::span<const double> data() const noexcept { return d_; }

  /// Binary form: uint64 n, then n*n float64 values row-major (host byte
  /// order, little endian on supported platforms).
  void save(const std::filesystem::path& file) const;
  static DistanceMatrix load(const std::filesystem::path& file, Metric metric);

 private:
  std::size_t n_;
  Metric metric_;
  std::vector<double> d_;
};

/// Re-simulated state trajectories of the solutions, every `stride`-th
/// sample kept.
std::vector<StateTrajectory> state_trajectories(const TransportProblem& problem,
                                                std::span<const Solution> sols,
                                                std::size_t stride = 5);

DistanceMatrix state_distances(std::span<const StateTrajectory> trajectories);
DistanceMatrix control_distances(std::span<const Solution> sols, const TweezerBounds& bounds);

}  // namespace qmoves
