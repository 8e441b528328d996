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

#include "qmoves/analysis/distance.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "qmoves/errors.hpp"

namespace qmoves {

const char* to_string(Metric m) noexcept { return m == Metric::State ? "state" : "control"; }

Metric metric_from_string(const std::string& s) {
  if (s == "state") return Metric::State;
  if (s == "control") return Metric::Control;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

double state_distance(const StateTrajectory& a, const StateTrajectory& b) {
  if (a.dt != b.dt || a.sample_index != b.sample_index) {
    throw StructuralError("state distance needs equal durations and sampling");
  }
  if (a.size() < 2) throw StructuralError("state distance needs at least two samples");
  double integral = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = 2.0 - 2.0 * overlap(a.states[i], b.states[i]).real();
    if (i > 0) integral += 0.5 * (f + prev) * (a.time(i) - a.time(i - 1));
    prev = f;
  }
  return integral / a.time(a.size() - 1);
}

namespace {

// Exact integral over [0, h] of |d0 + (d1 - d0) t / h|.
double abs_linear_integral(double d0, double d1, double h) {
  if ((d0 >= 0.0) == (d1 >= 0.0)) return 0.5 * h * std::abs(d0 + d1);
  const double s = std::abs(d0) + std::abs(d1);
  return 0.5 * h * (d0 * d0 + d1 * d1) / s;
}

}  // namespace

double control_distance(const ControlPath& a, const ControlPath& b, const TweezerBounds& bounds) {
  if (a.dt() != b.dt() || a.steps() != b.steps()) {
    throw StructuralError("control distance needs equal durations");
  }
  const double rx = bounds.x_range();
  const double ra = bounds.amp_range();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < a.samples(); ++k) {
    total += abs_linear_integral((a.x0()[k] - b.x0()[k]) / rx, (a.x0()[k + 1] - b.x0()[k + 1]) / rx, a.dt());
    total += abs_linear_integral((a.amp()[k] - b.amp()[k]) / ra, (a.amp()[k + 1] - b.amp()[k + 1]) / ra,
                                 a.dt());
  }
  return total;
}

DistanceMatrix::DistanceMatrix(std::size_t n, Metric metric) : n_(n), metric_(metric), d_(n * n, 0.0) {}

void DistanceMatrix::set(std::size_t i, std::size_t j, double v) noexcept {
  d_[i * n_ + j] = v;
  d_[j * n_ + i] = v;
}

void DistanceMatrix::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  const std::uint64_t n = n_;
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(d_.data()), static_cast<std::streamsize>(d_.size() * sizeof(double)));
}

DistanceMatrix DistanceMatrix::load(const std::filesystem::path& file, Metric metric) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in || n > (1u << 20)) throw StructuralError("distance file: bad header");
  DistanceMatrix m(static_cast<std::size_t>(n), metric);
  in.read(reinterpret_cast<char*>(m.d_.data()), static_cast<std::streamsize>(m.d_.size() * sizeof(double)));
  if (!in) throw StructuralError("distance file: truncated");
  return m;
}

std::vector<StateTrajectory> state_trajectories(const TransportProblem& problem,
                                                std::span<const Solution> sols, std::size_t stride) {
  std::vector<StateTrajectory> out;
  out.reserve(sols.size());
  for (const auto& s : sols) {
    if (s.trajectory && s.trajectory->size() > 1) {
      out.push_back(*s.trajectory);
    } else {
      out.push_back(evolve(problem.initial, s.path, problem.cfg, SamplingPolicy{stride}));
    }
  }
  return out;
}

DistanceMatrix state_distances(std::span<const StateTrajectory> trajectories) {
  DistanceMatrix m(trajectories.size(), Metric::State);
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    for (std::size_t j = i + 1; j < trajectories.size(); ++j) {
      m.set(i, j, state_distance(trajectories[i], trajectories[j]));
    }
  }
  return m;
}

DistanceMatrix control_distances(std::span<const Solution> sols, const TweezerBounds& bounds) {
  DistanceMatrix m(sols.size(), Metric::Control);
  for (std::size_t i = 0; i < sols.size(); ++i) {
    for (std::size_t j = i + 1; j < sols.size(); ++j) {
      m.set(i, j, control_distance(sols[i].path, sols[j].path, bounds));
    }
  }
  return m;
}

}  // namespace qmoves
