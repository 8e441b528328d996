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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "acceptance.hpp"
#include "qmoves/analysis/clans.hpp"
#include "qmoves/analysis/embed.hpp"
#include "qmoves/analysis/qsl_fit.hpp"

namespace acceptance {

using namespace qmoves;

namespace {

Wavefunction random_state(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<cplx> a(g.size());
  for (auto& v : a) v = {n(rng), n(rng)};
  return Wavefunction::normalized(g, std::move(a));
}

StateTrajectory as_trajectory(std::vector<Wavefunction> states) {
  StateTrajectory t;
  t.dt = 0.002;
  for (std::size_t i = 0; i < states.size(); ++i) t.sample_index.push_back(i);
  t.states = std::move(states);
  return t;
}

DistanceMatrix planar(const std::vector<std::pair<double, double>>& pts) {
  DistanceMatrix dm(pts.size(), Metric::Control);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      dm.set(i, j, std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second));
    }
  }
  return dm;
}

// Largest deviation of d(a,a), d(a,orth), d(a,-a) from 0, 2, 4.
double distance_endpoints() {
  const Grid g(-1.5, 1.5, 128);
  std::mt19937_64 rng(11);
  std::vector<Wavefunction> a, orth, neg;
  for (int i = 0; i < 21; ++i) {
    auto psi = random_state(g, rng);
    const auto other = random_state(g, rng);
    const cplx o = overlap(psi, other);
    std::vector<cplx> w(g.size());
    std::vector<cplx> m(g.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] = other[j] - o * psi[j];
      m[j] = -psi[j];
    }
    orth.push_back(Wavefunction::normalized(g, w));
    neg.push_back(Wavefunction(g, m));
    a.push_back(std::move(psi));
  }
  const auto ta = as_trajectory(a);
  return std::max({std::abs(state_distance(ta, ta)), std::abs(state_distance(ta, as_trajectory(orth)) - 2.0),
                   std::abs(state_distance(ta, as_trajectory(neg)) - 4.0)});
}

// Number of reachability starts (of 10) that recover both clusters exactly.
int clan_recoveries() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 15; ++i) pts.emplace_back(u(rng), u(rng));
  for (int i = 0; i < 12; ++i) pts.emplace_back(3.0 + u(rng), 1.0 + u(rng));
  const auto dm = planar(pts);
  int good = 0;
  for (std::uint64_t start = 0; start < 10; ++start) {
    const auto clans = extract_clans(reachability_order(dm, 1000 + start), 0.05, 10);
    if (clans.size() != 2) continue;
    bool exact = true;
    for (const auto& c : clans) {
      auto m = c.members;
      std::sort(m.begin(), m.end());
      const std::size_t first = m.front() == 0 ? 0 : 15;
      const std::size_t size = first == 0 ? 15 : 12;
      exact = exact && m.size() == size;
      for (std::size_t i = 0; exact && i < m.size(); ++i) exact = m[i] == first + i;
    }
    good += exact ? 1 : 0;
  }
  return good;
}

double three_point_stress() {
  DistanceMatrix dm(3, Metric::Control);
  dm.set(0, 1, 0.7);
  dm.set(0, 2, 1.1);
  dm.set(1, 2, 0.9);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) worst = std::max(worst, embed_2d(dm, seed).total_stress());
  return worst;
}

double four_point_stress() {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 4; ++i) pts.emplace_back(u(rng), u(rng));
    worst = std::max(worst, embed_2d(planar(pts), static_cast<std::uint64_t>(trial)).total_stress());
  }
  return worst;
}

// Worst parameter error over a few generated sin^2(aT + b) curves.
double sin_fit_error() {
  double worst = 0.0;
  for (const auto& [t_qsl, b] : {std::pair{0.20, 0.05}, std::pair{0.29, 0.0}, std::pair{0.19, 0.12}}) {
    const double a = (std::numbers::pi / 2.0 - b) / t_qsl;
    std::vector<double> t, f;
    for (int k = 20; k <= 140; ++k) {
      t.push_back(0.002 * k);
      f.push_back(std::pow(std::sin(a * 0.002 * k + b), 2));
    }
    const auto fit = qsl_fit(t, f);
    worst = std::max({worst, std::abs(fit.a - a) / a, std::abs(fit.b - b)});
  }
  return worst;
}

}  // namespace

Outcome analysis_suite() {
  Stopwatch clock;
  const double dist = distance_endpoints();
  const int clans = clan_recoveries();
  const double s3 = three_point_stress();
  const double s4 = four_point_stress();
  const double fit = sin_fit_error();
  const double secs = clock.seconds();
  const bool pass = dist < limits::kDistanceEndpoint && clans == 10 && s3 < limits::kThreePointStress &&
                    s4 < limits::kFourPointStress && fit < limits::kSinFit && secs < limits::kAnalysisSeconds;
  return {pass, format("distance endpoints off by %.1e (< %.0e); clans exact in %d/10 starts; 3-point stress "
                       "%.1e (< %.0e); planar 4-point stress %.1e (< %.0e); sin^2 parameter error %.1e (< %.0e); "
                       "%.1f s",
                       dist, limits::kDistanceEndpoint, clans, s3, limits::kThreePointStress, s4,
                       limits::kFourPointStress, fit, limits::kSinFit, secs)};
}

}  // namespace acceptance
