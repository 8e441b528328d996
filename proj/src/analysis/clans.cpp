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

#include "qmoves/analysis/clans.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qmoves/errors.hpp"

namespace qmoves {

Reachability reachability_order_from(const DistanceMatrix& dm, std::size_t start) {
  const std::size_t n = dm.size();
  if (n < 2) throw std::invalid_argument("reachability needs at least two solutions");
  if (start >= n) throw std::out_of_range("reachability start out of range");
  Reachability r;
  std::vector<bool> seen(n, false);
  std::size_t cur = start;
  seen[cur] = true;
  r.order.push_back(cur);
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && dm(cur, j) < best_d) {
        best = j;
        best_d = dm(cur, j);
      }
    }
    seen[best] = true;
    r.order.push_back(best);
    r.distances.push_back(best_d);
    cur = best;
  }
  return r;
}

Reachability reachability_order(const DistanceMatrix& dm, std::uint64_t rng_seed) {
  if (dm.size() < 2) throw std::invalid_argument("reachability needs at least two solutions");
  std::mt19937_64 rng(rng_seed);
  std::uniform_int_distribution<std::size_t> pick(0, dm.size() - 1);
  return reachability_order_from(dm, pick(rng));
}

namespace {

void fill_statistics(Clan& c, std::span<const Solution> sols) {
  const auto& first = sols[c.members.front()].path;
  const std::size_t m = first.samples();
  c.mean_x0.assign(m, 0.0);
  c.mean_amp.assign(m, 0.0);
  c.std_x0.assign(m, 0.0);
  c.std_amp.assign(m, 0.0);
  for (auto i : c.members) {
    const auto& p = sols[i].path;
    if (p.samples() != m) throw StructuralError("clan members must share a duration");
    for (std::size_t k = 0; k < m; ++k) {
      c.mean_x0[k] += p.x0()[k];
      c.mean_amp[k] += p.amp()[k];
    }
  }
  const double n = static_cast<double>(c.members.size());
  for (std::size_t k = 0; k < m; ++k) {
    c.mean_x0[k] /= n;
    c.mean_amp[k] /= n;
  }
  for (auto i : c.members) {
    const auto& p = sols[i].path;
    for (std::size_t k = 0; k < m; ++k) {
      c.std_x0[k] += (p.x0()[k] - c.mean_x0[k]) * (p.x0()[k] - c.mean_x0[k]);
      c.std_amp[k] += (p.amp()[k] - c.mean_amp[k]) * (p.amp()[k] - c.mean_amp[k]);
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    c.std_x0[k] = std::sqrt(c.std_x0[k] / n);
    c.std_amp[k] = std::sqrt(c.std_amp[k] / n);
  }
}

}  // namespace

std::vector<Clan> extract_clans(const Reachability& r, double threshold, std::size_t min_size,
                                std::span<const Solution> sols) {
  std::vector<Clan> clans;
  std::size_t begin = 0;
  auto close_run = [&](std::size_t end) {  // members order[begin..end)
    if (end - begin >= std::max<std::size_t>(min_size, 1)) {
      Clan c;
      c.label = static_cast<int>(clans.size());
      c.members.assign(r.order.begin() + static_cast<long>(begin), r.order.begin() + static_cast<long>(end));
      if (!sols.empty()) fill_statistics(c, sols);
      clans.push_back(std::move(c));
    }
  };
  for (std::size_t i = 0; i < r.distances.size(); ++i) {
    if (!(r.distances[i] <= threshold)) {
      close_run(i + 1);
      begin = i + 1;
    }
  }
  close_run(r.order.size());
  return clans;
}

}  // namespace qmoves
