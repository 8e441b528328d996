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

#include <doctest.h>

#include <cmath>

#include "qmoves/control/seeds.hpp"
#include "qmoves/kass/campaign.hpp"

using namespace qmoves;

namespace {

ProblemConfig coarse_config() {
  ProblemConfig cfg;
  cfg.grid = {-1.5, 1.5, 128};
  return cfg;
}

Solution root_at(FidelityEvaluator& ev, double T) {
  OptimizerParams p;
  p.max_iters = 5;
  auto r = optimize(ev, random_sin_seed(ev.problem().cfg, T, SeedSpectrum{}).path, p);
  r.solution.id = "root";
  return r.solution;
}

OptimizerParams quick() {
  OptimizerParams p;
  p.max_iters = 3;
  return p;
}

KassParams small_campaign(std::size_t seeds) {
  KassParams k;
  k.n_seeds = seeds;
  k.t_start = 0.12;
  k.t_min = 0.10;
  k.root_optimizer.max_iters = 5;
  k.sweep_optimizer.max_iters = 2;
  k.workers = 1;
  return k;
}

}  // namespace

TEST_CASE("one-step sweep down gives two members") {
  const auto cfg = coarse_config();
  FidelityEvaluator ev(TransportProblem::from_config(cfg));
  const auto root = root_at(ev, 0.2);
  const auto fam = sweep_down(ev, root, 0.2 - cfg.dt, quick());
  REQUIRE(fam.size() == 2);
  CHECK(fam.members[0].id == "root");
  CHECK(fam.members[1].path.steps() == root.path.steps() - 1);
  CHECK(fam.members[1].lineage.kind == SeedKind::Sweep);
  CHECK(fam.members[1].lineage.parent == "root");
  CHECK_FALSE(fam.error.has_value());
}

TEST_CASE("sweep members are one dt apart and feasible") {
  const auto cfg = coarse_config();
  FidelityEvaluator ev(TransportProblem::from_config(cfg));
  const auto root = root_at(ev, 0.12);
  const auto fam = sweep_down(ev, root, 0.07, quick());
  REQUIRE(fam.size() == 26);
  for (std::size_t i = 1; i < fam.size(); ++i) {
    CHECK(fam.members[i - 1].path.steps() - fam.members[i].path.steps() == 1);
    CHECK(fam.members[i].lineage.parent == fam.members[i - 1].id);
    CHECK(validate(fam.members[i].path, cfg).empty());
  }
  CHECK(fam.members.back().duration() == doctest::Approx(0.07));
  CHECK_THROWS_AS(sweep_down(ev, root, 0.12, quick()), std::invalid_argument);
  CHECK_THROWS_AS(sweep_down(ev, root, 0.0, quick()), std::invalid_argument);
}

TEST_CASE("sweep up") {
  const auto cfg = coarse_config();
  FidelityEvaluator ev(TransportProblem::from_config(cfg));
  const auto root = root_at(ev, 0.12);
  CHECK(sweep_up(ev, root, 0.12, quick()).size() == 1);
  const auto fam = sweep_up(ev, root, 0.13, quick());
  REQUIRE(fam.size() == 6);
  CHECK_FALSE(fam.descending);
  CHECK(fam.members.back().path.steps() == 65);
  CHECK_THROWS_AS(sweep_up(ev, root, 0.1, quick()), std::invalid_argument);
}

TEST_CASE("apparent speed limit on a hand-made envelope") {
  Envelope env;
  auto add = [&](std::size_t steps, double f) {
    env.add(Solution{"s" + std::to_string(steps), ControlPath::constant(0.002, steps, -0.5, -100.0), f,
                     {}, 0, {}, nullptr},
            "fam");
  };
  // 0.200 .. 0.180 reach the threshold, 0.178 misses, 0.176 reaches again,
  // then three misses in a row.
  for (std::size_t s = 90; s <= 100; ++s) add(s, 0.9995);
  add(89, 0.99);
  add(88, 0.9992);
  add(87, 0.9);
  add(86, 0.8);
  add(85, 0.7);
  add(84, 0.9999);
  const auto q = apparent_qsl(env);
  REQUIRE(q.has_value());
  CHECK(*q == doctest::Approx(0.176));
  CHECK(apparent_qsl(env, 0.99999) == std::nullopt);
}

TEST_CASE("campaign with one seed covers the whole duration range") {
  const auto problem = TransportProblem::from_config(coarse_config());
  const auto res = kass_campaign(problem, small_campaign(1));
  REQUIRE(res.families.size() == 1);
  CHECK(res.failures.empty());
  CHECK(res.envelope.points().size() == 11);
  CHECK(res.envelope.points().begin()->second.duration == doctest::Approx(0.10));
  CHECK(res.envelope.points().rbegin()->second.duration == doctest::Approx(0.12));
}

TEST_CASE("envelope dominates families and grows with added seeds") {
  const auto problem = TransportProblem::from_config(coarse_config());
  const auto one = kass_campaign(problem, small_campaign(1));
  const auto three = kass_campaign(problem, small_campaign(3));
  REQUIRE(three.families.size() == 3);
  for (const auto& fam : three.families) {
    for (const auto& m : fam.members) {
      CHECK(three.envelope.at(m.path.steps())->best_fidelity >= m.fidelity);
    }
  }
  for (const auto& [steps, p] : one.envelope.points()) {
    CHECK(three.envelope.at(steps)->best_fidelity >= p.best_fidelity);
  }
  // Same seed, same family.
  CHECK(three.families[0].members.back().path == one.families[0].members.back().path);
}

TEST_CASE("campaign results do not depend on the worker count") {
  const auto problem = TransportProblem::from_config(coarse_config());
  auto k = small_campaign(3);
  const auto serial = kass_campaign(problem, k);
  k.workers = 3;
  const auto threaded = kass_campaign(problem, k);
  REQUIRE(threaded.families.size() == serial.families.size());
  for (std::size_t i = 0; i < serial.families.size(); ++i) {
    CHECK(threaded.families[i].root_id == serial.families[i].root_id);
    CHECK(threaded.families[i].members.back().path == serial.families[i].members.back().path);
  }
}
