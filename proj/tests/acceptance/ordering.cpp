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

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "acceptance.hpp"

namespace acceptance {

using namespace qmoves;
using nlohmann::json;

namespace {

const double kPinDurations[] = {0.40, 0.30, 0.25, 0.20, 0.15, 0.10};

DirectSearchParams direct_params() {
  DirectSearchParams p;
  p.duration = limits::kDirectDuration;
  p.optimizer.max_iters = limits::kDirectIterations;
  p.workers = 1;
  return p;
}

double envelope_at(const Envelope& env, double T) {
  const auto pt = env.at(static_cast<std::size_t>(steps_for(T, acceptance_config().dt)));
  return pt ? pt->best_fidelity : -1.0;
}

// Compares one measured value against its pin; appends a note on mismatch.
void check_pin(const json& pins, const std::string& key, std::optional<double> measured, double tol,
               std::string& notes, bool& ok) {
  const json& pinned = pins.at(key);
  bool match = false;
  if (pinned.is_null() || !measured) {
    match = pinned.is_null() && !measured;
  } else {
    match = std::abs(pinned.get<double>() - *measured) <= tol;
  }
  if (!match) {
    ok = false;
    notes += " " + key + " pinned " + pinned.dump() + " got " + (measured ? format("%.8f", *measured) : "null") + ";";
  }
}

}  // namespace

const Campaigns& campaigns() {
  static const Campaigns cached = [] {
    Stopwatch clock;
    const auto problem = TransportProblem::from_config(acceptance_config());
    Campaigns c;
    const auto search = direct_params();
    c.hilo_ranked = direct_search(problem, search);
    c.random_ranked = random_direct(problem, search.duration, c.hilo_ranked.size(), SeedSpectrum{},
                                    search.optimizer, 1);

    HiloCampaignParams hp;
    hp.search = search;
    hp.top_k = 1;
    hp.t_min = limits::kSweepMin;
    hp.t_max = limits::kSweepMax;
    c.hilo = hilo_sweeps(problem, c.hilo_ranked, hp, nullptr, {});

    KassParams kp;
    kp.n_seeds = limits::kKassSeeds;
    kp.t_start = limits::kSweepMax;
    kp.t_min = limits::kSweepMin;
    kp.workers = 1;
    c.kass = kass_campaign(problem, kp, nullptr, {});
    c.seconds = clock.seconds();
    return c;
  }();
  return cached;
}

Outcome method_ordering() {
  const auto& c = campaigns();
  const double hilo_best = c.hilo_ranked.front().solution.fidelity;
  const double random_best = c.random_ranked.front().fidelity;
  const bool direct_order = hilo_best > random_best;
  const auto hq = c.hilo.apparent_qsl;
  const auto kq = c.kass.apparent_qsl;
  const bool qsl_order = hq && kq && *hq <= *kq;

  std::ifstream in(reference_dir() / "pins.json");
  if (!in) return {false, "missing " + (reference_dir() / "pins.json").string()};
  const json pins = json::parse(in);
  bool pins_ok = true;
  std::string notes;
  check_pin(pins, "hilo_best_fidelity", hilo_best, limits::kPinFidelity, notes, pins_ok);
  check_pin(pins, "random_best_fidelity", random_best, limits::kPinFidelity, notes, pins_ok);
  check_pin(pins, "hilo_apparent_qsl", hq, limits::kPinDuration, notes, pins_ok);
  check_pin(pins, "kass_apparent_qsl", kq, limits::kPinDuration, notes, pins_ok);
  for (double T : kPinDurations) {
    const std::string t = format("%.2f", T);
    check_pin(pins.at("kass_envelope"), t, envelope_at(c.kass.envelope, T), limits::kPinFidelity, notes, pins_ok);
    check_pin(pins.at("hilo_envelope"), t, envelope_at(c.hilo.envelope, T), limits::kPinFidelity, notes, pins_ok);
  }

  const bool fast = c.seconds < limits::kOrderingSeconds;
  auto q = [](std::optional<double> v) { return v ? format("%.3f", *v) : std::string("none"); };
  return {direct_order && qsl_order && pins_ok && fast,
          format("T = %.2f, %zu seeds x %zu iterations each: best HILO F = %.6f vs best random F = %.6f (%s); "
                 "apparent QSL HILO %s vs KASS %s over %zu seeds (%s); regression pins %s;%s %.0f s (< %.0f s)",
                 limits::kDirectDuration, c.hilo_ranked.size(), limits::kDirectIterations, hilo_best, random_best,
                 direct_order ? "HILO higher" : "HILO NOT higher", q(hq).c_str(), q(kq).c_str(), limits::kKassSeeds,
                 qsl_order ? "HILO <= KASS" : "ordering violated", pins_ok ? "match" : "differ", notes.c_str(),
                 c.seconds, limits::kOrderingSeconds)};
}

}  // namespace acceptance
