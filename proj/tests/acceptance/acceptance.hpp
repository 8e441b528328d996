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

// Acceptance criteria: one pass/fail line each. Every threshold lives in
// `limits` below and nowhere else.

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmoves/hilo/hilo.hpp"
#include "qmoves/kass/campaign.hpp"

namespace acceptance {

namespace limits {
// Physics.
inline constexpr double kNormDrift = 1e-8;
inline constexpr int kNormSteps = 10000;
inline constexpr double kDispersion = 1e-3;
inline constexpr double kPhasePerStep = 1e-4;
inline constexpr double kGroundEnergy = 1e-6;
inline constexpr double kPhysicsSeconds = 60.0;
// Gradient.
inline constexpr int kGradientProbes = 20;
inline constexpr std::size_t kGradientPoints = 128;
inline constexpr double kGradient = 1e-4;
inline constexpr double kGradientSeconds = 300.0;
// Monotone optimization.
inline constexpr int kMonotoneSeeds = 10;
inline constexpr double kMonotoneDuration = 0.40;
inline constexpr double kMonotoneBest = 0.99;
inline constexpr double kMonotoneSeconds = 1800.0;
// Method ordering.
inline constexpr double kDirectDuration = 0.15;
inline constexpr std::size_t kDirectIterations = 40;
inline constexpr std::size_t kKassSeeds = 16;
inline constexpr double kSweepMin = 0.07;
inline constexpr double kSweepMax = 0.40;
inline constexpr double kPinFidelity = 1e-4;
inline constexpr double kPinDuration = 0.002 + 1e-9;
inline constexpr double kOrderingSeconds = 7200.0;
// Hilbert-velocity consistency.
inline constexpr double kQtLow = 0.1;
inline constexpr double kQtHigh = 0.99;
inline constexpr double kQtRelative = 0.10;
// Analysis suite.
inline constexpr double kDistanceEndpoint = 1e-12;
inline constexpr double kThreePointStress = 1e-9;
inline constexpr double kFourPointStress = 1e-6;
inline constexpr double kSinFit = 1e-6;
inline constexpr double kAnalysisSeconds = 300.0;
// Service.
inline constexpr double kResimulation = 1e-6;
}  // namespace limits

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
};

/// Seconds since construction.
class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Campaign results shared between criteria, computed on first use.
struct Campaigns {
  std::vector<qmoves::HiloResult> hilo_ranked;
  std::vector<qmoves::Solution> random_ranked;
  qmoves::CampaignResult hilo;
  qmoves::CampaignResult kass;
  double seconds = 0.0;
};
const Campaigns& campaigns();

/// Directory holding pins.json from the committed reference runs.
const std::filesystem::path& reference_dir();
/// Scratch space for the service criterion.
const std::filesystem::path& scratch_dir();

Outcome physics_correctness();
Outcome gradient_fidelity();
Outcome monotone_optimization();
Outcome method_ordering();
Outcome hilbert_velocity_consistency();
Outcome analysis_suite();
Outcome service_round_trip();

/// printf-style formatting into a std::string.
std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

}  // namespace acceptance
