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

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmoves/control/control_path.hpp"
#include "qmoves/optim/transport.hpp"
#include "qmoves/physics/evolve.hpp"
#include "qmoves/service/level.hpp"

namespace qmoves::service {

/// What the server streams back after each tick.
struct Frame {
  std::size_t step = 0;
  double t = 0.0;
  double x0 = 0.0;
  double amp = 0.0;
  /// |psi|^2 at every stride-th grid point, starting at the first.
  std::vector<double> density;
  double fidelity = 0.0;
  /// The requested controls were moved to respect bounds or the speed limit.
  bool clamped = false;
};

nlohmann::json frame_to_json(const Frame& f, const Grid& grid, std::size_t stride);

/// Server side of one real-time play: the tweezer starts at the target
/// trap configuration, each tick supplies the controls at the next sample
/// time and advances the state by one split step.
class PlaySession {
 public:
  PlaySession(std::string id, const LevelConfig& level, std::shared_ptr<const TransportProblem> problem);

  const std::string& id() const noexcept { return id_; }
  const LevelConfig& level() const noexcept { return level_; }
  std::size_t stride() const noexcept { return stride_; }

  /// Current frame without advancing.
  Frame frame() const;

  /// Controls for model time t, which must be the next sample time
  /// (step + 1) * dt to within 1e-9 (else StructuralError). Positions and
  /// amplitudes are clamped to the bounds, and positions to the speed limit
  /// relative to the previous sample. Throws std::out_of_range once the
  /// level's maximum duration has been played.
  Frame tick(double t, double x0, double amp);

  /// The controls recorded so far, one per sample.
  ControlPath recording() const;

 private:
  std::string id_;
  LevelConfig level_;
  std::shared_ptr<const TransportProblem> problem_;
  ControlledEvolution engine_;
  std::vector<cplx> psi_;
  std::vector<double> v_prev_;
  std::vector<double> v_next_;
  std::vector<double> x0_;
  std::vector<double> amp_;
  std::size_t stride_;
  bool last_clamped_ = false;
};

}  // namespace qmoves::service
