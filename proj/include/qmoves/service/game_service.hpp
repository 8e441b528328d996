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

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qmoves/service/chop.hpp"
#include "qmoves/service/level.hpp"
#include "qmoves/service/session.hpp"
#include "qmoves/service/store.hpp"

namespace qmoves::service {

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A submission broke one or more constraints.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Too many live sessions.
class CapacityLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Clock = std::function<std::chrono::system_clock::time_point()>;

struct ServiceConfig {
  std::filesystem::path data_dir;
  std::vector<LevelConfig> levels;
  ChopParams chop{};
  std::size_t chop_workers = 1;
  std::size_t max_sessions = 64;
  std::chrono::seconds session_idle_timeout{600};
  /// Served under / when set.
  std::optional<std::filesystem::path> static_dir;
  /// Timestamp source; system clock when empty.
  Clock clock;
};

/// Reads {data_dir, levels[], chop{t_min, t_max, seed_iters, sweep_iters},
/// chop_workers, max_sessions, static_dir}. Relative paths resolve against
/// `base`.
ServiceConfig service_config_from_json(const nlohmann::json& j, const std::filesystem::path& base);

struct SubmitResult {
  TrajectoryRecord record;
  bool created = false;
};

/// Opaque player id derived from a bearer token; the token is not stored.
std::string player_id_from_token(const std::string& token);

/// SHA-256 over player, level and the exact path samples.
std::string content_hash(const std::string& player_id, const std::string& level_id, const ControlPath& path);

/// ISO-8601 UTC with microseconds.
std::string format_timestamp(std::chrono::system_clock::time_point t);

nlohmann::json record_to_json(const TrajectoryRecord& r, bool with_path);
TrajectoryRecord record_from_json(const nlohmann::json& j);
nlohmann::json job_to_json(const ChopJob& job);

/// Writes an exported level bundle as a solution archive (config.json,
/// solutions.jsonl, paths/) readable by load_archive.
void write_archive(const nlohmann::json& bundle, const std::filesystem::path& dir);

/// Levels, submissions, leaderboards, export/import, CHOP jobs and live
/// play sessions over one record store. Thread-safe; CHOP jobs run on
/// background workers, each job at most once.
class GameService {
 public:
  explicit GameService(ServiceConfig cfg);
  ~GameService();
  GameService(const GameService&) = delete;
  GameService& operator=(const GameService&) = delete;

  const ServiceConfig& config() const noexcept { return cfg_; }
  std::vector<LevelConfig> levels() const;
  /// Throws NotFoundError.
  const LevelConfig& level(const std::string& id) const;

  /// Validates, re-simulates and stores. Identical (player, level, path)
  /// returns the existing record with created = false. Throws NotFoundError
  /// or ValidationError.
  SubmitResult submit_trajectory(const std::string& level_id, const std::string& player_id,
                                 const ControlPath& path, double client_fidelity);

  std::optional<TrajectoryRecord> record(const std::string& id);
  std::vector<TrajectoryRecord> records(const std::string& level_id);
  std::vector<TrajectoryRecord> leaderboard(const std::string& level_id, std::size_t limit);
  /// Fidelity of the stored path, computed afresh.
  double resimulate(const TrajectoryRecord& rec);

  /// {schema_version, level, records[]} with full paths.
  nlohmann::json export_level(const std::string& level_id);
  /// Inserts the records of an exported bundle, keeping ids, scores and
  /// timestamps. Every record is checked (hash, constraints, fidelity
  /// within 1e-6) before any is inserted. Returns the number inserted.
  std::size_t import_level(const nlohmann::json& bundle);

  /// Selects seeds from `record_ids` (all level records when empty) and
  /// queues the job; an empty selection completes at once with a warning.
  ChopJob create_chop_job(const std::string& level_id, const ChopSelection& selection,
                          const std::vector<std::string>& record_ids = {});
  std::optional<ChopJob> chop_job(const std::string& id);
  /// Polls until the job is done or failed; nullopt on timeout.
  std::optional<ChopJob> wait_for_job(const std::string& id, std::chrono::milliseconds timeout);
  std::filesystem::path chop_archive_dir(const std::string& job_id) const;

  /// New session for a level; returns its id and first frame.
  std::pair<std::string, Frame> open_session(const std::string& level_id);
  Frame session_frame(const std::string& id);
  Frame session_tick(const std::string& id, double t, double x0, double amp);
  /// Submits the recording; the session closes on success. A missing client
  /// fidelity defaults to the session's final fidelity.
  SubmitResult submit_session(const std::string& id, const std::string& player_id,
                              std::optional<double> client_fidelity);
  void close_session(const std::string& id);
  /// Level id and density stride of a session.
  std::string session_level(const std::string& id);
  std::size_t session_stride(const std::string& id);

 private:
  struct LevelRuntime;
  struct SessionSlot;

  LevelRuntime& runtime(const std::string& level_id) const;
  std::shared_ptr<SessionSlot> slot(const std::string& id);
  std::string now() const;
  void worker_loop(std::stop_token stop);
  void run_job(const std::string& id);

  ServiceConfig cfg_;
  RecordStore store_;
  std::map<std::string, std::unique_ptr<LevelRuntime>> levels_;

  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<SessionSlot>> sessions_;

  std::mutex queue_mutex_;
  std::condition_variable_any queue_cv_;
  std::deque<std::string> queue_;
  std::vector<std::jthread> workers_;
};

}  // namespace qmoves::service
