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

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qmoves/control/control_path.hpp"

struct sqlite3;

namespace qmoves::service {

/// A human-played path as stored by the service. Immutable once stored.
struct TrajectoryRecord {
  std::string id;
  std::string player_id;
  std::string level_id;
  ControlPath path;
  double client_fidelity = 0.0;
  /// Recomputed by the service; authoritative.
  double server_fidelity = 0.0;
  long score = 0;
  /// |client - server| exceeded the level's tolerance.
  bool flagged = false;
  /// ISO-8601 UTC with microseconds.
  std::string created_at;
  std::string content_hash;

  double duration() const noexcept { return path.duration(); }
};

enum class JobStatus { Queued, Running, Done, Failed };

const char* to_string(JobStatus s) noexcept;
std::optional<JobStatus> job_status_from_string(const std::string& s) noexcept;

/// Which records seed a CHOP job.
struct ChopSelection {
  double top_fraction = 0.7;
  /// Only records strictly shorter than this qualify.
  double max_duration = 0.40;
};

struct ChopJob {
  std::string id;
  std::string level_id;
  ChopSelection selection{};
  std::vector<std::string> input_ids;
  JobStatus status = JobStatus::Queued;
  std::size_t progress = 0;  // input records processed
  std::vector<std::string> family_ids;
  /// Warning (empty selection) or failure reason.
  std::string message;
  std::string created_at;
};

/// Embedded relational store (one SQLite file) plus one CSV per stored path.
///
/// Records are append-only: the schema rejects UPDATE and DELETE on them.
/// All access is serialized by an internal mutex.
class RecordStore {
 public:
  static constexpr int kSchemaVersion = 1;

  /// Opens or creates `dir/service.db` and `dir/paths/`. Throws
  /// std::runtime_error on a schema version mismatch.
  explicit RecordStore(std::filesystem::path dir);
  ~RecordStore();
  RecordStore(const RecordStore&) = delete;
  RecordStore& operator=(const RecordStore&) = delete;

  const std::filesystem::path& dir() const noexcept { return dir_; }

  /// Stores `rec` unless a record with the same content hash exists; returns
  /// the stored record and whether it was inserted now.
  std::pair<TrajectoryRecord, bool> insert(const TrajectoryRecord& rec);

  std::optional<TrajectoryRecord> find(const std::string& id);
  /// Records of a level in insertion order.
  std::vector<TrajectoryRecord> by_level(const std::string& level_id);
  /// Best score first; equal scores ordered by creation time, then insertion.
  /// limit 0 means all.
  std::vector<TrajectoryRecord> leaderboard(const std::string& level_id, std::size_t limit);

  /// Assigns job.id ("job<n>") and stores the job.
  ChopJob insert_job(ChopJob job);
  std::optional<ChopJob> find_job(const std::string& id);
  /// Moves a job from queued to running. False if another caller already did.
  bool claim_job(const std::string& id);
  /// Writes status, progress, family ids and message.
  void update_job(const ChopJob& job);
  /// Ids of jobs in state `s`, oldest first.
  std::vector<std::string> jobs_with_status(JobStatus s);

 private:
  std::filesystem::path dir_;
  sqlite3* db_ = nullptr;
  std::mutex mutex_;
};

}  // namespace qmoves::service
