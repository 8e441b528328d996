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

#include "qmoves/service/store.hpp"

#include <sqlite3.h>

#include <stdexcept>

#include <json.hpp>

#include "qmoves/io/path_io.hpp"

namespace qmoves::service {

namespace fs = std::filesystem;

const char* to_string(JobStatus s) noexcept {
  switch (s) {
    case JobStatus::Queued: return "queued";
    case JobStatus::Running: return "running";
    case JobStatus::Done: return "done";
    case JobStatus::Failed: return "failed";
  }
  return "unknown";
}

std::optional<JobStatus> job_status_from_string(const std::string& s) noexcept {
  for (auto st : {JobStatus::Queued, JobStatus::Running, JobStatus::Done, JobStatus::Failed}) {
    if (s == to_string(st)) return st;
  }
  return std::nullopt;
}

namespace {

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS meta(key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS records(
  seq INTEGER PRIMARY KEY AUTOINCREMENT,
  id TEXT UNIQUE NOT NULL,
  content_hash TEXT UNIQUE NOT NULL,
  player_id TEXT NOT NULL,
  level_id TEXT NOT NULL,
  duration REAL NOT NULL,
  dt REAL NOT NULL,
  client_fidelity REAL NOT NULL,
  server_fidelity REAL NOT NULL,
  score INTEGER NOT NULL,
  flagged INTEGER NOT NULL,
  created_at TEXT NOT NULL,
  path_file TEXT NOT NULL);
CREATE INDEX IF NOT EXISTS records_board ON records(level_id, score DESC, created_at, seq);
CREATE TRIGGER IF NOT EXISTS records_no_update BEFORE UPDATE ON records
  BEGIN SELECT RAISE(ABORT, 'records are append-only'); END;
CREATE TRIGGER IF NOT EXISTS records_no_delete BEFORE DELETE ON records
  BEGIN SELECT RAISE(ABORT, 'records are append-only'); END;
CREATE TABLE IF NOT EXISTS chop_jobs(
  seq INTEGER PRIMARY KEY AUTOINCREMENT,
  id TEXT UNIQUE NOT NULL,
  level_id TEXT NOT NULL,
  top_fraction REAL NOT NULL,
  max_duration REAL NOT NULL,
  input_ids TEXT NOT NULL,
  status TEXT NOT NULL,
  progress INTEGER NOT NULL,
  family_ids TEXT NOT NULL,
  message TEXT NOT NULL,
  created_at TEXT NOT NULL);
)sql";

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) fail("prepare");
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int i, const std::string& v) {
    check(sqlite3_bind_text(stmt_, i, v.c_str(), static_cast<int>(v.size()), SQLITE_TRANSIENT));
    return *this;
  }
  Statement& bind(int i, double v) {
    check(sqlite3_bind_double(stmt_, i, v));
    return *this;
  }
  Statement& bind(int i, long v) {
    check(sqlite3_bind_int64(stmt_, i, v));
    return *this;
  }

  /// True while rows are available.
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    fail("step");
    return false;
  }
  void run() {
    while (step()) {
    }
  }

  std::string text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    return p ? reinterpret_cast<const char*>(p) : "";
  }
  double real(int col) const { return sqlite3_column_double(stmt_, col); }
  long integer(int col) const { return static_cast<long>(sqlite3_column_int64(stmt_, col)); }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) fail("bind");
  }
  [[noreturn]] void fail(const char* what) {
    throw std::runtime_error(std::string("sqlite ") + what + ": " + sqlite3_errmsg(db_));
  }
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

void exec(sqlite3* db, const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    const std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw std::runtime_error("sqlite: " + msg);
  }
}

constexpr const char* kRecordColumns =
    "id, content_hash, player_id, level_id, dt, client_fidelity, server_fidelity, score, flagged, "
    "created_at, path_file";

TrajectoryRecord read_record(const Statement& s, const fs::path& dir) {
  const double dt = s.real(4);
  return {s.text(0),
          s.text(2),
          s.text(3),
          load_path_csv(dir / s.text(10), dt),
          s.real(5),
          s.real(6),
          s.integer(7),
          s.integer(8) != 0,
          s.text(9),
          s.text(1)};
}

std::string ids_to_text(const std::vector<std::string>& ids) { return nlohmann::json(ids).dump(); }

std::vector<std::string> ids_from_text(const std::string& s) {
  return nlohmann::json::parse(s).get<std::vector<std::string>>();
}

ChopJob read_job(const Statement& s) {
  ChopJob j;
  j.id = s.text(0);
  j.level_id = s.text(1);
  j.selection = {s.real(2), s.real(3)};
  j.input_ids = ids_from_text(s.text(4));
  const auto st = job_status_from_string(s.text(5));
  if (!st) throw std::runtime_error("corrupt job status '" + s.text(5) + "'");
  j.status = *st;
  j.progress = static_cast<std::size_t>(s.integer(6));
  j.family_ids = ids_from_text(s.text(7));
  j.message = s.text(8);
  j.created_at = s.text(9);
  return j;
}

constexpr const char* kJobColumns =
    "id, level_id, top_fraction, max_duration, input_ids, status, progress, family_ids, message, "
    "created_at";

}  // namespace

RecordStore::RecordStore(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_ / "paths");
  if (sqlite3_open((dir_ / "service.db").c_str(), &db_) != SQLITE_OK) {
    const std::string msg = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    throw std::runtime_error("cannot open store: " + msg);
  }
  try {
    exec(db_, "PRAGMA journal_mode=WAL;");
    exec(db_, kSchema);
    Statement get(db_, "SELECT value FROM meta WHERE key = 'schema_version'");
    if (get.step()) {
      const std::string v = get.text(0);
      if (v != std::to_string(kSchemaVersion)) {
        throw std::runtime_error("store schema version " + v + ", expected " +
                                 std::to_string(kSchemaVersion));
      }
    } else {
      Statement put(db_, "INSERT INTO meta(key, value) VALUES('schema_version', ?)");
      put.bind(1, std::to_string(kSchemaVersion)).run();
    }
  } catch (...) {
    sqlite3_close(db_);
    throw;
  }
}

RecordStore::~RecordStore() { sqlite3_close(db_); }

std::pair<TrajectoryRecord, bool> RecordStore::insert(const TrajectoryRecord& rec) {
  std::lock_guard lock(mutex_);
  {
    Statement q(db_, (std::string("SELECT ") + kRecordColumns + " FROM records WHERE content_hash = ?").c_str());
    q.bind(1, rec.content_hash);
    if (q.step()) return {read_record(q, dir_), false};
  }
  const fs::path rel = fs::path("paths") / (rec.id + ".csv");
  const fs::path tmp = dir_ / (rel.string() + ".tmp");
  save_path_csv(tmp, rec.path);
  fs::rename(tmp, dir_ / rel);
  Statement ins(db_,
                "INSERT INTO records(id, content_hash, player_id, level_id, duration, dt, client_fidelity, "
                "server_fidelity, score, flagged, created_at, path_file) "
                "VALUES(?,?,?,?,?,?,?,?,?,?,?,?)");
  ins.bind(1, rec.id)
      .bind(2, rec.content_hash)
      .bind(3, rec.player_id)
      .bind(4, rec.level_id)
      .bind(5, rec.duration())
      .bind(6, rec.path.dt())
      .bind(7, rec.client_fidelity)
      .bind(8, rec.server_fidelity)
      .bind(9, rec.score)
      .bind(10, static_cast<long>(rec.flagged))
      .bind(11, rec.created_at)
      .bind(12, rel.generic_string())
      .run();
  return {rec, true};
}

std::optional<TrajectoryRecord> RecordStore::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  Statement q(db_, (std::string("SELECT ") + kRecordColumns + " FROM records WHERE id = ?").c_str());
  q.bind(1, id);
  if (!q.step()) return std::nullopt;
  return read_record(q, dir_);
}

std::vector<TrajectoryRecord> RecordStore::by_level(const std::string& level_id) {
  std::lock_guard lock(mutex_);
  Statement q(db_, (std::string("SELECT ") + kRecordColumns + " FROM records WHERE level_id = ? ORDER BY seq").c_str());
  q.bind(1, level_id);
  std::vector<TrajectoryRecord> out;
  while (q.step()) out.push_back(read_record(q, dir_));
  return out;
}

std::vector<TrajectoryRecord> RecordStore::leaderboard(const std::string& level_id, std::size_t limit) {
  std::lock_guard lock(mutex_);
  Statement q(db_, (std::string("SELECT ") + kRecordColumns +
                    " FROM records WHERE level_id = ? ORDER BY score DESC, created_at, seq LIMIT ?")
                       .c_str());
  q.bind(1, level_id).bind(2, limit == 0 ? -1L : static_cast<long>(limit));
  std::vector<TrajectoryRecord> out;
  while (q.step()) out.push_back(read_record(q, dir_));
  return out;
}

ChopJob RecordStore::insert_job(ChopJob job) {
  std::lock_guard lock(mutex_);
  Statement next(db_, "SELECT COALESCE(MAX(seq), 0) + 1 FROM chop_jobs");
  next.step();
  job.id = "job" + std::to_string(next.integer(0));
  Statement ins(db_, (std::string("INSERT INTO chop_jobs(") + kJobColumns + ") VALUES(?,?,?,?,?,?,?,?,?,?)").c_str());
  ins.bind(1, job.id)
      .bind(2, job.level_id)
      .bind(3, job.selection.top_fraction)
      .bind(4, job.selection.max_duration)
      .bind(5, ids_to_text(job.input_ids))
      .bind(6, std::string(to_string(job.status)))
      .bind(7, static_cast<long>(job.progress))
      .bind(8, ids_to_text(job.family_ids))
      .bind(9, job.message)
      .bind(10, job.created_at)
      .run();
  return job;
}

std::optional<ChopJob> RecordStore::find_job(const std::string& id) {
  std::lock_guard lock(mutex_);
  Statement q(db_, (std::string("SELECT ") + kJobColumns + " FROM chop_jobs WHERE id = ?").c_str());
  q.bind(1, id);
  if (!q.step()) return std::nullopt;
  return read_job(q);
}

bool RecordStore::claim_job(const std::string& id) {
  std::lock_guard lock(mutex_);
  Statement up(db_, "UPDATE chop_jobs SET status = 'running' WHERE id = ? AND status = 'queued'");
  up.bind(1, id).run();
  return sqlite3_changes(db_) == 1;
}

void RecordStore::update_job(const ChopJob& job) {
  std::lock_guard lock(mutex_);
  Statement up(db_, "UPDATE chop_jobs SET status = ?, progress = ?, family_ids = ?, message = ? WHERE id = ?");
  up.bind(1, std::string(to_string(job.status)))
      .bind(2, static_cast<long>(job.progress))
      .bind(3, ids_to_text(job.family_ids))
      .bind(4, job.message)
      .bind(5, job.id)
      .run();
}

std::vector<std::string> RecordStore::jobs_with_status(JobStatus s) {
  std::lock_guard lock(mutex_);
  Statement q(db_, "SELECT id FROM chop_jobs WHERE status = ? ORDER BY seq");
  q.bind(1, std::string(to_string(s)));
  std::vector<std::string> out;
  while (q.step()) out.push_back(q.text(0));
  return out;
}

}  // namespace qmoves::service
