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

#include "qmoves/service/game_service.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <random>

#include "qmoves/errors.hpp"
#include "qmoves/io/archive.hpp"
#include "qmoves/io/config_io.hpp"
#include "qmoves/io/path_io.hpp"

namespace qmoves::service {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kBundleVersion = 1;
constexpr double kImportFidelityTolerance = 1e-6;

std::string join_messages(const std::vector<Violation>& v) {
  std::string out = "path rejected:";
  for (const auto& x : v) out += " [" + std::string(to_string(x.kind)) + " @" + std::to_string(x.index) + "] " + x.message;
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string random_hex(std::size_t bytes) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bytes; ++i) {
    const auto b = static_cast<unsigned>(rng() & 0xff);
    out += hex[b >> 4];
    out += hex[b & 15];
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::invalid_argument(join_messages(violations)), violations_(std::move(violations)) {}

std::string player_id_from_token(const std::string& token) {
  if (token.empty()) throw std::invalid_argument("empty bearer token");
  return "p" + sha256_hex("qmoves-player\n" + token).substr(0, 16);
}

std::string content_hash(const std::string& player_id, const std::string& level_id, const ControlPath& path) {
  std::string s = "qmoves-record-v1\n" + player_id + "\n" + level_id + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g\n", path.dt());
  s += buf;
  for (std::size_t k = 0; k < path.samples(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", path.x0()[k], path.amp()[k]);
    s += buf;
  }
  return sha256_hex(s);
}

std::string format_timestamp(std::chrono::system_clock::time_point t) {
  using namespace std::chrono;
  const auto us = duration_cast<microseconds>(t.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(us / 1000000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%06lldZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<long long>(us % 1000000));
  return buf;
}

json record_to_json(const TrajectoryRecord& r, bool with_path) {
  json j = {{"id", r.id},
            {"player_id", r.player_id},
            {"level_id", r.level_id},
            {"T", r.duration()},
            {"client_fidelity", r.client_fidelity},
            {"server_fidelity", r.server_fidelity},
            {"score", r.score},
            {"flagged", r.flagged},
            {"created_at", r.created_at},
            {"content_hash", r.content_hash}};
  if (with_path) j["path"] = path_to_json(r.path);
  return j;
}

TrajectoryRecord record_from_json(const json& j) {
  return {j.at("id").get<std::string>(),
          j.at("player_id").get<std::string>(),
          j.at("level_id").get<std::string>(),
          path_from_json(j.at("path")),
          j.at("client_fidelity").get<double>(),
          j.at("server_fidelity").get<double>(),
          j.at("score").get<long>(),
          j.at("flagged").get<bool>(),
          j.at("created_at").get<std::string>(),
          j.at("content_hash").get<std::string>()};
}

json job_to_json(const ChopJob& job) {
  return {{"id", job.id},
          {"level_id", job.level_id},
          {"selection", {{"top_fraction", job.selection.top_fraction}, {"max_duration", job.selection.max_duration}}},
          {"input_ids", job.input_ids},
          {"status", to_string(job.status)},
          {"progress", job.progress},
          {"total", job.input_ids.size()},
          {"family_ids", job.family_ids},
          {"message", job.message},
          {"created_at", job.created_at}};
}

void write_archive(const json& bundle, const fs::path& dir) {
  const LevelConfig level = level_from_json(bundle.at("level"));
  fs::create_directories(dir);
  save_config(dir / "config.json", level.problem);
  SolutionArchive archive(dir);
  for (const auto& jr : bundle.at("records")) {
    const auto r = record_from_json(jr);
    archive.append(Solution{r.id, r.path, r.server_fidelity, Lineage{SeedKind::Player, "", r.id}, 0, {}, nullptr});
  }
}

ServiceConfig service_config_from_json(const json& j, const fs::path& base) {
  auto resolve = [&](const std::string& p) {
    const fs::path q(p);
    return q.is_absolute() ? q : base / q;
  };
  ServiceConfig c;
  c.data_dir = resolve(j.value("data_dir", std::string("service-data")));
  if (j.contains("levels")) {
    for (const auto& l : j.at("levels")) c.levels.push_back(level_from_json(l));
  } else {
    LevelConfig l;
    l.id = "bring-home-water";
    l.name = "Bring Home Water";
    l.check();
    c.levels.push_back(l);
  }
  if (j.contains("chop")) {
    const auto& cj = j.at("chop");
    c.chop.t_min = cj.value("t_min", c.chop.t_min);
    c.chop.t_max = cj.value("t_max", c.chop.t_max);
    c.chop.seed_optimizer.max_iters = cj.value("seed_iters", c.chop.seed_optimizer.max_iters);
    c.chop.sweep_optimizer.max_iters = cj.value("sweep_iters", c.chop.sweep_optimizer.max_iters);
  }
  c.chop.check();
  c.chop_workers = j.value("chop_workers", c.chop_workers);
  c.max_sessions = j.value("max_sessions", c.max_sessions);
  c.session_idle_timeout = std::chrono::seconds(j.value("session_idle_timeout_s", 600L));
  if (j.contains("static_dir")) c.static_dir = resolve(j.at("static_dir").get<std::string>());
  return c;
}

// Idle evaluators per level, so concurrent submissions never share FFT
// scratch space.
struct GameService::LevelRuntime {
  LevelConfig level;
  std::shared_ptr<const TransportProblem> problem;
  std::mutex mutex;
  std::vector<std::unique_ptr<FidelityEvaluator>> idle;

  double fidelity(const ControlPath& path) {
    std::unique_ptr<FidelityEvaluator> ev;
    {
      std::lock_guard lock(mutex);
      if (!idle.empty()) {
        ev = std::move(idle.back());
        idle.pop_back();
      }
    }
    if (!ev) ev = std::make_unique<FidelityEvaluator>(*problem);
    const double f = ev->fidelity(path);
    std::lock_guard lock(mutex);
    idle.push_back(std::move(ev));
    return f;
  }
};

struct GameService::SessionSlot {
  std::mutex mutex;
  std::unique_ptr<PlaySession> session;
  std::chrono::steady_clock::time_point last_used;
};

GameService::GameService(ServiceConfig cfg) : cfg_(std::move(cfg)), store_(cfg_.data_dir) {
  if (cfg_.levels.empty()) throw std::invalid_argument("service needs at least one level");
  cfg_.chop.check();
  for (const auto& l : cfg_.levels) {
    l.check();
    auto rt = std::make_unique<LevelRuntime>();
    rt->level = l;
    rt->problem = std::make_shared<const TransportProblem>(TransportProblem::from_config(l.problem));
    if (!levels_.emplace(l.id, std::move(rt)).second) throw std::invalid_argument("duplicate level id " + l.id);
  }
  // A job still marked running was cut off by a shutdown; it is not rerun.
  for (const auto& id : store_.jobs_with_status(JobStatus::Running)) {
    auto job = *store_.find_job(id);
    job.status = JobStatus::Failed;
    job.message = "interrupted by service restart";
    store_.update_job(job);
  }
  for (const auto& id : store_.jobs_with_status(JobStatus::Queued)) queue_.push_back(id);
  for (std::size_t i = 0; i < std::max<std::size_t>(1, cfg_.chop_workers); ++i) {
    workers_.emplace_back([this](std::stop_token st) { worker_loop(st); });
  }
}

GameService::~GameService() {
  for (auto& w : workers_) w.request_stop();
  queue_cv_.notify_all();
}

std::string GameService::now() const {
  return format_timestamp(cfg_.clock ? cfg_.clock() : std::chrono::system_clock::now());
}

std::vector<LevelConfig> GameService::levels() const { return cfg_.levels; }

GameService::LevelRuntime& GameService::runtime(const std::string& level_id) const {
  const auto it = levels_.find(level_id);
  if (it == levels_.end()) throw NotFoundError("unknown level '" + level_id + "'");
  return *it->second;
}

const LevelConfig& GameService::level(const std::string& id) const { return runtime(id).level; }

SubmitResult GameService::submit_trajectory(const std::string& level_id, const std::string& player_id,
                                            const ControlPath& path, double client_fidelity) {
  auto& rt = runtime(level_id);
  const auto& lvl = rt.level;
  auto violations = validate(path, lvl.problem);
  const double T = path.duration();
  if (T < lvl.t_min - 1e-9 || T > lvl.t_max + 1e-9) {
    violations.push_back({ViolationKind::Duration, path.steps(),
                          "duration " + std::to_string(T) + " outside the level window [" +
                              std::to_string(lvl.t_min) + ", " + std::to_string(lvl.t_max) + "]"});
  }
  if (!(client_fidelity >= 0.0 && client_fidelity <= 1.0)) {
    violations.push_back({ViolationKind::Structure, 0, "client fidelity outside [0, 1]"});
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  const std::string hash = content_hash(player_id, level_id, path);
  TrajectoryRecord rec{"r" + hash.substr(0, 16), player_id, level_id, path, client_fidelity, 0.0, 0, false, now(),
                       hash};
  rec.server_fidelity = rt.fidelity(path);
  rec.score = score(rec.server_fidelity, T, lvl);
  rec.flagged = std::abs(client_fidelity - rec.server_fidelity) > lvl.flag_tolerance;
  auto [stored, created] = store_.insert(rec);
  return {std::move(stored), created};
}

std::optional<TrajectoryRecord> GameService::record(const std::string& id) { return store_.find(id); }

std::vector<TrajectoryRecord> GameService::records(const std::string& level_id) {
  runtime(level_id);
  return store_.by_level(level_id);
}

std::vector<TrajectoryRecord> GameService::leaderboard(const std::string& level_id, std::size_t limit) {
  runtime(level_id);
  return store_.leaderboard(level_id, limit);
}

double GameService::resimulate(const TrajectoryRecord& rec) { return runtime(rec.level_id).fidelity(rec.path); }

json GameService::export_level(const std::string& level_id) {
  const auto& rt = runtime(level_id);
  json recs = json::array();
  for (const auto& r : store_.by_level(level_id)) recs.push_back(record_to_json(r, true));
  return {{"schema_version", kBundleVersion}, {"level", level_to_json(rt.level)}, {"records", recs}};
}

std::size_t GameService::import_level(const json& bundle) {
  if (bundle.value("schema_version", 0) != kBundleVersion) {
    throw std::invalid_argument("unsupported bundle schema_version");
  }
  const LevelConfig incoming = level_from_json(bundle.at("level"));
  auto& rt = runtime(incoming.id);
  if (config_to_json(incoming.problem) != config_to_json(rt.level.problem)) {
    throw std::invalid_argument("bundle problem differs from level '" + incoming.id + "'");
  }
  std::vector<TrajectoryRecord> recs;
  for (const auto& jr : bundle.at("records")) {
    auto r = record_from_json(jr);
    if (r.level_id != incoming.id) throw std::invalid_argument("record " + r.id + " belongs to another level");
    if (content_hash(r.player_id, r.level_id, r.path) != r.content_hash) {
      throw std::invalid_argument("record " + r.id + " content hash mismatch");
    }
    if (auto v = validate(r.path, rt.level.problem); !v.empty()) throw ValidationError(std::move(v));
    const double f = rt.fidelity(r.path);
    if (std::abs(f - r.server_fidelity) > kImportFidelityTolerance) {
      throw std::invalid_argument("record " + r.id + " fidelity " + std::to_string(r.server_fidelity) +
                                  " does not re-simulate (got " + std::to_string(f) + ")");
    }
    recs.push_back(std::move(r));
  }
  std::size_t inserted = 0;
  for (const auto& r : recs) inserted += store_.insert(r).second ? 1 : 0;
  return inserted;
}

ChopJob GameService::create_chop_job(const std::string& level_id, const ChopSelection& selection,
                                     const std::vector<std::string>& record_ids) {
  runtime(level_id);
  if (!(selection.max_duration > 0.0)) throw std::invalid_argument("max_duration must be positive");
  std::vector<TrajectoryRecord> pool;
  if (record_ids.empty()) {
    pool = store_.by_level(level_id);
  } else {
    for (const auto& id : record_ids) {
      auto r = store_.find(id);
      if (!r || r->level_id != level_id) throw NotFoundError("no record '" + id + "' in level " + level_id);
      pool.push_back(std::move(*r));
    }
  }
  const auto selected = select_records(pool, selection);
  ChopJob job;
  job.level_id = level_id;
  job.selection = selection;
  for (const auto& r : selected) job.input_ids.push_back(r.id);
  job.created_at = now();
  if (selected.empty()) {
    job.status = JobStatus::Done;
    job.message = "warning: selection matched no records";
  }
  job = store_.insert_job(std::move(job));
  if (job.status == JobStatus::Queued) {
    {
      std::lock_guard lock(queue_mutex_);
      queue_.push_back(job.id);
    }
    queue_cv_.notify_one();
  }
  return job;
}

std::optional<ChopJob> GameService::chop_job(const std::string& id) { return store_.find_job(id); }

std::optional<ChopJob> GameService::wait_for_job(const std::string& id, std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    auto job = store_.find_job(id);
    if (!job) throw NotFoundError("unknown job '" + id + "'");
    if (job->status == JobStatus::Done || job->status == JobStatus::Failed) return job;
    if (std::chrono::steady_clock::now() >= deadline) return std::nullopt;
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
}

fs::path GameService::chop_archive_dir(const std::string& job_id) const { return cfg_.data_dir / "chop" / job_id; }

void GameService::worker_loop(std::stop_token stop) {
  while (true) {
    std::string id;
    {
      std::unique_lock lock(queue_mutex_);
      if (!queue_cv_.wait(lock, stop, [&] { return !queue_.empty(); })) return;
      id = std::move(queue_.front());
      queue_.pop_front();
    }
    run_job(id);
  }
}

void GameService::run_job(const std::string& id) {
  if (!store_.claim_job(id)) return;
  auto job = *store_.find_job(id);
  try {
    const auto& rt = runtime(job.level_id);
    std::vector<TrajectoryRecord> seeds;
    for (const auto& rid : job.input_ids) {
      auto r = store_.find(rid);
      if (!r) throw NotFoundError("input record '" + rid + "' vanished");
      seeds.push_back(std::move(*r));
    }
    const fs::path dir = chop_archive_dir(id);
    fs::create_directories(dir);
    save_config(dir / "config.json", rt.problem->cfg);
    SolutionArchive archive(dir);
    FidelityEvaluator evaluator(*rt.problem);
    const auto families = run_chop(evaluator, seeds, id, cfg_.chop, &archive,
                                   [&](std::size_t done, std::span<const SweepFamily> fams) {
                                     job.progress = done;
                                     job.family_ids.clear();
                                     for (const auto& f : fams) job.family_ids.push_back(f.root_id);
                                     store_.update_job(job);
                                   });
    for (const auto& f : families) {
      if (f.error) job.message += (job.message.empty() ? "" : "; ") + f.root_id + " cut short: " + *f.error;
    }
    job.status = JobStatus::Done;
  } catch (const std::exception& e) {
    job.status = JobStatus::Failed;
    job.message = e.what();
  }
  store_.update_job(job);
}

std::shared_ptr<GameService::SessionSlot> GameService::slot(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session '" + id + "'");
  return it->second;
}

std::pair<std::string, Frame> GameService::open_session(const std::string& level_id) {
  auto& rt = runtime(level_id);
  auto s = std::make_shared<SessionSlot>();
  const std::string id = "s" + random_hex(16);
  s->session = std::make_unique<PlaySession>(id, rt.level, rt.problem);
  s->last_used = std::chrono::steady_clock::now();
  Frame first = s->session->frame();
  std::lock_guard lock(sessions_mutex_);
  if (sessions_.size() >= cfg_.max_sessions) {
    const auto cutoff = std::chrono::steady_clock::now() - cfg_.session_idle_timeout;
    std::erase_if(sessions_, [&](const auto& kv) {
      std::unique_lock l(kv.second->mutex, std::try_to_lock);
      return l.owns_lock() && kv.second->last_used < cutoff;
    });
    if (sessions_.size() >= cfg_.max_sessions) throw CapacityLimitError("too many live sessions");
  }
  sessions_.emplace(id, std::move(s));
  return {id, std::move(first)};
}

Frame GameService::session_frame(const std::string& id) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  s->last_used = std::chrono::steady_clock::now();
  return s->session->frame();
}

std::string GameService::session_level(const std::string& id) {
  auto s = slot(id);
  return s->session->level().id;
}

std::size_t GameService::session_stride(const std::string& id) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  return s->session->stride();
}

Frame GameService::session_tick(const std::string& id, double t, double x0, double amp) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  s->last_used = std::chrono::steady_clock::now();
  return s->session->tick(t, x0, amp);
}

SubmitResult GameService::submit_session(const std::string& id, const std::string& player_id,
                                         std::optional<double> client_fidelity) {
  auto s = slot(id);
  ControlPath path = [&] {
    std::lock_guard lock(s->mutex);
    if (!client_fidelity) client_fidelity = s->session->frame().fidelity;
    return s->session->recording();
  }();
  auto result = submit_trajectory(s->session->level().id, player_id, path, *client_fidelity);
  close_session(id);
  return result;
}

void GameService::close_session(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  if (sessions_.erase(id) == 0) throw NotFoundError("unknown session '" + id + "'");
}

}  // namespace qmoves::service
