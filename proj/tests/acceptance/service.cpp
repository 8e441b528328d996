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

#include <httplib.h>

#include <cmath>
#include <thread>

#include "acceptance.hpp"
#include "qmoves/control/seeds.hpp"
#include "qmoves/io/archive.hpp"
#include "qmoves/io/path_io.hpp"
#include "qmoves/service/game_service.hpp"
#include "qmoves/service/http.hpp"

namespace acceptance {

using namespace qmoves;
using namespace qmoves::service;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

ServiceConfig service_in(const fs::path& dir) {
  ServiceConfig c;
  c.data_dir = dir;
  LevelConfig level;
  level.id = "bring-home-water";
  level.name = "Bring Home Water";
  c.levels = {level};
  c.chop.t_min = 0.18;
  c.chop.t_max = 0.22;
  c.chop.seed_optimizer.max_iters = 20;
  c.chop.sweep_optimizer.max_iters = 10;
  return c;
}

/// A running HTTP front end for one service.
class Front {
 public:
  explicit Front(GameService& svc) {
    mount_routes(server_, svc);
    port_ = server_.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("cannot bind a port");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~Front() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

json checked(const httplib::Result& res, int status) {
  if (!res) throw std::runtime_error("request failed: " + httplib::to_string(res.error()));
  if (res->status != status) {
    throw std::runtime_error("HTTP " + std::to_string(res->status) + " (expected " + std::to_string(status) +
                             "): " + res->body);
  }
  return res->body.empty() ? json() : json::parse(res->body);
}

}  // namespace

Outcome service_round_trip() {
  Stopwatch clock;
  const fs::path root = scratch_dir() / "service";
  fs::remove_all(root);
  const std::string level = "bring-home-water";
  GameService primary(service_in(root / "primary"));
  Front front(primary);
  auto cli = front.client();
  const ProblemConfig cfg = primary.level(level).problem;

  // Submissions from three players over a spread of durations.
  const double durations[] = {0.15, 0.19, 0.20, 0.21, 0.25, 0.30, 0.35, 0.45, 0.50, 0.60};
  for (std::size_t i = 0; i < std::size(durations); ++i) {
    SeedSpectrum sp;
    sp.rng_seed = 900 + i;
    const auto path = random_sin_seed(cfg, durations[i], sp).path;
    const httplib::Headers auth = {{"Authorization", "Bearer player-" + std::to_string(i % 3)}};
    checked(cli.Post("/levels/" + level + "/trajectories", auth,
                     json{{"path", path_to_json(path)}, {"client_fidelity", 0.0}}.dump(), "application/json"),
            201);
  }
  // One path played through the real-time session.
  {
    const auto played = base_motion(cfg, 0.24);
    const json opened = checked(cli.Post("/levels/" + level + "/sessions", "", "application/json"), 201);
    const std::string sid = opened.at("session_id");
    json ticks = json::array();
    for (std::size_t k = 1; k < played.samples(); ++k) {
      ticks.push_back({{"t", played.time(k)}, {"x0", played.x0()[k]}, {"amp", played.amp()[k]}});
    }
    checked(cli.Post("/sessions/" + sid + "/ticks", json{{"ticks", ticks}}.dump(), "application/json"), 200);
    checked(cli.Post("/sessions/" + sid + "/submit", {{"Authorization", "Bearer player-0"}}, "{}",
                     "application/json"),
            201);
  }

  // Authoritative re-simulation of every stored record, independently.
  const json bundle = checked(cli.Get("/levels/" + level + "/export"), 200);
  FidelityEvaluator ev(TransportProblem::from_config(cfg));
  double worst_resim = 0.0;
  for (const auto& jr : bundle.at("records")) {
    const auto rec = record_from_json(jr);
    worst_resim = std::max(worst_resim, std::abs(ev.fidelity(rec.path) - rec.server_fidelity));
  }
  const std::size_t n_records = bundle.at("records").size();

  // Export -> import into a fresh service -> export again.
  GameService secondary(service_in(root / "secondary"));
  Front front2(secondary);
  auto cli2 = front2.client();
  const json imported = checked(cli2.Post("/levels/" + level + "/import", bundle.dump(), "application/json"), 200);
  const json again = checked(cli2.Get("/levels/" + level + "/export"), 200);
  bool lossless = again == bundle && imported.at("inserted").get<std::size_t>() == n_records;
  write_archive(bundle, root / "archive");
  const auto sols = load_archive(root / "archive", cfg.dt);
  lossless = lossless && sols.size() == n_records;
  for (std::size_t i = 0; lossless && i < sols.size(); ++i) {
    const auto rec = record_from_json(bundle["records"][i]);
    lossless = sols[i].id == rec.id && sols[i].path == rec.path && sols[i].fidelity == rec.server_fidelity;
  }

  // CHOP over the default selection; every output must trace back to an input.
  const json job = checked(cli.Post("/chop/jobs", json{{"level_id", level}}.dump(), "application/json"), 202);
  const std::string job_id = job.at("id");
  json status;
  for (int polls = 0; polls < 6000; ++polls) {
    status = checked(cli.Get("/chop/jobs/" + job_id), 200);
    if (status.at("status") == "done" || status.at("status") == "failed") break;
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
  const auto inputs = status.at("input_ids").get<std::vector<std::string>>();
  const auto outputs = load_archive(primary.chop_archive_dir(job_id), cfg.dt);
  std::map<std::string, Lineage> lineages;
  for (const auto& s : outputs) lineages[s.id] = s.lineage;
  std::size_t resolved = 0;
  for (const auto& s : outputs) {
    const auto origin = seeding_record(s.id, lineages);
    if (origin && std::find(inputs.begin(), inputs.end(), *origin) != inputs.end()) ++resolved;
  }
  const bool chop_ok = status.at("status") == "done" && !outputs.empty() && resolved == outputs.size() &&
                       status.at("family_ids").size() == 2 * inputs.size();

  const double secs = clock.seconds();
  return {worst_resim <= limits::kResimulation && lossless && chop_ok,
          format("%zu records re-simulate within %.1e (<= %.0e); export/import %s; CHOP job %s with %zu seeds, "
                 "%zu families, lineage resolved for %zu/%zu outputs; %.0f s",
                 n_records, worst_resim, limits::kResimulation, lossless ? "lossless" : "LOSSY",
                 status.at("status").get<std::string>().c_str(), inputs.size(), status.at("family_ids").size(),
                 resolved, outputs.size(), secs)};
}

}  // namespace acceptance
