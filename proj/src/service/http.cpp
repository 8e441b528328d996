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

#include "qmoves/service/http.hpp"

#include <httplib.h>

#include "qmoves/errors.hpp"
#include "qmoves/io/path_io.hpp"
#include "qmoves/service/game_service.hpp"

namespace qmoves::service {

using nlohmann::json;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json violations_json(const std::vector<Violation>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back({{"kind", to_string(x.kind)}, {"index", x.index}, {"message", x.message}});
  return out;
}

/// Runs `fn`, mapping library exceptions onto HTTP statuses.
template <class Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const ValidationError& e) {
      reply(res, 422, {{"error", "validation failed"}, {"violations", violations_json(e.violations())}});
    } catch (const NotFoundError& e) {
      reply(res, 404, {{"error", e.what()}});
    } catch (const CapacityLimitError& e) {
      reply(res, 503, {{"error", e.what()}});
    } catch (const StructuralError& e) {
      reply(res, 422, {{"error", e.what()}});
    } catch (const std::out_of_range& e) {
      reply(res, 409, {{"error", e.what()}});
    } catch (const json::exception& e) {
      reply(res, 400, {{"error", std::string("malformed JSON: ") + e.what()}});
    } catch (const std::invalid_argument& e) {
      reply(res, 400, {{"error", e.what()}});
    } catch (const std::exception& e) {
      reply(res, 500, {{"error", e.what()}});
    }
  };
}

class Unauthorized : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Player id from the bearer token; empty when the header is absent.
std::string bearer_player(const httplib::Request& req) {
  const std::string h = req.get_header_value("Authorization");
  const std::string prefix = "Bearer ";
  if (h.rfind(prefix, 0) != 0 || h.size() == prefix.size()) return {};
  return player_id_from_token(h.substr(prefix.size()));
}

json session_frame_json(GameService& svc, const std::string& id, const Frame& f) {
  const auto& lvl = svc.level(svc.session_level(id));
  return frame_to_json(f, lvl.problem.grid, svc.session_stride(id));
}

json submit_json(const SubmitResult& r) {
  json j = record_to_json(r.record, false);
  j["created"] = r.created;
  return j;
}

}  // namespace

void mount_routes(httplib::Server& server, GameService& svc) {
  server.Get("/levels", guarded([&svc](const httplib::Request&, httplib::Response& res) {
    json out = json::array();
    for (const auto& l : svc.levels()) out.push_back(level_to_json(l));
    reply(res, 200, out);
  }));

  server.Post(R"(/levels/([^/]+)/trajectories)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const std::string player = bearer_player(req);
    if (player.empty()) return reply(res, 401, {{"error", "missing bearer token"}});
    const json body = json::parse(req.body);
    const auto path = path_from_json(body.at("path"));
    const auto r = svc.submit_trajectory(req.matches[1], player, path, body.at("client_fidelity").get<double>());
    reply(res, r.created ? 201 : 200, submit_json(r));
  }));

  server.Get(R"(/levels/([^/]+)/leaderboard)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    std::size_t limit = 10;
    if (req.has_param("limit")) limit = std::stoul(req.get_param_value("limit"));
    json out = json::array();
    std::size_t rank = 1;
    for (const auto& r : svc.leaderboard(req.matches[1], limit)) {
      json j = record_to_json(r, false);
      j["rank"] = rank++;
      out.push_back(std::move(j));
    }
    reply(res, 200, out);
  }));

  server.Get(R"(/levels/([^/]+)/export)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, 200, svc.export_level(req.matches[1]));
  }));

  server.Post(R"(/levels/([^/]+)/import)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const json bundle = json::parse(req.body);
    if (bundle.at("level").at("id").get<std::string>() != req.matches[1]) {
      return reply(res, 400, {{"error", "bundle level does not match the URL"}});
    }
    reply(res, 200, {{"inserted", svc.import_level(bundle)}});
  }));

  server.Get(R"(/records/([^/]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const auto r = svc.record(req.matches[1]);
    if (!r) return reply(res, 404, {{"error", "unknown record"}});
    reply(res, 200, record_to_json(*r, true));
  }));

  server.Post("/chop/jobs", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const json body = json::parse(req.body);
    ChopSelection sel;
    if (body.contains("selection")) {
      sel.top_fraction = body["selection"].value("top_fraction", sel.top_fraction);
      sel.max_duration = body["selection"].value("max_duration", sel.max_duration);
    }
    const auto ids = body.value("record_ids", std::vector<std::string>{});
    const auto job = svc.create_chop_job(body.at("level_id").get<std::string>(), sel, ids);
    res.set_header("Location", "/chop/jobs/" + job.id);
    reply(res, 202, job_to_json(job));
  }));

  server.Get(R"(/chop/jobs/([^/]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const auto job = svc.chop_job(req.matches[1]);
    if (!job) return reply(res, 404, {{"error", "unknown job"}});
    reply(res, 200, job_to_json(*job));
  }));

  server.Post(R"(/levels/([^/]+)/sessions)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const auto& lvl = svc.level(req.matches[1]);
    auto [id, frame] = svc.open_session(lvl.id);
    reply(res, 201,
          {{"session_id", id},
           {"dt", lvl.problem.dt},
           {"tick_interval_ms", 1e3 * lvl.tick_interval_seconds()},
           {"t_max", lvl.t_max},
           {"frame", session_frame_json(svc, id, frame)}});
  }));

  server.Get(R"(/sessions/([^/]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    reply(res, 200, {{"frame", session_frame_json(svc, id, svc.session_frame(id))}});
  }));

  server.Post(R"(/sessions/([^/]+)/ticks)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    const json body = json::parse(req.body);
    const json ticks = body.contains("ticks") ? body.at("ticks") : json::array({body});
    json frames = json::array();
    for (const auto& t : ticks) {
      const auto f = svc.session_tick(id, t.at("t").get<double>(), t.at("x0").get<double>(), t.at("amp").get<double>());
      frames.push_back(session_frame_json(svc, id, f));
    }
    reply(res, 200, {{"frames", frames}});
  }));

  server.Post(R"(/sessions/([^/]+)/submit)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const std::string player = bearer_player(req);
    if (player.empty()) return reply(res, 401, {{"error", "missing bearer token"}});
    std::optional<double> client;
    if (!req.body.empty()) {
      const json body = json::parse(req.body);
      if (body.contains("client_fidelity")) client = body.at("client_fidelity").get<double>();
    }
    const auto r = svc.submit_session(req.matches[1], player, client);
    reply(res, r.created ? 201 : 200, submit_json(r));
  }));

  server.Delete(R"(/sessions/([^/]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    svc.close_session(req.matches[1]);
    res.status = 204;
  }));

  if (svc.config().static_dir) server.set_mount_point("/", svc.config().static_dir->string());
}

}  // namespace qmoves::service
