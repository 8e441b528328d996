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

// serve: HTTP game service.

#include <httplib.h>

#include <CLI11.hpp>
#include <csignal>
#include <fstream>

#include <spdlog/spdlog.h>

#include "qmoves/service/game_service.hpp"
#include "qmoves/service/http.hpp"

namespace {
httplib::Server* g_server = nullptr;
void on_signal(int) {
  if (g_server) g_server->stop();
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"game service"};
  std::string config_file;
  std::string host = "127.0.0.1";
  int port = 8080;
  app.add_option("--config", config_file, "service configuration JSON")->required()->check(CLI::ExistingFile);
  app.add_option("--port", port)->capture_default_str();
  app.add_option("--host", host)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_file);
    const auto j = nlohmann::json::parse(in);
    auto cfg = qmoves::service::service_config_from_json(j, std::filesystem::path(config_file).parent_path());
    qmoves::service::GameService service(std::move(cfg));
    httplib::Server server;
    qmoves::service::mount_routes(server, service);
    server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
      spdlog::info("{} {} -> {}", req.method, req.path, res.status);
    });
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    spdlog::info("{} level(s), data in {}, listening on {}:{}", service.levels().size(),
                 service.config().data_dir.string(), host, port);
    if (!server.listen(host, port)) {
      spdlog::error("cannot listen on {}:{}", host, port);
      return 1;
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
