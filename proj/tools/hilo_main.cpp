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

// hilo search / hilo sweep: three-parameter seeds, direct search, sweeps.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "common.hpp"
#include "qmoves/hilo/hilo.hpp"

using namespace qmoves;
namespace fs = std::filesystem;

namespace {

void write_envelope(const fs::path& file, const Envelope& env) {
  std::ofstream out(file);
  out << std::setprecision(17) << "T,bestF,family_id\n";
  for (const auto& [steps, pt] : env.points()) out << pt.duration << ',' << pt.best_fidelity << ',' << pt.family_id << '\n';
}

// search.csv: rank,id,x1,x2,t2,T,seed_fidelity,fidelity
std::vector<HiloResult> read_search(const fs::path& dir, double dt) {
  std::map<std::string, Solution> by_id;
  for (auto& s : load_archive(dir, dt)) by_id.emplace(s.id, std::move(s));
  std::ifstream in(dir / "search.csv");
  if (!in) throw std::runtime_error("no search.csv in " + dir.string());
  std::string line;
  std::getline(in, line);
  std::vector<HiloResult> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    std::size_t rank = 0;
    std::string id;
    HiloParams p;
    double T = 0.0;
    double seed_f = 0.0;
    double f = 0.0;
    row >> rank >> id >> p.x1 >> p.x2 >> p.t2 >> T >> seed_f >> f;
    const auto it = by_id.find(id);
    if (!row || it == by_id.end()) throw std::runtime_error("search.csv: bad row for " + id);
    out.push_back({p, seed_f, it->second});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HILO seeds"};
  app.require_subcommand(1);
  std::string config_file;
  std::size_t points = 512;
  app.add_option("--config", config_file, "problem configuration JSON");
  app.add_option("--points", points, "grid points when no config is given")->capture_default_str();

  HiloCampaignParams p;
  std::string grid_spec = "5,5,5";
  std::string out_dir;
  auto* search = app.add_subcommand("search", "optimize the seeds of a parameter grid");
  search->add_option("--t", p.search.duration, "duration")->capture_default_str();
  search->add_option("--grid", grid_spec, "grid sizes for x1,x2,t2")->capture_default_str();
  search->add_option("--budget", p.search.budget, "grid points to evaluate, 0 = all")->capture_default_str();
  search->add_option("--iters", p.search.optimizer.max_iters)->capture_default_str();
  search->add_option("--workers", p.search.workers)->capture_default_str();
  search->add_option("--out", out_dir, "output directory")->required();

  std::string in_dir;
  auto* sweep = app.add_subcommand("sweep", "sweep the best search results down and up");
  sweep->add_option("--in", in_dir, "directory of a previous search")->required();
  sweep->add_option("--top", p.top_k, "number of results to sweep")->capture_default_str();
  sweep->add_option("--t-min", p.t_min)->capture_default_str();
  sweep->add_option("--t-max", p.t_max)->capture_default_str();
  sweep->add_option("--iters", p.sweep_optimizer.max_iters)->capture_default_str();
  sweep->add_option("--workers", p.search.workers)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    if (*search) {
      std::replace(grid_spec.begin(), grid_spec.end(), ',', ' ');
      std::istringstream gs(grid_spec);
      if (!(gs >> p.search.grid[0] >> p.search.grid[1] >> p.search.grid[2])) {
        throw std::invalid_argument("--grid expects three comma-separated sizes");
      }
      const auto cfg = tools::resolve_config(config_file, points);
      fs::create_directories(out_dir);
      save_config(fs::path(out_dir) / "config.json", cfg);
      SolutionArchive archive(out_dir);
      spdlog::info("hilo search at T = {}, grid {}x{}x{}", p.search.duration, p.search.grid[0], p.search.grid[1],
                   p.search.grid[2]);
      const auto ranked = direct_search(TransportProblem::from_config(cfg), p.search);
      std::ofstream out(fs::path(out_dir) / "search.csv");
      out << std::setprecision(17) << "rank,id,x1,x2,t2,T,seed_fidelity,fidelity\n";
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& r = ranked[i];
        archive.append(r.solution);
        out << i << ',' << r.solution.id << ',' << r.params.x1 << ',' << r.params.x2 << ',' << r.params.t2 << ','
            << r.solution.duration() << ',' << r.seed_fidelity << ',' << r.solution.fidelity << '\n';
      }
      spdlog::info("best F = {:.6f} at x1 = {}, x2 = {}, t2 = {}", ranked.front().solution.fidelity,
                   ranked.front().params.x1, ranked.front().params.x2, ranked.front().params.t2);
    } else {
      const fs::path dir(in_dir);
      const auto cfg = load_config(dir / "config.json");
      auto ranked = read_search(dir, cfg.dt);
      if (ranked.empty()) throw std::runtime_error("empty search");
      p.search.duration = ranked.front().solution.duration();
      SolutionArchive archive(dir);
      const auto res = hilo_sweeps(TransportProblem::from_config(cfg), ranked, p, &archive,
                                   [](const SweepFamily& f) { spdlog::info("family {} done, {} members", f.root_id, f.size()); });
      for (const auto& msg : res.failures) spdlog::warn("{}", msg);
      write_envelope(dir / "envelope.csv", res.envelope);
      nlohmann::json summary = {{"families", res.families.size()}, {"failures", res.failures}};
      summary["apparent_qsl"] = res.apparent_qsl ? nlohmann::json(*res.apparent_qsl) : nlohmann::json(nullptr);
      tools::write_text(dir / "summary.json", summary.dump(2) + "\n");
      if (res.apparent_qsl) spdlog::info("apparent QSL {:.3f}", *res.apparent_qsl);
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
