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

// kass run: random-sine seeded optimization plus downward duration sweeps.
// kass direct: random-sine seeded optimization at a single duration.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>

#include "common.hpp"
#include "qmoves/kass/campaign.hpp"

using namespace qmoves;

int main(int argc, char** argv) {
  CLI::App app{"KASS campaigns"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "optimize random sine seeds and sweep them down");

  KassParams p;
  std::string out_dir;
  std::string config_file;
  std::size_t points = 512;
  run->add_option("--seeds", p.n_seeds, "number of random seeds")->capture_default_str();
  run->add_option("--t-start", p.t_start, "duration of the root optimizations")->capture_default_str();
  run->add_option("--t-min", p.t_min, "shortest swept duration")->capture_default_str();
  run->add_option("--rng-seed", p.spectrum.rng_seed, "first coefficient seed")->capture_default_str();
  run->add_option("--root-iters", p.root_optimizer.max_iters)->capture_default_str();
  run->add_option("--sweep-iters", p.sweep_optimizer.max_iters)->capture_default_str();
  run->add_option("--workers", p.workers, "worker threads, 0 = all cores")->capture_default_str();
  run->add_option("--config", config_file, "problem configuration JSON");
  run->add_option("--points", points, "grid points when no config is given")->capture_default_str();
  run->add_option("--out", out_dir, "output directory")->required();

  auto* direct = app.add_subcommand("direct", "optimize random sine seeds at one duration, no sweeps");
  double duration = 0.15;
  OptimizerParams direct_opt{.max_iters = 150};
  direct->add_option("--t", duration, "duration")->capture_default_str();
  direct->add_option("--seeds", p.n_seeds, "number of random seeds")->capture_default_str();
  direct->add_option("--rng-seed", p.spectrum.rng_seed, "first coefficient seed")->capture_default_str();
  direct->add_option("--iters", direct_opt.max_iters)->capture_default_str();
  direct->add_option("--workers", p.workers)->capture_default_str();
  direct->add_option("--config", config_file, "problem configuration JSON");
  direct->add_option("--points", points)->capture_default_str();
  direct->add_option("--out", out_dir, "output directory")->required();
  CLI11_PARSE(app, argc, argv);

  if (*direct) {
    try {
      const auto cfg = tools::resolve_config(config_file, points);
      std::filesystem::create_directories(out_dir);
      save_config(std::filesystem::path(out_dir) / "config.json", cfg);
      SolutionArchive archive(out_dir);
      const auto problem = TransportProblem::from_config(cfg);
      const auto ranked = random_direct(problem, duration, p.n_seeds, p.spectrum, direct_opt, p.workers);
      std::ofstream csv(std::filesystem::path(out_dir) / "direct.csv");
      csv << std::setprecision(17) << "rank,id,T,fidelity,iterations\n";
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        archive.append(ranked[i]);
        csv << i + 1 << ',' << ranked[i].id << ',' << ranked[i].duration() << ',' << ranked[i].fidelity << ','
            << ranked[i].iterations << '\n';
      }
      spdlog::info("best random-seeded fidelity {:.6f} ({})", ranked.front().fidelity, ranked.front().id);
    } catch (const std::exception& e) {
      spdlog::error("{}", e.what());
      return 1;
    }
    return 0;
  }

  try {
    const auto cfg = tools::resolve_config(config_file, points);
    std::filesystem::create_directories(out_dir);
    save_config(std::filesystem::path(out_dir) / "config.json", cfg);
    SolutionArchive archive(out_dir);
    const auto problem = TransportProblem::from_config(cfg);
    spdlog::info("kass: {} seeds, T {} -> {}, {} grid points", p.n_seeds, p.t_start, p.t_min, cfg.grid.size());
    const auto res = kass_campaign(problem, p, &archive, [](const SweepFamily& f) {
      spdlog::info("family {} done: root F = {:.6f}, {} members", f.root_id, f.members.front().fidelity, f.size());
    });
    for (const auto& msg : res.failures) spdlog::warn("{}", msg);

    std::ofstream env(std::filesystem::path(out_dir) / "envelope.csv");
    env << std::setprecision(17) << "T,bestF,family_id\n";
    for (const auto& [steps, pt] : res.envelope.points()) {
      env << pt.duration << ',' << pt.best_fidelity << ',' << pt.family_id << '\n';
    }
    nlohmann::json summary = {{"families", res.families.size()}, {"failures", res.failures}};
    summary["apparent_qsl"] = res.apparent_qsl ? nlohmann::json(*res.apparent_qsl) : nlohmann::json(nullptr);
    tools::write_text(std::filesystem::path(out_dir) / "summary.json", summary.dump(2) + "\n");
    if (res.apparent_qsl) spdlog::info("apparent QSL {:.3f}", *res.apparent_qsl);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
