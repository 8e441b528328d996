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

// analyze: distances, clans, embedding, Hilbert velocity and sin^2 fits
// over a solution archive.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>

#include "common.hpp"
#include "qmoves/analysis/clans.hpp"
#include "qmoves/analysis/embed.hpp"
#include "qmoves/analysis/hilbert.hpp"
#include "qmoves/analysis/qsl_fit.hpp"
#include "qmoves/errors.hpp"
#include "qmoves/io/archive.hpp"

using namespace qmoves;
namespace fs = std::filesystem;

namespace {

struct Options {
  fs::path in;
  fs::path out;
  std::string metric = "state";
  double duration = 0.0;
  double threshold = 0.05;
  std::size_t min_size = 10;
  std::uint64_t rng_seed = 0;
  std::size_t stride = 5;
};

// Solutions sharing one duration: the requested one, else the most common.
std::vector<Solution> at_duration(const std::vector<Solution>& all, double duration) {
  std::map<std::size_t, std::size_t> count;
  for (const auto& s : all) ++count[s.path.steps()];
  std::size_t steps = 0;
  if (duration > 0.0) {
    steps = static_cast<std::size_t>(steps_for(duration, all.front().path.dt()));
  } else {
    std::size_t best = 0;
    for (const auto& [st, c] : count) {
      if (c > best || (c == best && st > steps)) {
        best = c;
        steps = st;
      }
    }
  }
  std::vector<Solution> out;
  for (const auto& s : all) {
    if (s.path.steps() == steps) out.push_back(s);
  }
  if (out.size() < 2) throw std::runtime_error("fewer than two solutions at the selected duration");
  return out;
}

// Families keyed by lineage root, members ordered by duration.
std::map<std::string, std::vector<Solution>> families(const std::vector<Solution>& all) {
  std::map<std::string, std::vector<Solution>> out;
  for (const auto& s : all) out[s.lineage.root.empty() ? s.id : s.lineage.root].push_back(s);
  for (auto& [root, members] : out) {
    std::sort(members.begin(), members.end(),
              [](const Solution& a, const Solution& b) { return a.path.steps() < b.path.steps(); });
  }
  return out;
}

DistanceMatrix distances_for(const TransportProblem& problem, const std::vector<Solution>& sols, const Options& o) {
  if (metric_from_string(o.metric) == Metric::Control) return control_distances(sols, problem.cfg.tweezer_bounds);
  const auto traj = state_trajectories(problem, sols, o.stride);
  return state_distances(traj);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solution-set analysis"};
  app.require_subcommand(1);
  Options o;
  std::string in_dir;
  std::string out_dir;
  app.add_option("--in", in_dir, "archive directory")->required();
  app.add_option("--out", out_dir, "output directory (default: --in)");
  app.add_option("--metric", o.metric, "state or control")->capture_default_str();
  app.add_option("--t", o.duration, "duration to analyse (default: most populated)");
  app.add_option("--threshold", o.threshold)->capture_default_str();
  app.add_option("--min-size", o.min_size)->capture_default_str();
  app.add_option("--rng-seed", o.rng_seed)->capture_default_str();
  app.add_option("--stride", o.stride, "state sample decimation")->capture_default_str();
  auto* distances = app.add_subcommand("distances", "pairwise distance matrix");
  auto* clans = app.add_subcommand("clans", "reachability ordering and clans");
  auto* embed = app.add_subcommand("embed", "planar landscape embedding");
  auto* qvel = app.add_subcommand("qvel", "direct Hilbert velocity per solution");
  auto* qslfit = app.add_subcommand("qslfit", "sin^2 fits per family");
  CLI11_PARSE(app, argc, argv);

  try {
    o.in = in_dir;
    o.out = out_dir.empty() ? o.in : fs::path(out_dir);
    fs::create_directories(o.out);
    const auto cfg = load_config(o.in / "config.json");
    const auto problem = TransportProblem::from_config(cfg);
    const auto all = load_archive(o.in, cfg.dt);
    if (all.empty()) throw std::runtime_error("empty archive");

    if (*distances || *clans || *embed) {
      const auto sols = at_duration(all, o.duration);
      spdlog::info("{} solutions at T = {}", sols.size(), sols.front().duration());
      const auto dm = distances_for(problem, sols, o);
      if (*distances) dm.save(o.out / "distances.bin");
      if (*clans) {
        const auto r = reachability_order(dm, o.rng_seed);
        std::ofstream rc(o.out / "reachability.csv");
        rc << std::setprecision(17) << "position,id,distance\n";
        for (std::size_t i = 0; i < r.order.size(); ++i) {
          rc << i << ',' << sols[r.order[i]].id << ',';
          if (i + 1 < r.order.size()) rc << r.distances[i];
          rc << '\n';
        }
        nlohmann::json js = nlohmann::json::array();
        for (const auto& c : extract_clans(r, o.threshold, o.min_size, sols)) {
          std::vector<std::string> ids;
          for (auto m : c.members) ids.push_back(sols[m].id);
          js.push_back({{"label", c.label}, {"members", ids}, {"mean_x0", c.mean_x0}, {"mean_amp", c.mean_amp},
                        {"std_x0", c.std_x0}, {"std_amp", c.std_amp}});
        }
        tools::write_text(o.out / "clans.json", js.dump(2) + "\n");
        spdlog::info("{} clans", js.size());
      }
      if (*embed) {
        std::vector<double> f;
        for (const auto& s : sols) f.push_back(s.fidelity);
        const auto e = embed_2d(dm, o.rng_seed, f);
        if (e.collapsed) spdlog::warn("all distances vanish; embedding collapsed to the origin");
        std::ofstream ec(o.out / "embedding.csv");
        ec << std::setprecision(17) << "id,x,y,F,stress\n";
        for (std::size_t i = 0; i < sols.size(); ++i) {
          ec << sols[i].id << ',' << e.x[i] << ',' << e.y[i] << ',' << f[i] << ',' << e.stress[i] << '\n';
        }
      }
    }
    if (*qvel) {
      std::ofstream qc(o.out / "qvel.csv");
      qc << std::setprecision(17) << "id,family,T,F,mean_q,predicted_dFdT\n";
      for (const auto& [root, members] : families(all)) {
        for (const auto& s : members) {
          try {
            const auto hv = hilbert_velocity(problem, s.path);
            qc << s.id << ',' << root << ',' << s.duration() << ',' << hv.fidelity << ',' << hv.mean << ','
               << 2.0 * std::sqrt(hv.fidelity * (1.0 - hv.fidelity)) * hv.mean << '\n';
          } catch (const UndefinedXiError& e) {
            spdlog::warn("{}: {}", s.id, e.what());
          }
        }
      }
    }
    if (*qslfit) {
      nlohmann::json js = nlohmann::json::array();
      for (const auto& [root, members] : families(all)) {
        SweepFamily fam{root, true, members, std::nullopt};
        try {
          const auto fit = qsl_fit(fam);
          js.push_back({{"family", root}, {"a", fit.a}, {"b", fit.b}, {"t_qsl", fit.t_qsl},
                        {"residual", fit.residual}, {"points", fit.points}});
        } catch (const DegenerateError& e) {
          spdlog::info("family {} skipped: {}", root, e.what());
        }
      }
      tools::write_text(o.out / "qsl.json", js.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
