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

#include "qmoves/service/chop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmoves::service {

void ChopParams::check() const {
  if (!(t_min > 0.0 && t_min < t_max)) throw std::invalid_argument("chop needs 0 < t_min < t_max");
  seed_optimizer.check();
  sweep_optimizer.check();
}

std::vector<TrajectoryRecord> select_records(std::span<const TrajectoryRecord> records,
                                             const ChopSelection& rule) {
  if (!(rule.top_fraction > 0.0 && rule.top_fraction <= 1.0)) {
    throw std::invalid_argument("top_fraction must lie in (0, 1]");
  }
  std::vector<TrajectoryRecord> eligible;
  for (const auto& r : records) {
    if (r.duration() < rule.max_duration) eligible.push_back(r);
  }
  std::sort(eligible.begin(), eligible.end(), [](const TrajectoryRecord& a, const TrajectoryRecord& b) {
    if (a.server_fidelity != b.server_fidelity) return a.server_fidelity > b.server_fidelity;
    return a.id < b.id;
  });
  // Guard against 0.7 * 10 evaluating to 7.000000000000001.
  const auto keep = static_cast<std::size_t>(
      std::ceil(rule.top_fraction * static_cast<double>(eligible.size()) - 1e-9));
  if (keep < eligible.size()) eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(keep), eligible.end());
  return eligible;
}

std::string chop_root_id(const std::string& job_id, const std::string& record_id) {
  return job_id + "-" + record_id;
}

std::vector<SweepFamily> run_chop(FidelityEvaluator& evaluator, std::span<const TrajectoryRecord> selected,
                                  const std::string& job_id, const ChopParams& params,
                                  SolutionArchive* archive, const ChopProgress& progress) {
  params.check();
  std::vector<SweepFamily> out;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const auto& rec = selected[i];
    const std::string root_id = chop_root_id(job_id, rec.id);
    auto opt = optimize(evaluator, rec.path, params.seed_optimizer, Lineage{SeedKind::Player, rec.id, root_id});
    Solution root = std::move(opt.solution);
    root.id = root_id;

    const auto root_steps = static_cast<long>(root.path.steps());
    SweepFamily down;
    if (steps_for(params.t_min, root.path.dt()) < root_steps) {
      down = sweep_down(evaluator, root, params.t_min, params.sweep_optimizer);
    } else {
      down = SweepFamily{root_id, true, {root}, std::nullopt};
    }
    SweepFamily up = sweep_up(evaluator, root, std::max(params.t_max, root.duration()), params.sweep_optimizer);
    up.root_id += "+up";

    if (archive) {
      for (const auto& m : down.members) archive->append(m);
      for (std::size_t m = 1; m < up.members.size(); ++m) archive->append(up.members[m]);
    }
    out.push_back(std::move(down));
    out.push_back(std::move(up));
    if (progress) progress(i + 1, out);
  }
  return out;
}

std::optional<std::string> seeding_record(const std::string& id, const std::map<std::string, Lineage>& lineages) {
  std::string cur = id;
  for (std::size_t hops = 0; hops <= lineages.size(); ++hops) {
    const auto it = lineages.find(cur);
    if (it == lineages.end()) return std::nullopt;
    if (it->second.kind == SeedKind::Player) return it->second.parent;
    if (it->second.kind != SeedKind::Sweep) return std::nullopt;
    cur = it->second.parent;
  }
  return std::nullopt;  // cycle
}

}  // namespace qmoves::service
