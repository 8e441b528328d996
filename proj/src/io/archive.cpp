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

#include "qmoves/io/archive.hpp"

#include <stdexcept>

#include "qmoves/errors.hpp"
#include "qmoves/io/path_io.hpp"

namespace qmoves {

using nlohmann::json;
namespace fs = std::filesystem;

json lineage_to_json(const Lineage& l) {
  return {{"kind", to_string(l.kind)}, {"parent", l.parent}, {"root", l.root}};
}

Lineage lineage_from_json(const json& j) {
  const auto kind = seed_kind_from_string(j.at("kind").get<std::string>());
  if (!kind) throw StructuralError("unknown seed kind " + j.at("kind").dump());
  return {*kind, j.value("parent", ""), j.value("root", "")};
}

SolutionArchive::SolutionArchive(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_ / "paths");
  index_.open(dir_ / "solutions.jsonl", std::ios::app);
  if (!index_) throw std::runtime_error("cannot open archive in " + dir_.string());
}

void SolutionArchive::append(const Solution& sol) {
  if (sol.id.empty()) throw std::invalid_argument("archived solutions need an id");
  const fs::path rel = fs::path("paths") / (sol.id + ".csv");
  std::lock_guard lock(mutex_);
  save_path_csv(dir_ / rel, sol.path);
  const json rec = {{"id", sol.id},
                    {"T", sol.duration()},
                    {"fidelity", sol.fidelity},
                    {"lineage", lineage_to_json(sol.lineage)},
                    {"path_file", rel.generic_string()},
                    {"iterations", sol.iterations}};
  index_ << rec.dump() << '\n';
  index_.flush();
}

std::vector<Solution> load_archive(const fs::path& dir, double dt) {
  std::ifstream in(dir / "solutions.jsonl");
  if (!in) throw std::runtime_error("no solutions.jsonl in " + dir.string());
  std::vector<Solution> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json rec = json::parse(line);
      Solution s{rec.at("id").get<std::string>(),
                 load_path_csv(dir / rec.at("path_file").get<std::string>(), dt),
                 rec.at("fidelity").get<double>(),
                 lineage_from_json(rec.at("lineage")),
                 rec.value("iterations", std::size_t{0}),
                 {},
                 nullptr};
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw StructuralError("solutions.jsonl line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace qmoves
