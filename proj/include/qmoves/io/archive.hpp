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

#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmoves/optim/solution.hpp"

namespace qmoves {

/// Append-only solution store: `solutions.jsonl` with one record per
/// solution ({id, T, fidelity, lineage, path_file, iterations}) and the
/// control path of each in `paths/<id>.csv`.
class SolutionArchive {
 public:
  /// Creates the directory if needed. Existing records are kept.
  explicit SolutionArchive(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }

  /// Writes the path file, then appends the record. Thread-safe.
  void append(const Solution& sol);

 private:
  std::filesystem::path dir_;
  std::ofstream index_;
  std::mutex mutex_;
};

nlohmann::json lineage_to_json(const Lineage& l);
Lineage lineage_from_json(const nlohmann::json& j);

/// Reads every record of an archive directory, paths included.
std::vector<Solution> load_archive(const std::filesystem::path& dir, double dt);

}  // namespace qmoves
