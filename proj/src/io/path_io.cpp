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

#include "qmoves/io/path_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "qmoves/errors.hpp"

namespace qmoves {

void write_path_csv(std::ostream& out, const ControlPath& path) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17) << "t,x0,amp\n";
  for (std::size_t k = 0; k < path.samples(); ++k) {
    out << path.time(k) << ',' << path.x0()[k] << ',' << path.amp()[k] << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

ControlPath read_path_csv(std::istream& in, double dt) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x0,amp", 0) != 0) {
    throw StructuralError("path csv: missing 't,x0,amp' header");
  }
  std::vector<double> x;
  std::vector<double> a;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    double t = 0.0;
    double xv = 0.0;
    double av = 0.0;
    char c1 = 0;
    char c2 = 0;
    if (!(row >> t >> c1 >> xv >> c2 >> av) || c1 != ',' || c2 != ',') {
      throw StructuralError("path csv: malformed row '" + line + "'");
    }
    const double expected = static_cast<double>(x.size()) * dt;
    if (std::abs(t - expected) > 1e-9 * std::max(1.0, expected)) {
      throw StructuralError("path csv: time column does not advance by dt");
    }
    x.push_back(xv);
    a.push_back(av);
  }
  if (x.empty()) throw StructuralError("path csv: no samples");
  return ControlPath(dt, std::move(x), std::move(a));
}

void save_path_csv(const std::filesystem::path& file, const ControlPath& path) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_path_csv(out, path);
}

ControlPath load_path_csv(const std::filesystem::path& file, double dt) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  return read_path_csv(in, dt);
}

nlohmann::json path_to_json(const ControlPath& path) {
  return {{"duration", path.duration()}, {"dt", path.dt()}, {"x0", path.x0()}, {"amp", path.amp()}};
}

ControlPath path_from_json(const nlohmann::json& j) {
  try {
    ControlPath p(j.at("dt").get<double>(), j.at("x0").get<std::vector<double>>(),
                  j.at("amp").get<std::vector<double>>());
    if (j.contains("duration") &&
        std::abs(j["duration"].get<double>() - p.duration()) > 1e-9 * std::max(1.0, p.duration())) {
      throw StructuralError("path json: duration disagrees with the sample count");
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("path json: ") + e.what());
  }
}

void write_trajectory_csv(std::ostream& out, const StateTrajectory& traj) {
  const auto prec = out.precision();
  out << std::setprecision(17) << "t,x,re,im\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& psi = traj.states[i];
    const double t = traj.time(i);
    for (std::size_t j = 0; j < psi.size(); ++j) {
      out << t << ',' << psi.grid().x(j) << ',' << psi[j].real() << ',' << psi[j].imag() << '\n';
    }
  }
  out.precision(prec);
}

}  // namespace qmoves
