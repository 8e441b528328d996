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

#include "qmoves/analysis/hilbert.hpp"

#include <cmath>
#include <sstream>

#include "qmoves/errors.hpp"

namespace qmoves {

HilbertVelocity hilbert_velocity(const TransportProblem& problem, const ControlPath& path) {
  const auto& cfg = problem.cfg;
  ControlledEvolution engine(cfg);
  const std::size_t m = problem.initial.size();
  const std::size_t samples = path.samples();
  const double dx = cfg.grid.dx();

  std::vector<cplx> states(m * samples);
  std::vector<cplx> psi(problem.initial.amplitudes().begin(), problem.initial.amplitudes().end());
  engine.forward(psi, path, [&](std::size_t k, std::span<const cplx> s) {
    std::copy(s.begin(), s.end(), states.begin() + static_cast<long>(k * m));
  });

  HilbertVelocity out;
  out.time.resize(samples);
  out.q.resize(samples);
  std::vector<cplx> chi(problem.target.amplitudes().begin(), problem.target.amplitudes().end());
  std::vector<cplx> h_psi(m);
  std::vector<std::string> error;
  std::size_t bad = samples;
  engine.backward(chi, path, [&](std::size_t k, std::span<const cplx> c) {
    const std::span<const cplx> p(states.data() + k * m, m);
    const cplx o = inner_product(c, p, dx);
    const double f = std::norm(o);
    out.time[k] = path.time(k);
    if (f > 1.0 - 1e-12 || f <= 0.0) {
      if (f > 1.0 - 1e-12 && (bad == samples || k < bad)) bad = k;
      out.q[k] = 0.0;
      return;
    }
    engine.apply_hamiltonian(path, k, p, h_psi);
    const cplx chi_h_psi = inner_product(c, h_psi, dx);
    out.q[k] = (std::conj(o) * chi_h_psi).imag() / std::sqrt(f * (1.0 - f));
    if (k == samples - 1) out.fidelity = f;
  });
  if (bad != samples) {
    std::ostringstream msg;
    msg << "fidelity reaches 1 at sample " << bad << "; the orthogonal target part is undefined";
    throw UndefinedXiError(bad, msg.str());
  }
  if (samples == 1) {
    out.mean = out.q[0];
    return out;
  }
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < samples; ++k) integral += 0.5 * (out.q[k] + out.q[k + 1]) * path.dt();
  out.mean = integral / path.duration();
  return out;
}

}  // namespace qmoves
