// Copyright 2026 The mpemba-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpemba/models.hpp"

#include <cmath>

namespace mpemba {

void DickeParams::validate() const {
  if (spins < 1) throw DimensionError("DickeParams: need at least one spin");
  if (!(loss > 0.0)) throw InvalidGeneratorError("DickeParams: loss rate must be positive");
}

double DickeParams::sx2_prefactor() const {
  return 4.0 * boson * coupling * coupling / (4.0 * boson * boson + loss * loss);
}

double DickeParams::jump_prefactor() const {
  return 2.0 * std::abs(coupling) * std::sqrt(loss) / std::sqrt(4.0 * boson * boson + loss * loss);
}

void OscillatorParams::validate() const {
  if (!(gamma > 0.0)) throw InvalidGeneratorError("OscillatorParams: gamma must be positive");
  if (levels < 2) throw DimensionError("OscillatorParams: need at least two levels");
  if (inverse_temperature && mean_occupation) {
    throw InvalidGeneratorError(
        "OscillatorParams: give either an inverse temperature or a mean occupation, not both");
  }
  if (occupation() < 0.0) {
    throw InvalidGeneratorError("OscillatorParams: mean bath occupation is negative");
  }
}

double OscillatorParams::occupation() const {
  if (mean_occupation) return *mean_occupation;
  if (inverse_temperature) {
    const double x = *inverse_temperature * frequency;
    return std::isinf(x) ? 0.0 : 1.0 / std::expm1(x);
  }
  return 0.0;
}

SpinOperators spin_operators(int spins) {
  if (spins < 1) throw DimensionError("spin_operators: need at least one spin");
  const int d = spins + 1;
  const double j = 0.5 * spins;
  ComplexMatrix sz = ComplexMatrix::Zero(d, d);
  ComplexMatrix sp = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double m = j - k;
    sz(k, k) = m;
    // S+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> is row k-1.
    if (k > 0) sp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  SpinOperators s;
  s.sz = std::move(sz);
  s.sx = 0.5 * (sp + sp.adjoint());
  return s;
}

LindbladModel dicke_model(const DickeParams& p) {
  p.validate();
  const auto s = spin_operators(p.spins);
  const double n = p.spins;
  LindbladModel m;
  m.hamiltonian = p.field * s.sz - (p.sx2_prefactor() / n) * (s.sx * s.sx);
  m.jumps.push_back({(p.jump_prefactor() / std::sqrt(n)) * s.sx, 1.0});
  return m;
}

ComplexMatrix annihilation(int levels) {
  ComplexMatrix a = ComplexMatrix::Zero(levels, levels);
  for (int k = 1; k < levels; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

LindbladModel oscillator_model(const OscillatorParams& p) {
  p.validate();
  const ComplexMatrix a = annihilation(p.levels);
  const double nbar = p.occupation();
  LindbladModel m;
  m.hamiltonian = p.frequency * (a.adjoint() * a);
  m.jumps.push_back({std::sqrt(p.gamma * (nbar + 1.0)) * a, 1.0});
  m.jumps.push_back({std::sqrt(p.gamma * nbar) * a.adjoint(), 1.0});
  return m;
}

}  // namespace mpemba
