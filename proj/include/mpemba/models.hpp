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

#pragma once

#include <optional>

#include "mpemba/liouville.hpp"

namespace mpemba {

// Reduced Dicke model after eliminating the lossy cavity mode. Frequencies
// are in units of the longitudinal field.
struct DickeParams {
  int spins = 40;
  double field = 1.0;     // Omega
  double boson = 1.0;     // omega
  double coupling = 1.0;  // g
  double loss = 1.0;      // kappa

  void validate() const;
  double sx2_prefactor() const;
  double jump_prefactor() const;
};

// Harmonic oscillator damped by a thermal bath, truncated to `levels`.
// Either inverse_temperature or mean_occupation fixes the bath.
struct OscillatorParams {
  double frequency = 1.0;  // omega_0
  double gamma = 1.0;
  std::optional<double> inverse_temperature;
  std::optional<double> mean_occupation;
  int levels = 25;

  void validate() const;
  double occupation() const;
};

struct SpinOperators {
  ComplexMatrix sx;
  ComplexMatrix sz;
};

/// Collective spin matrices in the J = N/2 sector, basis ordered m = J..-J.
SpinOperators spin_operators(int spins);

LindbladModel dicke_model(const DickeParams& p);

/// Truncated annihilation operator, a(n-1, n) = sqrt(n).
ComplexMatrix annihilation(int levels);

LindbladModel oscillator_model(const OscillatorParams& p);

}  // namespace mpemba
