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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpemba/liouville.hpp"
#include "mpemba/models.hpp"
#include "mpemba/stateprep.hpp"

namespace mpemba {

/// sqrt(Tr[(rho - sigma)^dagger (rho - sigma)]).
double hs_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Distance from the steady state at time t, evaluated as the norm of
/// sum_{alpha >= 1} exp(l_alpha t) c_alpha |R_alpha>>. Uses the full
/// bilinear form; right modes are generally not orthogonal.
double distance_from_coefficients(const SpectralDecomposition& dec, const ComplexVector& coeffs,
                                  double t);

std::vector<double> distance_curve(const SpectralDecomposition& dec, const ComplexVector& coeffs,
                                   std::span<const double> times);

struct ThermalizationOptions {
  double horizon_factor = 20.0;  // scan out to horizon_factor * tau2
  double rel_tol = 1e-6;         // bisection tolerance on t
  int steps_per_tau = 25;        // backward scan resolution
};

/// Last time the distance drops to eta: once past it the state stays within
/// eta of the steady state (up to the horizon). Returns 0 when the initial
/// distance is already <= eta; throws HorizonExceededError when the
/// distance is still above eta at the horizon.
double thermalization_time(const SpectralDecomposition& dec, const ComplexVector& coeffs,
                           double eta, const ThermalizationOptions& opts = {});

/// Time t_c after which curve `fast` stays strictly below curve `slow`,
/// searched up to `horizon`. Empty when fast is below slow on the whole
/// window (no crossing) or never ends up below.
std::optional<double> crossing_time(const SpectralDecomposition& dec, const ComplexVector& fast,
                                    const ComplexVector& slow, double horizon);

/// 100 (t_base - t_eps) / (t_base - t_ideal), clamped to [0, 100].
double relative_speedup(double t_base, double t_ideal, double t_eps);

struct ThermalizationCurve {
  std::string label;
  std::vector<double> times;
  std::vector<double> distances;
};

/// Distance from the steady state on an ascending time grid. Early times
/// use direct propagation; once three consecutive points agree with the
/// eigenmode expansion (to 1e-10 absolute plus 1e-8 relative) the rest of
/// the grid is evaluated from the modes.
ThermalizationCurve thermalization_curve(const SpectralDecomposition& dec,
                                         const DirectPropagator& direct, const DensityMatrix& rho0,
                                         std::span<const double> times, std::string label);

enum class OpenModelKind { Dicke, Oscillator };

// One of the two open-system benchmarks with its (shared, immutable)
// spectral decomposition and state-preparation protocol.
//
// Dicke: random pure spin state, orthogonalized by the partner rotation,
// errors scale the rotation angle. Oscillator: random pure state on levels
// 0..size, diagonalized, errors perturb the diagonalizing unitary; the
// generator keeps four extra levels above the support.
class OpenSystem {
 public:
  static constexpr int kOscillatorPadding = 4;

  static OpenSystem dicke(const DickeParams& p);
  static OpenSystem oscillator(OscillatorParams p, int max_level);

  OpenModelKind kind() const { return kind_; }
  int size() const { return size_; }
  std::string name() const;
  const LindbladModel& model() const { return model_; }
  const SpectralDecomposition& spectrum() const { return *spectrum_; }

  ErrorKind error_kind() const;

  // Random pure state vector on the preparation support.
  ComplexVector initial_vector(std::uint64_t seed) const;
  DensityMatrix original_state(std::uint64_t seed) const;
  // epsilon = 0 is the exact preparation; noise_seed only matters for QR noise.
  DensityMatrix prepared_state(std::uint64_t seed, double epsilon, std::uint64_t noise_seed) const;

 private:
  OpenSystem(OpenModelKind kind, int size, LindbladModel model);

  OpenModelKind kind_;
  int size_;
  LindbladModel model_;
  std::shared_ptr<const SpectralDecomposition> spectrum_;
};

struct SweepRow {
  std::uint64_t seed = 0;
  double eta = 0.0;
  double epsilon = 0.0;
  double t_eq = 0.0;
  double speedup_pct = 0.0;
};

struct SweepBaseline {
  std::uint64_t seed = 0;
  double eta = 0.0;
  double t_base = 0.0;   // unprepared random state
  double t_ideal = 0.0;  // exact preparation
};

struct SweepResult {
  std::string model;
  int size = 0;
  std::vector<double> epsilons;
  std::vector<double> etas;
  std::vector<std::uint64_t> seeds;
  std::vector<SweepBaseline> baselines;  // ordered by (seed, eta)
  std::vector<SweepRow> rows;            // ordered by (seed, eta, epsilon)

  // Seed-averaged speed-up / t_eq per epsilon at one eta.
  std::vector<double> mean_speedup(double eta) const;
  std::vector<double> mean_teq(double eta) const;
};

struct SweepOptions {
  ThermalizationOptions thermalization;
  int threads = 1;
};

SweepResult run_epsilon_sweep(const OpenSystem& system, const std::vector<double>& epsilons,
                              const std::vector<double>& etas,
                              const std::vector<std::uint64_t>& seeds,
                              const SweepOptions& opts = {});

/// Log-spaced grid of `count` points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace mpemba
