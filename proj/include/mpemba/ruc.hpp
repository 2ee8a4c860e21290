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
#include <vector>

#include "mpemba/numerics.hpp"

namespace mpemba {

/// Pure state of a qubit chain. Site k is bit k of the basis index; a set
/// bit is |1>, which carries one unit of charge.
class CircuitState {
 public:
  CircuitState(int sites, ComplexVector amplitudes);

  int sites() const { return sites_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  ComplexVector& amplitudes() { return amplitudes_; }

  int depth = 0;
  double theta = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;

 private:
  int sites_;
  ComplexVector amplitudes_;
};

/// Charge sectors of an A-qubit subsystem: sector q holds the basis states
/// with q set bits, dimension C(A, q).
class ChargeSectorTable {
 public:
  explicit ChargeSectorTable(int subsystem_sites);

  int sites() const { return sites_; }
  int sector_count() const { return sites_ + 1; }
  const std::vector<Index>& members(int q) const { return members_[static_cast<std::size_t>(q)]; }
  const std::vector<double>& dimensions() const { return dims_; }
  static int charge_of(Index basis_index);

 private:
  int sites_;
  std::vector<std::vector<Index>> members_;
  std::vector<double> dims_;
};

struct GateOp {
  int first = 0;
  int second = 0;
  ComplexMatrix unitary;  // 4x4 in the basis |b_first b_second>, index 2 b_first + b_second
};

/// Charge-conserving two-qubit gate: Haar phases on |00> and |11>, a Haar
/// 2x2 unitary on {|01>, |10>}, exact zeros elsewhere.
ComplexMatrix sample_u1_gate(RandomStream& rng);

void apply_gate(CircuitState& state, const GateOp& gate);

/// Gates of one periodic brickwork layer: bonds (0,1), (2,3), ... then
/// (1,2), ..., (N-1,0), each with a freshly sampled gate.
std::vector<GateOp> sample_brickwork_layer(int sites, RandomStream& rng);

void apply_brickwork_layer(CircuitState& state, RandomStream& rng);

/// exp(-i theta sigma_y / 2).
ComplexMatrix tilt_unitary(double theta);

/// Product of tilted spins, each prepared with an independently perturbed
/// tilt unitary (site k uses derive_seed(seed, k)). epsilon = 0 is exact.
CircuitState tilted_ferromagnet(int sites, double theta, double epsilon, std::uint64_t seed);

inline constexpr int kMaxReducedSites = 8;

/// Partial trace onto the contiguous block [first, first + count).
DensityMatrix reduced_density(const CircuitState& state, int first, int count);

DensityMatrix charge_decohere(const DensityMatrix& rho, const ChargeSectorTable& table);

/// S(rho_Q) - S(rho) in nats.
double entanglement_asymmetry(const DensityMatrix& rho, const ChargeSectorTable& table);

struct SectorOverlaps {
  std::vector<double> populations;  // p_q
  double weighted_dimension = 0.0;  // E[D] = sum_q p_q D_q
};

SectorOverlaps sector_overlaps(const DensityMatrix& rho, const ChargeSectorTable& table);

/// Charge distribution of the whole chain.
std::vector<double> charge_populations(const CircuitState& state);

struct RucSpec {
  int sites = 16;
  int subsystem = 4;
  double theta = 0.0;
  double epsilon = 0.0;
  int depth = 20;
  int realizations = 100;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct RucTrajectory {
  RucSpec spec;
  std::vector<double> ea_mean;    // index = depth, 0..spec.depth
  std::vector<double> ea_stderr;
  std::vector<double> initial_populations;  // mean p_q of the initial subsystem state
  double initial_weighted_dimension = 0.0;
};

/// Mean entanglement asymmetry of the first `subsystem` sites versus depth.
/// Realization r draws its preparation noise from derive_seed(s_r, 0) and
/// its circuit from derive_seed(s_r, 1), s_r = derive_seed(seed, r).
RucTrajectory run_ruc_experiment(const RucSpec& spec);

struct DimensionRow {
  double theta = 0.0;
  double epsilon = 0.0;
  double ed_mean = 0.0;
  double ed_stderr = 0.0;
};

/// Mean weighted dimension of the initial subsystem state over noisy
/// preparations, for every (theta, epsilon). Preparation p uses
/// derive_seed(seed, p) for every grid point.
std::vector<DimensionRow> dimension_sweep(const std::vector<double>& thetas,
                                          const std::vector<double>& epsilons, int subsystem,
                                          int preparations, std::uint64_t seed, int threads = 1);

}  // namespace mpemba
