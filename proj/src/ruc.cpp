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

#include "mpemba/ruc.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "mpemba/parallel.hpp"
#include "mpemba/stateprep.hpp"

namespace mpemba {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

struct Moments {
  double mean = 0.0;
  double stderr_ = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  const auto n = static_cast<double>(xs.size());
  for (const double x : xs) m.mean += x;
  m.mean /= n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (const double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  }
  return m;
}

}  // namespace

CircuitState::CircuitState(int sites, ComplexVector amplitudes)
    : sites_(sites), amplitudes_(std::move(amplitudes)) {
  if (sites < 2 || sites % 2 != 0) {
    throw DimensionError("CircuitState: chain length must be even and at least 2");
  }
  if (sites > 30 || amplitudes_.size() != (Index{1} << sites)) {
    throw DimensionError("CircuitState: amplitude count does not match 2^sites");
  }
}

ChargeSectorTable::ChargeSectorTable(int subsystem_sites) : sites_(subsystem_sites) {
  if (sites_ < 1 || sites_ > kMaxReducedSites) {
    throw ResourceError("ChargeSectorTable: subsystem size must be in [1, " +
                        std::to_string(kMaxReducedSites) + "]");
  }
  members_.resize(static_cast<std::size_t>(sites_ + 1));
  for (Index i = 0; i < (Index{1} << sites_); ++i) {
    members_[static_cast<std::size_t>(charge_of(i))].push_back(i);
  }
  for (int q = 0; q <= sites_; ++q) dims_.push_back(binomial(sites_, q));
}

int ChargeSectorTable::charge_of(Index basis_index) {
  return std::popcount(static_cast<std::uint64_t>(basis_index));
}

ComplexMatrix sample_u1_gate(RandomStream& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = std::polar(1.0, angle(rng));
  u.block(1, 1, 2, 2) = haar_unitary(2, rng);
  u(3, 3) = std::polar(1.0, angle(rng));
  return u;
}

void apply_gate(CircuitState& state, const GateOp& gate) {
  const int n = state.sites();
  if (gate.first < 0 || gate.first >= n || gate.second < 0 || gate.second >= n ||
      gate.first == gate.second) {
    throw DimensionError("apply_gate: invalid site pair");
  }
  const Index bf = Index{1} << gate.first;
  const Index bs = Index{1} << gate.second;
  auto& amp = state.amplitudes();
  const auto& u = gate.unitary;
  const Index dim = amp.size();
  for (Index i = 0; i < dim; ++i) {
    if ((i & bf) != 0 || (i & bs) != 0) continue;
    const Index idx[4] = {i, i | bs, i | bf, i | bf | bs};
    const Complex in[4] = {amp(idx[0]), amp(idx[1]), amp(idx[2]), amp(idx[3])};
    for (int r = 0; r < 4; ++r) {
      amp(idx[r]) = u(r, 0) * in[0] + u(r, 1) * in[1] + u(r, 2) * in[2] + u(r, 3) * in[3];
    }
  }
}

std::vector<GateOp> sample_brickwork_layer(int sites, RandomStream& rng) {
  if (sites < 2 || sites % 2 != 0) {
    throw DimensionError("sample_brickwork_layer: chain length must be even");
  }
  std::vector<GateOp> gates;
  gates.reserve(static_cast<std::size_t>(sites));
  for (int k = 0; k < sites; k += 2) gates.push_back({k, k + 1, sample_u1_gate(rng)});
  for (int k = 1; k < sites; k += 2) gates.push_back({k, (k + 1) % sites, sample_u1_gate(rng)});
  return gates;
}

void apply_brickwork_layer(CircuitState& state, RandomStream& rng) {
  for (const auto& g : sample_brickwork_layer(state.sites(), rng)) apply_gate(state, g);
  ++state.depth;
}

ComplexMatrix tilt_unitary(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  ComplexMatrix u(2, 2);
  u << c, -s, s, c;
  return u;
}

CircuitState tilted_ferromagnet(int sites, double theta, double epsilon, std::uint64_t seed) {
  if (theta < 0.0 || theta > 0.5 * std::numbers::pi + 1e-12) {
    throw DimensionError("tilted_ferromagnet: theta must lie in [0, pi/2]");
  }
  if (sites < 2 || sites % 2 != 0 || sites > 30) {
    throw DimensionError("tilted_ferromagnet: chain length must be even, in [2, 30]");
  }
  const ComplexMatrix target = tilt_unitary(theta);
  std::vector<ComplexVector> local;
  local.reserve(static_cast<std::size_t>(sites));
  for (int k = 0; k < sites; ++k) {
    const ComplexMatrix u = epsilon == 0.0
                                ? target
                                : perturb_unitary(target, epsilon, derive_seed(seed, static_cast<std::uint64_t>(k)));
    local.push_back(u.col(0));
  }
  const Index dim = Index{1} << sites;
  ComplexVector amp(dim);
  for (Index i = 0; i < dim; ++i) {
    Complex a(1.0);
    for (int k = 0; k < sites; ++k) a *= local[static_cast<std::size_t>(k)]((i >> k) & 1);
    amp(i) = a;
  }
  CircuitState state(sites, std::move(amp));
  state.theta = theta;
  state.epsilon = epsilon;
  state.seed = seed;
  return state;
}

DensityMatrix reduced_density(const CircuitState& state, int first, int count) {
  if (count > kMaxReducedSites) {
    throw ResourceError("reduced_density: subsystem larger than " +
                        std::to_string(kMaxReducedSites) + " sites");
  }
  if (count < 1 || first < 0 || first + count > state.sites()) {
    throw DimensionError("reduced_density: subsystem is not a block of the chain");
  }
  const Index inner = Index{1} << count;
  const Index outer = Index{1} << (state.sites() - count);
  const Index low_mask = (Index{1} << first) - 1;
  // psi(a, rest): a = subsystem bits, rest = remaining bits in order.
  ComplexMatrix psi(inner, outer);
  const auto& amp = state.amplitudes();
  for (Index rest = 0; rest < outer; ++rest) {
    const Index low = rest & low_mask;
    const Index high = (rest >> first) << (first + count);
    for (Index a = 0; a < inner; ++a) psi(a, rest) = amp(low | (a << first) | high);
  }
  DensityMatrix rho = psi * psi.adjoint();
  return 0.5 * (rho + rho.adjoint());
}

DensityMatrix charge_decohere(const DensityMatrix& rho, const ChargeSectorTable& table) {
  const Index dim = Index{1} << table.sites();
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError("charge_decohere: state does not match the sector table");
  }
  DensityMatrix out = DensityMatrix::Zero(dim, dim);
  for (int q = 0; q < table.sector_count(); ++q) {
    for (const Index i : table.members(q)) {
      for (const Index j : table.members(q)) out(i, j) = rho(i, j);
    }
  }
  return out;
}

double entanglement_asymmetry(const DensityMatrix& rho, const ChargeSectorTable& table) {
  return von_neumann_entropy(charge_decohere(rho, table)) - von_neumann_entropy(rho);
}

SectorOverlaps sector_overlaps(const DensityMatrix& rho, const ChargeSectorTable& table) {
  const Index dim = Index{1} << table.sites();
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError("sector_overlaps: state does not match the sector table");
  }
  SectorOverlaps out;
  for (int q = 0; q < table.sector_count(); ++q) {
    double p = 0.0;
    for (const Index i : table.members(q)) p += rho(i, i).real();
    out.populations.push_back(p);
    out.weighted_dimension += p * table.dimensions()[static_cast<std::size_t>(q)];
  }
  return out;
}

std::vector<double> charge_populations(const CircuitState& state) {
  std::vector<double> p(static_cast<std::size_t>(state.sites() + 1), 0.0);
  const auto& amp = state.amplitudes();
  for (Index i = 0; i < amp.size(); ++i) {
    p[static_cast<std::size_t>(ChargeSectorTable::charge_of(i))] += std::norm(amp(i));
  }
  return p;
}

RucTrajectory run_ruc_experiment(const RucSpec& spec) {
  if (spec.realizations < 1 || spec.depth < 0) {
    throw ConfigError("run_ruc_experiment: need at least one realization and depth >= 0");
  }
  if (spec.subsystem > spec.sites) {
    throw DimensionError("run_ruc_experiment: subsystem larger than the chain");
  }
  const ChargeSectorTable table(spec.subsystem);
  const auto realizations = static_cast<std::size_t>(spec.realizations);
  const auto layers = static_cast<std::size_t>(spec.depth) + 1;

  std::vector<std::vector<double>> ea(realizations, std::vector<double>(layers));
  std::vector<SectorOverlaps> initial(realizations);

  parallel_for(realizations, spec.threads, [&](std::size_t r) {
    const std::uint64_t base = derive_seed(spec.seed, r);
    CircuitState state =
        tilted_ferromagnet(spec.sites, spec.theta, spec.epsilon, derive_seed(base, 0));
    RandomStream circuit(derive_seed(base, 1));
    DensityMatrix rho = reduced_density(state, 0, spec.subsystem);
    initial[r] = sector_overlaps(rho, table);
    ea[r][0] = entanglement_asymmetry(rho, table);
    for (std::size_t t = 1; t < layers; ++t) {
      apply_brickwork_layer(state, circuit);
      ea[r][t] = entanglement_asymmetry(reduced_density(state, 0, spec.subsystem), table);
    }
  });

  RucTrajectory out;
  out.spec = spec;
  std::vector<double> column(realizations);
  for (std::size_t t = 0; t < layers; ++t) {
    for (std::size_t r = 0; r < realizations; ++r) column[r] = ea[r][t];
    const auto m = moments(column);
    out.ea_mean.push_back(m.mean);
    out.ea_stderr.push_back(m.stderr_);
  }
  out.initial_populations.assign(static_cast<std::size_t>(table.sector_count()), 0.0);
  for (const auto& o : initial) {
    for (std::size_t q = 0; q < o.populations.size(); ++q) {
      out.initial_populations[q] += o.populations[q] / static_cast<double>(realizations);
    }
    out.initial_weighted_dimension += o.weighted_dimension / static_cast<double>(realizations);
  }
  return out;
}

std::vector<DimensionRow> dimension_sweep(const std::vector<double>& thetas,
                                          const std::vector<double>& epsilons, int subsystem,
                                          int preparations, std::uint64_t seed, int threads) {
  if (thetas.empty() || epsilons.empty() || preparations < 1) {
    throw ConfigError("dimension_sweep: grids must be non-empty and preparations >= 1");
  }
  const ChargeSectorTable table(subsystem);
  // Product states: the first A sites of any longer chain look the same.
  const int chain = subsystem % 2 == 0 ? subsystem : subsystem + 1;
  std::vector<DimensionRow> rows(thetas.size() * epsilons.size());
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    const double theta = thetas[k / epsilons.size()];
    const double epsilon = epsilons[k % epsilons.size()];
    std::vector<double> values(static_cast<std::size_t>(preparations));
    for (int p = 0; p < preparations; ++p) {
      const auto state = tilted_ferromagnet(chain, theta, epsilon,
                                            derive_seed(seed, static_cast<std::uint64_t>(p)));
      values[static_cast<std::size_t>(p)] =
          sector_overlaps(reduced_density(state, 0, subsystem), table).weighted_dimension;
    }
    const auto m = moments(values);
    rows[k] = {theta, epsilon, m.mean, m.stderr_};
  });
  return rows;
}

}  // namespace mpemba
