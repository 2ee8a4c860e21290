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

#include "mpemba/thermo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mpemba/parallel.hpp"

namespace mpemba {

namespace {

// Modes whose contribution to the distance is below this are skipped.
constexpr double kNegligibleAmplitude = 1e-18;

double scan_step(const SpectralDecomposition& dec, double tau2, int steps_per_tau) {
  double step = tau2 / std::max(1, steps_per_tau);
  // Resolve oscillations of the modes that survive at late times.
  const double slow_re = dec.eigenvalue(1).real();
  double omega = 0.0;
  for (Index a = 1; a < dec.size(); ++a) {
    if (dec.eigenvalue(a).real() >= 4.0 * slow_re) {
      omega = std::max(omega, std::abs(dec.eigenvalue(a).imag()));
    }
  }
  if (omega > 0.0) step = std::min(step, std::numbers::pi / (4.0 * omega));
  return std::max(step, tau2 * 1e-3);
}

template <class Above>
double bisect(double lo, double hi, double rel_tol, Above&& above) {
  // Invariant: above(lo) holds, above(hi) does not.
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (above(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double hs_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("hs_distance: operand dimensions differ");
  }
  return std::sqrt(std::max(0.0, hs_inner(rho - sigma, rho - sigma).real()));
}

double distance_from_coefficients(const SpectralDecomposition& dec, const ComplexVector& coeffs,
                                  double t) {
  if (coeffs.size() != dec.size()) {
    throw DimensionError("distance_from_coefficients: coefficient count does not match");
  }
  const auto& values = dec.eigenvalues();
  const auto& right = dec.right_modes();
  const auto& norms = dec.right_norms();
  ComplexVector acc = ComplexVector::Zero(dec.size());
  for (Index a = 1; a < dec.size(); ++a) {
    const Complex w = std::exp(values(a) * t) * coeffs(a);
    if (std::abs(w) * norms(a) < kNegligibleAmplitude) continue;
    acc.noalias() += w * right.col(a);
  }
  return acc.norm();
}

std::vector<double> distance_curve(const SpectralDecomposition& dec, const ComplexVector& coeffs,
                                   std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (const double t : times) out.push_back(distance_from_coefficients(dec, coeffs, t));
  return out;
}

double thermalization_time(const SpectralDecomposition& dec, const ComplexVector& coeffs,
                           double eta, const ThermalizationOptions& opts) {
  if (!(eta > 0.0)) throw DimensionError("thermalization_time: eta must be positive");
  auto above = [&](double t) { return distance_from_coefficients(dec, coeffs, t) > eta; };
  if (!above(0.0)) return 0.0;

  const double tau2 = relaxation_timescales(dec).tau2;
  const double horizon = opts.horizon_factor * tau2;
  if (above(horizon)) {
    std::ostringstream os;
    os << "thermalization_time: distance still above eta=" << eta << " at horizon t=" << horizon;
    throw HorizonExceededError(os.str());
  }

  const double step = scan_step(dec, tau2, opts.steps_per_tau);
  double hi = horizon;
  double lo = std::max(0.0, hi - step);
  while (!above(lo)) {
    hi = lo;
    lo = std::max(0.0, hi - step);
  }
  return bisect(lo, hi, opts.rel_tol, above);
}

std::optional<double> crossing_time(const SpectralDecomposition& dec, const ComplexVector& fast,
                                    const ComplexVector& slow, double horizon) {
  auto not_below = [&](double t) {
    return distance_from_coefficients(dec, fast, t) >= distance_from_coefficients(dec, slow, t);
  };
  if (not_below(horizon)) return std::nullopt;
  const double tau2 = relaxation_timescales(dec).tau2;
  const double step = scan_step(dec, tau2, 25);
  double hi = horizon;
  while (hi > 0.0) {
    const double lo = std::max(0.0, hi - step);
    if (not_below(lo)) return bisect(lo, hi, 1e-9, not_below);
    hi = lo;
  }
  return std::nullopt;
}

ThermalizationCurve thermalization_curve(const SpectralDecomposition& dec,
                                         const DirectPropagator& direct, const DensityMatrix& rho0,
                                         std::span<const double> times, std::string label) {
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0)) {
    throw DimensionError("thermalization_curve: times must be non-negative and ascending");
  }
  ThermalizationCurve curve;
  curve.label = std::move(label);
  curve.times.assign(times.begin(), times.end());
  curve.distances.reserve(times.size());

  const ComplexVector coeffs = overlap_coefficients(dec, rho0);
  const DensityMatrix steady = dec.steady_state();
  DensityMatrix rho = rho0;
  double now = 0.0;
  int agreeing = 0;
  for (const double t : times) {
    if (agreeing >= 3) {
      curve.distances.push_back(distance_from_coefficients(dec, coeffs, t));
      continue;
    }
    rho = direct.advance(rho, t - now);
    now = t;
    const double exact = hs_distance(rho, steady);
    const double modal = distance_from_coefficients(dec, coeffs, t);
    agreeing = std::abs(exact - modal) <= 1e-10 + 1e-8 * exact ? agreeing + 1 : 0;
    curve.distances.push_back(exact);
  }
  return curve;
}

double relative_speedup(double t_base, double t_ideal, double t_eps) {
  if (!(t_base > t_ideal)) {
    std::ostringstream os;
    os << "relative_speedup: baseline time " << t_base << " does not exceed ideal time "
       << t_ideal;
    throw DegenerateBaselineError(os.str());
  }
  const double pct = 100.0 * (t_base - t_eps) / (t_base - t_ideal);
  return std::clamp(pct, 0.0, 100.0);
}

OpenSystem::OpenSystem(OpenModelKind kind, int size, LindbladModel model)
    : kind_(kind),
      size_(size),
      model_(std::move(model)),
      spectrum_(std::make_shared<const SpectralDecomposition>(
          decompose(build_liouvillian(model_)))) {}

OpenSystem OpenSystem::dicke(const DickeParams& p) {
  return OpenSystem(OpenModelKind::Dicke, p.spins, dicke_model(p));
}

OpenSystem OpenSystem::oscillator(OscillatorParams p, int max_level) {
  if (max_level < 1) throw DimensionError("OpenSystem::oscillator: max level must be positive");
  p.levels = max_level + 1 + kOscillatorPadding;
  return OpenSystem(OpenModelKind::Oscillator, max_level, oscillator_model(p));
}

std::string OpenSystem::name() const { return kind_ == OpenModelKind::Dicke ? "dicke" : "sho"; }

ErrorKind OpenSystem::error_kind() const {
  return kind_ == OpenModelKind::Dicke ? ErrorKind::AngleRelative : ErrorKind::QrPerturbation;
}

ComplexVector OpenSystem::initial_vector(std::uint64_t seed) const {
  RandomStream rng(seed);
  return random_pure_vector(size_ + 1, rng);
}

DensityMatrix OpenSystem::original_state(std::uint64_t seed) const {
  const ComplexVector psi = initial_vector(seed);
  return embed(psi * psi.adjoint(), spectrum_->side());
}

DensityMatrix OpenSystem::prepared_state(std::uint64_t seed, double epsilon,
                                         std::uint64_t noise_seed) const {
  const ComplexVector psi = initial_vector(seed);
  const DensityMatrix rho = psi * psi.adjoint();
  const PreparationError err{epsilon, error_kind(), noise_seed};
  if (kind_ == OpenModelKind::Dicke) {
    return apply_rotation(build_rotation(*spectrum_, psi), rho, err);
  }
  return embed(diagonalized_state(rho, err), spectrum_->side());
}

std::vector<double> SweepResult::mean_speedup(double eta) const {
  std::vector<double> sum(epsilons.size(), 0.0);
  std::size_t count = 0;
  for (const auto& row : rows) {
    if (row.eta != eta) continue;
    const auto k = static_cast<std::size_t>(
        std::find(epsilons.begin(), epsilons.end(), row.epsilon) - epsilons.begin());
    sum[k] += row.speedup_pct;
    ++count;
  }
  const double n = static_cast<double>(count) / static_cast<double>(epsilons.size());
  for (auto& s : sum) s /= n;
  return sum;
}

std::vector<double> SweepResult::mean_teq(double eta) const {
  std::vector<double> sum(epsilons.size(), 0.0);
  std::size_t count = 0;
  for (const auto& row : rows) {
    if (row.eta != eta) continue;
    const auto k = static_cast<std::size_t>(
        std::find(epsilons.begin(), epsilons.end(), row.epsilon) - epsilons.begin());
    sum[k] += row.t_eq;
    ++count;
  }
  const double n = static_cast<double>(count) / static_cast<double>(epsilons.size());
  for (auto& s : sum) s /= n;
  return sum;
}

SweepResult run_epsilon_sweep(const OpenSystem& system, const std::vector<double>& epsilons,
                              const std::vector<double>& etas,
                              const std::vector<std::uint64_t>& seeds, const SweepOptions& opts) {
  if (epsilons.empty() || etas.empty() || seeds.empty()) {
    throw ConfigError("run_epsilon_sweep: epsilon, eta and seed lists must be non-empty");
  }
  const auto& dec = system.spectrum();

  struct SeedOutput {
    std::vector<SweepBaseline> baselines;
    std::vector<SweepRow> rows;
  };
  std::vector<SeedOutput> per_seed(seeds.size());

  parallel_for(seeds.size(), opts.threads, [&](std::size_t s) {
    const std::uint64_t seed = seeds[s];
    const ComplexVector base = overlap_coefficients(dec, system.original_state(seed));
    const ComplexVector ideal = overlap_coefficients(dec, system.prepared_state(seed, 0.0, 0));
    // One noise draw per state, shared by every epsilon (common random numbers).
    const std::uint64_t noise = derive_seed(seed, 0);
    std::vector<ComplexVector> noisy;
    noisy.reserve(epsilons.size());
    for (const double eps : epsilons) {
      noisy.push_back(overlap_coefficients(dec, system.prepared_state(seed, eps, noise)));
    }
    auto& out = per_seed[s];
    for (const double eta : etas) {
      const double t_base = thermalization_time(dec, base, eta, opts.thermalization);
      const double t_ideal = thermalization_time(dec, ideal, eta, opts.thermalization);
      out.baselines.push_back({seed, eta, t_base, t_ideal});
      for (std::size_t e = 0; e < epsilons.size(); ++e) {
        const double t_eps = thermalization_time(dec, noisy[e], eta, opts.thermalization);
        out.rows.push_back({seed, eta, epsilons[e], t_eps, relative_speedup(t_base, t_ideal, t_eps)});
      }
    }
  });

  SweepResult result;
  result.model = system.name();
  result.size = system.size();
  result.epsilons = epsilons;
  result.etas = etas;
  result.seeds = seeds;
  for (auto& out : per_seed) {
    result.baselines.insert(result.baselines.end(), out.baselines.begin(), out.baselines.end());
    result.rows.insert(result.rows.end(), out.rows.begin(), out.rows.end());
  }
  return result;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0.0) || !(hi >= lo)) {
    throw ConfigError("log_grid: need count >= 1 and 0 < lo <= hi");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int k = 0; k < count; ++k) {
    grid[static_cast<std::size_t>(k)] = std::pow(10.0, a + (b - a) * k / (count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace mpemba
