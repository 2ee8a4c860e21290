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

#include "mpemba/liouville.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "mpemba/models.hpp"
#include "oracles.hpp"

using namespace mpemba;

namespace {

LindbladModel amplitude_damping(double gamma) {
  LindbladModel m;
  m.hamiltonian = ComplexMatrix::Zero(2, 2);
  ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  m.jumps.push_back({lower, gamma});
  return m;
}

LindbladModel random_model(Index d, RandomStream& rng) {
  LindbladModel m;
  const ComplexMatrix g = complex_gaussian(d, d, rng);
  m.hamiltonian = 0.5 * (g + g.adjoint());
  for (int k = 0; k < 2; ++k) m.jumps.push_back({0.5 * complex_gaussian(d, d, rng), 0.3 + k});
  return m;
}

std::vector<Complex> sorted_values(ComplexVector v) {
  std::vector<Complex> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  return out;
}

}  // namespace

TEST(Liouville, amplitude_damping_spectrum) {
  const double gamma = 0.7;
  const auto dec = decompose(build_liouvillian(amplitude_damping(gamma)));
  ASSERT_EQ(dec.size(), 4);
  EXPECT_NEAR(std::abs(dec.eigenvalue(0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(dec.eigenvalue(1) + gamma / 2), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(dec.eigenvalue(2) + gamma / 2), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(dec.eigenvalue(3) + gamma), 0.0, 1e-12);
  const DensityMatrix ss = dec.steady_state();
  EXPECT_NEAR(std::abs(ss(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(max_abs(ss) - 1.0, 0.0, 1e-12);
}

TEST(Liouville, amplitude_damping_timescale) {
  const auto dec = decompose(build_liouvillian(amplitude_damping(1.0)));
  const auto ts = relaxation_timescales(dec);
  EXPECT_NEAR(ts.tau2, 2.0, 1e-10);
  EXPECT_NEAR(ts.tau3, 2.0, 1e-10);
}

TEST(Liouville, pure_hamiltonian_spectrum) {
  LindbladModel m;
  m.hamiltonian = ComplexMatrix::Zero(2, 2);
  m.hamiltonian(0, 0) = 1.0;
  m.hamiltonian(1, 1) = -1.0;
  const auto vals = sorted_values(eig_general(build_liouvillian(m)).values);
  EXPECT_NEAR(std::abs(vals[0] - Complex(0, 2)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(vals[1]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(vals[2]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(vals[3] - Complex(0, -2)), 0.0, 1e-12);
}

TEST(Liouville, vectorized_identity_is_left_kernel) {
  RandomStream rng(31);
  const auto m = random_model(4, rng);
  const ComplexMatrix l = build_liouvillian(m);
  const ComplexVector id = vectorize(ComplexMatrix::Identity(4, 4)).entries();
  EXPECT_LE((id.adjoint() * l).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Liouville, superoperator_matches_matrix_form) {
  RandomStream rng(32);
  const auto m = random_model(3, rng);
  const ComplexMatrix l = build_liouvillian(m);
  const ComplexMatrix rho = complex_gaussian(3, 3, rng);
  const ComplexMatrix expected = oracle::lindblad_rhs(m, rho);
  EXPECT_LE(max_abs(devectorize(ComplexVector(l * vectorize(rho).entries())) - expected), 1e-12);
  EXPECT_LE(max_abs(apply_lindbladian(m, rho) - expected), 1e-12);
}

TEST(Liouville, oscillator_low_spectrum) {
  OscillatorParams p;
  p.gamma = 1.0;
  p.mean_occupation = 0.5;
  p.levels = 12;
  const auto dec = decompose(build_liouvillian(oscillator_model(p)));
  EXPECT_NEAR(dec.eigenvalue(1).real(), -0.5, 0.01);
  EXPECT_NEAR(dec.eigenvalue(2).real(), -0.5, 0.01);
  EXPECT_NEAR(dec.eigenvalue(3).real(), -1.0, 0.02);
  EXPECT_NEAR(dec.eigenvalue(1).imag(), -dec.eigenvalue(2).imag(), 1e-8);
}

TEST(Liouville, modes_are_biorthonormal_and_steady_state_is_physical) {
  RandomStream rng(33);
  const auto dec = decompose(build_liouvillian(random_model(4, rng)));
  const Index n = dec.size();
  EXPECT_LE(max_abs(dec.left_modes().adjoint() * dec.right_modes() - ComplexMatrix::Identity(n, n)),
            1e-9);
  EXPECT_TRUE(is_density_matrix(dec.steady_state(), 1e-10));
  for (Index a = 1; a < n; ++a) EXPECT_LE(dec.eigenvalue(a).real(), dec.eigenvalue(a - 1).real() + 1e-9);
}

TEST(Liouville, spectral_propagation_matches_adaptive_integration) {
  RandomStream rng(34);
  const auto m = random_model(3, rng);
  const auto dec = decompose(build_liouvillian(m));
  const ComplexVector psi = complex_gaussian(3, 1, rng).col(0).normalized();
  const DensityMatrix rho0 = psi * psi.adjoint();
  std::vector<double> times;
  for (int k = 0; k < 20; ++k) times.push_back(0.25 * k);
  const auto reference = oracle::integrate(m, rho0, times);
  const auto coeffs = overlap_coefficients(dec, rho0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const DensityMatrix rho = propagate(dec, coeffs, times[k]);
    EXPECT_LE(max_abs(rho - reference[k]), 1e-8) << "t = " << times[k];
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
  }
}

TEST(Liouville, direct_propagator_matches_adaptive_integration) {
  RandomStream rng(35);
  const auto m = random_model(3, rng);
  const DirectPropagator direct(m);
  const ComplexVector psi = complex_gaussian(3, 1, rng).col(0).normalized();
  DensityMatrix rho = psi * psi.adjoint();
  const std::vector<double> times = {0.0, 0.1, 0.7, 2.0, 5.0};
  const auto reference = oracle::integrate(m, rho, times);
  double now = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    rho = direct.advance(rho, times[k] - now);
    now = times[k];
    EXPECT_LE(max_abs(rho - reference[k]), 1e-9) << "t = " << times[k];
  }
}

TEST(Liouville, invalid_models_are_rejected) {
  LindbladModel m;
  m.hamiltonian = ComplexMatrix::Zero(2, 3);
  EXPECT_THROW(build_liouvillian(m), DimensionError);
  m.hamiltonian = ComplexMatrix::Zero(2, 2);
  m.hamiltonian(0, 1) = 1.0;
  EXPECT_THROW(build_liouvillian(m), InvalidGeneratorError);
  m.hamiltonian = ComplexMatrix::Zero(2, 2);
  m.jumps.push_back({ComplexMatrix::Identity(2, 2), -1.0});
  EXPECT_THROW(build_liouvillian(m), InvalidGeneratorError);
}

TEST(Liouville, growing_generator_is_rejected) {
  ComplexMatrix l = ComplexMatrix::Zero(4, 4);
  l(0, 0) = 0.5;
  EXPECT_THROW(decompose(l), InvalidGeneratorError);
}

TEST(Liouville, degenerate_steady_state_has_no_timescale) {
  LindbladModel m;
  m.hamiltonian = ComplexMatrix::Zero(2, 2);
  m.hamiltonian(0, 0) = 1.0;
  ComplexMatrix dephase = ComplexMatrix::Zero(2, 2);
  dephase(0, 0) = 1.0;
  m.jumps.push_back({dephase, 1.0});
  const auto dec = decompose(build_liouvillian(m));
  EXPECT_THROW(relaxation_timescales(dec), NonUniqueSteadyStateError);
}
