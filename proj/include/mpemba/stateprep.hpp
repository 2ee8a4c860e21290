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

#include "mpemba/liouville.hpp"

namespace mpemba {

enum class ErrorKind {
  AngleRelative,   // rotation angle scaled to s (1 + epsilon)
  QrPerturbation,  // unitary replaced by the Q factor of U + epsilon U_haar
};

struct PreparationError {
  double epsilon = 0.0;
  ErrorKind kind = ErrorKind::AngleRelative;
  std::uint64_t seed = 0;
};

/// Haar-random pure state vector (normalized complex Gaussian).
ComplexVector random_pure_vector(Index d, RandomStream& rng);
DensityMatrix random_pure_state(Index d, std::uint64_t seed);

/// Pads a density matrix with zeros up to `dim` levels.
DensityMatrix embed(const DensityMatrix& rho, Index dim);

/// Rotation that removes a pure state's overlap with the slowest decaying
/// mode. The matricized left mode is K (up to a global phase) with
/// K = sum_i weights(i) |phi_i><phi_i|; the rotation maps the state onto
/// phi_1 and then turns it towards the partner eigenvector phi_n, which has
/// weight of opposite sign, by the angle that zeroes the overlap.
struct OrthogonalizingRotation {
  ComplexMatrix basis_change;  // U_A = sum_i |phi_i><psi_i|
  ComplexMatrix mode_basis;    // columns phi_i
  RealVector weights;          // alpha_i
  Index partner = 0;           // n, zero-based; phi_1 is column 0
  double angle = 0.0;          // s*

  /// F = |phi_n><phi_1| + h.c.
  ComplexMatrix generator() const;
  /// U_B(s) = exp(-i s F) = 1 - i sin(s) F - (1 - cos s) F^2.
  ComplexMatrix partner_rotation(double s) const;
  /// U(s) = U_B(s) U_A.
  ComplexMatrix unitary(double s) const;
};

/// Builds the rotation for the pure state `psi` against mode 1 of `dec`.
/// Throws MethodInapplicableError when the matricized mode is not
/// Hermitian up to a phase, InfeasibleError when its spectrum has one sign.
OrthogonalizingRotation build_rotation(const SpectralDecomposition& dec, const ComplexVector& psi,
                                       double hermitian_tol = 1e-8);

/// U(s~) rho U(s~)^dagger with s~ = s*(1 + epsilon).
DensityMatrix apply_rotation(const OrthogonalizingRotation& rot, const DensityMatrix& rho,
                             const PreparationError& err);

/// Eigenvector columns of rho, ordered by descending eigenvalue, each with
/// its first non-negligible component real and positive.
ComplexMatrix diagonalizing_unitary(const DensityMatrix& rho);

/// Q factor (R diagonal real-positive) of U_T + epsilon U_P, U_P Haar.
ComplexMatrix perturb_unitary(const ComplexMatrix& target, double epsilon, RandomStream& rng);
ComplexMatrix perturb_unitary(const ComplexMatrix& target, double epsilon, std::uint64_t seed);

/// U^dagger rho U with U the (possibly perturbed) diagonalizing unitary.
/// err.kind must be QrPerturbation; epsilon = 0 gives the exact diagonal.
DensityMatrix diagonalized_state(const DensityMatrix& rho, const PreparationError& err);

}  // namespace mpemba
