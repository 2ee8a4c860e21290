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

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "mpemba/errors.hpp"

namespace mpemba {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Hermitian, unit-trace, positive semidefinite. Kept as a plain matrix so
// Eigen expressions compose; see is_density_matrix() for the check.
using DensityMatrix = ComplexMatrix;

// All randomness flows through an explicitly seeded stream.
using RandomStream = std::mt19937_64;

inline constexpr double kDefaultTolerance = 1e-10;

// Mixes a base seed with a stream index into an independent child seed
// (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Column-stacked density matrix |rho>>. The entry for rho(i, j) sits at
/// position i + j * side().
class VectorizedState {
 public:
  VectorizedState() = default;
  explicit VectorizedState(ComplexVector entries);

  const ComplexVector& entries() const { return entries_; }
  Index dim() const { return entries_.size(); }
  Index side() const { return side_; }

 private:
  ComplexVector entries_;
  Index side_ = 0;
};

VectorizedState vectorize(const ComplexMatrix& rho);
ComplexMatrix devectorize(const VectorizedState& v);
ComplexMatrix devectorize(const ComplexVector& v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix of rho -> A rho B acting on column-stacked vectors: B^T (x) A.
ComplexMatrix sandwich_superoperator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr[sigma^dagger rho].
Complex hs_inner(const ComplexMatrix& sigma, const ComplexMatrix& rho);

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTolerance);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-12);
bool is_density_matrix(const ComplexMatrix& rho, double tol = kDefaultTolerance);

/// Unitary factor of a QR decomposition with R's diagonal made real and
/// non-negative. For unitary input this returns the input (to rounding).
ComplexMatrix qr_unitary_factor(const ComplexMatrix& m);

/// d x d matrix of independent standard complex Gaussians.
ComplexMatrix complex_gaussian(Index rows, Index cols, RandomStream& rng);

/// Haar-distributed d x d unitary (phase-corrected QR of a Ginibre matrix).
ComplexMatrix haar_unitary(Index d, RandomStream& rng);

// Eigendecomposition of a general square matrix with biorthogonal
// eigenvectors: M right.col(a) = values(a) right.col(a), and
// left.adjoint() * right = I. Eigenvalues are in solver order.
struct EigenSystem {
  ComplexVector values;
  ComplexMatrix right;
  ComplexMatrix left;
};

EigenSystem eig_general(const ComplexMatrix& m, double cluster_rel_tol = 1e-9);

// Eigenvalues ascending, orthonormal eigenvector columns.
struct HermitianEigen {
  RealVector values;
  ComplexMatrix vectors;
};

HermitianEigen eig_hermitian(const ComplexMatrix& m);

/// -Tr[rho ln rho] in nats; negative eigenvalues are clamped to zero.
double von_neumann_entropy(const ComplexMatrix& rho);

}  // namespace mpemba
