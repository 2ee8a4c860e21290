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

#include <vector>

#include "mpemba/numerics.hpp"

namespace mpemba {

struct JumpOperator {
  ComplexMatrix op;
  double rate = 1.0;
};

/// Hamiltonian plus weighted jump operators of a GKSL master equation
///   d rho/dt = -i[H, rho] + sum_mu rate_mu (L rho L^dag - {L^dag L, rho}/2).
struct LindbladModel {
  ComplexMatrix hamiltonian;
  std::vector<JumpOperator> jumps;

  Index dim() const { return hamiltonian.rows(); }

  // Throws DimensionError / InvalidGeneratorError on a malformed model.
  void validate(double tol = kDefaultTolerance) const;
};

/// d^2 x d^2 generator acting on column-stacked density matrices.
ComplexMatrix build_liouvillian(const LindbladModel& model);

/// Right-hand side of the master equation evaluated directly on a density
/// matrix, without vectorization.
ComplexMatrix apply_lindbladian(const LindbladModel& model, const ComplexMatrix& rho);

/// Ordered biorthogonal eigendecomposition of a Liouvillian.
///
/// Modes are indexed from 0. Mode 0 is the steady state (eigenvalue 0),
/// mode 1 is the slowest decaying mode, and so on: real parts are
/// non-increasing, ties broken by descending imaginary part and then by
/// solver order. Right mode 0 is normalized to unit trace and left mode 0
/// is then the vectorized identity. Immutable after construction.
class SpectralDecomposition {
 public:
  SpectralDecomposition(ComplexVector eigenvalues, ComplexMatrix right, ComplexMatrix left);

  Index size() const { return eigenvalues_.size(); }
  Index side() const { return side_; }

  const ComplexVector& eigenvalues() const { return eigenvalues_; }
  Complex eigenvalue(Index alpha) const { return eigenvalues_(alpha); }

  // Columns are the vectorized modes.
  const ComplexMatrix& right_modes() const { return right_; }
  const ComplexMatrix& left_modes() const { return left_; }

  VectorizedState right_mode(Index alpha) const { return VectorizedState(right_.col(alpha)); }
  VectorizedState left_mode(Index alpha) const { return VectorizedState(left_.col(alpha)); }

  // Euclidean norm of each right mode column.
  const RealVector& right_norms() const { return right_norms_; }

  DensityMatrix steady_state() const;

 private:
  ComplexVector eigenvalues_;
  ComplexMatrix right_;
  ComplexMatrix left_;
  RealVector right_norms_;
  Index side_ = 0;
};

SpectralDecomposition decompose(const ComplexMatrix& liouvillian, double tol = 1e-8);

/// c_alpha = <<L_alpha|rho0>>.
ComplexVector overlap_coefficients(const SpectralDecomposition& dec, const DensityMatrix& rho0);

/// sum_alpha exp(l_alpha t) c_alpha |R_alpha>>, devectorized and symmetrized.
DensityMatrix propagate(const SpectralDecomposition& dec, const ComplexVector& coeffs, double t);
DensityMatrix propagate(const SpectralDecomposition& dec, const DensityMatrix& rho0, double t);

/// exp(t L) applied to a density matrix without forming the superoperator:
/// truncated Taylor series on substeps short enough that each series
/// converges to rounding. Stays accurate where the eigenmode expansion of a
/// strongly non-normal generator loses digits to cancellation.
class DirectPropagator {
 public:
  explicit DirectPropagator(LindbladModel model);

  DensityMatrix advance(const DensityMatrix& rho, double dt) const;

  // Upper bound on the operator norm of the generator.
  double norm_bound() const { return norm_bound_; }

 private:
  LindbladModel model_;
  double norm_bound_ = 0.0;
};

struct RelaxationTimescales {
  double tau2 = 0.0;  // 1/|Re l| of the slowest decaying mode
  double tau3 = 0.0;  // same for the next mode
};

RelaxationTimescales relaxation_timescales(const SpectralDecomposition& dec, double tol = 1e-8);

}  // namespace mpemba
