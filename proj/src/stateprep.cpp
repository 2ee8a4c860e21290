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

#include "mpemba/stateprep.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace mpemba {

ComplexVector random_pure_vector(Index d, RandomStream& rng) {
  if (d < 1) throw DimensionError("random_pure_vector: dimension must be at least 1");
  ComplexVector psi = complex_gaussian(d, 1, rng).col(0);
  psi.normalize();
  return psi;
}

DensityMatrix random_pure_state(Index d, std::uint64_t seed) {
  RandomStream rng(seed);
  const ComplexVector psi = random_pure_vector(d, rng);
  return psi * psi.adjoint();
}

DensityMatrix embed(const DensityMatrix& rho, Index dim) {
  if (rho.rows() != rho.cols() || rho.rows() > dim) {
    throw DimensionError("embed: state does not fit in the target dimension");
  }
  DensityMatrix out = DensityMatrix::Zero(dim, dim);
  out.topLeftCorner(rho.rows(), rho.cols()) = rho;
  return out;
}

ComplexMatrix OrthogonalizingRotation::generator() const {
  const auto d = mode_basis.rows();
  ComplexMatrix f = ComplexMatrix::Zero(d, d);
  const ComplexVector& phi1 = mode_basis.col(0);
  const ComplexVector& phin = mode_basis.col(partner);
  f += phin * phi1.adjoint();
  f += phi1 * phin.adjoint();
  return f;
}

ComplexMatrix OrthogonalizingRotation::partner_rotation(double s) const {
  const ComplexMatrix f = generator();
  const auto d = f.rows();
  const Complex i(0.0, 1.0);
  return ComplexMatrix::Identity(d, d) - i * std::sin(s) * f - (1.0 - std::cos(s)) * (f * f);
}

ComplexMatrix OrthogonalizingRotation::unitary(double s) const {
  return partner_rotation(s) * basis_change;
}

namespace {

// Completes psi to an orthonormal basis (psi first) by Gram-Schmidt over
// the standard basis, skipping nearly dependent candidates.
ComplexMatrix complete_basis(const ComplexVector& psi) {
  const Index d = psi.size();
  ComplexMatrix basis(d, d);
  basis.col(0) = psi;
  Index filled = 1;
  for (Index k = 0; k < d && filled < d; ++k) {
    ComplexVector v = ComplexVector::Unit(d, k);
    for (int pass = 0; pass < 2; ++pass) {
      v -= basis.leftCols(filled) * (basis.leftCols(filled).adjoint() * v);
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    basis.col(filled++) = v / norm;
  }
  return basis;
}

}  // namespace

OrthogonalizingRotation build_rotation(const SpectralDecomposition& dec, const ComplexVector& psi,
                                       double hermitian_tol) {
  if (dec.size() < 2) throw DimensionError("build_rotation: generator has no decaying mode");
  if (psi.size() != dec.side()) {
    throw DimensionError("build_rotation: state dimension does not match the generator");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw DimensionError("build_rotation: state vector is not normalized");
  }

  const ComplexMatrix mode = devectorize(ComplexVector(dec.left_modes().col(1)));
  const double norm2 = mode.squaredNorm();
  // If mode = e^{i chi} K with K Hermitian then Tr[mode^2] = e^{2 i chi} ||K||^2.
  const Complex ratio = (mode * mode).trace() / norm2;
  const double skew = [&] {
    if (!(std::abs(ratio) > hermitian_tol)) return 1.0;
    const ComplexMatrix k = mode / std::sqrt(ratio / std::abs(ratio));
    return max_abs(k - k.adjoint()) / std::max(max_abs(k), 1e-300);
  }();
  if (!(skew <= hermitian_tol)) {
    std::ostringstream os;
    os << "build_rotation: slowest mode is not Hermitian up to a phase (relative skew " << skew
       << "); rotation construction is not possible for this generator";
    throw MethodInapplicableError(os.str());
  }

  const ComplexMatrix k = mode / std::sqrt(ratio / std::abs(ratio));
  const HermitianEigen eig = eig_hermitian(k);
  const Index d = dec.side();

  OrthogonalizingRotation rot;
  rot.mode_basis = eig.vectors;
  rot.weights = eig.values;

  // phi_1 is the first eigenvector in ascending weight order.
  const double alpha1 = rot.weights(0);
  Index partner = -1;
  for (Index i = 1; i < d; ++i) {
    if (alpha1 * rot.weights(i) < 0.0 &&
        (partner < 0 || std::abs(rot.weights(i)) > std::abs(rot.weights(partner)))) {
      partner = i;
    }
  }
  if (partner < 0) {
    throw InfeasibleError("build_rotation: mode weights have no sign change; cannot zero overlap");
  }
  rot.partner = partner;
  // alpha_1 cos^2 s + alpha_n sin^2 s = 0
  rot.angle = std::atan(std::sqrt(std::abs(alpha1 / rot.weights(partner))));

  rot.basis_change = rot.mode_basis * complete_basis(psi).adjoint();
  return rot;
}

DensityMatrix apply_rotation(const OrthogonalizingRotation& rot, const DensityMatrix& rho,
                             const PreparationError& err) {
  if (err.kind != ErrorKind::AngleRelative) {
    throw MethodInapplicableError("apply_rotation: only angle-relative errors apply to rotations");
  }
  if (rho.rows() != rot.basis_change.rows() || rho.cols() != rot.basis_change.cols()) {
    throw DimensionError("apply_rotation: state dimension does not match the rotation");
  }
  const ComplexMatrix u = rot.unitary(rot.angle * (1.0 + err.epsilon));
  return u * rho * u.adjoint();
}

ComplexMatrix diagonalizing_unitary(const DensityMatrix& rho) {
  const HermitianEigen eig = eig_hermitian(rho);
  const Index d = rho.rows();
  ComplexMatrix u(d, d);
  for (Index c = 0; c < d; ++c) {
    ComplexVector v = eig.vectors.col(d - 1 - c);
    for (Index r = 0; r < d; ++r) {
      if (std::abs(v(r)) > 1e-12) {
        v *= std::conj(v(r)) / std::abs(v(r));
        break;
      }
    }
    u.col(c) = v;
  }
  return u;
}

ComplexMatrix perturb_unitary(const ComplexMatrix& target, double epsilon, RandomStream& rng) {
  if (epsilon < 0.0) throw DimensionError("perturb_unitary: epsilon must be non-negative");
  const ComplexMatrix noise = haar_unitary(target.rows(), rng);
  return qr_unitary_factor(target + epsilon * noise);
}

ComplexMatrix perturb_unitary(const ComplexMatrix& target, double epsilon, std::uint64_t seed) {
  RandomStream rng(seed);
  return perturb_unitary(target, epsilon, rng);
}

DensityMatrix diagonalized_state(const DensityMatrix& rho, const PreparationError& err) {
  if (err.kind != ErrorKind::QrPerturbation) {
    throw MethodInapplicableError("diagonalized_state: expects a QR-perturbation error");
  }
  ComplexMatrix u = diagonalizing_unitary(rho);
  if (err.epsilon > 0.0) u = perturb_unitary(u, err.epsilon, err.seed);
  return u.adjoint() * rho * u;
}

}  // namespace mpemba
