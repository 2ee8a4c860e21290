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

#include "mpemba/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace mpemba {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

Index checked_side(Index n) {
  const auto side = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (side * side != n) {
    throw DimensionError("vectorized state length " + std::to_string(n) +
                         " is not a perfect square");
  }
  return side;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

VectorizedState::VectorizedState(ComplexVector entries)
    : entries_(std::move(entries)), side_(checked_side(entries_.size())) {}

VectorizedState vectorize(const ComplexMatrix& rho) {
  require_square(rho, "vectorize");
  // Eigen storage is column-major, so the reshaped view is column stacking.
  return VectorizedState(rho.reshaped());
}

ComplexMatrix devectorize(const ComplexVector& v) {
  const Index side = checked_side(v.size());
  return v.reshaped(side, side);
}

ComplexMatrix devectorize(const VectorizedState& v) { return devectorize(v.entries()); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix sandwich_superoperator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "sandwich_superoperator");
  require_square(b, "sandwich_superoperator");
  if (a.rows() != b.rows()) {
    throw DimensionError("sandwich_superoperator: operand dimensions differ");
  }
  return kron(b.transpose(), a);
}

Complex hs_inner(const ComplexMatrix& sigma, const ComplexMatrix& rho) {
  if (sigma.rows() != rho.rows() || sigma.cols() != rho.cols()) {
    throw DimensionError("hs_inner: operand dimensions differ");
  }
  // Tr[s^dagger r] = sum_ij conj(s_ij) r_ij
  return sigma.reshaped().dot(rho.reshaped());
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())) <= tol;
}

bool is_density_matrix(const ComplexMatrix& rho, double tol) {
  if (!is_hermitian(rho, tol)) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

ComplexMatrix qr_unitary_factor(const ComplexMatrix& m) {
  require_square(m, "qr_unitary_factor");
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Index k = 0; k < m.cols(); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

ComplexMatrix complex_gaussian(Index rows, Index cols, RandomStream& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix z(rows, cols);
  // Fill in a fixed order so results are reproducible for a given seed.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}

ComplexMatrix haar_unitary(Index d, RandomStream& rng) {
  if (d < 1) throw DimensionError("haar_unitary: dimension must be at least 1");
  return qr_unitary_factor(complex_gaussian(d, d, rng));
}

EigenSystem eig_general(const ComplexMatrix& m, double cluster_rel_tol) {
  require_square(m, "eig_general");
  const Index n = m.rows();
  EigenSystem out;
  out.values.resize(n);
  if (n == 0) return out;

  ComplexMatrix work = m;
  ComplexMatrix vl(n, n);
  ComplexMatrix vr(n, n);
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'V', 'V', static_cast<lapack_int>(n), work.data(),
                    static_cast<lapack_int>(n), out.values.data(), vl.data(),
                    static_cast<lapack_int>(n), vr.data(), static_cast<lapack_int>(n));
  if (info != 0) {
    throw DefectiveSpectrumError("eig_general: zgeev failed to converge (info=" +
                                 std::to_string(info) + ")");
  }

  // Group numerically coincident eigenvalues; within a group left and right
  // vectors are not automatically biorthogonal.
  const double radius = out.values.cwiseAbs().maxCoeff();
  const double tol = cluster_rel_tol * std::max(radius, 1e-300);
  std::vector<Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      if (std::abs(out.values(a) - out.values(b)) < tol) {
        parent[find(b)] = find(a);
      }
    }
  }
  std::vector<std::vector<Index>> clusters(static_cast<std::size_t>(n));
  for (Index a = 0; a < n; ++a) clusters[find(a)].push_back(a);

  out.right = std::move(vr);
  out.left.resize(n, n);
  for (const auto& members : clusters) {
    if (members.empty()) continue;
    const auto k = static_cast<Index>(members.size());
    ComplexMatrix lc(n, k);
    ComplexMatrix rc(n, k);
    for (Index c = 0; c < k; ++c) {
      lc.col(c) = vl.col(members[c]);
      rc.col(c) = out.right.col(members[c]);
    }
    const ComplexMatrix gram = lc.adjoint() * rc;
    Eigen::JacobiSVD<ComplexMatrix> svd(gram);
    const double smallest = svd.singularValues()(k - 1);
    if (smallest < 1e-12) {
      std::ostringstream os;
      os << "eig_general: left/right eigenvectors cannot be biorthogonalized near eigenvalue "
         << out.values(members[0]) << " (cluster of " << k << ", overlap " << smallest << ")";
      throw DefectiveSpectrumError(os.str());
    }
    // L_c <- L_c G^{-H} gives L_c^H R_c = I.
    const ComplexMatrix fixed = lc * gram.adjoint().inverse();
    for (Index c = 0; c < k; ++c) out.left.col(members[c]) = fixed.col(c);
  }
  return out;
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  require_square(rho, "von_neumann_entropy");
  const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (const double p : es.eigenvalues()) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace mpemba
