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
#include <numeric>
#include <sstream>

namespace mpemba {

void LindbladModel::validate(double tol) const {
  const Index d = hamiltonian.rows();
  if (hamiltonian.cols() != d) throw DimensionError("LindbladModel: Hamiltonian is not square");
  if (!is_hermitian(hamiltonian, tol)) {
    throw InvalidGeneratorError("LindbladModel: Hamiltonian is not Hermitian");
  }
  for (std::size_t mu = 0; mu < jumps.size(); ++mu) {
    const auto& j = jumps[mu];
    if (j.op.rows() != d || j.op.cols() != d) {
      throw DimensionError("LindbladModel: jump operator " + std::to_string(mu) +
                           " does not match the Hamiltonian dimension");
    }
    if (!(j.rate >= 0.0)) {
      throw InvalidGeneratorError("LindbladModel: jump rate " + std::to_string(mu) +
                                  " is negative");
    }
  }
}

ComplexMatrix build_liouvillian(const LindbladModel& model) {
  model.validate();
  const Index d = model.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const Complex i(0.0, 1.0);

  ComplexMatrix lhat = -i * (kron(id, model.hamiltonian) - kron(model.hamiltonian.transpose(), id));
  for (const auto& j : model.jumps) {
    if (j.rate == 0.0) continue;
    const ComplexMatrix ldl = j.op.adjoint() * j.op;
    lhat += j.rate * (kron(j.op.conjugate(), j.op) -
                      0.5 * (kron(id, ldl) + kron(ldl.transpose(), id)));
  }
  return lhat;
}

ComplexMatrix apply_lindbladian(const LindbladModel& model, const ComplexMatrix& rho) {
  const Complex i(0.0, 1.0);
  const auto& h = model.hamiltonian;
  ComplexMatrix out = -i * (h * rho - rho * h);
  for (const auto& j : model.jumps) {
    const ComplexMatrix ldl = j.op.adjoint() * j.op;
    out += j.rate * (j.op * rho * j.op.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

SpectralDecomposition::SpectralDecomposition(ComplexVector eigenvalues, ComplexMatrix right,
                                             ComplexMatrix left)
    : eigenvalues_(std::move(eigenvalues)), right_(std::move(right)), left_(std::move(left)) {
  const Index n = eigenvalues_.size();
  if (right_.rows() != n || right_.cols() != n || left_.rows() != n || left_.cols() != n) {
    throw DimensionError("SpectralDecomposition: mode matrices do not match eigenvalue count");
  }
  side_ = VectorizedState(ComplexVector::Zero(n)).side();
  right_norms_ = right_.colwise().norm().transpose();
}

DensityMatrix SpectralDecomposition::steady_state() const {
  const ComplexMatrix rho = devectorize(ComplexVector(right_.col(0)));
  return 0.5 * (rho + rho.adjoint());
}

SpectralDecomposition decompose(const ComplexMatrix& liouvillian, double tol) {
  if (liouvillian.rows() != liouvillian.cols()) {
    throw DimensionError("decompose: Liouvillian is not square");
  }
  const Index n = liouvillian.rows();
  const Index d = VectorizedState(ComplexVector::Zero(n)).side();
  const ComplexVector identity = ComplexMatrix::Identity(d, d).reshaped();

  const double scale = std::max(1.0, max_abs(liouvillian));
  const double leak = (identity.adjoint() * liouvillian).cwiseAbs().maxCoeff();
  if (leak > tol * scale) {
    std::ostringstream os;
    os << "decompose: generator does not preserve trace (identity leak " << leak << ")";
    throw InvalidGeneratorError(os.str());
  }

  EigenSystem eig = eig_general(liouvillian);

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return eig.values(a).real() > eig.values(b).real();
  });
  // Within runs of equal real part (conjugate pairs, degeneracies) order by
  // descending imaginary part.
  const double tie = 1e-9 * std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  for (std::size_t start = 0; start < order.size();) {
    std::size_t stop = start + 1;
    while (stop < order.size() &&
           std::abs(eig.values(order[stop]).real() - eig.values(order[start]).real()) < tie) {
      ++stop;
    }
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(stop), [&](Index a, Index b) {
                       return eig.values(a).imag() > eig.values(b).imag();
                     });
    start = stop;
  }

  ComplexVector values(n);
  ComplexMatrix right(n, n);
  ComplexMatrix left(n, n);
  for (Index k = 0; k < n; ++k) {
    values(k) = eig.values(order[k]);
    right.col(k) = eig.right.col(order[k]);
    left.col(k) = eig.left.col(order[k]);
  }

  const double top = values(0).real();
  if (std::abs(top) > tol * scale) {
    std::ostringstream os;
    os << "decompose: leading eigenvalue " << values(0)
       << (top > 0.0 ? " has a positive real part" : " is not a stationary mode");
    throw InvalidGeneratorError(os.str());
  }

  // Unit-trace steady state; rescale its dual so <<L_0|R_0>> stays 1.
  const Complex trace = identity.dot(right.col(0));
  if (std::abs(trace) < 1e-14) {
    throw InvalidGeneratorError("decompose: stationary mode is traceless");
  }
  right.col(0) /= trace;
  left.col(0) *= std::conj(trace);

  // Exact in theory: the stationary eigenvalue is zero and every decaying mode
  // is traceless. Removing the roundoff keeps long-time propagation trace-exact.
  values(0) = 0.0;
  for (Index k = 1; k < n; ++k) right.col(k) -= identity.dot(right.col(k)) * right.col(0);

  return SpectralDecomposition(std::move(values), std::move(right), std::move(left));
}

ComplexVector overlap_coefficients(const SpectralDecomposition& dec, const DensityMatrix& rho0) {
  if (rho0.rows() != dec.side() || rho0.cols() != dec.side()) {
    throw DimensionError("overlap_coefficients: state dimension does not match the generator");
  }
  return dec.left_modes().adjoint() * rho0.reshaped();
}

DensityMatrix propagate(const SpectralDecomposition& dec, const ComplexVector& coeffs, double t) {
  if (coeffs.size() != dec.size()) {
    throw DimensionError("propagate: coefficient count does not match the generator");
  }
  const ComplexVector weights = ((dec.eigenvalues() * t).array().exp() * coeffs.array()).matrix();
  const ComplexMatrix rho = devectorize(ComplexVector(dec.right_modes() * weights));
  return 0.5 * (rho + rho.adjoint());
}

DensityMatrix propagate(const SpectralDecomposition& dec, const DensityMatrix& rho0, double t) {
  return propagate(dec, overlap_coefficients(dec, rho0), t);
}

namespace {

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

DirectPropagator::DirectPropagator(LindbladModel model) : model_(std::move(model)) {
  model_.validate();
  norm_bound_ = 2.0 * spectral_norm(model_.hamiltonian);
  for (const auto& j : model_.jumps) {
    const double n = spectral_norm(j.op);
    norm_bound_ += 2.0 * j.rate * n * n;
  }
}

DensityMatrix DirectPropagator::advance(const DensityMatrix& rho, double dt) const {
  if (dt < 0.0) throw DimensionError("DirectPropagator::advance: negative time step");
  if (rho.rows() != model_.dim() || rho.cols() != model_.dim()) {
    throw DimensionError("DirectPropagator::advance: state dimension does not match the model");
  }
  if (dt == 0.0) return rho;
  // Substep length keeps |h L| <= 2 so the Taylor terms never grow much.
  const auto steps = static_cast<long>(std::ceil(dt * norm_bound_ / 2.0));
  const double h = dt / static_cast<double>(std::max(1L, steps));
  ComplexMatrix state = rho;
  for (long s = 0; s < std::max(1L, steps); ++s) {
    ComplexMatrix term = state;
    ComplexMatrix sum = state;
    for (int k = 1; k < 80; ++k) {
      term = (h / k) * apply_lindbladian(model_, term);
      sum += term;
      if (term.norm() <= 1e-17 * sum.norm()) break;
    }
    state = std::move(sum);
  }
  return 0.5 * (state + state.adjoint());
}

RelaxationTimescales relaxation_timescales(const SpectralDecomposition& dec, double tol) {
  if (dec.size() < 3) {
    throw DimensionError("relaxation_timescales: need at least three modes");
  }
  const double re2 = dec.eigenvalue(1).real();
  const double re3 = dec.eigenvalue(2).real();
  if (std::abs(re2) <= tol) {
    throw NonUniqueSteadyStateError(
        "relaxation_timescales: second eigenvalue has zero real part; steady state is not unique");
  }
  return {1.0 / std::abs(re2), 1.0 / std::abs(re3)};
}

}  // namespace mpemba
