// Copyright 2026 The diamondsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "diamond/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace diamond {

OperatorMatrix tensor_product(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw std::invalid_argument("tensor_product: operands must be square");
  }
  return Eigen::kroneckerProduct(a, b).eval();
}

OperatorMatrix tensor_product(std::initializer_list<OperatorMatrix> factors) {
  OperatorMatrix out = OperatorMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor_product(out, f);
  return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

OperatorMatrix embed(const OperatorMatrix& local, std::size_t site,
                     std::span<const int> local_dims) {
  if (site >= local_dims.size()) {
    throw std::invalid_argument("embed: site out of range");
  }
  if (local.rows() != local_dims[site] || local.cols() != local_dims[site]) {
    throw std::invalid_argument("embed: local operator has wrong dimension");
  }
  OperatorMatrix out = OperatorMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < local_dims.size(); ++k) {
    if (k == site) {
      out = tensor_product(out, local);
    } else {
      out = tensor_product(out, OperatorMatrix::Identity(local_dims[k], local_dims[k]));
    }
  }
  return out;
}

bool all_finite(const OperatorMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

OperatorMatrix matrix_exponential(const OperatorMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix_exponential: matrix must be square");
  }
  if (!all_finite(a)) {
    throw std::invalid_argument("matrix_exponential: non-finite entries");
  }
  if (a.size() == 0) return a;
  return a.exp();
}

OperatorMatrix EigenDecomposition::propagator(double t) const {
  StateVector phases(eigenvalues.size());
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    phases(k) = std::exp(-kI * eigenvalues(k) * t);
  }
  return eigenvectors * phases.asDiagonal() * eigenvectors.adjoint();
}

OperatorMatrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

EigenDecomposition hermitian_eigendecomposition(const OperatorMatrix& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("hermitian_eigendecomposition: matrix must be square");
  }
  if (!is_hermitian(h)) {
    throw std::invalid_argument("hermitian_eigendecomposition: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigendecomposition: solver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

PhaseDistance distance_up_to_global_phase(const OperatorMatrix& u,
                                          const OperatorMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("distance_up_to_global_phase: dimension mismatch");
  }
  const Complex overlap = (v.adjoint() * u).trace();
  if (std::abs(overlap) <= 1e-12 * static_cast<double>(u.rows())) {
    return {2.0, 0.0, false};
  }
  const double phase = std::arg(overlap);
  return {max_abs(u - std::polar(1.0, phase) * v), phase, true};
}

double max_abs(const OperatorMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

bool is_hermitian(const OperatorMatrix& a, double relative_tolerance) {
  if (a.rows() != a.cols()) return false;
  const double scale = max_abs(a);
  return max_abs(a - a.adjoint()) <= relative_tolerance * scale;
}

bool is_unitary(const OperatorMatrix& a, double tolerance) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a.adjoint() * a - OperatorMatrix::Identity(a.rows(), a.cols())) <= tolerance;
}

namespace pauli {

OperatorMatrix identity() { return OperatorMatrix::Identity(2, 2); }

OperatorMatrix x() {
  OperatorMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

OperatorMatrix y() { return kI * raising() - kI * lowering(); }

OperatorMatrix z() {
  OperatorMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

OperatorMatrix raising() {
  OperatorMatrix m = OperatorMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

OperatorMatrix lowering() {
  OperatorMatrix m = OperatorMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

OperatorMatrix hadamard() {
  OperatorMatrix m(2, 2);
  m << 1.0, 1.0, 1.0, -1.0;
  return m / std::sqrt(2.0);
}

OperatorMatrix string(std::uint32_t index, int num_qubits) {
  if (num_qubits < 0 || num_qubits > 15) {
    throw std::invalid_argument("pauli::string: unsupported qubit count");
  }
  OperatorMatrix out = OperatorMatrix::Identity(1, 1);
  for (int q = num_qubits - 1; q >= 0; --q) {
    switch ((index >> (2 * q)) & 3U) {
      case 0: out = tensor_product(out, identity()); break;
      case 1: out = tensor_product(out, x()); break;
      case 2: out = tensor_product(out, y()); break;
      default: out = tensor_product(out, z()); break;
    }
  }
  return out;
}

}  // namespace pauli

StateVector basis_state(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("basis_state: index out of range");
  StateVector v = StateVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

}  // namespace diamond
