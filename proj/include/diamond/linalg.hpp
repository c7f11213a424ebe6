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

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>

#include <Eigen/Dense>

namespace diamond {

using Complex = std::complex<double>;

/// Dense square complex matrix: Hamiltonians, unitaries, collapse operators.
/// Hamiltonian entries are angular frequencies (rad/s).
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Kronecker product. The left factor owns the most-significant index, so
/// (a ⊗ b)(i*db + k, j*db + l) = a(i, j) b(k, l).
OperatorMatrix tensor_product(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix tensor_product(std::initializer_list<OperatorMatrix> factors);
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Places `local` on tensor factor `site` of a register with the given local
/// dimensions, identity on every other factor.
OperatorMatrix embed(const OperatorMatrix& local, std::size_t site,
                     std::span<const int> local_dims);

/// Scaling-and-squaring Padé exponential. Throws std::invalid_argument on
/// non-square or non-finite input.
OperatorMatrix matrix_exponential(const OperatorMatrix& a);

struct EigenDecomposition {
  RealVector eigenvalues;      // ascending
  OperatorMatrix eigenvectors;  // columns

  /// exp(-i h t) = V diag(exp(-i λ t)) V†.
  OperatorMatrix propagator(double t) const;
  OperatorMatrix reconstruct() const;
};

/// Throws std::invalid_argument unless `h` is Hermitian to 1e-12 relative.
EigenDecomposition hermitian_eigendecomposition(const OperatorMatrix& h);

struct PhaseDistance {
  double distance = 0.0;
  double phase = 0.0;       // φ such that u ≈ e^{iφ} v
  bool comparable = true;   // false when tr(v†u) vanishes
};

/// min over φ of max|u - e^{iφ} v| with φ taken from the phase of tr(v†u).
/// A vanishing overlap yields distance 2 and comparable = false.
PhaseDistance distance_up_to_global_phase(const OperatorMatrix& u,
                                          const OperatorMatrix& v);

double max_abs(const OperatorMatrix& a);
bool is_hermitian(const OperatorMatrix& a, double relative_tolerance = 1e-12);
bool is_unitary(const OperatorMatrix& a, double tolerance = 1e-10);
bool all_finite(const OperatorMatrix& a);

/// Single-qubit operators in the basis {|0>, |1>} with |0> the ground state:
/// σ_z = |0><0| - |1><1|, σ_+ = |1><0|, σ_- = |0><1|, σ_y = iσ_+ - iσ_-.
namespace pauli {
OperatorMatrix identity();
OperatorMatrix x();
OperatorMatrix y();
OperatorMatrix z();
OperatorMatrix raising();
OperatorMatrix lowering();
OperatorMatrix hadamard();

/// Pauli string for `index` written in base 4 (0=I, 1=X, 2=Y, 3=Z); the most
/// significant digit acts on the first qubit.
OperatorMatrix string(std::uint32_t index, int num_qubits);
}  // namespace pauli

/// Computational basis ket |index> of dimension `dim`.
StateVector basis_state(int dim, int index);

}  // namespace diamond
