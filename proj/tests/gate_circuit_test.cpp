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


#include "diamond/gate_circuit.hpp"

#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace diamond {
namespace {

// Permutation matrix sending basis index i to perm(i).
template <typename F>
OperatorMatrix permutation(int dim, F perm) {
  OperatorMatrix m = OperatorMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) m(perm(i), i) = 1.0;
  return m;
}

OperatorMatrix diagonal(std::initializer_list<Complex> d) {
  StateVector v(static_cast<Eigen::Index>(d.size()));
  int k = 0;
  for (Complex x : d) v(k++) = x;
  return v.asDiagonal();
}

TEST(Gate, LocalMatricesMatchStandardForms) {
  const OperatorMatrix cnot = permutation(4, [](int i) { return i >= 2 ? i ^ 1 : i; });
  EXPECT_LT(max_abs(Gate{GateKind::kCnot, {0, 1}}.local_matrix() - cnot), 1e-15);
  EXPECT_LT(max_abs(Gate{GateKind::kCz, {0, 1}}.local_matrix() - diagonal({1, 1, 1, -1})), 1e-15);
  const OperatorMatrix swap = permutation(4, [](int i) { return ((i & 1) << 1) | (i >> 1); });
  EXPECT_LT(max_abs(Gate{GateKind::kSwap, {0, 1}}.local_matrix() - swap), 1e-15);
  const double th = 0.7;
  EXPECT_LT(max_abs(Gate{GateKind::kRz, {0}, th}.local_matrix() -
                    diagonal({std::exp(-0.5 * kI * th), std::exp(0.5 * kI * th)})),
            1e-15);
  // Fredkin: swap the two low bits when the high bit is set.
  const OperatorMatrix fredkin = permutation(8, [](int i) {
    if (i < 4) return i;
    return 4 | ((i & 1) << 1) | ((i >> 1) & 1);
  });
  EXPECT_LT(max_abs(Gate{GateKind::kCswap, {0, 1, 2}}.local_matrix() - fredkin), 1e-15);
  EXPECT_LT(max_abs(Gate{GateKind::kCcz, {0, 1, 2}}.local_matrix() -
                    diagonal({1, 1, 1, 1, 1, 1, 1, -1})),
            1e-15);
  OperatorMatrix ch = OperatorMatrix::Identity(4, 4);
  ch.block(2, 2, 2, 2) = pauli::hadamard();
  EXPECT_LT(max_abs(Gate{GateKind::kCh, {0, 1}}.local_matrix() - ch), 1e-15);
}

TEST(ExpandGate, AdjacentQubitsMatchTensorProduct) {
  const OperatorMatrix cz = Gate{GateKind::kCz, {0, 1}}.local_matrix();
  const OperatorMatrix i2 = OperatorMatrix::Identity(2, 2);
  EXPECT_LT(max_abs(expand_gate(cz, {1, 2}, 4) - tensor_product({i2, cz, i2})), 1e-15);
}

TEST(ExpandGate, ReversedControlEqualsHadamardConjugation) {
  const OperatorMatrix cnot = Gate{GateKind::kCnot, {0, 1}}.local_matrix();
  const OperatorMatrix hh = tensor_product(pauli::hadamard(), pauli::hadamard());
  EXPECT_LT(max_abs(expand_gate(cnot, {1, 0}, 2) - hh * cnot * hh), 1e-14);
}

TEST(ExpandGate, NonAdjacentQubitsActAsPermutation) {
  // CNOT from qubit 0 to qubit 2 of three flips the last bit when the first is set.
  const OperatorMatrix cnot = Gate{GateKind::kCnot, {0, 1}}.local_matrix();
  const OperatorMatrix expected = permutation(8, [](int i) { return i >= 4 ? i ^ 1 : i; });
  EXPECT_LT(max_abs(expand_gate(cnot, {0, 2}, 3) - expected), 1e-15);
}

TEST(GateCircuit, RejectsMalformedGates) {
  GateCircuit c(4);
  EXPECT_THROW(c.append({GateKind::kCnot, {0}}), std::invalid_argument);
  EXPECT_THROW(c.append({GateKind::kCnot, {0, 0}}), std::invalid_argument);
  EXPECT_THROW(c.append({GateKind::kX, {4}}), std::invalid_argument);
}

TEST(GateCircuit, UnitaryAppliesGatesInListOrder) {
  GateCircuit c(1);
  c.append({GateKind::kH, {0}});
  c.append({GateKind::kZ, {0}});
  EXPECT_LT(max_abs(c.unitary() - pauli::z() * pauli::hadamard()), 1e-15);
}

TEST(ControlBasisChange, MapsControlStatesToComputationalBasis) {
  const OperatorMatrix u = control_basis_change().unitary();
  auto on_controls = [&](const StateVector& c) {
    return StateVector(u * tensor_product(c, basis_state(4, 0)));
  };
  auto expect = [](const StateVector& c) { return tensor_product(c, basis_state(4, 0)); };
  EXPECT_LT((on_controls(control_state_vector(ControlState::k00)) - expect(basis_state(4, 0))).norm(), 1e-14);
  EXPECT_LT((on_controls(control_state_vector(ControlState::k11)) - expect(basis_state(4, 3))).norm(), 1e-14);
  EXPECT_LT((on_controls(control_state_vector(ControlState::kPsiPlus)) - expect(basis_state(4, 2))).norm(), 1e-14);
  EXPECT_LT((on_controls(control_state_vector(ControlState::kPsiMinus)) + expect(basis_state(4, 1))).norm(), 1e-14);
  EXPECT_LT(max_abs(u * u - OperatorMatrix::Identity(16, 16)), 1e-14);
}

TEST(Decomposition, ReproducesIdealGateForReferenceSets) {
  for (int set : {1, 2}) {
    const QubitModelParams p = table1_set(set);
    const PhaseDistance d = distance_up_to_global_phase(decompose_diamond_gate(p).unitary(),
                                                        ideal_diamond_gate(gate_time(p), p));
    EXPECT_TRUE(d.comparable);
    EXPECT_LE(d.distance, 1e-8) << "set " << set;
  }
}

TEST(Decomposition, ReproducesIdealGateForRandomCouplings) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    QubitModelParams p;
    p.j = kTwoPi * 1e6 * (30.0 + 60.0 * std::abs(u(rng)));
    p.j_c = kTwoPi * 1e6 * 40.0 * u(rng);
    p.delta = kTwoPi * 1e9 * (0.5 + 3.0 * std::abs(u(rng))) * (u(rng) < 0 ? -1.0 : 1.0);
    const PhaseDistance d = distance_up_to_global_phase(decompose_diamond_gate(p).unitary(),
                                                        ideal_diamond_gate(gate_time(p), p));
    EXPECT_LE(d.distance, 1e-8) << "trial " << trial;
  }
}

TEST(Decomposition, ReportsGateCounts) {
  const GateCounts n = decompose_diamond_gate(table1_set(1)).counts();
  EXPECT_EQ(n.single_qubit, 5);
  EXPECT_EQ(n.cnot, 4);
  EXPECT_EQ(n.two_qubit, 10);
  EXPECT_EQ(n.three_qubit, 4);
}

}  // namespace
}  // namespace diamond
