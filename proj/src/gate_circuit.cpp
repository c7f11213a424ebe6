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

#include <cmath>
#include <stdexcept>

namespace diamond {
namespace {

int arity(GateKind k) {
  switch (k) {
    case GateKind::kX:
    case GateKind::kZ:
    case GateKind::kH:
    case GateKind::kRz:
      return 1;
    case GateKind::kCnot:
    case GateKind::kCz:
    case GateKind::kCh:
    case GateKind::kSwap:
      return 2;
    case GateKind::kCcz:
    case GateKind::kCswap:
      return 3;
  }
  return 0;
}

// Controlled-`u` with one control as the most significant qubit.
OperatorMatrix controlled(const OperatorMatrix& u) {
  const Eigen::Index n = u.rows();
  OperatorMatrix m = OperatorMatrix::Identity(2 * n, 2 * n);
  m.bottomRightCorner(n, n) = u;
  return m;
}

OperatorMatrix swap_matrix() {
  OperatorMatrix m = OperatorMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1.0;
  m(1, 2) = m(2, 1) = 1.0;
  return m;
}

OperatorMatrix cz_matrix() {
  OperatorMatrix m = OperatorMatrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

}  // namespace

std::string Gate::name() const {
  switch (kind) {
    case GateKind::kX: return "X";
    case GateKind::kZ: return "Z";
    case GateKind::kH: return "H";
    case GateKind::kRz: return "RZ";
    case GateKind::kCnot: return "CNOT";
    case GateKind::kCz: return "CZ";
    case GateKind::kCh: return "CH";
    case GateKind::kSwap: return "SWAP";
    case GateKind::kCcz: return "CCZ";
    case GateKind::kCswap: return "CSWAP";
  }
  return "?";
}

OperatorMatrix Gate::local_matrix() const {
  switch (kind) {
    case GateKind::kX: return pauli::x();
    case GateKind::kZ: return pauli::z();
    case GateKind::kH: return pauli::hadamard();
    case GateKind::kRz: {
      OperatorMatrix m = OperatorMatrix::Zero(2, 2);
      m(0, 0) = std::exp(-0.5 * kI * angle);
      m(1, 1) = std::exp(0.5 * kI * angle);
      return m;
    }
    case GateKind::kCnot: return controlled(pauli::x());
    case GateKind::kCz: return cz_matrix();
    case GateKind::kCh: return controlled(pauli::hadamard());
    case GateKind::kSwap: return swap_matrix();
    case GateKind::kCcz: return controlled(cz_matrix());
    case GateKind::kCswap: return controlled(swap_matrix());
  }
  throw std::logic_error("Gate::local_matrix: unknown kind");
}

void GateCircuit::append(Gate g) {
  if (static_cast<int>(g.qubits.size()) != arity(g.kind)) {
    throw std::invalid_argument("GateCircuit::append: wrong number of qubits for " + g.name());
  }
  for (std::size_t a = 0; a < g.qubits.size(); ++a) {
    if (g.qubits[a] < 0 || g.qubits[a] >= num_qubits_) {
      throw std::invalid_argument("GateCircuit::append: qubit out of range");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (g.qubits[a] == g.qubits[b]) {
        throw std::invalid_argument("GateCircuit::append: repeated qubit");
      }
    }
  }
  gates_.push_back(std::move(g));
}

void GateCircuit::append(const GateCircuit& other) {
  for (const Gate& g : other.gates()) append(g);
}

OperatorMatrix GateCircuit::unitary() const {
  const int dim = 1 << num_qubits_;
  OperatorMatrix u = OperatorMatrix::Identity(dim, dim);
  for (const Gate& g : gates_) u = expand_gate(g.local_matrix(), g.qubits, num_qubits_) * u;
  return u;
}

GateCounts GateCircuit::counts() const {
  GateCounts c;
  for (const Gate& g : gates_) {
    switch (arity(g.kind)) {
      case 1: ++c.single_qubit; break;
      case 2: ++c.two_qubit; break;
      default: ++c.three_qubit; break;
    }
    if (g.kind == GateKind::kCnot) ++c.cnot;
  }
  return c;
}

OperatorMatrix expand_gate(const OperatorMatrix& local, const std::vector<int>& qubits,
                           int num_qubits) {
  const int k = static_cast<int>(qubits.size());
  if (local.rows() != (1 << k) || local.cols() != (1 << k)) {
    throw std::invalid_argument("expand_gate: local matrix does not match qubit count");
  }
  const int dim = 1 << num_qubits;
  // Bit of qubit q inside a register index (qubit 0 most significant).
  auto bit = [num_qubits](int index, int q) { return (index >> (num_qubits - 1 - q)) & 1; };
  int mask = 0;
  for (int q : qubits) mask |= 1 << (num_qubits - 1 - q);

  auto sub_index = [&](int index) {
    int s = 0;
    for (int q : qubits) s = (s << 1) | bit(index, q);
    return s;
  };

  OperatorMatrix full = OperatorMatrix::Zero(dim, dim);
  for (int row = 0; row < dim; ++row) {
    for (int col = 0; col < dim; ++col) {
      if ((row & ~mask) != (col & ~mask)) continue;
      full(row, col) = local(sub_index(row), sub_index(col));
    }
  }
  return full;
}

GateCircuit control_basis_change() {
  GateCircuit c(kNumQubits);
  c.append({GateKind::kCnot, {kC2, kC1}, 0.0, "U_A"});
  c.append({GateKind::kCh, {kC1, kC2}, 0.0, "U_A"});
  c.append({GateKind::kCnot, {kC2, kC1}, 0.0, "U_A"});
  return c;
}

GateCircuit decompose_diamond_gate(const QubitModelParams& p) {
  const double phase = gate_time(p) * p.j_c;
  GateCircuit c(kNumQubits);
  c.append(control_basis_change());

  // U_T^{00}(t_g) = ZZ · CZ · SWAP on the targets.
  c.append({GateKind::kSwap, {kT1, kT2}, 0.0, "U_B"});
  c.append({GateKind::kCz, {kT1, kT2}, 0.0, "U_B"});
  c.append({GateKind::kZ, {kT1}, 0.0, "U_B"});
  c.append({GateKind::kZ, {kT2}, 0.0, "U_B"});

  // C2 set: undo U_B, leaving the identity of the Ψ- control.
  c.append({GateKind::kCz, {kC2, kT1}, 0.0, "U_C"});
  c.append({GateKind::kCz, {kC2, kT2}, 0.0, "U_C"});
  c.append({GateKind::kCcz, {kC2, kT1, kT2}, 0.0, "U_C"});
  c.append({GateKind::kCswap, {kC2, kT1, kT2}, 0.0, "U_C"});
  c.append({GateKind::kRz, {kC2}, phase, "U_C"});

  // C1 set: apply U_T^{11}(t_g) relative to the preceding blocks.
  c.append({GateKind::kCswap, {kC1, kT1, kT2}, 0.0, "U_D"});
  c.append({GateKind::kCcz, {kC1, kT1, kT2}, 0.0, "U_D"});
  c.append({GateKind::kZ, {kC1}, 0.0, "U_D"});
  c.append({GateKind::kRz, {kC1}, -phase, "U_D"});

  GateCircuit undo = control_basis_change();
  for (const Gate& g : undo.gates()) {
    Gate h = g;
    h.block = "U_A_inv";
    c.append(h);
  }
  return c;
}

}  // namespace diamond
