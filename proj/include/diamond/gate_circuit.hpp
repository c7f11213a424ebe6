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

#include <string>
#include <vector>

#include "diamond/linalg.hpp"
#include "diamond/qubit_model.hpp"

namespace diamond {

enum class GateKind { kX, kZ, kH, kRz, kCnot, kCz, kCh, kSwap, kCcz, kCswap };

/// A named standard gate. `qubits` lists controls first, then targets. kRz
/// uses diag(e^{-iθ/2}, e^{iθ/2}).
struct Gate {
  GateKind kind;
  std::vector<int> qubits;
  double angle = 0.0;
  std::string block;  // label of the circuit block the gate belongs to

  std::string name() const;
  /// Matrix on the listed qubits, first listed qubit most significant.
  OperatorMatrix local_matrix() const;
};

struct GateCounts {
  int single_qubit = 0;
  int cnot = 0;
  int two_qubit = 0;    // all two-qubit gates, CNOT included
  int three_qubit = 0;
};

class GateCircuit {
 public:
  explicit GateCircuit(int num_qubits) : num_qubits_(num_qubits) {}

  void append(Gate g);
  void append(const GateCircuit& other);

  /// Product G_n ... G_1 for gates applied in list order.
  OperatorMatrix unitary() const;
  GateCounts counts() const;

  const std::vector<Gate>& gates() const { return gates_; }
  int num_qubits() const { return num_qubits_; }

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

/// Lifts a gate's local matrix to the full register.
OperatorMatrix expand_gate(const OperatorMatrix& local, const std::vector<int>& qubits,
                           int num_qubits);

/// Control-basis rotation that maps {|00>, |11>, |Ψ+>, |Ψ->}_C to
/// {|00>, |11>, |10>, -|01>}_C. It is its own inverse.
GateCircuit control_basis_change();

/// Standard-gate circuit equal to ideal_diamond_gate(gate_time(p), p) up to a
/// global phase: basis change, U_T^{00} on the targets, gates controlled on
/// C2 and on C1, the two R_z phases, and the inverse basis change.
GateCircuit decompose_diamond_gate(const QubitModelParams& p);

}  // namespace diamond
