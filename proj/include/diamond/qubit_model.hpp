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

// Four-qubit model: two control qubits (C1, C2) coupled to two target qubits
// (T1, T2). Tensor factor order is (C1, C2, T1, T2) with C1 most significant,
// so the basis index of |c1 c2 t1 t2> is 8*c1 + 4*c2 + 2*t1 + t2. The same
// ordering is used by the qutrit model.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "diamond/linalg.hpp"

namespace diamond {

enum Site : int { kC1 = 0, kC2 = 1, kT1 = 2, kT2 = 3 };
inline constexpr int kNumQubits = 4;
inline constexpr int kQubitDim = 16;

struct QubitModelParams {
  double omega = kTwoPi * 7e9;  // control qubit frequency (rad/s)
  double delta = 0.0;           // target minus control frequency (rad/s)
  double j = 0.0;               // target-control coupling (rad/s)
  double j_c = 0.0;             // control-control coupling (rad/s)
  double gamma = 0.0;           // decoherence rate (1/s)
  double j_t = 0.0;             // target-target crosstalk (rad/s)
  // Additive deviations of the four target-control couplings, ordered
  // (T1,C1), (T1,C2), (T2,C1), (T2,C2).
  std::array<double, 4> j_deviation{};

  /// Throws std::invalid_argument for non-finite values, Ω <= 0 or γ < 0.
  void validate() const;
  double coupling(int target, int control) const;  // target, control in {0, 1}
};

/// Parameter sets from the reference table (set 1 or 2).
QubitModelParams table1_set(int set);

/// Human-readable warnings when the large-detuning assumption is weak.
std::vector<std::string> regime_warnings(const QubitModelParams& p);

enum class ControlState { k00, k11, kPsiPlus, kPsiMinus };
inline constexpr std::array<ControlState, 4> kControlStates = {
    ControlState::k00, ControlState::k11, ControlState::kPsiPlus, ControlState::kPsiMinus};

std::string_view to_string(ControlState c);
/// Accepts "00", "11", "psi+", "psi-" (also "Psi+", "Psi-").
ControlState parse_control_state(std::string_view label);

/// 4-dim state of the control pair in the (C1, C2) basis; Ψ± = (|01> ± |10>)/√2.
StateVector control_state_vector(ControlState c);

/// Columns are |00>, |11>, |Ψ+>, |Ψ->.
OperatorMatrix control_basis_matrix();

/// Single-qubit operator acting on one site of the four-qubit register.
OperatorMatrix qubit_op(const OperatorMatrix& local, int site);

OperatorMatrix build_h0(const QubitModelParams& p);
OperatorMatrix build_hint(const QubitModelParams& p);

/// Rotating-frame Hamiltonian H(t) = S + e^{iΔt} A + e^{-iΔt} A†, with the
/// static exchange part S and the target-raising, control-lowering part A.
struct RotatingHamiltonian {
  OperatorMatrix static_part;
  OperatorMatrix coupling;
  double delta = 0.0;

  OperatorMatrix at(double t) const;
};

RotatingHamiltonian rotating_hamiltonian(const QubitModelParams& p);
OperatorMatrix build_rotating_h(const QubitModelParams& p, double t);

/// First-order Floquet Hamiltonian over one period 2π/|Δ| (uniform couplings
/// only; nonzero j_deviation is rejected). The static J_T exchange is added.
OperatorMatrix build_floquet_h(const QubitModelParams& p);

/// π|Δ|/(4J²). Throws for J = 0.
double gate_time(const QubitModelParams& p);

/// ζ = 4J²/Δ.
double zeta(const QubitModelParams& p);

/// Target-pair gate U_T^φ(t) including the e^{∓itJ_C} phase of the Bell controls.
OperatorMatrix ideal_target_gate(ControlState c, double t, const QubitModelParams& p);

/// Σ_φ |φ><φ|_C ⊗ U_T^φ(t).
OperatorMatrix ideal_diamond_gate(double t, const QubitModelParams& p);

struct DressedControlAnalysis {
  double e_plus = 0.0;
  double e_minus = 0.0;
  double kappa_dressed = 0.0;
  double vartheta = 0.0;
  double sin_vartheta_estimate = 0.0;
  double infidelity_scale = 0.0;  // (2J/Δ)²
};

DressedControlAnalysis dressed_control_analysis(const QubitModelParams& p);

}  // namespace diamond
