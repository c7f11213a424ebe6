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

// Three-level (qutrit) extension of the four-qubit model. Factor order is
// (C1, C2, T1, T2) as in the qubit model; the index of |c1 c2 t1 t2> is
// 27*c1 + 9*c2 + 3*t1 + t2. Simulations here are unitary and lab-frame.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "diamond/linalg.hpp"

namespace diamond {

inline constexpr int kQutritDim = 81;

struct QutritModelParams {
  double omega_c = 0.0;  // rad/s
  double omega_t = 0.0;
  double alpha_c = 0.0;  // anharmonicity, negative (rad/s)
  double alpha_t = 0.0;
  double j = 0.0;
  double j_c = 0.0;
  double j_t = 0.0;

  /// Throws std::invalid_argument unless Ω > 0, α < 0 and |α| < Ω.
  void validate() const;
  /// Non-fatal regime notes (|α/Ω| >= 0.2).
  std::vector<std::string> warnings() const;
};

enum class AnharmonicityUnits {
  kAngular,  // the printed α values are already angular frequencies
  kCyclic,   // the printed α values are α/2π in Hz
};

/// Parameters used for the crosstalk study: Ω_C/2π = 7 GHz, Ω_T/2π = 9 GHz,
/// J/2π = 65 MHz, J_C/2π = 20 MHz, α_C = -270e6, α_T = -280e6 interpreted
/// according to `units`. J_T is zero.
QutritModelParams crosstalk_reference_params(AnharmonicityUnits units = AnharmonicityUnits::kAngular);

struct QutritLevels {
  double omega0 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double t0 = 1.0;
  double t2 = 1.4142135623730951;
};

/// Level energies ω_β and matrix-element factors T_β of a transmon qutrit.
QutritLevels t_coefficients(double omega, double alpha);

struct QutritOperatorSet {
  OperatorMatrix sigma_z;  // diag(1, -1, -(3 + 2α/Ω))
  OperatorMatrix sigma_y;  // i T0 |1><0| + i T2 |2><1| + h.c.
  QutritLevels levels;
};

QutritOperatorSet qutrit_operators(double omega, double alpha);

int qutrit_index(int c1, int c2, int t1, int t2);
StateVector qutrit_ket(int c1, int c2, int t1, int t2);

OperatorMatrix build_qutrit_h(const QutritModelParams& p);

/// Total excitation number with |2> counted twice (diagonal, 81×81).
OperatorMatrix qutrit_excitation_number();

/// Part of build_qutrit_h that conserves the excitation number; the
/// remainder only connects sectors differing by two excitations.
OperatorMatrix build_qutrit_h_number_conserving(const QutritModelParams& p);

struct RedefinedControlState {
  double theta = 0.0;
  StateVector state;  // 9-dim, control pair (C1, C2)
};

/// cos θ̃ |11> + sin θ̃ (|02> + |20>)/√2 with θ̃ = -½ atan(2√2 J_C T0 T2 / α_C).
RedefinedControlState redefined_11(const QutritModelParams& p);

/// 2×2 control-pair Hamiltonian in the basis {|11>, (|02> + |20>)/√2},
/// energies relative to |11>.
OperatorMatrix control_pair_block(const QutritModelParams& p);

enum class QutritControl { k00, k11, kPsiPlus, kPsiMinus };
inline constexpr std::array<QutritControl, 4> kQutritControls = {
    QutritControl::k00, QutritControl::k11, QutritControl::kPsiPlus, QutritControl::kPsiMinus};
std::string_view to_string(QutritControl c);
QutritControl parse_qutrit_control(std::string_view label);

/// 9-dim control-pair state; k11 is the redefined state.
StateVector qutrit_control_state(QutritControl c, const QutritModelParams& p);

/// |φ>_C ⊗ |t1 t2>_T for a target label 0..3 (|00>, |01>, |10>, |11>).
StateVector qutrit_product_state(const StateVector& control, int target_label);

/// Δ± = Ω_C ± Ω_T + α_C + J_C (T0^C)².
std::array<double, 2> leakage_detunings(const QutritModelParams& p);  // {Δ+, Δ-}

/// (J T2^C)² (1/Δ+ + 1/Δ-). Throws when |Δ±| < 1e6 rad/s.
double jt_optimal(const QutritModelParams& p);

struct EffectiveLeakageModel {
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double delta = 0.0;             // J T0^T T2^C
  double kappa_crosstalk = 0.0;   // J_T (T0^T)²
  OperatorMatrix hamiltonian;     // 4×4
  std::array<StateVector, 4> basis;  // 81-dim kets of the four states
};

/// Basis: Ψ-|10>, (|02>-|20>)/√2 |00>, (|02>-|20>)/√2 |11>, Ψ-|01>.
EffectiveLeakageModel effective_leakage_model(const QutritModelParams& p);

/// Second-order Dyson probability for Ψ-|01> → Ψ-|10>.
double dyson_transition_probability(const QutritModelParams& p, double t);
/// Secular part t²|κ - δ²(1/Δ- + 1/Δ+)|².
double dyson_secular_probability(const QutritModelParams& p, double t);

/// e^{-iHt} via eigendecomposition of a Hermitian Hamiltonian, with fast
/// evaluation of transition amplitudes on uniform time grids.
class QutritPropagator {
 public:
  explicit QutritPropagator(const OperatorMatrix& h);

  Complex amplitude(const StateVector& out, const StateVector& in, double t) const;
  StateVector evolve(const StateVector& in, double t) const;
  /// |<out|e^{-iHt}|in>|² at t = k*step, k = 0..count-1.
  std::vector<double> transition_probabilities(const StateVector& out, const StateVector& in,
                                               double step, std::size_t count) const;

  const EigenDecomposition& eigen() const { return eigen_; }

 private:
  EigenDecomposition eigen_;
};

/// |<φ|<ψ'| e^{-iH̃t} |ψ>|φ>|².
double swap_fidelity(QutritControl control, int psi_in, int psi_out, double t,
                     const QutritModelParams& p);

struct SwapRateOptions {
  double horizon = 2e-6;
  double step = 0.05e-9;
  double threshold = 0.9;
  double hysteresis = 0.05;
};

struct SwapRateResult {
  double rate = 0.0;        // 1/s, zero when the swap never reaches threshold
  double swap_time = 0.0;   // time of the first above-threshold lobe maximum
  double lobe_peak = 0.0;
  double max_probability = 0.0;  // over the whole horizon
};

/// Swap |10>_T → |01>_T under control `control` at crosstalk `j_t`; the swap
/// time is the maximum of the first lobe that exceeds the threshold (the lobe
/// ends when the probability drops below threshold - hysteresis).
SwapRateResult swap_rate(QutritControl control, double j_t, const QutritModelParams& p,
                         const SwapRateOptions& options = {});
SwapRateResult swap_rate(const QutritPropagator& prop, QutritControl control,
                         const QutritModelParams& p, const SwapRateOptions& options = {});

}  // namespace diamond
