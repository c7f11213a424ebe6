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


#include "diamond/qubit_model.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace diamond {
namespace {

int excitations(int index) { return std::popcount(static_cast<unsigned>(index)); }

// Second-order Magnus term over one period for H(t) = Σ_k h_k e^{ikΔt},
// k ∈ {-1, 0, 1}, using the closed-form double integrals
// I(a, b) = ∫_0^T dt1 e^{iaΔt1} ∫_0^{t1} dt2 e^{ibΔt2}.
OperatorMatrix magnus_second_order(const RotatingHamiltonian& h) {
  const double d = h.delta;
  const double period = kTwoPi / std::abs(d);
  const std::array<OperatorMatrix, 3> terms = {OperatorMatrix(h.coupling.adjoint()),
                                               h.static_part, h.coupling};
  auto integral = [&](int a, int b) -> Complex {
    if (a == 0 && b == 0) return 0.5 * period * period;
    if (b == 0) return period / (kI * static_cast<double>(a) * d);
    const double hit = (a + b == 0 ? period : 0.0) - (a == 0 ? period : 0.0);
    return hit / (kI * static_cast<double>(b) * d);
  };
  OperatorMatrix out = OperatorMatrix::Zero(kQubitDim, kQubitDim);
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      const OperatorMatrix& ha = terms[static_cast<std::size_t>(a + 1)];
      const OperatorMatrix& hb = terms[static_cast<std::size_t>(b + 1)];
      out += integral(a, b) * (ha * hb - hb * ha);
    }
  }
  return (-kI / (2.0 * period)) * out;
}

TEST(ReferenceSets, GateTimesMatchPredictedValues) {
  EXPECT_NEAR(gate_time(table1_set(1)) * 1e9, 59.2, 0.05);
  EXPECT_NEAR(gate_time(table1_set(2)) * 1e9, 30.9, 0.05);
  EXPECT_THROW(table1_set(3), std::invalid_argument);
}

TEST(ReferenceSets, ZetaTimesGateTimeIsPi) {
  for (int set : {1, 2}) {
    const QubitModelParams p = table1_set(set);
    EXPECT_NEAR(zeta(p) * gate_time(p), kPi, 1e-12);
  }
}

TEST(Params, ValidationRejectsUnphysicalValues) {
  QubitModelParams p = table1_set(1);
  p.gamma = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = table1_set(1);
  p.omega = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = table1_set(1);
  p.j = std::nan("");
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Params, RegimeWarningOnlyForSmallDetuning) {
  EXPECT_TRUE(regime_warnings(table1_set(1)).empty());
  QubitModelParams p = table1_set(1);
  p.delta = 5.0 * p.j;
  EXPECT_FALSE(regime_warnings(p).empty());
}

TEST(ControlStates, BasisIsOrthonormalAndLabelsRoundTrip) {
  OperatorMatrix m = control_basis_matrix();
  EXPECT_TRUE(is_unitary(m, 1e-14));
  for (ControlState c : kControlStates) EXPECT_EQ(parse_control_state(to_string(c)), c);
  EXPECT_EQ(parse_control_state("Psi-"), ControlState::kPsiMinus);
  EXPECT_THROW(parse_control_state("01"), std::invalid_argument);
}

TEST(Hamiltonian, LabFrameIsHermitianWithExpectedLevels) {
  const QubitModelParams p = table1_set(1);
  OperatorMatrix h0 = build_h0(p);
  EXPECT_TRUE(is_hermitian(h0));
  // |0000> sits at -(2Ω + Δ); each excitation adds its qubit frequency.
  EXPECT_NEAR(h0(0, 0).real(), -(2.0 * p.omega + p.delta), 1.0);
  EXPECT_NEAR(h0(1, 1).real() - h0(0, 0).real(), p.omega + p.delta, 1.0);
  EXPECT_NEAR(h0(8, 8).real() - h0(0, 0).real(), p.omega, 1.0);
  EXPECT_TRUE(is_hermitian(build_hint(p)));
}

// The rotating-frame Hamiltonian equals the excitation-conserving part of
// e^{iH0 t} H_int e^{-iH0 t}, computed here by explicit matrix exponentials.
TEST(Hamiltonian, RotatingFrameMatchesInteractionPicture) {
  QubitModelParams p = table1_set(1);
  p.j_t = kTwoPi * 3e6;
  p.j_deviation = {kTwoPi * 1e6, -kTwoPi * 2e6, 0.0, kTwoPi * 0.5e6};
  const OperatorMatrix h0 = build_h0(p);
  const OperatorMatrix hint = build_hint(p);
  const RotatingHamiltonian rot = rotating_hamiltonian(p);
  for (double t : {0.0, 0.37e-9, 1.91e-9, 13.3e-9}) {
    const OperatorMatrix u = matrix_exponential(kI * t * h0);
    OperatorMatrix hi = u * hint * u.adjoint();
    for (int r = 0; r < kQubitDim; ++r)
      for (int c = 0; c < kQubitDim; ++c)
        if (excitations(r) != excitations(c)) hi(r, c) = 0.0;
    EXPECT_LT(max_abs(hi - rot.at(t)) / std::abs(p.j), 1e-6) << "t = " << t;
    EXPECT_LT(max_abs(build_rotating_h(p, t) - rot.at(t)), 1e-9);
  }
}

TEST(Hamiltonian, FloquetMatchesSecondOrderMagnus) {
  for (int set : {1, 2}) {
    QubitModelParams p = table1_set(set);
    const RotatingHamiltonian rot = rotating_hamiltonian(p);
    const OperatorMatrix expected = rot.static_part + magnus_second_order(rot);
    const OperatorMatrix hf = build_floquet_h(p);
    EXPECT_TRUE(is_hermitian(hf));
    EXPECT_LT(max_abs(hf - expected) / max_abs(expected), 1e-12) << "set " << set;
  }
}

TEST(Hamiltonian, FloquetRejectsDeviationsAndZeroDetuning) {
  QubitModelParams p = table1_set(1);
  p.j_deviation[2] = 1.0;
  EXPECT_THROW(build_floquet_h(p), std::invalid_argument);
  p = table1_set(1);
  p.delta = 0.0;
  EXPECT_THROW(build_floquet_h(p), std::invalid_argument);
}

TEST(IdealGate, IsUnitaryAndBlockDiagonalInControlBasis) {
  const QubitModelParams p = table1_set(2);
  const double tg = gate_time(p);
  const OperatorMatrix u = ideal_diamond_gate(tg, p);
  EXPECT_TRUE(is_unitary(u, 1e-12));
  const OperatorMatrix basis =
      tensor_product(control_basis_matrix(), OperatorMatrix::Identity(4, 4));
  const OperatorMatrix ub = basis.adjoint() * u * basis;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const OperatorMatrix block = ub.block(4 * a, 4 * b, 4, 4);
      if (a == b) {
        EXPECT_LT(max_abs(block - ideal_target_gate(kControlStates[a], tg, p)), 1e-13);
      } else {
        EXPECT_LT(max_abs(block), 1e-13);
      }
    }
  }
}

TEST(IdealGate, ControlsZeroZeroAndOneOneSwapTargetsAtGateTime) {
  const QubitModelParams p = table1_set(1);
  const double tg = gate_time(p);
  for (ControlState c : {ControlState::k00, ControlState::k11}) {
    const OperatorMatrix u = ideal_target_gate(c, tg, p);
    EXPECT_NEAR(std::abs(u(2, 1)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(u(1, 1)), 0.0, 1e-12);
  }
  // Ψ± act diagonally.
  for (ControlState c : {ControlState::kPsiPlus, ControlState::kPsiMinus}) {
    const OperatorMatrix u = ideal_target_gate(c, tg, p);
    EXPECT_LT(max_abs(u - OperatorMatrix(u.diagonal().asDiagonal())), 1e-15);
  }
}

// The effective Hamiltonian restricted to a control state generates the
// ideal target gate: 00 and 11 are eigenstates of the controls, so e^{-iH_F t}
// stays block diagonal there when J_C = 0.
TEST(IdealGate, FloquetEvolutionReproducesControlBlocksWithoutControlCoupling) {
  QubitModelParams p = table1_set(1);
  p.j_c = 0.0;
  const double tg = gate_time(p);
  const OperatorMatrix u = matrix_exponential(-kI * tg * build_floquet_h(p));
  const OperatorMatrix ideal = ideal_diamond_gate(tg, p);
  EXPECT_LT(distance_up_to_global_phase(u, ideal).distance, 1e-10);
}

TEST(DressedControls, ReducesToBareSplittingWithoutControlCoupling) {
  QubitModelParams p = table1_set(1);
  p.j_c = 0.0;
  DressedControlAnalysis a = dressed_control_analysis(p);
  EXPECT_NEAR(a.kappa_dressed, 2.0 * zeta(p), 1e-6 * zeta(p));
  EXPECT_EQ(a.vartheta, 0.0);
  EXPECT_NEAR(a.infidelity_scale, std::pow(2.0 * p.j / p.delta, 2), 1e-15);
}

}  // namespace
}  // namespace diamond
