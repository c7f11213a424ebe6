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


#include "diamond/lindblad.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

namespace diamond {
namespace {

OperatorMatrix random_density(int dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  OperatorMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
  OperatorMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

// Dense reference right-hand side.
OperatorMatrix reference_rhs(const OperatorMatrix& h, const std::vector<OperatorMatrix>& cs,
                             const OperatorMatrix& rho) {
  OperatorMatrix out = -kI * (h * rho - rho * h);
  for (const OperatorMatrix& c : cs) {
    const OperatorMatrix cdc = c.adjoint() * c;
    out += c * rho * c.adjoint() - 0.5 * (cdc * rho + rho * cdc);
  }
  return out;
}

// Row-major vectorization: vec(AρB) = (A ⊗ Bᵀ) vec(ρ).
OperatorMatrix liouvillian(const OperatorMatrix& h, const std::vector<OperatorMatrix>& cs) {
  const int d = static_cast<int>(h.rows());
  const OperatorMatrix id = OperatorMatrix::Identity(d, d);
  OperatorMatrix l = -kI * (tensor_product(h, id) - tensor_product(id, OperatorMatrix(h.transpose())));
  for (const OperatorMatrix& c : cs) {
    const OperatorMatrix cdc = c.adjoint() * c;
    l += tensor_product(c, OperatorMatrix(c.conjugate())) -
         0.5 * (tensor_product(cdc, id) + tensor_product(id, OperatorMatrix(cdc.transpose())));
  }
  return l;
}

StateVector vec(const OperatorMatrix& rho) {
  const int d = static_cast<int>(rho.rows());
  StateVector v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  return v;
}

OperatorMatrix unvec(const StateVector& v, int d) {
  OperatorMatrix rho(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  return rho;
}

// Exponential-midpoint product for the driven Hamiltonian.
OperatorMatrix midpoint_propagator(const MasterEquation& eq, double horizon, int steps) {
  const double dt = horizon / steps;
  OperatorMatrix u = OperatorMatrix::Identity(eq.dim(), eq.dim());
  for (int k = 0; k < steps; ++k) {
    u = matrix_exponential(-kI * dt * eq.hamiltonian((k + 0.5) * dt)) * u;
  }
  return u;
}

TEST(DensityMatrix, ValidatesInvariants) {
  EXPECT_NO_THROW(DensityMatrix(random_density(4, 1)));
  OperatorMatrix bad = random_density(4, 1);
  bad(0, 1) += 0.1;
  EXPECT_THROW(DensityMatrix{bad}, std::invalid_argument);
  EXPECT_THROW(DensityMatrix{OperatorMatrix(2.0 * random_density(4, 2))}, std::invalid_argument);
  OperatorMatrix neg = OperatorMatrix::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  EXPECT_THROW(DensityMatrix{neg}, std::invalid_argument);
  const DensityMatrix pure = DensityMatrix::pure(basis_state(4, 2));
  EXPECT_NEAR(pure.purity(), 1.0, 1e-15);
  EXPECT_NEAR(pure.fidelity_with(basis_state(4, 2)), 1.0, 1e-15);
  const DensityMatrixCheck check = check_density_matrix(random_density(3, 5));
  EXPECT_LT(check.trace_error, 1e-14);
  EXPECT_GT(check.min_eigenvalue, 0.0);
}

TEST(CollapseOperators, DephasingAndDecayOnEveryQubit) {
  QubitModelParams p = table1_set(1);
  const CollapseOperatorSet set = build_collapse_ops(p);
  ASSERT_EQ(set.operators.size(), 8u);
  ASSERT_EQ(set.labels.size(), 8u);
  double z_weight = 0.0;
  for (const OperatorMatrix& c : set.operators) z_weight += (c.adjoint() * c).trace().real();
  // tr(σzσz) = tr(1) = 16 and tr(σ+σ-) = 8 per qubit.
  EXPECT_NEAR(z_weight, p.gamma * 4.0 * (16.0 + 8.0), 1e-6);
  p.gamma = -1.0;
  EXPECT_THROW(build_collapse_ops(p), std::invalid_argument);
}

TEST(MasterEquation, RhsMatchesDenseReference) {
  QubitModelParams p = table1_set(2);
  p.gamma = 3e7;  // make the dissipator visible against the Hamiltonian
  p.j_t = kTwoPi * 2e6;
  p.j_deviation = {kTwoPi * 1e6, 0.0, -kTwoPi * 3e6, 0.0};
  const MasterEquation eq = MasterEquation::rotating(p);
  const std::vector<OperatorMatrix> cs = build_collapse_ops(p).operators;
  const OperatorMatrix rho = random_density(16, 3);
  for (double t : {0.0, 0.123e-9, 7.7e-9}) {
    const OperatorMatrix h = build_rotating_h(p, t);
    EXPECT_LT(max_abs(eq.hamiltonian(t) - h), 1e-6);
    const OperatorMatrix ref = reference_rhs(h, cs, rho);
    EXPECT_LT(max_abs(eq.rhs(t, rho) - ref) / max_abs(ref), 1e-12) << "t = " << t;
  }
}

TEST(Propagate, SingleQubitDephasingMatchesClosedForm) {
  const double omega = kTwoPi * 10e6;
  const double gamma = 2e6;
  const MasterEquation eq(0.5 * omega * pauli::z(), OperatorMatrix(), 0.0,
                          {std::sqrt(gamma) * pauli::z()});
  StateVector plus = (basis_state(2, 0) + basis_state(2, 1)) / std::sqrt(2.0);
  const double horizon = 200e-9;
  const EvolutionResult r = propagate(eq, DensityMatrix::pure(plus), horizon, 5, 0.1e-9);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    const double t = r.times[k];
    // ρ01(t) = ½ e^{-iωt} e^{-2γt} for σ_z = diag(1, -1).
    const Complex expected = 0.5 * std::exp(-kI * omega * t) * std::exp(-2.0 * gamma * t);
    EXPECT_LT(std::abs(r.states[k].matrix()(0, 1) - expected), 1e-9) << "t = " << t;
  }
}

TEST(Propagate, SingleQubitDecayMatchesClosedForm) {
  const double gamma = 5e6;
  const MasterEquation eq(kTwoPi * 1e6 * pauli::z(), OperatorMatrix(), 0.0,
                          {std::sqrt(gamma) * pauli::lowering()});
  const EvolutionResult r = propagate(eq, DensityMatrix::pure(basis_state(2, 1)), 400e-9, 3);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    EXPECT_NEAR(r.states[k].matrix()(1, 1).real(), std::exp(-gamma * r.times[k]), 1e-9);
  }
}

TEST(Propagate, TimeIndependentModelMatchesLiouvillianExponential) {
  QubitModelParams p = table1_set(1);
  p.gamma = 1e6;
  const MasterEquation eq = MasterEquation::floquet(p);
  const OperatorMatrix l = liouvillian(build_floquet_h(p), build_collapse_ops(p).operators);
  const OperatorMatrix rho0 = random_density(16, 11);
  const double horizon = 20e-9;
  const EvolutionResult r = propagate(eq, DensityMatrix(rho0), horizon, 2);
  const OperatorMatrix exact = unvec(matrix_exponential(horizon * l) * vec(rho0), 16);
  EXPECT_LT(max_abs(r.states.back().matrix() - exact), 1e-9);
}

TEST(Propagate, DrivenUnitaryEvolutionMatchesMidpointProduct) {
  QubitModelParams p = table1_set(1);
  p.gamma = 0.0;
  const MasterEquation eq = MasterEquation::rotating(p);
  const StateVector psi = tensor_product(control_state_vector(ControlState::kPsiPlus),
                                         basis_state(4, 2));
  const double horizon = 3e-9;
  const EvolutionResult r = propagate(eq, DensityMatrix::pure(psi), horizon, 2);
  const StateVector exact = midpoint_propagator(eq, horizon, 6000) * psi;
  const OperatorMatrix rho_exact = exact * exact.adjoint();
  EXPECT_LT(max_abs(r.states.back().matrix() - rho_exact), 1e-6);
  EXPECT_NEAR(r.states.back().purity(), 1.0, 1e-8);
}

TEST(Propagate, DiagnosticsTrackInvariants) {
  QubitModelParams p = table1_set(2);
  p.gamma = 1e6;
  const EvolutionResult r =
      propagate(DensityMatrix(random_density(16, 4)), p, 10e-9, 11);
  ASSERT_EQ(r.states.size(), 11u);
  EXPECT_LT(r.diagnostics.max_trace_drift, 1e-12);
  EXPECT_LT(r.diagnostics.max_hermiticity_error, 1e-12);
  EXPECT_GT(r.diagnostics.min_eigenvalue, -1e-8);
  EXPECT_GT(r.diagnostics.steps, 0);
  // Dissipation cannot raise purity above the initial value by more than
  // integration error.
  for (std::size_t k = 1; k < r.states.size(); ++k) {
    EXPECT_LE(r.states[k].purity(), r.states[k - 1].purity() + 1e-10);
  }
}

TEST(Propagate, StepHalvingConverges) {
  QubitModelParams p = table1_set(1);
  const MasterEquation eq = MasterEquation::rotating(p);
  const DensityMatrix rho0 = DensityMatrix::pure(
      tensor_product(control_state_vector(ControlState::k00), basis_state(4, 1)));
  const double h = eq.natural_step();
  const OperatorMatrix a = propagate(eq, rho0, 5e-9, 2, h).states.back().matrix();
  const OperatorMatrix b = propagate(eq, rho0, 5e-9, 2, h / 2).states.back().matrix();
  const OperatorMatrix c = propagate(eq, rho0, 5e-9, 2, h / 4).states.back().matrix();
  // Fourth order: successive differences shrink by about 16.
  EXPECT_LT(max_abs(b - c), max_abs(a - b) / 8.0);
}

TEST(PauliChannel, IdentityAndUnitaryConjugation) {
  const OperatorMatrix x = random_density(4, 6);
  EXPECT_LT(max_abs(PauliChannel::identity(2).apply(x) - x), 1e-14);
  const OperatorMatrix u = tensor_product(pauli::hadamard(), pauli::y());
  const PauliChannel ch =
      PauliChannel::from_map(2, [&](const OperatorMatrix& m) { return OperatorMatrix(u * m * u.adjoint()); });
  EXPECT_LT(max_abs(ch.apply(x) - u * x * u.adjoint()), 1e-14);
  EXPECT_LT(ch.trace_defect(), 1e-14);
  const OperatorMatrix v = tensor_product(pauli::x(), pauli::hadamard());
  EXPECT_LT(max_abs(ch.after_unitary(v).apply(x) - u * v * x * v.adjoint() * u.adjoint()), 1e-14);
}

TEST(PauliChannel, PropagatedChannelActsLikeStatePropagation) {
  QubitModelParams p = table1_set(2);
  p.gamma = 1e6;
  const MasterEquation eq = MasterEquation::rotating(p);
  const OperatorMatrix rho0 = random_density(16, 8);
  const std::vector<double> times = {4e-9, 8e-9};
  const double step = 0.25 * eq.natural_step();
  std::vector<OperatorMatrix> via_channel;
  propagate_channel(eq, times, step, [&](const PauliChannel& ch, const ChannelSnapshot&) {
    via_channel.push_back(ch.apply(rho0));
  });
  ASSERT_EQ(via_channel.size(), 2u);
  const EvolutionResult r = propagate(eq, DensityMatrix(rho0), 8e-9, 3, step);
  EXPECT_LT(max_abs(via_channel[0] - r.states[1].matrix()), 1e-12);
  EXPECT_LT(max_abs(via_channel[1] - r.states[2].matrix()), 1e-12);
}

TEST(PauliChannel, RestartFromSnapshotContinuesEvolution) {
  QubitModelParams p = table1_set(2);
  const MasterEquation eq = MasterEquation::rotating(p);
  const double step = eq.natural_step();
  const std::vector<double> both = {3e-9, 6e-9};
  std::vector<PauliChannel> direct;
  ChannelSnapshot mid;
  propagate_channel(eq, both, step, [&](const PauliChannel& ch, const ChannelSnapshot& s) {
    direct.push_back(ch);
    if (direct.size() == 1) mid = s;
  });
  const std::vector<double> tail = {6e-9};
  std::vector<PauliChannel> resumed;
  propagate_channel(
      eq, tail, step, [&](const PauliChannel& ch, const ChannelSnapshot&) { resumed.push_back(ch); },
      &mid);
  ASSERT_EQ(resumed.size(), 1u);
  for (std::size_t j = 0; j < 256; j += 17) {
    EXPECT_LT(max_abs(resumed[0].images()[j] - direct[1].images()[j]), 1e-12);
  }
}

TEST(UnitaryPropagation, AgreesWithDensityMatrixEvolution) {
  QubitModelParams p = table1_set(1);
  p.gamma = 0.0;
  const MasterEquation eq = MasterEquation::rotating(p);
  const double step = 0.25 * eq.natural_step();
  OperatorMatrix u;
  const std::vector<double> times = {2e-9};
  propagate_unitary(eq, times, step, [&](const UnitarySnapshot& s) { u = s.u; });
  EXPECT_TRUE(is_unitary(u, 1e-8));
  const StateVector psi = tensor_product(control_state_vector(ControlState::k11), basis_state(4, 2));
  const EvolutionResult r = propagate(eq, DensityMatrix::pure(psi), 2e-9, 2, step);
  const StateVector out = u * psi;
  EXPECT_LT(max_abs(r.states.back().matrix() - out * out.adjoint()), 1e-10);
}

}  // namespace
}  // namespace diamond
