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

#include <cmath>
#include <stdexcept>

namespace diamond {
namespace {

constexpr std::array<int, 4> kDims = {2, 2, 2, 2};

OperatorMatrix sy(int site) { return qubit_op(pauli::y(), site); }
OperatorMatrix sz(int site) { return qubit_op(pauli::z(), site); }
OperatorMatrix sp(int site) { return qubit_op(pauli::raising(), site); }
OperatorMatrix sm(int site) { return qubit_op(pauli::lowering(), site); }

}  // namespace

void QubitModelParams::validate() const {
  const double values[] = {omega, delta, j, j_c, gamma, j_t,
                           j_deviation[0], j_deviation[1], j_deviation[2], j_deviation[3]};
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("QubitModelParams: non-finite value");
  }
  if (omega <= 0.0) throw std::invalid_argument("QubitModelParams: omega must be positive");
  if (gamma < 0.0) throw std::invalid_argument("QubitModelParams: gamma must be non-negative");
}

double QubitModelParams::coupling(int target, int control) const {
  return j + j_deviation[static_cast<std::size_t>(2 * target + control)];
}

QubitModelParams table1_set(int set) {
  QubitModelParams p;
  p.j_c = kTwoPi * 20e6;
  p.gamma = 1e4;
  if (set == 1) {
    p.j = kTwoPi * 65e6;
    p.delta = kTwoPi * 2e9;
  } else if (set == 2) {
    p.j = kTwoPi * 45e6;
    p.delta = kTwoPi * 0.5e9;
  } else {
    throw std::invalid_argument("table1_set: set must be 1 or 2");
  }
  return p;
}

std::vector<std::string> regime_warnings(const QubitModelParams& p) {
  std::vector<std::string> out;
  if (std::abs(p.delta) <= 10.0 * std::abs(p.j)) {
    out.emplace_back("|delta| <= 10|J|: large-detuning approximation is weak");
  }
  if (std::abs(p.delta) <= 10.0 * std::abs(p.j_c)) {
    out.emplace_back("|delta| <= 10|J_C|: large-detuning approximation is weak");
  }
  return out;
}

std::string_view to_string(ControlState c) {
  switch (c) {
    case ControlState::k00: return "00";
    case ControlState::k11: return "11";
    case ControlState::kPsiPlus: return "psi+";
    case ControlState::kPsiMinus: return "psi-";
  }
  return "?";
}

ControlState parse_control_state(std::string_view label) {
  if (label == "00") return ControlState::k00;
  if (label == "11") return ControlState::k11;
  if (label == "psi+" || label == "Psi+") return ControlState::kPsiPlus;
  if (label == "psi-" || label == "Psi-") return ControlState::kPsiMinus;
  throw std::invalid_argument("unknown control state '" + std::string(label) + "'");
}

StateVector control_state_vector(ControlState c) {
  StateVector v = StateVector::Zero(4);
  const double r = 1.0 / std::sqrt(2.0);
  switch (c) {
    case ControlState::k00: v(0) = 1.0; break;
    case ControlState::k11: v(3) = 1.0; break;
    case ControlState::kPsiPlus: v(1) = r; v(2) = r; break;
    case ControlState::kPsiMinus: v(1) = r; v(2) = -r; break;
  }
  return v;
}

OperatorMatrix control_basis_matrix() {
  OperatorMatrix m(4, 4);
  for (int k = 0; k < 4; ++k) m.col(k) = control_state_vector(kControlStates[k]);
  return m;
}

OperatorMatrix qubit_op(const OperatorMatrix& local, int site) {
  return embed(local, static_cast<std::size_t>(site), kDims);
}

OperatorMatrix build_h0(const QubitModelParams& p) {
  p.validate();
  return -0.5 * (p.omega + p.delta) * (sz(kT1) + sz(kT2)) - 0.5 * p.omega * (sz(kC1) + sz(kC2));
}

OperatorMatrix build_hint(const QubitModelParams& p) {
  p.validate();
  OperatorMatrix h = p.j_c * sy(kC1) * sy(kC2) + p.j_t * sy(kT1) * sy(kT2);
  for (int t = 0; t < 2; ++t) {
    for (int c = 0; c < 2; ++c) h += p.coupling(t, c) * sy(kT1 + t) * sy(kC1 + c);
  }
  return h;
}

OperatorMatrix RotatingHamiltonian::at(double t) const {
  const OperatorMatrix a = std::exp(kI * delta * t) * coupling;
  return static_part + a + a.adjoint();
}

RotatingHamiltonian rotating_hamiltonian(const QubitModelParams& p) {
  p.validate();
  RotatingHamiltonian h;
  OperatorMatrix exchange = p.j_c * sp(kC1) * sm(kC2) + p.j_t * sp(kT1) * sm(kT2);
  h.static_part = exchange + exchange.adjoint();
  h.coupling = OperatorMatrix::Zero(kQubitDim, kQubitDim);
  for (int t = 0; t < 2; ++t) {
    for (int c = 0; c < 2; ++c) h.coupling += p.coupling(t, c) * sp(kT1 + t) * sm(kC1 + c);
  }
  h.delta = p.delta;
  return h;
}

OperatorMatrix build_rotating_h(const QubitModelParams& p, double t) {
  return rotating_hamiltonian(p).at(t);
}

OperatorMatrix build_floquet_h(const QubitModelParams& p) {
  p.validate();
  for (double d : p.j_deviation) {
    if (d != 0.0) throw std::invalid_argument("build_floquet_h: coupling deviations unsupported");
  }
  if (p.delta == 0.0) throw std::invalid_argument("build_floquet_h: delta must be nonzero");
  const double j2 = p.j * p.j / p.delta;
  const double jcj = p.j_c * p.j / p.delta;
  const OperatorMatrix sm_t = sm(kT1) + sm(kT2);
  const OperatorMatrix sp_t = sp(kT1) + sp(kT2);
  const OperatorMatrix sm_c = sm(kC1) + sm(kC2);
  const OperatorMatrix sp_c = sp(kC1) + sp(kC2);
  const OperatorMatrix sz_t = sz(kT1) + sz(kT2);
  const OperatorMatrix sz_c = sz(kC1) + sz(kC2);

  OperatorMatrix exchange = p.j_c * sp(kC1) * sm(kC2) + p.j_t * sp(kT1) * sm(kT2);
  OperatorMatrix h = exchange + exchange.adjoint();
  h += j2 * sm_t * sp_t * sz_c;
  h -= j2 * sm_c * sp_c * sz_t;
  h -= jcj * (sp(kC1) * sz(kC2) + sp(kC2) * sz(kC1)) * sm_t;
  h -= jcj * (sm(kC1) * sz(kC2) + sm(kC2) * sz(kC1)) * sp_t;
  return h;
}

double gate_time(const QubitModelParams& p) {
  if (p.j == 0.0) throw std::invalid_argument("gate_time: J must be nonzero");
  return kPi * std::abs(p.delta) / (4.0 * p.j * p.j);
}

double zeta(const QubitModelParams& p) {
  if (p.delta == 0.0) throw std::invalid_argument("zeta: delta must be nonzero");
  return 4.0 * p.j * p.j / p.delta;
}

OperatorMatrix ideal_target_gate(ControlState c, double t, const QubitModelParams& p) {
  const double z = zeta(p);
  OperatorMatrix u = OperatorMatrix::Zero(4, 4);
  switch (c) {
    case ControlState::k00:
    case ControlState::k11: {
      const Complex e = std::exp((c == ControlState::k00 ? -1.0 : 1.0) * kI * t * z);
      u(1, 1) = u(2, 2) = 0.5 * (e + 1.0);
      u(1, 2) = u(2, 1) = 0.5 * (e - 1.0);
      if (c == ControlState::k00) {
        u(0, 0) = 1.0;
        u(3, 3) = e;
      } else {
        u(0, 0) = e;
        u(3, 3) = 1.0;
      }
      break;
    }
    case ControlState::kPsiPlus: {
      const Complex phase = std::exp(-kI * t * p.j_c);
      u(0, 0) = phase * std::exp(kI * t * z);
      u(1, 1) = phase;
      u(2, 2) = phase;
      u(3, 3) = phase * std::exp(-kI * t * z);
      break;
    }
    case ControlState::kPsiMinus:
      u = std::exp(kI * t * p.j_c) * OperatorMatrix::Identity(4, 4);
      break;
  }
  return u;
}

OperatorMatrix ideal_diamond_gate(double t, const QubitModelParams& p) {
  OperatorMatrix u = OperatorMatrix::Zero(kQubitDim, kQubitDim);
  for (ControlState c : kControlStates) {
    const StateVector phi = control_state_vector(c);
    u += tensor_product(OperatorMatrix(phi * phi.adjoint()), ideal_target_gate(c, t, p));
  }
  return u;
}

DressedControlAnalysis dressed_control_analysis(const QubitModelParams& p) {
  if (p.delta == 0.0) throw std::invalid_argument("dressed_control_analysis: delta must be nonzero");
  const double j = p.j;
  const double jc = p.j_c;
  const double d = p.delta;
  DressedControlAnalysis out;
  const double radicand =
      64.0 * std::pow(j, 4) + 16.0 * j * j * jc * (jc + d) + jc * jc * d * d;
  out.kappa_dressed = std::sqrt(std::max(radicand, 0.0)) / std::abs(d);
  out.e_plus = 0.5 * (jc + out.kappa_dressed);
  out.e_minus = 0.5 * (jc - out.kappa_dressed);
  if (jc == 0.0) {
    out.vartheta = 0.0;
    out.sin_vartheta_estimate = 0.0;
  } else {
    out.vartheta = std::atan(2.0 * jc * j / (out.e_plus * d + 4.0 * j * j));
    if (j != 0.0) {
      out.sin_vartheta_estimate = (1.0 / (4.0 * j)) / (gate_time(p) / kTwoPi + 1.0 / jc);
    }
  }
  out.infidelity_scale = std::pow(2.0 * j / d, 2);
  return out;
}

}  // namespace diamond
