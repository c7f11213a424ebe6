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

#include "diamond/qutrit_model.hpp"

#include <cmath>
#include <stdexcept>

namespace diamond {
namespace {

constexpr std::array<int, 4> kDims = {3, 3, 3, 3};

OperatorMatrix on_site(const OperatorMatrix& local, int site) {
  return embed(local, static_cast<std::size_t>(site), kDims);
}

int excitations(int index) {
  int n = 0;
  for (int k = 0; k < 4; ++k) {
    n += index % 3;
    index /= 3;
  }
  return n;
}

}  // namespace

void QutritModelParams::validate() const {
  for (double v : {omega_c, omega_t, alpha_c, alpha_t, j, j_c, j_t}) {
    if (!std::isfinite(v)) throw std::invalid_argument("QutritModelParams: non-finite value");
  }
  for (auto [omega, alpha] : {std::pair{omega_c, alpha_c}, std::pair{omega_t, alpha_t}}) {
    if (omega <= 0.0) throw std::invalid_argument("QutritModelParams: frequency must be positive");
    if (alpha >= 0.0) throw std::invalid_argument("QutritModelParams: anharmonicity must be negative");
    if (std::abs(alpha) >= omega) {
      throw std::invalid_argument("QutritModelParams: |alpha| must be below the frequency");
    }
  }
}

std::vector<std::string> QutritModelParams::warnings() const {
  std::vector<std::string> out;
  if (std::abs(alpha_c / omega_c) >= 0.2) out.emplace_back("control |alpha/omega| >= 0.2");
  if (std::abs(alpha_t / omega_t) >= 0.2) out.emplace_back("target |alpha/omega| >= 0.2");
  return out;
}

QutritModelParams crosstalk_reference_params(AnharmonicityUnits units) {
  QutritModelParams p;
  p.omega_c = kTwoPi * 7e9;
  p.omega_t = kTwoPi * 9e9;
  const double scale = units == AnharmonicityUnits::kAngular ? 1.0 : kTwoPi;
  p.alpha_c = -270e6 * scale;
  p.alpha_t = -280e6 * scale;
  p.j = kTwoPi * 65e6;
  p.j_c = kTwoPi * 20e6;
  p.j_t = 0.0;
  return p;
}

QutritLevels t_coefficients(double omega, double alpha) {
  if (!(omega > 0.0) || !(alpha < 0.0) || !(std::abs(alpha) < omega)) {
    throw std::invalid_argument("t_coefficients: need omega > 0 and -omega < alpha < 0");
  }
  QutritLevels l;
  const double shifted = omega + 0.5 * alpha;
  // √(s² - α²/2) - s written without cancellation.
  l.omega0 = -(0.5 * alpha * alpha) / (std::sqrt(shifted * shifted - 0.5 * alpha * alpha) + shifted);
  l.omega1 = l.omega0 + omega;
  l.omega2 = l.omega1 + omega + alpha;
  auto t = [alpha](double w) {
    return std::sqrt(2.0) * (w - 0.5 * alpha) / std::sqrt(w * w + 0.5 * alpha * alpha);
  };
  l.t0 = t(l.omega0);
  l.t2 = t(l.omega2);
  return l;
}

QutritOperatorSet qutrit_operators(double omega, double alpha) {
  QutritOperatorSet s;
  s.levels = t_coefficients(omega, alpha);
  s.sigma_z = OperatorMatrix::Zero(3, 3);
  s.sigma_z(0, 0) = 1.0;
  s.sigma_z(1, 1) = -1.0;
  s.sigma_z(2, 2) = -(3.0 + 2.0 * alpha / omega);
  s.sigma_y = OperatorMatrix::Zero(3, 3);
  s.sigma_y(1, 0) = kI * s.levels.t0;
  s.sigma_y(2, 1) = kI * s.levels.t2;
  s.sigma_y(0, 1) = -kI * s.levels.t0;
  s.sigma_y(1, 2) = -kI * s.levels.t2;
  return s;
}

int qutrit_index(int c1, int c2, int t1, int t2) {
  for (int v : {c1, c2, t1, t2}) {
    if (v < 0 || v > 2) throw std::invalid_argument("qutrit_index: level out of range");
  }
  return 27 * c1 + 9 * c2 + 3 * t1 + t2;
}

StateVector qutrit_ket(int c1, int c2, int t1, int t2) {
  return basis_state(kQutritDim, qutrit_index(c1, c2, t1, t2));
}

OperatorMatrix build_qutrit_h(const QutritModelParams& p) {
  p.validate();
  const QutritOperatorSet c = qutrit_operators(p.omega_c, p.alpha_c);
  const QutritOperatorSet t = qutrit_operators(p.omega_t, p.alpha_t);
  const OperatorMatrix yc1 = on_site(c.sigma_y, 0);
  const OperatorMatrix yc2 = on_site(c.sigma_y, 1);
  const OperatorMatrix yt1 = on_site(t.sigma_y, 2);
  const OperatorMatrix yt2 = on_site(t.sigma_y, 3);
  OperatorMatrix h = -0.5 * p.omega_t * (on_site(t.sigma_z, 2) + on_site(t.sigma_z, 3)) -
                     0.5 * p.omega_c * (on_site(c.sigma_z, 0) + on_site(c.sigma_z, 1));
  h += p.j_t * yt1 * yt2 + p.j_c * yc1 * yc2 + p.j * (yt1 + yt2) * (yc1 + yc2);
  return h;
}

OperatorMatrix qutrit_excitation_number() {
  OperatorMatrix n = OperatorMatrix::Zero(kQutritDim, kQutritDim);
  for (int k = 0; k < kQutritDim; ++k) n(k, k) = excitations(k);
  return n;
}

OperatorMatrix build_qutrit_h_number_conserving(const QutritModelParams& p) {
  OperatorMatrix h = build_qutrit_h(p);
  for (int r = 0; r < kQutritDim; ++r) {
    for (int c = 0; c < kQutritDim; ++c) {
      if (excitations(r) != excitations(c)) h(r, c) = 0.0;
    }
  }
  return h;
}

RedefinedControlState redefined_11(const QutritModelParams& p) {
  p.validate();
  const QutritLevels l = t_coefficients(p.omega_c, p.alpha_c);
  RedefinedControlState s;
  s.theta = -0.5 * std::atan(2.0 * std::sqrt(2.0) * p.j_c * l.t0 * l.t2 / p.alpha_c);
  s.state = StateVector::Zero(9);
  const double r = std::sin(s.theta) / std::sqrt(2.0);
  s.state(3 * 1 + 1) = std::cos(s.theta);
  s.state(3 * 0 + 2) = r;
  s.state(3 * 2 + 0) = r;
  return s;
}

OperatorMatrix control_pair_block(const QutritModelParams& p) {
  p.validate();
  const QutritLevels l = t_coefficients(p.omega_c, p.alpha_c);
  OperatorMatrix b = OperatorMatrix::Zero(2, 2);
  b(0, 1) = b(1, 0) = std::sqrt(2.0) * p.j_c * l.t0 * l.t2;
  b(1, 1) = p.alpha_c;
  return b;
}

std::string_view to_string(QutritControl c) {
  switch (c) {
    case QutritControl::k00: return "00";
    case QutritControl::k11: return "11~";
    case QutritControl::kPsiPlus: return "psi+";
    case QutritControl::kPsiMinus: return "psi-";
  }
  return "?";
}

QutritControl parse_qutrit_control(std::string_view label) {
  if (label == "00") return QutritControl::k00;
  if (label == "11" || label == "11~") return QutritControl::k11;
  if (label == "psi+" || label == "Psi+") return QutritControl::kPsiPlus;
  if (label == "psi-" || label == "Psi-") return QutritControl::kPsiMinus;
  throw std::invalid_argument("unknown qutrit control state '" + std::string(label) + "'");
}

StateVector qutrit_control_state(QutritControl c, const QutritModelParams& p) {
  StateVector v = StateVector::Zero(9);
  const double r = 1.0 / std::sqrt(2.0);
  switch (c) {
    case QutritControl::k00: v(0) = 1.0; break;
    case QutritControl::k11: v = redefined_11(p).state; break;
    case QutritControl::kPsiPlus: v(1) = r; v(3) = r; break;
    case QutritControl::kPsiMinus: v(1) = r; v(3) = -r; break;
  }
  return v;
}

StateVector qutrit_product_state(const StateVector& control, int target_label) {
  if (control.size() != 9) throw std::invalid_argument("qutrit_product_state: control must be 9-dim");
  if (target_label < 0 || target_label > 3) {
    throw std::invalid_argument("qutrit_product_state: target label must be 0..3");
  }
  const int t1 = target_label >> 1;
  const int t2 = target_label & 1;
  StateVector target = StateVector::Zero(9);
  target(3 * t1 + t2) = 1.0;
  return tensor_product(control, target);
}

std::array<double, 2> leakage_detunings(const QutritModelParams& p) {
  const QutritLevels l = t_coefficients(p.omega_c, p.alpha_c);
  const double shift = p.alpha_c + p.j_c * l.t0 * l.t0;
  return {p.omega_c + p.omega_t + shift, p.omega_c - p.omega_t + shift};
}

double jt_optimal(const QutritModelParams& p) {
  p.validate();
  const auto [dp, dm] = leakage_detunings(p);
  if (std::abs(dp) < 1e6 || std::abs(dm) < 1e6) {
    throw std::invalid_argument("jt_optimal: resonant leakage detuning");
  }
  const QutritLevels l = t_coefficients(p.omega_c, p.alpha_c);
  const double g = p.j * l.t2;
  return g * g * (1.0 / dp + 1.0 / dm);
}

EffectiveLeakageModel effective_leakage_model(const QutritModelParams& p) {
  p.validate();
  const QutritLevels lc = t_coefficients(p.omega_c, p.alpha_c);
  const QutritLevels lt = t_coefficients(p.omega_t, p.alpha_t);
  EffectiveLeakageModel m;
  const auto [dp, dm] = leakage_detunings(p);
  m.delta_plus = dp;
  m.delta_minus = dm;
  m.delta = p.j * lt.t0 * lc.t2;
  m.kappa_crosstalk = p.j_t * lt.t0 * lt.t0;
  m.hamiltonian = OperatorMatrix::Zero(4, 4);
  auto& h = m.hamiltonian;
  h(1, 1) = dm;
  h(2, 2) = dp;
  h(0, 3) = h(3, 0) = m.kappa_crosstalk;
  for (int k : {1, 2}) {
    h(0, k) = h(k, 0) = m.delta;
    h(3, k) = h(k, 3) = m.delta;
  }
  const double r = 1.0 / std::sqrt(2.0);
  StateVector singlet = StateVector::Zero(9);
  singlet(1) = r;
  singlet(3) = -r;
  StateVector leaked = StateVector::Zero(9);
  leaked(2) = r;
  leaked(6) = -r;
  m.basis = {qutrit_product_state(singlet, 2), qutrit_product_state(leaked, 0),
             qutrit_product_state(leaked, 3), qutrit_product_state(singlet, 1)};
  return m;
}

double dyson_transition_probability(const QutritModelParams& p, double t) {
  const EffectiveLeakageModel m = effective_leakage_model(p);
  auto term = [t](double d) {
    return (kI * d * t + std::exp(-kI * d * t) - 1.0) / (d * d);
  };
  const Complex a = -kI * t * m.kappa_crosstalk +
                    m.delta * m.delta * (term(m.delta_minus) + term(m.delta_plus));
  return std::norm(a);
}

double dyson_secular_probability(const QutritModelParams& p, double t) {
  const EffectiveLeakageModel m = effective_leakage_model(p);
  const double c = m.kappa_crosstalk -
                   m.delta * m.delta * (1.0 / m.delta_minus + 1.0 / m.delta_plus);
  return t * t * c * c;
}

QutritPropagator::QutritPropagator(const OperatorMatrix& h)
    : eigen_(hermitian_eigendecomposition(h)) {}

Complex QutritPropagator::amplitude(const StateVector& out, const StateVector& in, double t) const {
  const StateVector a = eigen_.eigenvectors.adjoint() * in;
  const StateVector b = eigen_.eigenvectors.adjoint() * out;
  Complex sum = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    sum += std::conj(b(k)) * a(k) * std::exp(-kI * eigen_.eigenvalues(k) * t);
  }
  return sum;
}

StateVector QutritPropagator::evolve(const StateVector& in, double t) const {
  StateVector a = eigen_.eigenvectors.adjoint() * in;
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) *= std::exp(-kI * eigen_.eigenvalues(k) * t);
  return eigen_.eigenvectors * a;
}

std::vector<double> QutritPropagator::transition_probabilities(const StateVector& out,
                                                               const StateVector& in,
                                                               double step,
                                                               std::size_t count) const {
  const StateVector a = eigen_.eigenvectors.adjoint() * in;
  const StateVector b = eigen_.eigenvectors.adjoint() * out;
  std::vector<Complex> weight;
  std::vector<Complex> rotor;
  std::vector<double> energy;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const Complex w = std::conj(b(k)) * a(k);
    if (std::abs(w) < 1e-15) continue;
    weight.push_back(w);
    energy.push_back(eigen_.eigenvalues(k));
    rotor.push_back(std::exp(-kI * eigen_.eigenvalues(k) * step));
  }
  std::vector<Complex> phase(weight.size(), Complex(1.0, 0.0));
  std::vector<double> out_values(count);
  for (std::size_t n = 0; n < count; ++n) {
    // Reset the phase recurrence periodically to bound rounding drift.
    if (n % 4096 == 0) {
      const double t = step * static_cast<double>(n);
      for (std::size_t k = 0; k < phase.size(); ++k) phase[k] = std::exp(-kI * energy[k] * t);
    }
    Complex sum = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) {
      sum += weight[k] * phase[k];
      phase[k] *= rotor[k];
    }
    out_values[n] = std::norm(sum);
  }
  return out_values;
}

double swap_fidelity(QutritControl control, int psi_in, int psi_out, double t,
                     const QutritModelParams& p) {
  const QutritPropagator prop(build_qutrit_h(p));
  const StateVector phi = qutrit_control_state(control, p);
  return std::norm(prop.amplitude(qutrit_product_state(phi, psi_out),
                                  qutrit_product_state(phi, psi_in), t));
}

SwapRateResult swap_rate(const QutritPropagator& prop, QutritControl control,
                         const QutritModelParams& p, const SwapRateOptions& options) {
  if (!(options.step > 0.0) || !(options.horizon > options.step)) {
    throw std::invalid_argument("swap_rate: invalid time grid");
  }
  const StateVector phi = qutrit_control_state(control, p);
  const auto count = static_cast<std::size_t>(std::floor(options.horizon / options.step)) + 1;
  const std::vector<double> f = prop.transition_probabilities(
      qutrit_product_state(phi, 1), qutrit_product_state(phi, 2), options.step, count);
  SwapRateResult r;
  bool in_lobe = false;
  bool done = false;
  for (std::size_t n = 0; n < count; ++n) {
    r.max_probability = std::max(r.max_probability, f[n]);
    if (done) continue;
    if (!in_lobe && f[n] >= options.threshold) in_lobe = true;
    if (in_lobe) {
      if (f[n] > r.lobe_peak) {
        r.lobe_peak = f[n];
        r.swap_time = options.step * static_cast<double>(n);
      }
      if (f[n] < options.threshold - options.hysteresis) done = true;
    }
  }
  if (in_lobe && r.swap_time > 0.0) r.rate = 1.0 / r.swap_time;
  return r;
}

SwapRateResult swap_rate(QutritControl control, double j_t, const QutritModelParams& p,
                         const SwapRateOptions& options) {
  QutritModelParams q = p;
  q.j_t = j_t;
  return swap_rate(QutritPropagator(build_qutrit_h(q)), control, q, options);
}

}  // namespace diamond
