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


#include "diamond/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace diamond {
namespace {

constexpr double kHbar = 1.054571817e-34;
constexpr double kElementaryCharge = 1.602176634e-19;

struct Couplings {
  double j = 0.0;
  double j_c = 0.0;
  double j_t = 0.0;
};

// Closed forms only; used by the forward map and the inverse-design loop.
DerivedEnergies closed_forms(const CircuitParams& cp) {
  const double c = internal_capacitance(cp.c);
  const double cp_ = internal_capacitance(cp.c_prime);
  const double ct = internal_capacitance(cp.c_t);
  const double cc = internal_capacitance(cp.c_c);
  const double d = 2.0 * ct * (cc + 2.0 * cp_) + c * (cc + 2.0 * cp_ + 4.0 * ct);
  DerivedEnergies e;
  e.e_c_c = (2.0 * ct * (cc + cp_) + c * (cc + cp_ + 2.0 * ct)) / (8.0 * cc * d);
  e.e_c_t = 2.0 * (c * c + 2.0 * ct * (cc + 2.0 * cp_) + c * (cc + 2.0 * cp_ + 4.0 * ct)) /
            (8.0 * (c + 2.0 * ct) * d);
  e.e_c_cm = 2.0 * (c + cc) / (8.0 * c * cc);
  e.cc = (2.0 * cp_ * ct + c * (cp_ + 2.0 * ct)) / (cc * d);
  e.ct = c / d;
  e.tt = 2.0 * c * c / ((c + 2.0 * ct) * d);
  e.c_cm = 1.0 / cc;
  e.cm_cm = 2.0 / cc;
  return e;
}

Couplings couplings_from(const DerivedEnergies& e, const CircuitParams& cp) {
  const double zc = cp.e_j_c / (32.0 * e.e_c_c);
  const double zt = cp.e_j_t / (32.0 * e.e_c_t);
  return {e.ct * std::pow(zc, 0.25) * std::pow(zt, 0.25), -e.cc * std::sqrt(zc),
          e.tt * std::sqrt(zt)};
}

double transmon_frequency(double e_c, double e_j) {
  const double a = std::sqrt(8.0 * e_c * e_j) - 1.5 * e_c;
  return 0.5 * e_c + std::sqrt(a * a + 0.5 * e_c * e_c);
}

// Smallest x in [lo, hi] with f(x) >= target for increasing f.
template <typename F>
double bisect(F&& f, double lo, double hi, double target, int& iterations) {
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
    ++iterations;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CircuitParams CircuitParams::from_lab_units(double c_ff, double c_prime_ff, double c_t_ff,
                                            double c_c_ff, double e_jt_ghz, double e_jc_ghz) {
  CircuitParams p;
  p.c = c_ff * 1e-15;
  p.c_prime = c_prime_ff * 1e-15;
  p.c_t = c_t_ff * 1e-15;
  p.c_c = c_c_ff * 1e-15;
  p.e_j_t = kTwoPi * 1e9 * e_jt_ghz;
  p.e_j_c = kTwoPi * 1e9 * e_jc_ghz;
  return p;
}

void CircuitParams::validate() const {
  for (double v : {c, c_t, c_c, e_j_t, e_j_c}) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw std::invalid_argument("CircuitParams: capacitances and E_J must be positive");
    }
  }
  if (!std::isfinite(c_prime) || c_prime < 0.0) {
    throw std::invalid_argument("CircuitParams: C' must be non-negative");
  }
}

std::vector<std::string> CircuitParams::warnings() const {
  std::vector<std::string> out;
  const double small = std::max(c, c_prime);
  if (c_c < 10.0 * small) out.emplace_back("C_C is not >= 10 x max(C, C'): weak-coupling expansion doubtful");
  if (c_t < 10.0 * small) out.emplace_back("C_T is not >= 10 x max(C, C'): weak-coupling expansion doubtful");
  return out;
}

double internal_capacitance(double farads) {
  return farads * kHbar / (4.0 * kElementaryCharge * kElementaryCharge);
}

RealMatrix capacitance_matrix(const CircuitParams& cp) {
  cp.validate();
  const double c = cp.c, p = cp.c_prime, t = cp.c_t, k = cp.c_c;
  RealMatrix m(6, 6);
  m << c + t, -c, 0, 0, 0, -t,
       -c, k + p + 2 * c, -c, 0, -p, 0,
       0, -c, c + t, -t, 0, 0,
       0, 0, -t, c + t, -c, 0,
       0, -p, 0, -c, k + p + 2 * c, -c,
       -t, 0, 0, 0, -c, c + t;
  return m;
}

RealMatrix coordinate_transform() {
  RealMatrix t(6, 6);
  t << 0, 0, 0, 0, -1, 0,
       0, 1, 0, 0, 0, 0,
       1, 0, 0, 0, 0, -1,
       0, 0, 1, -1, 0, 0,
       1, 0, 0, 0, 0, 1,
       0, 0, 1, 1, 0, 0;
  return t;
}

RealMatrix transformed_capacitance_matrix(const CircuitParams& cp) {
  const RealMatrix t_inv = coordinate_transform().inverse();
  const RealMatrix c = capacitance_matrix(cp) * internal_capacitance(1.0);
  return t_inv.transpose() * c * t_inv;
}

RealMatrix numeric_inverse_capacitance(const CircuitParams& cp) {
  const RealMatrix k = transformed_capacitance_matrix(cp);
  const Eigen::FullPivLU<RealMatrix> lu(k);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw std::runtime_error("numeric_inverse_capacitance: K is singular");
  }
  return lu.inverse();
}

RealMatrix DerivedEnergies::inverse_capacitance() const {
  const double a = 8.0 * e_c_c, b = 8.0 * e_c_t, m = 8.0 * e_c_cm;
  RealMatrix k(6, 6);
  k << a, -cc, ct, ct, -c_cm, -c_cm,
       -cc, a, ct, ct, c_cm, c_cm,
       ct, ct, b, tt, 0, 0,
       ct, ct, tt, b, 0, 0,
       -c_cm, c_cm, 0, 0, m, cm_cm,
       -c_cm, c_cm, 0, 0, cm_cm, m;
  return k;
}

DerivedEnergies derived_energies(const CircuitParams& cp) {
  cp.validate();
  DerivedEnergies e = closed_forms(cp);
  const RealMatrix numeric = numeric_inverse_capacitance(cp);
  e.inverse_mismatch =
      (e.inverse_capacitance() - numeric).cwiseAbs().maxCoeff() / numeric.cwiseAbs().maxCoeff();
  return e;
}

Eigen::Matrix3d truncated_transmon_hamiltonian(double e_c, double e_j) {
  const double w = std::sqrt(8.0 * e_c * e_j);
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(1, 1) = w - e_c;
  h(2, 2) = 2.0 * w - 3.0 * e_c;
  h(0, 2) = h(2, 0) = -e_c / std::sqrt(2.0);
  return h;
}

TransmonSpectrum transmon_spectrum(double e_c, double e_j) {
  if (!(e_c > 0.0) || !(e_j > 0.0)) {
    throw std::invalid_argument("transmon_spectrum: E_C and E_J must be positive");
  }
  const double ratio = e_j / e_c;
  if (ratio < 20.0) {
    throw std::invalid_argument("transmon_spectrum: E_J/E_C = " + std::to_string(ratio) +
                                " is below 20");
  }
  TransmonSpectrum s;
  s.e_c = e_c;
  s.e_j = e_j;
  s.omega = transmon_frequency(e_c, e_j);
  s.alpha = -e_c;
  s.levels = t_coefficients(s.omega, s.alpha);
  const double h = e_c / std::sqrt(2.0);
  const Eigen::Vector3d v0(h, 0.0, -s.levels.omega0);
  const Eigen::Vector3d v2(-h, 0.0, s.levels.omega2);
  s.states.col(0) = v0.normalized();
  s.states.col(1) = Eigen::Vector3d::UnitY();
  s.states.col(2) = v2.normalized();
  if (ratio < 50.0) {
    s.warnings.push_back("E_J/E_C = " + std::to_string(ratio) + " is below 50 (weak transmon regime)");
  }
  return s;
}

CircuitModel analyze_circuit(const CircuitParams& cp) {
  CircuitModel m;
  m.energies = derived_energies(cp);
  m.control = transmon_spectrum(m.energies.e_c_c, cp.e_j_c);
  m.target = transmon_spectrum(m.energies.e_c_t, cp.e_j_t);
  const Couplings k = couplings_from(m.energies, cp);
  m.params.omega_c = m.control.omega;
  m.params.omega_t = m.target.omega;
  m.params.alpha_c = m.control.alpha;
  m.params.alpha_t = m.target.alpha;
  m.params.j = k.j;
  m.params.j_c = k.j_c;
  m.params.j_t = k.j_t;
  m.warnings = cp.warnings();
  for (const auto* t : {&m.control, &m.target}) {
    m.warnings.insert(m.warnings.end(), t->warnings.begin(), t->warnings.end());
  }
  return m;
}

QutritModelParams model_from_circuit(const CircuitParams& cp) { return analyze_circuit(cp).params; }

InverseDesignResult inverse_design(const CircuitParams& base, double j_target,
                                   double j_c_target) {
  if (!(j_target > 0.0) || !(j_c_target > 0.0)) {
    throw std::invalid_argument("inverse_design: targets must be positive");
  }
  CircuitParams probe = base;
  probe.c = base.c_t;
  probe.c_prime = 0.0;
  probe.validate();

  InverseDesignResult r;
  auto couplings = [&](double c, double c_prime) {
    CircuitParams q = base;
    q.c = c;
    q.c_prime = c_prime;
    return couplings_from(closed_forms(q), q);
  };
  const double c_lo = 1e-6 * base.c_t;
  const double c_hi = std::min(base.c_t, base.c_c);
  auto solve_c = [&](double c_prime) {
    if (std::abs(couplings(c_hi, c_prime).j) < j_target) {
      throw std::domain_error("inverse_design: |J| target not reachable with C <= min(C_T, C_C)");
    }
    return bisect([&](double c) { return std::abs(couplings(c, c_prime).j); }, c_lo, c_hi,
                  j_target, r.iterations);
  };
  auto jc_at = [&](double c_prime) { return std::abs(couplings(solve_c(c_prime), c_prime).j_c); };

  if (jc_at(0.0) > j_c_target) {
    throw std::domain_error("inverse_design: |J_C| already exceeds the target at C' = 0");
  }
  double p_hi = 1e-3 * base.c_c;
  while (jc_at(p_hi) < j_c_target) {
    p_hi *= 2.0;
    if (p_hi > base.c_c) {
      throw std::domain_error("inverse_design: |J_C| target not reachable with C' <= C_C");
    }
  }
  const double c_prime = bisect(jc_at, 0.0, p_hi, j_c_target, r.iterations);
  r.params = base;
  r.params.c_prime = c_prime;
  r.params.c = solve_c(c_prime);
  r.model = model_from_circuit(r.params);
  return r;
}

CircuitParams reference_design_base() {
  return CircuitParams::from_lab_units(10.0, 0.0, 40.0, 800.0, 25.0, 80.0);
}

}  // namespace diamond
