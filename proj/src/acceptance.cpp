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


#include "diamond/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "diamond/circuit.hpp"
#include "diamond/experiments.hpp"
#include "diamond/fidelity.hpp"
#include "diamond/gate_circuit.hpp"
#include "diamond/lindblad.hpp"
#include "diamond/qubit_model.hpp"
#include "diamond/qutrit_model.hpp"

namespace diamond {
namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double mhz(double angular) { return angular / kTwoPi / 1e6; }

// Accumulates sub-checks into one verdict and a compact detail string.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    passed_ = passed_ && ok;
    if (!detail_.empty()) detail_ += "; ";
    detail_ += (ok ? "" : "FAILED ") + what;
  }
  bool passed() const { return passed_; }
  const std::string& detail() const { return detail_; }

 private:
  bool passed_ = true;
  std::string detail_;
};

using Criterion = std::function<void(Check&, const AcceptanceOptions&)>;

void check_fidelities(Check& c, const std::string& label, const GateFidelities& f,
                      const ReferenceRow& ref) {
  const std::array<double, 5> got = {f.total, f.per_control[0], f.per_control[1], f.per_control[2],
                                     f.per_control[3]};
  static const char* kNames[5] = {"F", "F00", "F11", "Fpsi+", "Fpsi-"};
  for (std::size_t i = 0; i < 5; ++i) {
    c.expect(std::abs(got[i] - ref.fidelities[i]) <= ref.fidelity_tolerance,
             label + " " + kNames[i] + "=" + fmt("%.4f", got[i]) + " (ref " +
                 fmt("%.4f", ref.fidelities[i]) + ")");
  }
}

void gate_time_formula(Check& c, const AcceptanceOptions&) {
  for (int set : {1, 2}) {
    const double t = gate_time(table1_set(set)) * 1e9;
    const double ref = reference_row(set).t_predicted_ns;
    c.expect(std::abs(t - ref) <= 0.05,
             "set" + std::to_string(set) + " t_g=" + fmt("%.3f", t) + " ns (ref " + fmt("%.1f", ref) + ")");
  }
}

void table_reproduction(Check& c, const AcceptanceOptions&) {
  for (int set : {1, 2}) {
    const GateFidelityResult r = find_gate_time(table1_set(set));
    const ReferenceRow& ref = reference_row(set);
    const std::string label = "set" + std::to_string(set);
    c.expect(std::abs(r.t_g_simulated * 1e9 - ref.t_simulated_ns) <= 0.5,
             label + " t_sim=" + fmt("%.2f", r.t_g_simulated * 1e9) + " ns");
    check_fidelities(c, label, r.fidelities, ref);
  }
}

void analytic_gate(Check& c, const AcceptanceOptions&) {
  QubitModelParams p = table1_set(1);
  p.j_c = 0.0;
  const double tg = gate_time(p);
  const OperatorMatrix u = matrix_exponential(-kI * tg * build_floquet_h(p));
  const double err = max_abs(u - ideal_diamond_gate(tg, p));
  c.expect(err <= 1e-10, "exp(-iH_F t_g) vs block unitary " + fmt("%.2e", err));
  const QubitModelParams q = table1_set(1);
  const PhaseDistance d =
      distance_up_to_global_phase(decompose_diamond_gate(q).unitary(), ideal_diamond_gate(gate_time(q), q));
  c.expect(d.comparable && d.distance <= 1e-8, "circuit vs gate " + fmt("%.2e", d.distance));
}

void fidelity_oracle(Check& c, const AcceptanceOptions&) {
  const QubitModelParams p = table1_set(1);
  const double tg = gate_time(p);
  const OperatorMatrix u = ideal_diamond_gate(tg, p);
  const int d = kQubitDim;
  auto compare = [&](const std::string& label, const ChannelMap& map, std::uint64_t seed) {
    const double exact = average_gate_fidelity(map, u, d).value;
    const MonteCarloEstimate mc = haar_average_fidelity(map, u, 2000, seed);
    const double diff = std::abs(exact - mc.mean);
    c.expect(diff <= 3.0 * mc.standard_error + 1e-12,
             label + " sum=" + fmt("%.5f", exact) + " mc=" + fmt("%.5f", mc.mean) + "±" +
                 fmt("%.1e", mc.standard_error));
  };
  compare("identity", [&](const OperatorMatrix& x) -> OperatorMatrix { return u * x * u.adjoint(); }, 11);
  compare("depolarizing", [&](const OperatorMatrix& x) -> OperatorMatrix {
    const OperatorMatrix id = OperatorMatrix::Identity(d, d);
    return 0.8 * (u * x * u.adjoint()) + 0.2 * x.trace() / static_cast<double>(d) * id;
  }, 12);
  std::optional<PauliChannel> channel;
  const std::vector<double> times = {tg};
  propagate_channel(MasterEquation::rotating(p), times, 0.0,
                    [&](const PauliChannel& ch, const ChannelSnapshot&) { channel.emplace(ch); });
  compare("lindblad", [&](const OperatorMatrix& x) { return channel->apply(x); }, 13);
}

void infidelity_scaling(Check& c, const AcceptanceOptions&) {
  for (double ghz : {1.0, 2.0, 4.0}) {
    QubitModelParams p = table1_set(1);
    p.gamma = 0.0;
    p.delta = kTwoPi * 1e9 * ghz;
    const GateFidelityResult r = find_gate_time(p);
    const double inf00 = 1.0 - r.fidelities.per_control[0];
    const double predicted = kPi / (r.t_g_simulated * p.delta);
    const double ratio = inf00 / predicted;
    const double psi = (1.0 - r.fidelities.per_control[2]) / inf00;
    const std::string label = "Delta=" + fmt("%g", ghz) + "GHz";
    c.expect(ratio >= 0.5 && ratio <= 2.0, label + " (1-F00)/(pi/t_g Delta)=" + fmt("%.3f", ratio));
    c.expect(std::abs(psi - 2.0) <= 0.6, label + " (1-Fpsi+)/(1-F00)=" + fmt("%.3f", psi));
  }
}

void crosstalk_cancellation(Check& c, const AcceptanceOptions&) {
  const QutritModelParams base = crosstalk_reference_params();
  const double opt = mhz(jt_optimal(base));
  c.expect(std::abs(opt + 3.66) <= 0.2, "J_T^opt=" + fmt("%.3f", opt) + " MHz");

  // Swap suppression per control over J_T/2π in [-5, -1] MHz.
  const int n = 81;
  std::vector<double> grid(n);
  std::vector<std::array<SwapRateResult, 4>> rates(n);
  for (int i = 0; i < n; ++i) {
    grid[static_cast<std::size_t>(i)] = -5.0 + 4.0 * i / (n - 1);
    QutritModelParams p = base;
    p.j_t = kTwoPi * 1e6 * grid[static_cast<std::size_t>(i)];
    const QutritPropagator prop(build_qutrit_h(p));
    for (std::size_t k = 0; k < 4; ++k) rates[static_cast<std::size_t>(i)][k] = swap_rate(prop, kQutritControls[k], p);
  }
  auto argmin = [&](std::size_t k) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (rates[i][k].max_probability < rates[best][k].max_probability) best = i;
    }
    return best;
  };
  for (std::size_t k : {std::size_t{0}, std::size_t{2}, std::size_t{3}}) {
    const std::size_t i = argmin(k);
    c.expect(rates[i][k].rate == 0.0 && std::abs(grid[i] - opt) <= 0.2,
             std::string(to_string(kQutritControls[k])) + " zero at " + fmt("%.2f", grid[i]) + " MHz");
  }
  const std::size_t i11 = argmin(1);
  c.expect(rates[i11][1].rate == 0.0 && std::abs(grid[i11] + 2.5) <= 0.3,
           "11~ zero at " + fmt("%.2f", grid[i11]) + " MHz");

  QutritModelParams p = base;
  p.j_t = jt_optimal(base);
  const SwapRateResult r = swap_rate(QutritControl::k11, p.j_t, p);
  const double t = r.swap_time * 1e9;
  c.expect(std::abs(t - 220.0) <= 0.15 * 220.0, "11~ swap time at J_T^opt " + fmt("%.1f", t) + " ns");
}

void lindblad_properties(Check& c, const AcceptanceOptions&) {
  const QubitModelParams p = table1_set(1);
  const double tg = gate_time(p);
  const DensityMatrix rho0 = DensityMatrix::pure(haar_random_state(kQubitDim, 7));
  const EvolutionResult open = propagate(rho0, p, tg, 11);
  const EvolutionDiagnostics& d = open.diagnostics;
  c.expect(d.max_trace_drift <= 1e-7, "trace drift " + fmt("%.1e", d.max_trace_drift));
  c.expect(d.max_hermiticity_error <= 1e-10, "hermiticity " + fmt("%.1e", d.max_hermiticity_error));
  c.expect(d.min_eigenvalue >= -1e-8, "min eigenvalue " + fmt("%.1e", d.min_eigenvalue));

  QubitModelParams closed_p = p;
  closed_p.gamma = 0.0;
  double purity_loss = 0.0;
  for (const auto& s : propagate(rho0, closed_p, tg, 11).states) {
    purity_loss = std::max(purity_loss, std::abs(1.0 - s.purity()));
  }
  c.expect(purity_loss <= 1e-8, "purity loss at gamma=0 " + fmt("%.1e", purity_loss));

  const double gamma = 1e6;
  const OperatorMatrix zero = OperatorMatrix::Zero(2, 2);
  const MasterEquation relax(zero, OperatorMatrix(), 0.0, {std::sqrt(gamma) * pauli::lowering()});
  const MasterEquation dephase(zero, OperatorMatrix(), 0.0, {std::sqrt(gamma) * pauli::z()});
  StateVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const EvolutionResult a = propagate(relax, DensityMatrix::pure(basis_state(2, 1)), 5.0 / gamma, 21, 0.01 / gamma);
  const EvolutionResult b = propagate(dephase, DensityMatrix::pure(plus), 5.0 / gamma, 21, 0.01 / gamma);
  double err_relax = 0.0, err_dephase = 0.0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    err_relax = std::max(err_relax, std::abs(a.states[i].matrix()(1, 1).real() - std::exp(-gamma * a.times[i])));
    err_dephase = std::max(err_dephase, std::abs(2.0 * std::abs(b.states[i].matrix()(0, 1)) -
                                                 std::exp(-2.0 * gamma * b.times[i])));
  }
  c.expect(err_relax <= 1e-6, "relaxation vs e^-gt " + fmt("%.1e", err_relax));
  c.expect(err_dephase <= 1e-6, "dephasing vs e^-2gt " + fmt("%.1e", err_dephase));

  const MasterEquation eq = MasterEquation::rotating(p);
  GateSearchOptions fine;
  fine.max_step = 0.5 * eq.natural_step();
  const double f1 = fidelity_trace(p, {tg}).values.front().total;
  const double f2 = fidelity_trace(p, {tg}, fine).values.front().total;
  c.expect(std::abs(f1 - f2) <= 1e-5, "dt-halving |dF| " + fmt("%.1e", std::abs(f1 - f2)));
}

void circuit_quantizer(Check& c, const AcceptanceOptions&) {
  std::mt19937_64 rng = substream(2026, 8);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  double worst = 0.0, alpha_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const CircuitParams cp = CircuitParams::from_lab_units(
        uniform(1.0, 20.0), uniform(0.0, 20.0), uniform(30.0, 200.0), uniform(30.0, 1000.0),
        uniform(15.0, 100.0), uniform(15.0, 100.0));
    const CircuitModel m = analyze_circuit(cp);
    worst = std::max(worst, m.energies.inverse_mismatch);
    alpha_err = std::max({alpha_err, std::abs(m.control.alpha + m.energies.e_c_c),
                          std::abs(m.target.alpha + m.energies.e_c_t)});
  }
  c.expect(worst <= 1e-10, "K^-1 analytic vs numeric " + fmt("%.1e", worst));
  c.expect(alpha_err == 0.0, "alpha = -E_C residual " + fmt("%.1e", alpha_err));

  const CircuitParams weak = CircuitParams::from_lab_units(1.0, 1.0, 100.0, 100.0, 20.0, 20.0);
  const DerivedEnergies e = derived_energies(weak);
  const double c_int = internal_capacitance(weak.c);
  const double ct_int = internal_capacitance(weak.c_t);
  const double cc_int = internal_capacitance(weak.c_c);
  const double ecc = std::abs(e.e_c_c * 8.0 * cc_int - 1.0);
  const double ett = std::abs(e.tt / (c_int * c_int / (2.0 * ct_int * ct_int * cc_int)) - 1.0);
  c.expect(ecc <= 0.05, "E_CC vs 1/8C_C rel " + fmt("%.3f", ecc));
  c.expect(ett <= 0.05, "E_TT vs C^2/2C_T^2C_C rel " + fmt("%.3f", ett));
}

void noise_endpoints(Check& c, const AcceptanceOptions& options) {
  const RunResult deco = run_scenario(
      {"noise_decoherence", {{"gamma_from", "50000"}, {"gamma_to", "50000"}, {"points", "1"}}, 0,
       options.workers});
  const double f = std::stod(deco.table.rows.front()[2]);
  c.expect(std::abs(f - 0.98) <= 0.005, "F(gamma=0.05MHz)=" + fmt("%.4f", f));

  const RunResult xt = run_scenario(
      {"noise_crosstalk", {{"j_t_from_mhz", "0"}, {"j_t_to_mhz", "0"}, {"points", "1"}}, 0, options.workers});
  const auto& row = xt.table.rows.front();
  GateFidelities g;
  g.total = std::stod(row[2]);
  for (std::size_t k = 0; k < 4; ++k) g.per_control[k] = std::stod(row[3 + k]);
  check_fidelities(c, "J_T=0", g, reference_row(1));

  const RunRequest base{"noise_couplings",
                        {{"set", "2"}, {"gamma", "0"}, {"points", "2"}, {"repetitions", "3"}},
                        42, 1};
  RunRequest parallel = base;
  parallel.workers = 3;
  const std::string a = run_scenario(base).text;
  const std::string b = run_scenario(base).text;
  const std::string p = run_scenario(parallel).text;
  c.expect(a == b, "byte-identical rerun");
  c.expect(a == p, "workers 1 vs 3 identical");
  const ConfigSource header = parse_config_text(a);
  const RunRequest again{header.scenario.value_or(""), header.values, header.seed.value_or(0), 2};
  c.expect(run_scenario(again).text == a, "rerun from header identical");
}

struct Entry {
  int id;
  const char* title;
  Criterion run;
};

const std::vector<Entry>& criteria() {
  static const std::vector<Entry> list = {
      {1, "gate-time formula", gate_time_formula},
      {2, "reference table reproduction", table_reproduction},
      {3, "analytic gate equivalence", analytic_gate},
      {4, "fidelity oracle equivalence", fidelity_oracle},
      {5, "infidelity scaling law", infidelity_scaling},
      {6, "qutrit crosstalk cancellation", crosstalk_cancellation},
      {7, "Lindblad engine properties", lindblad_properties},
      {8, "circuit quantizer", circuit_quantizer},
      {9, "noise-study endpoints and determinism", noise_endpoints},
  };
  return list;
}

}  // namespace

const ReferenceRow& reference_row(int set) {
  static const ReferenceRow kSet1{59.2, 59.3, {0.9923, 0.9943, 0.9931, 0.9881, 0.9968}, 0.002};
  static const ReferenceRow kSet2{30.9, 31.5, {0.9637, 0.9662, 0.9668, 0.9348, 0.9983}, 0.004};
  if (set == 1) return kSet1;
  if (set == 2) return kSet2;
  throw std::invalid_argument("reference_row: set must be 1 or 2");
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  for (const Entry& e : criteria()) {
    if (!options.criteria.empty() &&
        std::find(options.criteria.begin(), options.criteria.end(), e.id) == options.criteria.end()) {
      continue;
    }
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      e.run(check, options);
      r.passed = check.passed();
      r.detail = check.detail();
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = check.detail() + (check.detail().empty() ? "" : "; ") + "error: " + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << " | " << r.detail
        << " | " << fmt("%.1f", r.seconds) << " s" << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace diamond
