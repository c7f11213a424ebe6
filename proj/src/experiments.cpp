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


#include "diamond/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "diamond/circuit.hpp"
#include "diamond/parallel.hpp"
#include "diamond/qutrit_model.hpp"
#include "json.hpp"

#ifndef DIAMONDSIM_VERSION
#define DIAMONDSIM_VERSION "unknown"
#endif

namespace diamond {
namespace {

using Row = std::vector<std::string>;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw ConfigError("points must be positive");
  if (n == 1) return {a};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = a + (b - a) * k / (n - 1);
  return out;
}

// Uniform in [0, 1) from the top 53 bits; fixed across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

const std::vector<std::string> kFidelityColumns = {"F", "F_00", "F_11", "F_psi+", "F_psi-"};

void append_fidelities(Row& row, const GateFidelities& f) {
  row.push_back(num(f.total));
  for (double v : f.per_control) row.push_back(num(v));
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<KeySpec> concat_keys(std::vector<KeySpec> a, const std::vector<KeySpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// ---- qubit-model keys ------------------------------------------------------

KeySpec set_dependent(std::string name, std::string set1, std::string set2, std::string help) {
  return {std::move(name),
          [s1 = std::move(set1), s2 = std::move(set2)](const ConfigMap& m) {
            const auto it = m.find("set");
            return it != m.end() && it->second == "2" ? s2 : s1;
          },
          std::move(help)};
}

std::vector<KeySpec> qubit_keys(bool with_gamma, bool with_j_t) {
  std::vector<KeySpec> k = {
      key("set", "1", "base parameter set (1 or 2)"),
      key("omega_ghz", "7", "control frequency Ω/2π"),
      set_dependent("delta_ghz", "2", "0.5", "target-control detuning Δ/2π"),
      set_dependent("j_mhz", "65", "45", "target-control coupling J/2π"),
      key("j_c_mhz", "20", "control-control coupling J_C/2π"),
  };
  if (with_gamma) k.push_back(key("gamma", "10000", "decoherence rate γ (1/s)"));
  if (with_j_t) k.push_back(key("j_t_mhz", "0", "target-target crosstalk J_T/2π"));
  k.push_back(key("dynamics", "rotating", "rotating | floquet"));
  k.push_back(key("max_step_ps", "0", "RK4 step; 0 selects (2π/|Δ|)/40"));
  return k;
}

std::vector<KeySpec> search_keys() {
  return {
      key("window", "0.15", "relative half-width of the gate-time scan"),
      key("coarse_points", "61", "coarse scan points"),
      key("fine_points", "21", "fine scan points"),
      key("check_convergence", "false", "repeat at halved steps until |ΔF| < tolerance"),
      key("convergence_tolerance", "1e-5", "step-halving tolerance on F"),
  };
}

QubitModelParams qubit_params(const Config& c) {
  const int set = c.integer("set");
  if (set != 1 && set != 2) throw ConfigError("set must be 1 or 2");
  QubitModelParams p = table1_set(set);
  p.omega = kTwoPi * 1e9 * c.number("omega_ghz");
  p.delta = kTwoPi * 1e9 * c.number("delta_ghz");
  p.j = kTwoPi * 1e6 * c.number("j_mhz");
  p.j_c = kTwoPi * 1e6 * c.number("j_c_mhz");
  if (c.values().count("gamma")) p.gamma = c.number("gamma");
  if (c.values().count("j_t_mhz")) p.j_t = kTwoPi * 1e6 * c.number("j_t_mhz");
  p.validate();
  return p;
}

GateSearchOptions search_options(const Config& c) {
  GateSearchOptions o;
  const std::string& d = c.text("dynamics");
  if (d == "rotating") {
    o.dynamics = Dynamics::kRotating;
  } else if (d == "floquet") {
    o.dynamics = Dynamics::kFloquet;
  } else {
    throw ConfigError("dynamics must be rotating or floquet");
  }
  o.max_step = c.number("max_step_ps") * 1e-12;
  if (c.values().count("window")) {
    o.window = c.number("window");
    o.coarse_points = c.integer("coarse_points");
    o.fine_points = c.integer("fine_points");
    o.check_convergence = c.flag("check_convergence");
    o.convergence_tolerance = c.number("convergence_tolerance");
  }
  return o;
}

std::string search_status(const GateFidelityResult& r, bool& tolerance_failure) {
  if (!r.converged) {
    tolerance_failure = true;
    return "unconverged";
  }
  return r.boundary_maximum ? "boundary_maximum" : "ok";
}

// ---- scenarios ---------------------------------------------------------------

struct Scenario {
  std::string name;
  std::vector<KeySpec> schema;
  std::function<ScenarioTable(const Config&, std::uint64_t seed, int workers)> run;
};

ScenarioTable run_table1(const Config& c, std::uint64_t, int workers) {
  std::vector<int> sets;
  for (double s : c.numbers("sets")) {
    if (s != 1.0 && s != 2.0) throw ConfigError("sets may only contain 1 and 2");
    sets.push_back(static_cast<int>(s));
  }
  const GateSearchOptions opt = search_options(c);
  const double gamma = c.number("gamma");
  auto results = parallel_map(sets.size(), workers, [&](std::size_t i) {
    QubitModelParams p = table1_set(sets[i]);
    p.gamma = gamma;
    return std::make_pair(p, find_gate_time(p, opt));
  });
  ScenarioTable t;
  t.columns = concat({"set", "delta_ghz", "j_mhz", "j_c_mhz", "gamma", "t_pred_ns", "t_sim_ns"},
                     kFidelityColumns);
  t.columns.insert(t.columns.end(), {"convergence_delta", "trace_defect", "status"});
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& [p, r] = results[i];
    Row row = {std::to_string(sets[i]), num(p.delta / kTwoPi / 1e9), num(p.j / kTwoPi / 1e6),
               num(p.j_c / kTwoPi / 1e6), num(p.gamma), num(r.t_predicted * 1e9),
               num(r.t_g_simulated * 1e9)};
    append_fidelities(row, r.fidelities);
    row.insert(row.end(), {num(r.convergence_delta), num(r.trace_defect),
                           search_status(r, t.tolerance_failure)});
    t.rows.push_back(std::move(row));
  }
  return t;
}

ScenarioTable run_fid_vs_time(const Config& c, std::uint64_t, int) {
  const QubitModelParams p = qubit_params(c);
  const double tg = gate_time(p);
  std::vector<double> times = linspace(c.number("t_from_tg") * tg, c.number("t_to_tg") * tg,
                                       c.integer("points"));
  const FidelityTrace trace = fidelity_trace(p, times, search_options(c));
  ScenarioTable t;
  t.columns = concat({"t_ns"}, kFidelityColumns);
  t.derived["t_pred_ns"] = num(tg * 1e9);
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    Row row = {num(trace.times[i] * 1e9)};
    append_fidelities(row, trace.values[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

ScenarioTable run_param_sweep(const Config& c, std::uint64_t, int workers) {
  const QubitModelParams base = qubit_params(c);
  const GateSearchOptions opt = search_options(c);
  const std::string& which = c.text("parameter");
  double scale = 0.0;
  double QubitModelParams::*field = nullptr;
  if (which == "j") {
    field = &QubitModelParams::j;
    scale = kTwoPi * 1e6;
  } else if (which == "j_c") {
    field = &QubitModelParams::j_c;
    scale = kTwoPi * 1e6;
  } else if (which == "delta") {
    field = &QubitModelParams::delta;
    scale = kTwoPi * 1e9;
  } else {
    throw ConfigError("parameter must be j, j_c or delta");
  }
  const std::vector<double> values = linspace(c.number("from"), c.number("to"), c.integer("points"));
  auto results = parallel_map(values.size(), workers, [&](std::size_t i) {
    QubitModelParams p = base;
    p.*field = values[i] * scale;
    return find_gate_time(p, opt);
  });
  ScenarioTable t;
  t.columns = concat({"parameter", "value", "t_pred_ns", "t_sim_ns"}, kFidelityColumns);
  t.columns.push_back("status");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const GateFidelityResult& r = results[i];
    Row row = {which, num(values[i]), num(r.t_predicted * 1e9), num(r.t_g_simulated * 1e9)};
    append_fidelities(row, r.fidelities);
    row.push_back(search_status(r, t.tolerance_failure));
    t.rows.push_back(std::move(row));
  }
  return t;
}

// Fidelity of one noisy realization, at the noise-free gate time or at its
// own optimum.
struct NoisyEvaluation {
  double time = 0.0;
  GateFidelities fidelities;
};

class NoiseStudy {
 public:
  explicit NoiseStudy(const Config& c)
      : base_(qubit_params(c)), options_(search_options(c)) {
    const std::string& mode = c.text("time_mode");
    if (mode != "fixed" && mode != "search") throw ConfigError("time_mode must be fixed or search");
    search_ = mode == "search";
    if (!search_) {
      QubitModelParams clean = base_;
      clean.j_t = 0.0;
      clean.j_deviation = {};
      fixed_time_ = find_gate_time(clean, options_).t_g_simulated;
    }
  }

  const QubitModelParams& base() const { return base_; }

  NoisyEvaluation evaluate(const QubitModelParams& p,
                           const std::optional<OperatorMatrix>& preparation = std::nullopt) const {
    GateSearchOptions o = options_;
    o.control_preparation = preparation;
    if (search_) {
      const GateFidelityResult r = find_gate_time(p, o);
      return {r.t_g_simulated, r.fidelities};
    }
    return {fixed_time_, fidelity_trace(p, {fixed_time_}, o).values.front()};
  }

  void describe(ScenarioTable& t) const {
    if (!search_) t.derived["t_eval_ns"] = num(fixed_time_ * 1e9);
  }

 private:
  QubitModelParams base_;
  GateSearchOptions options_;
  bool search_ = false;
  double fixed_time_ = 0.0;
};

std::vector<KeySpec> noise_keys(bool with_gamma, std::vector<KeySpec> extra) {
  std::vector<KeySpec> k = qubit_keys(with_gamma, false);
  k.push_back(key("time_mode", "fixed", "fixed: noise-free simulated t_g; search: per-sample optimum"));
  k = concat_keys(k, search_keys());
  return concat_keys(k, extra);
}

ScenarioTable run_noise_crosstalk(const Config& c, std::uint64_t, int workers) {
  const NoiseStudy study(c);
  const std::vector<double> j_t =
      linspace(c.number("j_t_from_mhz"), c.number("j_t_to_mhz"), c.integer("points"));
  auto results = parallel_map(j_t.size(), workers, [&](std::size_t i) {
    QubitModelParams p = study.base();
    p.j_t = kTwoPi * 1e6 * j_t[i];
    return study.evaluate(p);
  });
  ScenarioTable t;
  t.columns = concat({"j_t_mhz", "t_ns"}, kFidelityColumns);
  study.describe(t);
  for (std::size_t i = 0; i < j_t.size(); ++i) {
    Row row = {num(j_t[i]), num(results[i].time * 1e9)};
    append_fidelities(row, results[i].fidelities);
    t.rows.push_back(std::move(row));
  }
  return t;
}

ScenarioTable run_noise_couplings(const Config& c, std::uint64_t seed, int workers) {
  if (c.text("dynamics") == "floquet") {
    throw ConfigError("noise_couplings needs dynamics = rotating (unequal couplings)");
  }
  const NoiseStudy study(c);
  const int points = c.integer("points");
  const int reps = c.integer("repetitions");
  if (points < 1 || reps < 1) throw ConfigError("points and repetitions must be positive");
  const double cap_max = c.number("delta_j_max_rel");
  const std::size_t n = static_cast<std::size_t>(points) * static_cast<std::size_t>(reps);
  struct Sample {
    double cap = 0.0;
    std::array<double, 4> deviation{};
    NoisyEvaluation eval;
  };
  auto results = parallel_map(n, workers, [&](std::size_t i) {
    Sample s;
    const int k = static_cast<int>(i) / reps;
    s.cap = cap_max * (k + 1) / points;
    std::mt19937_64 rng = substream(seed, i);
    QubitModelParams p = study.base();
    for (double& d : s.deviation) d = (2.0 * uniform01(rng) - 1.0) * s.cap * p.j;
    p.j_deviation = s.deviation;
    s.eval = study.evaluate(p);
    return s;
  });
  ScenarioTable t;
  t.columns = concat({"cap_rel", "repetition", "delta_j_rel", "dev_t1c1_mhz", "dev_t1c2_mhz",
                      "dev_t2c1_mhz", "dev_t2c2_mhz", "t_ns"},
                     kFidelityColumns);
  study.describe(t);
  const double j = study.base().j;
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = results[i];
    double max_dev = 0.0;
    for (double d : s.deviation) max_dev = std::max(max_dev, std::abs(d));
    Row row = {num(s.cap), std::to_string(i % static_cast<std::size_t>(reps)), num(max_dev / j)};
    for (double d : s.deviation) row.push_back(num(d / kTwoPi / 1e6));
    row.push_back(num(s.eval.time * 1e9));
    append_fidelities(row, s.eval.fidelities);
    t.rows.push_back(std::move(row));
  }
  return t;
}

ScenarioTable run_noise_control_prep(const Config& c, std::uint64_t seed, int workers) {
  const NoiseStudy study(c);
  const int points = c.integer("points");
  const int reps = c.integer("repetitions");
  if (points < 1 || reps < 1) throw ConfigError("points and repetitions must be positive");
  const double lo = c.number("eps_min");
  const double hi = c.number("eps_max");
  if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError("need 0 < eps_min <= eps_max");
  const std::size_t n = static_cast<std::size_t>(points) * static_cast<std::size_t>(reps);
  struct Sample {
    double eps = 0.0;
    double infidelity = 0.0;
    NoisyEvaluation eval;
  };
  auto results = parallel_map(n, workers, [&](std::size_t i) {
    Sample s;
    const int k = static_cast<int>(i) / reps;
    s.eps = points == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1));
    std::mt19937_64 rng = substream(seed, i);
    const OperatorMatrix v = matrix_exponential(kI * s.eps * random_hermitian(4, rng));
    s.infidelity = max_control_infidelity(v);
    s.eval = study.evaluate(study.base(), v);
    return s;
  });
  ScenarioTable t;
  t.columns = concat({"epsilon", "repetition", "control_infidelity", "t_ns"}, kFidelityColumns);
  study.describe(t);
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = results[i];
    Row row = {num(s.eps), std::to_string(i % static_cast<std::size_t>(reps)), num(s.infidelity),
               num(s.eval.time * 1e9)};
    append_fidelities(row, s.eval.fidelities);
    t.rows.push_back(std::move(row));
  }
  return t;
}

ScenarioTable run_noise_decoherence(const Config& c, std::uint64_t, int workers) {
  const NoiseStudy study(c);
  const std::vector<double> gammas =
      linspace(c.number("gamma_from"), c.number("gamma_to"), c.integer("points"));
  auto results = parallel_map(gammas.size(), workers, [&](std::size_t i) {
    QubitModelParams p = study.base();
    p.gamma = gammas[i];
    return study.evaluate(p);
  });
  ScenarioTable t;
  t.columns = concat({"gamma", "t_ns"}, kFidelityColumns);
  study.describe(t);
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    Row row = {num(gammas[i]), num(results[i].time * 1e9)};
    append_fidelities(row, results[i].fidelities);
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---- qutrit scenarios ------------------------------------------------------

std::vector<KeySpec> qutrit_keys() {
  return {
      key("omega_c_ghz", "7", "control frequency Ω_C/2π"),
      key("omega_t_ghz", "9", "target frequency Ω_T/2π"),
      key("alpha_c_mhz", "-270", "control anharmonicity (see alpha_units)"),
      key("alpha_t_mhz", "-280", "target anharmonicity (see alpha_units)"),
      key("alpha_units", "angular", "angular: α = value·1e6 rad/s; cyclic: α = 2π·value·1e6"),
      key("j_mhz", "65", "J/2π"),
      key("j_c_mhz", "20", "J_C/2π"),
  };
}

QutritModelParams qutrit_params(const Config& c) {
  QutritModelParams p;
  const std::string& units = c.text("alpha_units");
  if (units != "angular" && units != "cyclic") throw ConfigError("alpha_units must be angular or cyclic");
  const double a = units == "angular" ? 1e6 : kTwoPi * 1e6;
  p.omega_c = kTwoPi * 1e9 * c.number("omega_c_ghz");
  p.omega_t = kTwoPi * 1e9 * c.number("omega_t_ghz");
  p.alpha_c = a * c.number("alpha_c_mhz");
  p.alpha_t = a * c.number("alpha_t_mhz");
  p.j = kTwoPi * 1e6 * c.number("j_mhz");
  p.j_c = kTwoPi * 1e6 * c.number("j_c_mhz");
  p.validate();
  return p;
}

ScenarioTable run_qutrit_swap_rate(const Config& c, std::uint64_t, int workers) {
  const QutritModelParams base = qutrit_params(c);
  SwapRateOptions opt;
  opt.horizon = c.number("horizon_ns") * 1e-9;
  opt.step = c.number("step_ns") * 1e-9;
  opt.threshold = c.number("threshold");
  opt.hysteresis = c.number("hysteresis");
  const std::vector<double> j_t =
      linspace(c.number("j_t_from_mhz"), c.number("j_t_to_mhz"), c.integer("points"));
  auto results = parallel_map(j_t.size(), workers, [&](std::size_t i) {
    QutritModelParams p = base;
    p.j_t = kTwoPi * 1e6 * j_t[i];
    const QutritPropagator prop(build_qutrit_h(p));
    std::array<SwapRateResult, 4> out;
    for (std::size_t k = 0; k < 4; ++k) out[k] = swap_rate(prop, kQutritControls[k], p, opt);
    return out;
  });
  ScenarioTable t;
  t.columns = {"j_t_mhz", "control", "rate_per_us", "swap_time_ns", "lobe_peak", "max_probability"};
  t.derived["j_t_opt_mhz"] = num(jt_optimal(base) / kTwoPi / 1e6);
  for (std::size_t i = 0; i < j_t.size(); ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      const SwapRateResult& r = results[i][k];
      t.rows.push_back({num(j_t[i]), std::string(to_string(kQutritControls[k])), num(r.rate * 1e-6),
                        num(r.swap_time * 1e9), num(r.lobe_peak), num(r.max_probability)});
    }
  }
  return t;
}

ScenarioTable run_qutrit_swap_fid(const Config& c, std::uint64_t, int workers) {
  const QutritModelParams base = qutrit_params(c);
  std::vector<double> j_t;
  for (const std::string& item : c.list("j_t_values")) {
    if (item == "opt") {
      j_t.push_back(jt_optimal(base));
    } else {
      const Config one(ConfigMap{{"v", item}});
      j_t.push_back(kTwoPi * 1e6 * one.number("v"));
    }
  }
  const int points = c.integer("points");
  if (points < 2) throw ConfigError("points must be at least 2");
  const double step = c.number("t_max_ns") * 1e-9 / (points - 1);
  static const char* kLabels[4] = {"00", "01", "10", "11"};
  using Curves = std::array<std::array<std::vector<double>, 16>, 4>;
  auto results = parallel_map(j_t.size(), workers, [&](std::size_t i) {
    QutritModelParams p = base;
    p.j_t = j_t[i];
    const QutritPropagator prop(build_qutrit_h(p));
    Curves curves;
    for (std::size_t k = 0; k < 4; ++k) {
      const StateVector control = qutrit_control_state(kQutritControls[k], p);
      for (int in = 0; in < 4; ++in) {
        for (int out = 0; out < 4; ++out) {
          curves[k][static_cast<std::size_t>(4 * in + out)] = prop.transition_probabilities(
              qutrit_product_state(control, out), qutrit_product_state(control, in), step,
              static_cast<std::size_t>(points));
        }
      }
    }
    return curves;
  });
  ScenarioTable t;
  t.columns = {"j_t_mhz", "control", "t_ns"};
  for (const char* in : kLabels) {
    for (const char* out : kLabels) t.columns.push_back(std::string("p_") + in + "_" + out);
  }
  t.derived["j_t_opt_mhz"] = num(jt_optimal(base) / kTwoPi / 1e6);
  for (std::size_t i = 0; i < j_t.size(); ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      for (int s = 0; s < points; ++s) {
        Row row = {num(j_t[i] / kTwoPi / 1e6), std::string(to_string(kQutritControls[k])),
                   num(s * step * 1e9)};
        for (const auto& curve : results[i][k]) row.push_back(num(curve[static_cast<std::size_t>(s)]));
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

// ---- circuit map -----------------------------------------------------------

Row circuit_row(const std::string& kind, const CircuitParams& cp, std::string status) {
  Row row = {kind, num(cp.c * 1e15), num(cp.c_prime * 1e15), num(cp.c_t * 1e15), num(cp.c_c * 1e15),
             num(cp.e_j_t / kTwoPi / 1e9), num(cp.e_j_c / kTwoPi / 1e9)};
  try {
    const CircuitModel m = analyze_circuit(cp);
    const double mhz = kTwoPi * 1e6;
    const DerivedEnergies& e = m.energies;
    row.insert(row.end(),
               {num(e.e_c_c / mhz), num(e.e_c_t / mhz), num(e.e_c_cm / mhz), num(e.tt / e.ct),
                num(m.params.omega_c / kTwoPi / 1e9), num(m.params.omega_t / kTwoPi / 1e9),
                num(m.params.alpha_c / mhz), num(m.params.alpha_t / mhz), num(m.control.levels.t0),
                num(m.control.levels.t2), num(m.target.levels.t0), num(m.target.levels.t2),
                num(m.params.j / mhz), num(m.params.j_c / mhz), num(m.params.j_t / mhz),
                num(e.inverse_mismatch)});
    for (const auto& w : m.warnings) status += (status.empty() ? "" : "; ") + w;
  } catch (const std::exception& ex) {
    row.resize(row.size() + 16);
    status = std::string("error: ") + ex.what();
  }
  row.push_back(status.empty() ? "ok" : status);
  return row;
}

ScenarioTable run_circuit_map(const Config& c, std::uint64_t, int) {
  static const char* kKeys[6] = {"c_ff", "c_prime_ff", "c_t_ff", "c_c_ff", "e_jt_ghz", "e_jc_ghz"};
  std::array<std::vector<double>, 6> cols;
  std::size_t n = 1;
  for (int k = 0; k < 6; ++k) {
    cols[static_cast<std::size_t>(k)] = c.numbers(kKeys[k]);
    n = std::max(n, cols[static_cast<std::size_t>(k)].size());
  }
  for (int k = 0; k < 6; ++k) {
    const std::size_t len = cols[static_cast<std::size_t>(k)].size();
    if (len != 1 && len != n) {
      throw ConfigError(std::string("key '") + kKeys[k] + "' must have 1 or " + std::to_string(n) + " entries");
    }
  }
  auto at = [&](int k, std::size_t i) {
    const auto& v = cols[static_cast<std::size_t>(k)];
    return v.size() == 1 ? v[0] : v[i];
  };
  ScenarioTable t;
  t.columns = {"kind", "c_ff", "c_prime_ff", "c_t_ff", "c_c_ff", "e_jt_ghz", "e_jc_ghz",
               "e_c_c_mhz", "e_c_t_mhz", "e_c_cm_mhz", "tt_over_ct", "omega_c_ghz", "omega_t_ghz",
               "alpha_c_mhz", "alpha_t_mhz", "t0_c", "t2_c", "t0_t", "t2_t", "j_mhz", "j_c_mhz",
               "j_t_mhz", "inverse_mismatch", "status"};
  std::vector<CircuitParams> rows;
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(CircuitParams::from_lab_units(at(0, i), at(1, i), at(2, i), at(3, i), at(4, i), at(5, i)));
    t.rows.push_back(circuit_row("forward", rows.back(), ""));
  }
  if (c.flag("inverse_design")) {
    try {
      const InverseDesignResult r = inverse_design(rows.front(), kTwoPi * 1e6 * c.number("target_j_mhz"),
                                                   kTwoPi * 1e6 * c.number("target_j_c_mhz"));
      t.rows.push_back(circuit_row("inverse", r.params, ""));
    } catch (const std::domain_error& ex) {
      t.rows.push_back(circuit_row("inverse", rows.front(), std::string("error: ") + ex.what()));
    }
  }
  return t;
}

// ---- registry ---------------------------------------------------------------

const std::vector<Scenario>& registry() {
  static const std::vector<Scenario> scenarios = [] {
    std::vector<Scenario> s;
    s.push_back({"table1",
                 concat_keys({key("sets", "1,2", "parameter sets to run"),
                              key("gamma", "10000", "decoherence rate γ (1/s)"),
                              key("dynamics", "rotating", "rotating | floquet"),
                              key("max_step_ps", "0", "RK4 step; 0 selects (2π/|Δ|)/40")},
                             search_keys()),
                 run_table1});
    s.push_back({"fid_vs_time",
                 concat_keys(qubit_keys(true, true),
                             {key("t_from_tg", "0", "first sample in units of the predicted t_g"),
                              key("t_to_tg", "1.5", "last sample in units of the predicted t_g"),
                              key("points", "301", "number of samples")}),
                 run_fid_vs_time});
    s.push_back({"param_sweep",
                 concat_keys(concat_keys(qubit_keys(true, false), search_keys()),
                             {key("parameter", "j", "j | j_c | delta"),
                              {"from",
                               [](const ConfigMap& m) {
                                 const std::string& w = m.at("parameter");
                                 return std::string(w == "j_c" ? "0" : w == "delta" ? "1" : "40");
                               },
                               "first value (MHz for j, j_c; GHz for delta)"},
                              {"to",
                               [](const ConfigMap& m) {
                                 const std::string& w = m.at("parameter");
                                 return std::string(w == "j_c" ? "40" : w == "delta" ? "4" : "100");
                               },
                               "last value"},
                              key("points", "13", "number of sweep points")}),
                 run_param_sweep});
    s.push_back({"noise_crosstalk",
                 noise_keys(true, {key("j_t_from_mhz", "0", "first J_T/2π"),
                                   key("j_t_to_mhz", "5", "last J_T/2π"),
                                   key("points", "40", "number of sweep points")}),
                 run_noise_crosstalk});
    s.push_back({"noise_couplings",
                 noise_keys(true, {key("delta_j_max_rel", "0.1", "largest deviation cap relative to J"),
                                   key("points", "40", "number of caps"),
                                   key("repetitions", "20", "random draws per cap")}),
                 run_noise_couplings});
    s.push_back({"noise_control_prep",
                 noise_keys(true, {key("eps_min", "0.001", "smallest ε"),
                                   key("eps_max", "0.3", "largest ε (log spacing)"),
                                   key("points", "40", "number of ε values"),
                                   key("repetitions", "20", "random M per ε")}),
                 run_noise_control_prep});
    s.push_back({"noise_decoherence",
                 noise_keys(true, {key("gamma_from", "0", "first γ (1/s)"),
                                   key("gamma_to", "100000", "last γ (1/s)"),
                                   key("points", "40", "number of sweep points")}),
                 run_noise_decoherence});
    s.push_back({"qutrit_swap_rate",
                 concat_keys(qutrit_keys(),
                             {key("j_t_from_mhz", "-6", "first J_T/2π"),
                              key("j_t_to_mhz", "0", "last J_T/2π"),
                              key("points", "61", "number of J_T values"),
                              key("horizon_ns", "2000", "longest simulated time"),
                              key("step_ns", "0.05", "sampling step"),
                              key("threshold", "0.9", "swap probability counted as a swap"),
                              key("hysteresis", "0.05", "lobe ends below threshold - hysteresis")}),
                 run_qutrit_swap_rate});
    s.push_back({"qutrit_swap_fid",
                 concat_keys(qutrit_keys(),
                             {key("j_t_values", "0,opt", "J_T/2π values in MHz; 'opt' is the cancelling value"),
                              key("t_max_ns", "400", "last sample time"),
                              key("points", "801", "samples per curve")}),
                 run_qutrit_swap_fid});
    s.push_back({"circuit_map",
                 {key("c_ff", "8.1859", "C (fF), comma list for several rows"),
                  key("c_prime_ff", "0.82867", "C' (fF)"), key("c_t_ff", "40", "C_T (fF)"),
                  key("c_c_ff", "800", "C_C (fF)"), key("e_jt_ghz", "25", "E_JT/2π (GHz)"),
                  key("e_jc_ghz", "80", "E_JC/2π (GHz)"),
                  key("inverse_design", "true", "append a row solved for the target couplings"),
                  key("target_j_mhz", "65", "target |J|/2π"),
                  key("target_j_c_mhz", "20", "target |J_C|/2π")},
                 run_circuit_map});
    return s;
  }();
  return scenarios;
}

const Scenario& find_scenario(std::string_view name) {
  for (const auto& s : registry()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace

std::string_view code_version() { return DIAMONDSIM_VERSION; }

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& s : registry()) out.push_back(s.name);
  return out;
}

const std::vector<KeySpec>& scenario_schema(std::string_view scenario) {
  return find_scenario(scenario).schema;
}

std::string render_output(std::string_view scenario, const ConfigMap& resolved, std::uint64_t seed,
                          const ScenarioTable& table) {
  nlohmann::json h;
  h["code_version"] = std::string(code_version());
  h["columns"] = table.columns;
  h["config"] = resolved;
  h["config_hash"] = "fnv1a64:" + hex64(config_hash(scenario, resolved));
  if (!table.derived.empty()) h["derived"] = table.derived;
  h["scenario"] = std::string(scenario);
  h["seed"] = seed;
  std::ostringstream out;
  std::istringstream lines(h.dump(2));
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
  return out.str();
}

RunResult run_scenario(const RunRequest& request) {
  if (request.workers < 1) throw ConfigError("workers must be at least 1");
  const Scenario& s = find_scenario(request.scenario);
  RunResult r;
  r.resolved = resolve_config(s.schema, request.raw);
  r.table = s.run(Config(r.resolved), request.seed, request.workers);
  r.text = render_output(s.name, r.resolved, request.seed, r.table);
  return r;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

OperatorMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  OperatorMatrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = Complex(normal(rng), normal(rng));
  }
  return 0.5 * (a + a.adjoint());
}

double max_control_infidelity(const OperatorMatrix& v) {
  double worst = 0.0;
  for (ControlState c : kControlStates) {
    const StateVector phi = control_state_vector(c);
    worst = std::max(worst, 1.0 - std::norm(phi.dot(v * phi)));
  }
  return worst;
}

SignFlipReport jc_sign_flip_check(const QubitModelParams& p, const GateSearchOptions& options) {
  SignFlipReport r;
  QubitModelParams flipped = p;
  flipped.j_c = -p.j_c;
  r.plus = find_gate_time(p, options);
  r.minus = find_gate_time(flipped, options);
  const GateFidelities& a = r.plus.fidelities;
  const GateFidelities& b = r.minus.fidelities;
  r.max_difference = std::max({std::abs(a.total - b.total),
                               std::abs(a.per_control[0] - b.per_control[1]),
                               std::abs(a.per_control[1] - b.per_control[0]),
                               std::abs(a.per_control[2] - b.per_control[2]),
                               std::abs(a.per_control[3] - b.per_control[3])});
  r.time_difference = std::abs(r.plus.t_g_simulated - r.minus.t_g_simulated);
  return r;
}

}  // namespace diamond
