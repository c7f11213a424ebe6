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

#include "diamond/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace diamond {
namespace {

int qubits_for_dim(int dim) {
  int n = 0;
  while ((1 << n) < dim) ++n;
  if ((1 << n) != dim || n > 4) {
    throw std::invalid_argument("fidelity: dimension must be a power of two up to 16");
  }
  return n;
}

// tr(A B) for Hermitian A.
Complex trace_product(const OperatorMatrix& hermitian_a, const OperatorMatrix& b) {
  return hermitian_a.conjugate().cwiseProduct(b).sum();
}

// φ ⊗ I_4 as a 16×4 isometry onto the control subspace.
OperatorMatrix control_isometry(ControlState control) {
  const StateVector phi = control_state_vector(control);
  OperatorMatrix iso = OperatorMatrix::Zero(kQubitDim, 4);
  for (int c = 0; c < 4; ++c) {
    iso.block(4 * c, 0, 4, 4) = phi(c) * OperatorMatrix::Identity(4, 4);
  }
  return iso;
}

// Compressed images Ẽ(P_b) = <φ|ε(|φ><φ| ⊗ P_b)|φ> for the 16 target Paulis.
std::vector<OperatorMatrix> compressed_images(const PauliChannel& channel, ControlState control) {
  if (channel.num_qubits() != kNumQubits) {
    throw std::invalid_argument("subspace_fidelity: channel must act on four qubits");
  }
  const StateVector phi = control_state_vector(control);
  const OperatorMatrix iso = control_isometry(control);
  const auto& control_paulis = pauli_basis(2);
  std::vector<OperatorMatrix> out(16, OperatorMatrix::Zero(4, 4));
  for (int a = 0; a < 16; ++a) {
    const Complex w = phi.dot(control_paulis[static_cast<std::size_t>(a)] * phi) / 4.0;
    if (std::abs(w) < 1e-15) continue;
    for (int b = 0; b < 16; ++b) {
      out[static_cast<std::size_t>(b)] +=
          w * (iso.adjoint() * channel.images()[static_cast<std::size_t>(16 * a + b)] * iso);
    }
  }
  return out;
}

double compressed_fidelity(const std::vector<OperatorMatrix>& images,
                           const std::vector<OperatorMatrix>& conjugated) {
  Complex sum = 0.0;
  for (std::size_t b = 0; b < images.size(); ++b) sum += trace_product(conjugated[b], images[b]);
  const Complex tr_identity = images[0].trace();
  return (sum.real() + 4.0 * tr_identity.real()) / 80.0;
}

std::vector<OperatorMatrix> conjugate_basis(const OperatorMatrix& u, int num_qubits) {
  std::vector<OperatorMatrix> out;
  for (const auto& p : pauli_basis(num_qubits)) out.push_back(u * p * u.adjoint());
  return out;
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

StateVector gaussian_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  StateVector v(dim);
  for (int k = 0; k < dim; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(k) = Complex(re, im);
  }
  return v / v.norm();
}

MonteCarloEstimate summarize(const std::vector<double>& values) {
  MonteCarloEstimate e;
  const double n = static_cast<double>(values.size());
  for (double v : values) e.mean += v;
  e.mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - e.mean) * (v - e.mean);
  var /= (n - 1.0);
  e.standard_error = std::sqrt(var / n);
  return e;
}

}  // namespace

AverageFidelity average_gate_fidelity(const PauliChannel& channel, const OperatorMatrix& u_target) {
  const int d = channel.dim();
  if (u_target.rows() != d || u_target.cols() != d) {
    throw std::invalid_argument("average_gate_fidelity: target has wrong dimension");
  }
  if (!is_unitary(u_target)) throw std::invalid_argument("average_gate_fidelity: target not unitary");
  const auto& basis = pauli_basis(channel.num_qubits());
  Complex sum = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    sum += trace_product(u_target * basis[j] * u_target.adjoint(), channel.images()[j]);
  }
  AverageFidelity f;
  const double dd = static_cast<double>(d);
  f.trace_defect = channel.trace_defect();
  f.trace_preserving = f.trace_defect <= 1e-6;
  f.value = (sum.real() + dd * channel.images()[0].trace().real()) / (dd * dd * (dd + 1.0));
  return f;
}

AverageFidelity average_gate_fidelity(const ChannelMap& channel, const OperatorMatrix& u_target,
                                      int dim) {
  return average_gate_fidelity(PauliChannel::from_map(qubits_for_dim(dim), channel), u_target);
}

double unitary_average_fidelity(const OperatorMatrix& u_target, const OperatorMatrix& v) {
  if (u_target.rows() != v.rows() || u_target.cols() != v.cols()) {
    throw std::invalid_argument("unitary_average_fidelity: dimension mismatch");
  }
  const double d = static_cast<double>(v.rows());
  const double overlap = std::norm((u_target.adjoint() * v).trace());
  return (overlap + d) / (d * d + d);
}

double subspace_fidelity(const PauliChannel& channel, ControlState control,
                         const OperatorMatrix& u_target) {
  if (u_target.rows() != 4 || u_target.cols() != 4 || !is_unitary(u_target)) {
    throw std::invalid_argument("subspace_fidelity: target must be a 4x4 unitary");
  }
  return compressed_fidelity(compressed_images(channel, control), conjugate_basis(u_target, 2));
}

double subspace_fidelity(const ChannelMap& channel, ControlState control,
                         const OperatorMatrix& u_target) {
  return subspace_fidelity(PauliChannel::from_map(kNumQubits, channel), control, u_target);
}

double unitary_subspace_fidelity(const OperatorMatrix& v, ControlState control,
                                 const OperatorMatrix& u_target) {
  if (v.rows() != kQubitDim || v.cols() != kQubitDim) {
    throw std::invalid_argument("unitary_subspace_fidelity: evolution must be 16x16");
  }
  const OperatorMatrix iso = control_isometry(control);
  const OperatorMatrix w = iso.adjoint() * v * iso;
  const double overlap = std::norm((u_target.adjoint() * w).trace());
  return (overlap + (w.adjoint() * w).trace().real()) / 20.0;
}

StateVector haar_random_state(int dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("haar_random_state: dim must be >= 2");
  auto rng = seeded_engine(seed, 0);
  return gaussian_state(dim, rng);
}

MonteCarloEstimate haar_average_fidelity(const ChannelMap& channel,
                                         const OperatorMatrix& u_target, int samples,
                                         std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("haar_average_fidelity: need >= 2 samples");
  auto rng = seeded_engine(seed, 1);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const StateVector psi = gaussian_state(static_cast<int>(u_target.rows()), rng);
    const StateVector out = u_target * psi;
    const OperatorMatrix rho = channel(psi * psi.adjoint());
    values.push_back(out.dot(rho * out).real());
  }
  return summarize(values);
}

MonteCarloEstimate haar_average_subspace_fidelity(const ChannelMap& channel,
                                                  ControlState control,
                                                  const OperatorMatrix& u_target, int samples,
                                                  std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("haar_average_subspace_fidelity: need >= 2 samples");
  auto rng = seeded_engine(seed, 2);
  const StateVector phi = control_state_vector(control);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    const StateVector psi = gaussian_state(4, rng);
    const StateVector in = tensor_product(phi, psi);
    const StateVector out = tensor_product(phi, StateVector(u_target * psi));
    const OperatorMatrix rho = channel(in * in.adjoint());
    values.push_back(out.dot(rho * out).real());
  }
  return summarize(values);
}

GateFidelityEvaluator::GateFidelityEvaluator(const QubitModelParams& p, double target_time)
    : target_(ideal_diamond_gate(target_time, p)),
      conjugated_(conjugate_basis(target_, kNumQubits)) {
  for (std::size_t k = 0; k < kControlStates.size(); ++k) {
    target_blocks_[k] = ideal_target_gate(kControlStates[k], target_time, p);
    block_conjugated_[k] = conjugate_basis(target_blocks_[k], 2);
  }
}

GateFidelities GateFidelityEvaluator::evaluate(const PauliChannel& channel) const {
  GateFidelities f;
  Complex sum = 0.0;
  for (std::size_t j = 0; j < conjugated_.size(); ++j) {
    sum += trace_product(conjugated_[j], channel.images()[j]);
  }
  const double d = kQubitDim;
  f.total = (sum.real() + d * channel.images()[0].trace().real()) / (d * d * (d + 1.0));
  for (std::size_t k = 0; k < kControlStates.size(); ++k) {
    f.per_control[k] =
        compressed_fidelity(compressed_images(channel, kControlStates[k]), block_conjugated_[k]);
  }
  return f;
}

GateFidelities GateFidelityEvaluator::evaluate_unitary(const OperatorMatrix& v) const {
  GateFidelities f;
  f.total = unitary_average_fidelity(target_, v);
  for (std::size_t k = 0; k < kControlStates.size(); ++k) {
    f.per_control[k] = unitary_subspace_fidelity(v, kControlStates[k], target_blocks_[k]);
  }
  return f;
}

namespace {

// Restartable propagation of either the channel or, for γ = 0, the unitary.
class GatePropagation {
 public:
  struct State {
    double time = 0.0;
    std::vector<Complex> batch;
    OperatorMatrix u;
  };
  using Callback = std::function<void(double t, const GateFidelities& f, const State& s)>;

  GatePropagation(const QubitModelParams& p, const GateSearchOptions& options)
      : equation_(options.dynamics == Dynamics::kRotating ? MasterEquation::rotating(p)
                                                          : MasterEquation::floquet(p)),
        evaluator_(p, gate_time(p)),
        unitary_(p.gamma == 0.0) {
    step_ = options.max_step > 0.0 ? options.max_step : kTwoPi / std::abs(p.delta) / 40.0;
    if (options.control_preparation) {
      const OperatorMatrix& v = *options.control_preparation;
      if (v.rows() != 4 || v.cols() != 4 || !is_unitary(v, 1e-9)) {
        throw std::invalid_argument("control_preparation must be a 4x4 unitary");
      }
      preparation_ = tensor_product(v, OperatorMatrix::Identity(4, 4));
    }
  }

  double step() const { return step_; }
  void set_step(double s) { step_ = s; }
  long steps() const { return steps_; }
  double trace_defect() const { return trace_defect_; }

  void run(const std::vector<double>& times, const State* start, const Callback& cb) {
    State state;
    if (unitary_) {
      UnitarySnapshot snap;
      const UnitarySnapshot* from = nullptr;
      if (start != nullptr) {
        snap.time = start->time;
        snap.u = start->u;
        from = &snap;
      }
      steps_ += propagate_unitary(equation_, times, step_, [&](const UnitarySnapshot& s) {
        state.time = s.time;
        state.u = s.u;
        const OperatorMatrix v = preparation_ ? OperatorMatrix(s.u * *preparation_) : s.u;
        cb(s.time, evaluator_.evaluate_unitary(v), state);
      }, from);
    } else {
      ChannelSnapshot snap;
      const ChannelSnapshot* from = nullptr;
      if (start != nullptr) {
        snap.time = start->time;
        snap.batch = start->batch;
        from = &snap;
      }
      steps_ += propagate_channel(equation_, times, step_,
                                  [&](const PauliChannel& ch, const ChannelSnapshot& s) {
        state.time = s.time;
        state.batch = s.batch;
        trace_defect_ = std::max(trace_defect_, ch.trace_defect());
        const GateFidelities f = preparation_ ? evaluator_.evaluate(ch.after_unitary(*preparation_))
                                              : evaluator_.evaluate(ch);
        cb(s.time, f, state);
      }, from);
    }
  }

  State initial_state() const {
    State s;
    if (unitary_) {
      s.u = OperatorMatrix::Identity(kQubitDim, kQubitDim);
    } else {
      const auto& basis = pauli_basis(kNumQubits);
      s.batch.resize(basis.size() * kQubitDim * kQubitDim);
      using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Eigen::Map<RowMajor>(s.batch.data() + j * kQubitDim * kQubitDim, kQubitDim, kQubitDim) =
            basis[j];
      }
    }
    return s;
  }

 private:
  MasterEquation equation_;
  GateFidelityEvaluator evaluator_;
  bool unitary_;
  double step_ = 0.0;
  long steps_ = 0;
  double trace_defect_ = 0.0;
  std::optional<OperatorMatrix> preparation_;
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = a + (b - a) * k / (n - 1);
  return out;
}

}  // namespace

GateFidelityResult find_gate_time(const QubitModelParams& p, const GateSearchOptions& options) {
  p.validate();
  if (!(options.window > 0.0 && options.window < 1.0)) {
    throw std::invalid_argument("find_gate_time: window must be in (0, 1)");
  }
  if (options.coarse_points < 3 || options.fine_points < 3) {
    throw std::invalid_argument("find_gate_time: need at least three grid points");
  }
  GateFidelityResult result;
  result.t_predicted = gate_time(p);
  GatePropagation prop(p, options);

  // Coarse scan, remembering the state at the sample preceding the best one.
  const std::vector<double> coarse =
      linspace((1.0 - options.window) * result.t_predicted,
               (1.0 + options.window) * result.t_predicted, options.coarse_points);
  GatePropagation::State previous = prop.initial_state();
  GatePropagation::State before_best = previous;
  std::size_t best = 0;
  double best_value = -1.0;
  prop.run(coarse, nullptr, [&](double t, const GateFidelities& f, const GatePropagation::State& s) {
    result.coarse.times.push_back(t);
    result.coarse.values.push_back(f);
    if (f.total > best_value) {
      best_value = f.total;
      best = result.coarse.values.size() - 1;
      before_best = previous;
    }
    previous = s;
  });
  result.boundary_maximum = best == 0 || best + 1 == coarse.size();

  // Fine grid between the neighbours of the best coarse point.
  const double lo = coarse[best == 0 ? 0 : best - 1];
  const double hi = coarse[std::min(best + 1, coarse.size() - 1)];
  const std::vector<double> fine = linspace(lo, hi, options.fine_points);
  std::vector<double> fine_values;
  prop.run(fine, &before_best, [&](double, const GateFidelities& f, const GatePropagation::State&) {
    fine_values.push_back(f.total);
  });
  const std::size_t j = static_cast<std::size_t>(
      std::max_element(fine_values.begin(), fine_values.end()) - fine_values.begin());
  double t_star = fine[j];
  if (j > 0 && j + 1 < fine.size()) {
    const double h = fine[j + 1] - fine[j];
    const double fm = fine_values[j - 1];
    const double f0 = fine_values[j];
    const double fp = fine_values[j + 1];
    const double curvature = fm - 2.0 * f0 + fp;
    if (curvature < 0.0) t_star = fine[j] + 0.5 * h * (fm - fp) / curvature;
    t_star = std::clamp(t_star, fine[j - 1], fine[j + 1]);
  }

  prop.run({t_star}, &before_best,
           [&](double t, const GateFidelities& f, const GatePropagation::State&) {
             result.t_g_simulated = t;
             result.fidelities = f;
           });
  result.step = prop.step();

  if (options.check_convergence) {
    result.converged = false;
    for (int k = 0; k < options.max_halvings; ++k) {
      prop.set_step(0.5 * prop.step());
      GateFidelities refined;
      prop.run({t_star}, nullptr,
               [&](double, const GateFidelities& f, const GatePropagation::State&) {
                 refined = f;
               });
      result.convergence_delta = std::abs(refined.total - result.fidelities.total);
      result.fidelities = refined;
      result.step = prop.step();
      if (result.convergence_delta < options.convergence_tolerance) {
        result.converged = true;
        break;
      }
    }
  }
  result.steps = prop.steps();
  result.trace_defect = prop.trace_defect();
  return result;
}

FidelityTrace fidelity_trace(const QubitModelParams& p, const std::vector<double>& times,
                             const GateSearchOptions& options) {
  p.validate();
  if (!std::is_sorted(times.begin(), times.end())) {
    throw std::invalid_argument("fidelity_trace: times must be ascending");
  }
  GatePropagation prop(p, options);
  FidelityTrace trace;
  prop.run(times, nullptr, [&](double t, const GateFidelities& f, const GatePropagation::State&) {
    trace.times.push_back(t);
    trace.values.push_back(f);
  });
  return trace;
}

}  // namespace diamond
