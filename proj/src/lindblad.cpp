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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace diamond {
namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<MasterEquation::SparseEntry> to_sparse(const OperatorMatrix& m) {
  std::vector<MasterEquation::SparseEntry> out;
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m(r, c) != Complex(0.0, 0.0)) out.push_back({r, c, m(r, c)});
    }
  }
  return out;
}

bool is_diagonal(const OperatorMatrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (r != c && m(r, c) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

void store(const OperatorMatrix& m, Complex* dst) {
  Eigen::Map<RowMajorMatrix>(dst, m.rows(), m.cols()) = m;
}

OperatorMatrix load(const Complex* src, int dim) {
  return Eigen::Map<const RowMajorMatrix>(src, dim, dim);
}

int substeps(double span, double max_step) {
  if (span <= 0.0) return 0;
  const double n = std::ceil(span / max_step - 1e-9);
  if (n > static_cast<double>(std::numeric_limits<int>::max())) {
    throw std::invalid_argument("integrator: too many steps requested");
  }
  return std::max(1, static_cast<int>(n));
}

}  // namespace

DensityMatrixCheck check_density_matrix(const OperatorMatrix& rho) {
  DensityMatrixCheck c;
  c.hermiticity_error = max_abs(rho - rho.adjoint());
  c.trace_error = std::abs(rho.trace() - 1.0);
  const OperatorMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = solver.eigenvalues().size() ? solver.eigenvalues()(0) : 0.0;
  return c;
}

DensityMatrix::DensityMatrix(OperatorMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: must be square and non-empty");
  }
  if (!all_finite(rho_)) throw std::invalid_argument("DensityMatrix: non-finite entries");
  const DensityMatrixCheck c = check_density_matrix(rho_);
  if (c.hermiticity_error > kHermiticityTolerance) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (c.trace_error > kTraceTolerance) throw std::invalid_argument("DensityMatrix: trace != 1");
  if (c.min_eigenvalue < -kPositivityTolerance) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::trusted(OperatorMatrix rho) {
  DensityMatrix d(OperatorMatrix::Identity(1, 1));
  d.rho_ = std::move(rho);
  return d;
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

double DensityMatrix::fidelity_with(const StateVector& psi) const {
  return psi.dot(rho_ * psi).real();
}

CollapseOperatorSet build_collapse_ops(const QubitModelParams& p) {
  if (!(p.gamma >= 0.0)) throw std::invalid_argument("build_collapse_ops: gamma must be >= 0");
  const double s = std::sqrt(p.gamma);
  static constexpr std::array<const char*, 4> kNames = {"C1", "C2", "T1", "T2"};
  CollapseOperatorSet set;
  for (int i = 0; i < kNumQubits; ++i) {
    set.operators.push_back(s * qubit_op(pauli::z(), i));
    set.labels.push_back(std::string("dephasing_") + kNames[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < kNumQubits; ++i) {
    set.operators.push_back(s * qubit_op(pauli::lowering(), i));
    set.labels.push_back(std::string("relaxation_") + kNames[static_cast<std::size_t>(i)]);
  }
  return set;
}

MasterEquation::MasterEquation(OperatorMatrix static_h, OperatorMatrix coupling, double delta,
                               std::vector<OperatorMatrix> collapse)
    : dim_(static_cast<int>(static_h.rows())),
      static_h_(std::move(static_h)),
      coupling_(std::move(coupling)),
      delta_(delta),
      collapse_(std::move(collapse)) {
  if (dim_ == 0 || static_h_.cols() != dim_) {
    throw std::invalid_argument("MasterEquation: Hamiltonian must be square and non-empty");
  }
  if (!all_finite(static_h_) || !std::isfinite(delta_)) {
    throw std::invalid_argument("MasterEquation: non-finite input");
  }
  if (!is_hermitian(static_h_)) throw std::invalid_argument("MasterEquation: H not Hermitian");
  if (coupling_.size() != 0 && (coupling_.rows() != dim_ || coupling_.cols() != dim_)) {
    throw std::invalid_argument("MasterEquation: coupling has wrong dimension");
  }
  OperatorMatrix loss = OperatorMatrix::Zero(dim_, dim_);
  for (const OperatorMatrix& c : collapse_) {
    if (c.rows() != dim_ || c.cols() != dim_ || !all_finite(c)) {
      throw std::invalid_argument("MasterEquation: invalid collapse operator");
    }
    if (max_abs(c) == 0.0) continue;
    loss += c.adjoint() * c;
    if (is_diagonal(c)) {
      if (jump_mask_.empty()) jump_mask_.assign(static_cast<std::size_t>(dim_ * dim_), 0.0);
      for (int r = 0; r < dim_; ++r) {
        for (int col = 0; col < dim_; ++col) {
          jump_mask_[static_cast<std::size_t>(r * dim_ + col)] += c(r, r) * std::conj(c(col, col));
        }
      }
    } else {
      jumps_.push_back(to_sparse(c));
    }
  }
  g0_ = to_sparse(-kI * static_h_ - 0.5 * loss);
  if (coupling_.size() != 0) {
    ga_ = to_sparse(-kI * coupling_);
    gb_ = to_sparse(OperatorMatrix(-kI * coupling_.adjoint()));
  }
}

MasterEquation MasterEquation::rotating(const QubitModelParams& p) {
  const RotatingHamiltonian h = rotating_hamiltonian(p);
  return MasterEquation(h.static_part, h.coupling, h.delta, build_collapse_ops(p).operators);
}

MasterEquation MasterEquation::floquet(const QubitModelParams& p) {
  return MasterEquation(build_floquet_h(p), OperatorMatrix(), 0.0, build_collapse_ops(p).operators);
}

OperatorMatrix MasterEquation::hamiltonian(double t) const {
  if (coupling_.size() == 0) return static_h_;
  const OperatorMatrix a = std::exp(kI * delta_ * t) * coupling_;
  return static_h_ + a + a.adjoint();
}

double MasterEquation::natural_step() const {
  if (time_dependent() && delta_ != 0.0) return kTwoPi / std::abs(delta_) / 40.0;
  // Bound the generator's spectral radius by its largest absolute row sum.
  std::vector<double> row(static_cast<std::size_t>(dim_), 0.0);
  for (const auto* list : {&g0_, &ga_, &gb_}) {
    for (const SparseEntry& e : *list) row[static_cast<std::size_t>(e.row)] += std::abs(e.value);
  }
  const double rate = 2.0 * *std::max_element(row.begin(), row.end());
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return kTwoPi / rate / 40.0;
}

OperatorMatrix MasterEquation::rhs(double t, const OperatorMatrix& rho) const {
  const OperatorMatrix h = hamiltonian(t);
  OperatorMatrix out = -kI * (h * rho - rho * h);
  for (const OperatorMatrix& c : collapse_) {
    const OperatorMatrix cd = c.adjoint();
    const OperatorMatrix cdc = cd * c;
    out += c * rho * cd - 0.5 * (cdc * rho + rho * cdc);
  }
  return out;
}

LindbladIntegrator::LindbladIntegrator(const MasterEquation& eq, double max_step)
    : eq_(eq), max_step_(max_step > 0.0 ? max_step : eq.natural_step()) {
  if (!(max_step_ > 0.0)) throw std::invalid_argument("LindbladIntegrator: invalid step");
  b_.resize(static_cast<std::size_t>(eq.dim() * eq.dim()));
}

void LindbladIntegrator::evaluate(double t, const Complex* in, Complex* out, int count) {
  const int d = eq_.dim();
  const std::size_t dd = static_cast<std::size_t>(d * d);

  g_ = eq_.g_static();
  if (eq_.time_dependent()) {
    const Complex forward = std::exp(kI * eq_.delta() * t);
    const Complex backward = std::conj(forward);
    for (const auto& e : eq_.g_forward()) g_.push_back({e.row, e.col, forward * e.value});
    for (const auto& e : eq_.g_backward()) g_.push_back({e.row, e.col, backward * e.value});
  }
  const std::vector<Complex>& mask = eq_.diagonal_jump_mask();
  const auto& jumps = eq_.offdiagonal_jumps();
  Complex* b = b_.data();

  for (int m = 0; m < count; ++m) {
    const Complex* rho = in + static_cast<std::size_t>(m) * dd;
    Complex* o = out + static_cast<std::size_t>(m) * dd;
    std::fill(b, b + dd, Complex(0.0, 0.0));
    for (const auto& e : g_) {
      const Complex v = e.value;
      const Complex* src = rho + e.col * d;
      Complex* dst = b + e.row * d;
      for (int c = 0; c < d; ++c) dst[c] += v * src[c];
    }
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) o[r * d + c] = b[r * d + c] + std::conj(b[c * d + r]);
    }
    if (!mask.empty()) {
      for (std::size_t k = 0; k < dd; ++k) o[k] += mask[k] * rho[k];
    }
    for (const auto& jump : jumps) {
      for (const auto& a : jump) {
        for (const auto& e : jump) {
          o[a.row * d + e.row] += a.value * std::conj(e.value) * rho[a.col * d + e.col];
        }
      }
    }
  }
}

void LindbladIntegrator::advance(std::vector<Complex>& batch, int count, double t0, double t1) {
  const std::size_t total = static_cast<std::size_t>(count) *
                            static_cast<std::size_t>(eq_.dim() * eq_.dim());
  if (batch.size() != total) throw std::invalid_argument("LindbladIntegrator: batch size");
  const int n = substeps(t1 - t0, max_step_);
  if (n == 0) return;
  const double h = (t1 - t0) / n;
  for (auto* buf : {&k1_, &k2_, &k3_, &k4_, &tmp_}) buf->resize(total);
  Complex* y = batch.data();
  Complex* k1 = k1_.data();
  Complex* k2 = k2_.data();
  Complex* k3 = k3_.data();
  Complex* k4 = k4_.data();
  Complex* tmp = tmp_.data();
  for (int s = 0; s < n; ++s) {
    const double t = t0 + s * h;
    evaluate(t, y, k1, count);
    for (std::size_t i = 0; i < total; ++i) tmp[i] = y[i] + (0.5 * h) * k1[i];
    evaluate(t + 0.5 * h, tmp, k2, count);
    for (std::size_t i = 0; i < total; ++i) tmp[i] = y[i] + (0.5 * h) * k2[i];
    evaluate(t + 0.5 * h, tmp, k3, count);
    for (std::size_t i = 0; i < total; ++i) tmp[i] = y[i] + h * k3[i];
    evaluate(t + h, tmp, k4, count);
    const double w = h / 6.0;
    for (std::size_t i = 0; i < total; ++i) {
      y[i] += w * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
    }
    ++steps_;
  }
}

EvolutionResult propagate(const MasterEquation& eq, const DensityMatrix& rho0, double horizon,
                          int samples, double max_step) {
  if (!(horizon > 0.0)) throw std::invalid_argument("propagate: horizon must be positive");
  if (samples < 2) throw std::invalid_argument("propagate: need at least two samples");
  if (rho0.dim() != eq.dim()) throw std::invalid_argument("propagate: dimension mismatch");
  const int d = eq.dim();
  // At the fidelity step a pure state under γ = 0 develops eigenvalues near
  // -2e-8 from RK4 truncation; a quarter step keeps them below 1e-9.
  LindbladIntegrator integrator(eq, max_step > 0.0 ? max_step : 0.25 * eq.natural_step());
  std::vector<Complex> state(static_cast<std::size_t>(d * d));
  store(0.5 * (rho0.matrix() + rho0.matrix().adjoint()), state.data());

  EvolutionResult result;
  result.diagnostics.step = integrator.max_step();
  result.diagnostics.min_eigenvalue = check_density_matrix(rho0.matrix()).min_eigenvalue;
  result.times.push_back(0.0);
  result.states.push_back(rho0);
  double t = 0.0;
  for (int k = 1; k < samples; ++k) {
    const double next = horizon * k / (samples - 1);
    integrator.advance(state, 1, t, next);
    t = next;
    OperatorMatrix rho = load(state.data(), d);
    const DensityMatrixCheck c = check_density_matrix(rho);
    auto& diag = result.diagnostics;
    diag.max_trace_drift = std::max(diag.max_trace_drift, c.trace_error);
    diag.max_hermiticity_error = std::max(diag.max_hermiticity_error, c.hermiticity_error);
    diag.min_eigenvalue = std::min(diag.min_eigenvalue, c.min_eigenvalue);
    if (!all_finite(rho) || c.trace_error > 1e-7 ||
        c.hermiticity_error > DensityMatrix::kHermiticityTolerance ||
        c.min_eigenvalue < -DensityMatrix::kPositivityTolerance) {
      std::ostringstream msg;
      msg << "propagate: invariant violated at t=" << t << " (trace error " << c.trace_error
          << ", hermiticity error " << c.hermiticity_error << ", min eigenvalue "
          << c.min_eigenvalue << ", step " << integrator.max_step() << ")";
      throw std::runtime_error(msg.str());
    }
    result.times.push_back(t);
    result.states.push_back(DensityMatrix::trusted(std::move(rho)));
  }
  result.diagnostics.steps = integrator.steps_taken();
  return result;
}

EvolutionResult propagate(const DensityMatrix& rho0, const QubitModelParams& p, double horizon,
                          int samples, double max_step) {
  return propagate(MasterEquation::rotating(p), rho0, horizon, samples, max_step);
}

EvolutionResult propagate_effective(const DensityMatrix& rho0, const QubitModelParams& p,
                                    double horizon, int samples, double max_step) {
  if (max_step <= 0.0 && p.delta != 0.0) max_step = 0.25 * kTwoPi / std::abs(p.delta) / 40.0;
  return propagate(MasterEquation::floquet(p), rho0, horizon, samples, max_step);
}

const std::vector<OperatorMatrix>& pauli_basis(int num_qubits) {
  static const std::array<std::vector<OperatorMatrix>, 5> cache = [] {
    std::array<std::vector<OperatorMatrix>, 5> out;
    for (int n = 0; n <= 4; ++n) {
      const std::uint32_t count = 1U << (2 * n);
      for (std::uint32_t j = 0; j < count; ++j) out[static_cast<std::size_t>(n)].push_back(pauli::string(j, n));
    }
    return out;
  }();
  if (num_qubits < 0 || num_qubits > 4) {
    throw std::invalid_argument("pauli_basis: supported for up to four qubits");
  }
  return cache[static_cast<std::size_t>(num_qubits)];
}

PauliChannel::PauliChannel(int num_qubits, std::vector<OperatorMatrix> images)
    : num_qubits_(num_qubits), images_(std::move(images)) {
  const std::size_t expected = std::size_t{1} << (2 * num_qubits);
  if (num_qubits < 0 || num_qubits > 4 || images_.size() != expected) {
    throw std::invalid_argument("PauliChannel: wrong number of images");
  }
  for (const auto& m : images_) {
    if (m.rows() != dim() || m.cols() != dim()) {
      throw std::invalid_argument("PauliChannel: image has wrong dimension");
    }
  }
}

PauliChannel PauliChannel::identity(int num_qubits) {
  return PauliChannel(num_qubits, pauli_basis(num_qubits));
}

PauliChannel PauliChannel::from_map(
    int num_qubits, const std::function<OperatorMatrix(const OperatorMatrix&)>& map) {
  std::vector<OperatorMatrix> images;
  for (const auto& p : pauli_basis(num_qubits)) images.push_back(map(p));
  return PauliChannel(num_qubits, std::move(images));
}

OperatorMatrix PauliChannel::apply(const OperatorMatrix& x) const {
  if (x.rows() != dim() || x.cols() != dim()) {
    throw std::invalid_argument("PauliChannel::apply: dimension mismatch");
  }
  const auto& basis = pauli_basis(num_qubits_);
  OperatorMatrix out = OperatorMatrix::Zero(dim(), dim());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    // tr(P_j x) = Σ conj(P_j) ∘ x for Hermitian P_j.
    const Complex c = basis[j].conjugate().cwiseProduct(x).sum() / static_cast<double>(dim());
    if (c != Complex(0.0, 0.0)) out += c * images_[j];
  }
  return out;
}

PauliChannel PauliChannel::after_unitary(const OperatorMatrix& v) const {
  if (v.rows() != dim() || v.cols() != dim()) {
    throw std::invalid_argument("PauliChannel::after_unitary: dimension mismatch");
  }
  const auto& basis = pauli_basis(num_qubits_);
  std::vector<OperatorMatrix> images;
  images.reserve(basis.size());
  for (const auto& p : basis) images.push_back(apply(v * p * v.adjoint()));
  return PauliChannel(num_qubits_, std::move(images));
}

double PauliChannel::trace_defect() const {
  const auto& basis = pauli_basis(num_qubits_);
  double worst = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    worst = std::max(worst, std::abs(images_[j].trace() - basis[j].trace()));
  }
  return worst / dim();
}

long propagate_channel(const MasterEquation& eq, std::span<const double> sample_times,
                       double max_step, const ChannelObserver& observer,
                       const ChannelSnapshot* start) {
  const int d = eq.dim();
  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) throw std::invalid_argument("propagate_channel: dimension is not 2^n");
  const auto& basis = pauli_basis(n);
  const int count = static_cast<int>(basis.size());
  const std::size_t dd = static_cast<std::size_t>(d * d);

  ChannelSnapshot state;
  if (start != nullptr) {
    if (start->batch.size() != dd * static_cast<std::size_t>(count)) {
      throw std::invalid_argument("propagate_channel: snapshot size mismatch");
    }
    state = *start;
  } else {
    state.batch.resize(dd * static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) store(basis[static_cast<std::size_t>(j)], state.batch.data() + j * dd);
  }

  LindbladIntegrator integrator(eq, max_step);
  for (double ts : sample_times) {
    if (ts < state.time - 1e-18) {
      throw std::invalid_argument("propagate_channel: sample times must be ascending");
    }
    integrator.advance(state.batch, count, state.time, ts);
    state.time = std::max(state.time, ts);
    std::vector<OperatorMatrix> images;
    images.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) images.push_back(load(state.batch.data() + j * dd, d));
    observer(PauliChannel(n, std::move(images)), state);
  }
  return integrator.steps_taken();
}

long propagate_unitary(const MasterEquation& eq, std::span<const double> sample_times,
                       double max_step, const UnitaryObserver& observer,
                       const UnitarySnapshot* start) {
  const double step = max_step > 0.0 ? max_step : eq.natural_step();
  UnitarySnapshot state;
  if (start != nullptr) {
    state = *start;
  } else {
    state.u = OperatorMatrix::Identity(eq.dim(), eq.dim());
  }
  auto f = [&eq](double t, const OperatorMatrix& u) -> OperatorMatrix {
    return -kI * (eq.hamiltonian(t) * u);
  };
  long steps = 0;
  for (double ts : sample_times) {
    if (ts < state.time - 1e-18) {
      throw std::invalid_argument("propagate_unitary: sample times must be ascending");
    }
    const int n = substeps(ts - state.time, step);
    if (n > 0) {
      const double t0 = state.time;
      const double h = (ts - t0) / n;
      OperatorMatrix& u = state.u;
      for (int s = 0; s < n; ++s) {
        const double t = t0 + s * h;
        const OperatorMatrix k1 = f(t, u);
        const OperatorMatrix k2 = f(t + 0.5 * h, u + (0.5 * h) * k1);
        const OperatorMatrix k3 = f(t + 0.5 * h, u + (0.5 * h) * k2);
        const OperatorMatrix k4 = f(t + h, u + h * k3);
        u += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
        ++steps;
      }
      state.time = ts;
    }
    observer(state);
  }
  return steps;
}

}  // namespace diamond
