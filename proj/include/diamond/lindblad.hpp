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

// Lindblad master equation
//   dρ/dt = -i[H(t), ρ] + Σ_k (C_k ρ C_k† - ½{C_k† C_k, ρ})
// with H(t) = S + e^{iΔt} A + e^{-iΔt} A†, integrated by fixed-step RK4.

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "diamond/linalg.hpp"
#include "diamond/qubit_model.hpp"

namespace diamond {

struct DensityMatrixCheck {
  double hermiticity_error = 0.0;  // max|ρ - ρ†|
  double trace_error = 0.0;        // |tr ρ - 1|
  double min_eigenvalue = 0.0;
};

DensityMatrixCheck check_density_matrix(const OperatorMatrix& rho);

class DensityMatrix {
 public:
  static constexpr double kHermiticityTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-8;
  static constexpr double kPositivityTolerance = 1e-8;

  /// Throws std::invalid_argument when any invariant fails.
  explicit DensityMatrix(OperatorMatrix rho);
  static DensityMatrix pure(const StateVector& psi);
  /// Skips validation; for integrator output already checked by the caller.
  static DensityMatrix trusted(OperatorMatrix rho);

  const OperatorMatrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }
  double purity() const;
  double fidelity_with(const StateVector& psi) const;  // <ψ|ρ|ψ>

 private:
  OperatorMatrix rho_;
};

struct CollapseOperatorSet {
  std::vector<OperatorMatrix> operators;
  std::vector<std::string> labels;
};

/// √γ σ_z^i and √γ σ_-^i for i in (C1, C2, T1, T2). Throws for γ < 0.
CollapseOperatorSet build_collapse_ops(const QubitModelParams& p);

class MasterEquation {
 public:
  /// General form; `coupling` may be empty (time-independent H = static_h).
  MasterEquation(OperatorMatrix static_h, OperatorMatrix coupling, double delta,
                 std::vector<OperatorMatrix> collapse);

  /// Rotating-frame four-qubit model with the eight collapse operators.
  static MasterEquation rotating(const QubitModelParams& p);
  /// Time-independent Floquet Hamiltonian with the same collapse operators.
  static MasterEquation floquet(const QubitModelParams& p);

  int dim() const { return dim_; }
  bool time_dependent() const { return coupling_.size() != 0; }
  OperatorMatrix hamiltonian(double t) const;
  const std::vector<OperatorMatrix>& collapse_operators() const { return collapse_; }

  /// Default RK4 step: (2π/|Δ|)/40 for driven equations, otherwise 1/40 of
  /// the period of the fastest generator scale.
  double natural_step() const;

  /// Lindblad right-hand side for an arbitrary (not necessarily Hermitian) ρ.
  OperatorMatrix rhs(double t, const OperatorMatrix& rho) const;

  struct SparseEntry {
    int row;
    int col;
    Complex value;
  };

  // Sparse pieces of G(t) = G0 + e^{iΔt} Ga + e^{-iΔt} Gb with
  // G = -iH - ½ Σ C†C, plus the jump-term data.
  const std::vector<SparseEntry>& g_static() const { return g0_; }
  const std::vector<SparseEntry>& g_forward() const { return ga_; }
  const std::vector<SparseEntry>& g_backward() const { return gb_; }
  const std::vector<Complex>& diagonal_jump_mask() const { return jump_mask_; }
  const std::vector<std::vector<SparseEntry>>& offdiagonal_jumps() const { return jumps_; }
  double delta() const { return delta_; }

 private:
  int dim_;
  OperatorMatrix static_h_;
  OperatorMatrix coupling_;
  double delta_;
  std::vector<OperatorMatrix> collapse_;
  std::vector<SparseEntry> g0_, ga_, gb_;
  std::vector<Complex> jump_mask_;  // dim*dim, row-major; empty if no diagonal jumps
  std::vector<std::vector<SparseEntry>> jumps_;
};

/// Row-major batch of Hermitian operators evolved together. Hermiticity is
/// assumed by the kernel (RHS = B + B† + jumps with B = Gρ), so only Hermitian
/// inputs are valid.
class LindbladIntegrator {
 public:
  LindbladIntegrator(const MasterEquation& eq, double max_step);

  /// Advances `count` operators stored contiguously in `batch` from t0 to t1
  /// in ceil((t1 - t0)/max_step) equal RK4 steps.
  void advance(std::vector<Complex>& batch, int count, double t0, double t1);

  double max_step() const { return max_step_; }
  long steps_taken() const { return steps_; }

 private:
  void evaluate(double t, const Complex* in, Complex* out, int count);

  const MasterEquation& eq_;
  double max_step_;
  long steps_ = 0;
  std::vector<MasterEquation::SparseEntry> g_;
  std::vector<Complex> k1_, k2_, k3_, k4_, tmp_, b_;
};

struct EvolutionDiagnostics {
  double step = 0.0;
  long steps = 0;
  double max_trace_drift = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  EvolutionDiagnostics diagnostics;
};

/// Propagates ρ0 and samples `samples` >= 2 equally spaced times in
/// [0, horizon]. max_step <= 0 selects eq.natural_step()/4. Throws
/// std::runtime_error when an invariant is violated beyond tolerance.
EvolutionResult propagate(const MasterEquation& eq, const DensityMatrix& rho0, double horizon,
                          int samples, double max_step = 0.0);
EvolutionResult propagate(const DensityMatrix& rho0, const QubitModelParams& p, double horizon,
                          int samples, double max_step = 0.0);
EvolutionResult propagate_effective(const DensityMatrix& rho0, const QubitModelParams& p,
                                    double horizon, int samples, double max_step = 0.0);

/// Quantum channel on n qubits stored as the images ε(P_j) of all 4^n Pauli
/// strings (pauli::string ordering).
class PauliChannel {
 public:
  PauliChannel(int num_qubits, std::vector<OperatorMatrix> images);
  static PauliChannel identity(int num_qubits);
  static PauliChannel from_map(int num_qubits,
                               const std::function<OperatorMatrix(const OperatorMatrix&)>& map);

  /// ε(x) = Σ_j tr(P_j x)/d ε(P_j).
  OperatorMatrix apply(const OperatorMatrix& x) const;
  /// ρ ↦ ε(V ρ V†).
  PauliChannel after_unitary(const OperatorMatrix& v) const;

  int num_qubits() const { return num_qubits_; }
  int dim() const { return 1 << num_qubits_; }
  const std::vector<OperatorMatrix>& images() const { return images_; }
  /// max_j |tr ε(P_j) - tr P_j| / d.
  double trace_defect() const;

 private:
  int num_qubits_;
  std::vector<OperatorMatrix> images_;
};

/// Paulis for a register, cached per qubit count.
const std::vector<OperatorMatrix>& pauli_basis(int num_qubits);

struct ChannelSnapshot {
  double time = 0.0;
  std::vector<Complex> batch;  // raw integrator state
};

/// Receives the channel at a sample time together with the raw integrator
/// state, which can be copied and passed back as a restart point.
using ChannelObserver = std::function<void(const PauliChannel& channel,
                                           const ChannelSnapshot& state)>;

/// Evolves every Pauli string under `eq` and reports the channel at each of
/// the ascending `sample_times`. Evolution starts from `start` when given,
/// otherwise at t = 0 from the identity channel. Returns the number of RK4
/// steps taken.
long propagate_channel(const MasterEquation& eq, std::span<const double> sample_times,
                       double max_step, const ChannelObserver& observer,
                       const ChannelSnapshot* start = nullptr);

struct UnitarySnapshot {
  double time = 0.0;
  OperatorMatrix u;
};

using UnitaryObserver = std::function<void(const UnitarySnapshot& state)>;

/// Schrödinger-picture propagator U(t) for the Hamiltonian of `eq` (collapse
/// operators ignored), RK4 with the same stepping rule.
long propagate_unitary(const MasterEquation& eq, std::span<const double> sample_times,
                       double max_step, const UnitaryObserver& observer,
                       const UnitarySnapshot* start = nullptr);

}  // namespace diamond
