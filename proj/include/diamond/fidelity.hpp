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

// Average gate fidelity F = ∫dψ <ψ|U† ε(|ψ><ψ|) U|ψ> evaluated with the
// Pauli-basis sum formula
//   F = [Σ_j tr(U P_j U† ε(P_j)) + d tr ε(I)] / (d²(d+1)),
// which for trace-preserving ε reduces to the familiar "+ d²" form. Inside a
// fixed control subspace the compressed map ρ_T ↦ <φ|ε(|φ><φ| ⊗ ρ_T)|φ> is
// trace-decreasing when population leaves the subspace; that population is
// counted as loss.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "diamond/lindblad.hpp"
#include "diamond/qubit_model.hpp"

namespace diamond {

using ChannelMap = std::function<OperatorMatrix(const OperatorMatrix&)>;

struct AverageFidelity {
  double value = 0.0;
  double trace_defect = 0.0;
  bool trace_preserving = true;  // trace_defect <= 1e-6
};

AverageFidelity average_gate_fidelity(const PauliChannel& channel, const OperatorMatrix& u_target);
/// `dim` must be a power of two up to 16.
AverageFidelity average_gate_fidelity(const ChannelMap& channel, const OperatorMatrix& u_target,
                                      int dim);

/// (|tr(U†V)|² + d)/(d² + d).
double unitary_average_fidelity(const OperatorMatrix& u_target, const OperatorMatrix& v);

/// Fidelity of the four-qubit channel restricted to inputs |φ>_C ⊗ |ψ>_T
/// against |φ><φ|_C ⊗ u_target.
double subspace_fidelity(const PauliChannel& channel, ControlState control,
                         const OperatorMatrix& u_target);
double subspace_fidelity(const ChannelMap& channel, ControlState control,
                         const OperatorMatrix& u_target);
/// Unitary evolution V: (|tr(u†W)|² + tr(W†W))/20 with W = <φ|V|φ>.
double unitary_subspace_fidelity(const OperatorMatrix& v, ControlState control,
                                 const OperatorMatrix& u_target);

/// Normalized complex-Gaussian vector, deterministic per seed.
StateVector haar_random_state(int dim, std::uint64_t seed);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Direct Haar average of <ψ|U† ε(|ψ><ψ|) U|ψ> over `samples` random states.
MonteCarloEstimate haar_average_fidelity(const ChannelMap& channel,
                                         const OperatorMatrix& u_target, int samples,
                                         std::uint64_t seed);
/// Same, with inputs |φ>_C ⊗ |ψ>_T and ψ Haar-random on the targets.
MonteCarloEstimate haar_average_subspace_fidelity(const ChannelMap& channel,
                                                  ControlState control,
                                                  const OperatorMatrix& u_target, int samples,
                                                  std::uint64_t seed);

/// Total and per-control fidelities (order of kControlStates).
struct GateFidelities {
  double total = 0.0;
  std::array<double, 4> per_control{};
};

/// Precomputes target conjugations for repeated evaluation against the
/// ideal diamond gate at a fixed time.
class GateFidelityEvaluator {
 public:
  GateFidelityEvaluator(const QubitModelParams& p, double target_time);

  GateFidelities evaluate(const PauliChannel& channel) const;
  GateFidelities evaluate_unitary(const OperatorMatrix& v) const;

 private:
  OperatorMatrix target_;
  std::vector<OperatorMatrix> conjugated_;  // U P_j U†
  std::array<OperatorMatrix, 4> target_blocks_;
  std::array<std::vector<OperatorMatrix>, 4> block_conjugated_;  // u P_b u†
};

struct FidelityTrace {
  std::vector<double> times;
  std::vector<GateFidelities> values;
};

enum class Dynamics { kRotating, kFloquet };

struct GateSearchOptions {
  double window = 0.15;      // relative half-width around the predicted time
  int coarse_points = 61;
  int fine_points = 21;
  double max_step = 0.0;     // <= 0: natural step of the dynamics
  Dynamics dynamics = Dynamics::kRotating;
  /// Unitary V on the control pair applied before the gate (preparation error).
  std::optional<OperatorMatrix> control_preparation;
  /// Halve the step at the found time until the total fidelity changes by
  /// less than convergence_tolerance; reported fidelities use the finest step.
  bool check_convergence = false;
  double convergence_tolerance = 1e-5;
  int max_halvings = 4;
};

struct GateFidelityResult {
  double t_predicted = 0.0;
  double t_g_simulated = 0.0;
  GateFidelities fidelities;
  bool boundary_maximum = false;
  double step = 0.0;              // step used for the reported fidelities
  long steps = 0;                 // total RK4 steps over the search
  double convergence_delta = -1.0;  // |ΔF| of the last halving, -1 if unchecked
  bool converged = true;
  double trace_defect = 0.0;
  FidelityTrace coarse;
};

/// Coarse scan of the total fidelity around gate_time(p), refinement on a fine
/// grid between the neighbours of the best coarse point, and a quadratic fit
/// through the three best fine points. With γ = 0 and no preparation error the
/// unitary propagator is integrated instead of the channel.
GateFidelityResult find_gate_time(const QubitModelParams& p, const GateSearchOptions& options = {});

/// Fidelities against the ideal gate at gate_time(p), sampled at `times`.
FidelityTrace fidelity_trace(const QubitModelParams& p, const std::vector<double>& times,
                             const GateSearchOptions& options = {});

}  // namespace diamond
