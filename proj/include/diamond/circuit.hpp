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


// Lumped-element circuit of the four-transmon device and its quantization.
// Node fluxes φ1..φ6 are mapped to (C1, C2, T1, T2, CM1, CM2) coordinates.
// Internally ħ = 1 and Φ0 = 2π, so a capacitance C becomes C·ħ/(4e²)
// (seconds) and 1/(8C) is a charging energy in rad/s.

#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diamond/qutrit_model.hpp"

namespace diamond {

using RealMatrix = Eigen::MatrixXd;

struct CircuitParams {
  double c = 0.0;        // F
  double c_prime = 0.0;  // F, may be zero
  double c_t = 0.0;      // F
  double c_c = 0.0;      // F
  double e_j_t = 0.0;    // rad/s
  double e_j_c = 0.0;    // rad/s

  /// Capacitances in fF, Josephson energies as E_J/2π in GHz.
  static CircuitParams from_lab_units(double c_ff, double c_prime_ff, double c_t_ff,
                                      double c_c_ff, double e_jt_ghz, double e_jc_ghz);

  /// Throws std::invalid_argument for non-finite or non-positive values
  /// (C′ = 0 is allowed).
  void validate() const;
  /// Notes when C_C or C_T is less than ten times C or C′.
  std::vector<std::string> warnings() const;
};

/// C·ħ/(4e²): capacitance in seconds under ħ = 1, Φ0 = 2π.
double internal_capacitance(double farads);

/// 𝓒 in farads, node order φ1..φ6.
RealMatrix capacitance_matrix(const CircuitParams& cp);

/// T with (φ_C1, φ_C2, φ_T1, φ_T2, φ_CM1, φ_CM2) = T (φ1, ..., φ6).
RealMatrix coordinate_transform();

/// K = (Tᵀ)⁻¹ 𝓒 T⁻¹ in internal units (seconds).
RealMatrix transformed_capacitance_matrix(const CircuitParams& cp);

struct DerivedEnergies {
  double e_c_c = 0.0;   // charging energies, rad/s
  double e_c_t = 0.0;
  double e_c_cm = 0.0;
  double cc = 0.0;      // 𝓔_CC
  double ct = 0.0;      // 𝓔_CT
  double tt = 0.0;      // 𝓔_TT
  double c_cm = 0.0;    // 𝓔_C,CM
  double cm_cm = 0.0;   // 𝓔_CM,CM
  /// max |analytic - numeric| / max |numeric| over the entries of K⁻¹.
  double inverse_mismatch = 0.0;

  /// K⁻¹ assembled from the closed forms.
  RealMatrix inverse_capacitance() const;
};

/// Closed-form inverse, cross-checked against a numeric inversion of K.
/// Throws std::runtime_error if K is singular.
DerivedEnergies derived_energies(const CircuitParams& cp);

/// Numeric K⁻¹ (rad/s).
RealMatrix numeric_inverse_capacitance(const CircuitParams& cp);

struct TransmonSpectrum {
  double e_c = 0.0;
  double e_j = 0.0;
  double omega = 0.0;
  double alpha = 0.0;
  QutritLevels levels;  // ω_0, ω_1, ω_2 and T_0, T_2
  /// Qutrit eigenstates |0>, |1>, |2> as columns, in the basis of the
  /// three lowest oscillator states.
  Eigen::Matrix3d states;
  std::vector<std::string> warnings;
};

/// Throws std::invalid_argument when E_J/E_C < 20; warns below 50.
TransmonSpectrum transmon_spectrum(double e_c, double e_j);

/// Oscillator-basis qutrit Hamiltonian, energies relative to |0>_HO.
Eigen::Matrix3d truncated_transmon_hamiltonian(double e_c, double e_j);

struct CircuitModel {
  DerivedEnergies energies;
  TransmonSpectrum control;
  TransmonSpectrum target;
  QutritModelParams params;
  std::vector<std::string> warnings;
};

/// Forward map. J_C comes out negative; J and J_T positive.
CircuitModel analyze_circuit(const CircuitParams& cp);
QutritModelParams model_from_circuit(const CircuitParams& cp);

struct InverseDesignResult {
  CircuitParams params;
  QutritModelParams model;
  int iterations = 0;
};

/// Solves for (C, C′) so that |J| and |J_C| hit the targets (rad/s), keeping
/// C_T, C_C and both E_J of `base`. Bisection on C for |J| nested inside
/// bisection on C′ for |J_C|. Throws std::domain_error when the targets are
/// outside the reachable range.
InverseDesignResult inverse_design(const CircuitParams& base, double j_target,
                                   double j_c_target);

/// Base point used for inverse design: C_C = 800 fF, C_T = 40 fF,
/// E_JC/2π = 80 GHz, E_JT/2π = 25 GHz.
CircuitParams reference_design_base();

}  // namespace diamond
