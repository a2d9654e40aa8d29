// Copyright 2026 The qgt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGT_GATE_PHASES_HPP
#define QGT_GATE_PHASES_HPP

#include <complex>

#include <Eigen/Dense>

#include "qgt/ion_chain.hpp"
#include "qgt/pulse.hpp"

namespace qgt {

// Residual coherent displacement of mode l from driving ion j:
//   alpha_{l,j} = -i eta_{l,j} * integral of g(t) e^{i omega_l t} dt.
std::complex<double> displacement_alpha(const PulseShape& pulse, const ModeSet& modes,
                                        int mode_l, int ion_j);

// max_{l,j} |alpha_{l,j}| over all modes and the given ions (all ions when
// the list is empty).
double max_abs_displacement(const PulseShape& pulse, const ModeSet& modes,
                            const std::vector<int>& ions = {});

// Per-mode phase integral
//   Theta_l = ordered double integral of g(t1) g(t2) sin(omega_l (t1 - t2)),
// so that chi_{jk} = sum_l eta_{l,j} eta_{l,k} Theta_l.
Eigen::VectorXd mode_phase_integrals(const PulseShape& pulse, const ModeSet& modes);

// Accumulated two-ion entangling and single-ion phases of a drive on the
// ion pair (ion_j, ion_k), chain indices 0-based.
struct MSPhaseSet {
  int ion_j = 0;
  int ion_k = 1;
  double chi_jj = 0.0;
  double chi_jk = 0.0;
  double chi_kk = 0.0;
};

MSPhaseSet ms_phases(const PulseShape& pulse, const ModeSet& modes, int ion_j, int ion_k);

// Closed-form evolution operator on the d x d two-qudit computational space:
//   U = exp(i [ 2 chi_jk X(x)X + Phi_1 (x) 1 + 1 (x) Phi_2 ])
// with X the {|0>,|1>} flip embedded in the qudit and
// Phi_j = chi_jj (|0><0| + |1><1|) + diag(ac_phases).
// ac_phases holds the accumulated light-shift phase per level (radians);
// empty means zero everywhere.
Eigen::MatrixXcd ms_evolution(const MSPhaseSet& phases, const Eigen::VectorXd& ac_phases,
                              int dim);

// Relative drive amplitudes theta_s = Omega_s / Omega_0 of a multi-level
// light-shift drive, with |theta_0| = 1 and |theta| non-increasing, plus the
// accumulated light-shift phase per level.
struct LSAmplitudeProfile {
  Eigen::VectorXd theta;
  Eigen::VectorXd ac_phases;

  int dim() const { return static_cast<int>(theta.size()); }
  void validate() const;
};

// Phase table of a light-shift gate: entangling(s, s') = 2 chi_jk th_s th_s'
// and per-ion level phases nonentangling(j, s) = chi_(jj) th_s^2 + ac_s.
struct LSPhaseTable {
  int dim = 0;
  Eigen::MatrixXd entangling;     // d x d, symmetric
  Eigen::MatrixXd nonentangling;  // 2 x d, row 0 = first ion
  bool zero_order = false;
  double zero_order_tol = 0.0;
};

LSPhaseTable ls_phase_table(double chi_jk, double chi_jj, double chi_kk,
                            const LSAmplitudeProfile& profile,
                            double zero_order_tol = 1e-3);

// Diagonal evolution operator of the phase table on the two-qudit space.
Eigen::MatrixXcd ls_evolution(const LSPhaseTable& table);

}  // namespace qgt

#endif
