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

#ifndef QGT_ION_CHAIN_HPP
#define QGT_ION_CHAIN_HPP

#include <Eigen/Dense>

namespace qgt {

enum class Branch { axial, radial };

// Harmonic linear trap holding a chain of identical ions.  Frequencies are
// the centre-of-mass frequencies in Hz; all derived quantities use rad/s.
struct TrapConfig {
  int num_ions = 0;
  double axial_freq_hz = 0.0;    // nu_z
  double radial_freq_hz = 0.0;   // nu_r (one transverse principal axis)
  double ion_mass_kg = 0.0;
  double eff_wavevector = 0.0;   // |Delta k| of the drive along the branch, rad/m
  Branch branch = Branch::radial;

  void validate() const;
};

// Normal modes of one branch.  Modes are sorted by descending frequency and
// each mode vector has its first component above 1e-12 of the max made
// positive, so the decomposition is reproducible.
struct ModeSet {
  Eigen::VectorXd omega;  // rad/s, descending
  Eigen::MatrixXd b;      // row l = mass-normalised mode vector of mode l
  Eigen::MatrixXd eta;    // eta(l, j) = b(l, j) * dk * sqrt(hbar / (2 m omega_l))

  int num_modes() const { return static_cast<int>(omega.size()); }
  int num_ions() const { return static_cast<int>(b.cols()); }

  // Restriction to a subset of modes (indices into the descending order).
  ModeSet subset(const std::vector<int>& mode_indices) const;
};

// Dimensionless equilibrium positions (units of the Coulomb length scale),
// ascending.  Solved by damped Newton iteration on the force balance.
Eigen::VectorXd equilibrium_positions(int num_ions);

// Normal modes of the configured branch.  Throws InstabilityError when the
// radial confinement is too weak for a linear chain (a squared mode frequency
// goes non-positive).
ModeSet normal_modes(const TrapConfig& trap);

}  // namespace qgt

#endif
