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

#ifndef QGT_DYNAMICS_HPP
#define QGT_DYNAMICS_HPP

#include <vector>

#include <Eigen/Dense>

#include "qgt/gate_phases.hpp"
#include "qgt/ion_chain.hpp"
#include "qgt/pulse.hpp"

namespace qgt {

// Direct numerical integration of the driven two-ion dynamics on a truncated
// Fock space, used as an independent check of the closed-form evolutions.
struct OracleConfig {
  int fock_cutoff = 8;             // highest Fock level kept per mode
  std::vector<int> included_modes; // indices into the mode set; empty = all
  int steps_per_cycle = 48;        // time steps per period of the fastest frequency
  int dim = 2;                     // qudit levels per ion
  // Modes couple through commuting operator families, so the propagator
  // factorizes exactly over modes; when true, integrate one mode at a time
  // and compose the ground-projected electronic blocks.
  bool factorized = false;
  double leakage_threshold = 1e-6; // population allowed in the top two Fock levels
};

struct OracleResult {
  Eigen::MatrixXcd electronic;     // d^2 x d^2 block on the motional ground state
  double leakage = 0.0;            // worst initial state: population left outside ground
  double unitarity_defect = 0.0;   // orthonormality defect of the propagated columns
  long long steps = 0;             // total integrator steps
};

// Drive coupling both ions' {|0>,|1>} flip operators to the selected modes.
OracleResult integrate_ms(const PulseShape& pulse, const ModeSet& modes, int ion_j, int ion_k,
                          const OracleConfig& cfg);

// State-diagonal drive: level s couples with relative amplitude theta_s.
OracleResult integrate_ls(const PulseShape& pulse, const LSAmplitudeProfile& profile,
                          const ModeSet& modes, int ion_j, int ion_k, const OracleConfig& cfg);

}  // namespace qgt

#endif
