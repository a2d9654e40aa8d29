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

#ifndef QGT_PULSE_HPP
#define QGT_PULSE_HPP

#include <Eigen/Dense>

#include "qgt/constants.hpp"
#include "qgt/ion_chain.hpp"

namespace qgt {

// Harmonic sine basis on [0, tau]: tone p has angular frequency
// mu_p = 2 pi (n_min + p) / tau.  Integer harmonics make every basis function
// vanish at both ends and make the summed waveform antisymmetric about tau/2.
struct PulseBasis {
  double tau = 0.0;   // seconds
  int num_tones = 0;  // P
  int n_min = 1;

  double mu(int p) const { return two_pi * static_cast<double>(n_min + p) / tau; }
  double mu_min() const { return mu(0); }
  double mu_max() const { return mu(num_tones - 1); }

  void validate() const;

  // True when the tone comb brackets every mode frequency.
  bool covers(const ModeSet& modes) const;
};

// Basis index window centred on the mode band.  Margin is reported by
// band_margin_fraction; callers warn when it drops below the recommended 0.2.
int centered_n_min(double tau, int num_tones, const ModeSet& modes);
double band_margin_fraction(const PulseBasis& basis, const ModeSet& modes);

// A concrete drive waveform g(t) = sum_p amplitudes[p] sin(mu_p t), rad/s.
struct PulseShape {
  PulseBasis basis;
  Eigen::VectorXd amplitudes;

  double g(double t) const;
  double power_l2() const { return amplitudes.norm(); }
  void validate() const;
};

// Largest |g(t)| over [0, tau]: dense scan of at least `samples` points
// followed by golden-section refinement around the best bracket.
struct RabiPeak {
  double value = 0.0;  // rad/s
  double time = 0.0;   // seconds
};
RabiPeak max_rabi(const PulseShape& pulse, int samples = 0);

}  // namespace qgt

#endif
