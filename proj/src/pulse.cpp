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

#include "qgt/pulse.hpp"

#include <algorithm>
#include <cmath>

#include "qgt/errors.hpp"

namespace qgt {

void PulseBasis::validate() const {
  if (!(tau > 0.0)) throw ConfigError("pulse duration must be > 0");
  if (num_tones < 1) throw ConfigError("num_tones must be >= 1");
  if (n_min < 1) throw ConfigError("n_min must be >= 1");
}

bool PulseBasis::covers(const ModeSet& modes) const {
  return mu_min() < modes.omega.minCoeff() && mu_max() > modes.omega.maxCoeff();
}

int centered_n_min(double tau, int num_tones, const ModeSet& modes) {
  const double centre = 0.5 * (modes.omega.minCoeff() + modes.omega.maxCoeff());
  const double ideal = centre * tau / two_pi - 0.5 * (num_tones - 1);
  return std::max(1, static_cast<int>(std::lround(ideal)));
}

double band_margin_fraction(const PulseBasis& basis, const ModeSet& modes) {
  const double lo = modes.omega.minCoeff();
  const double hi = modes.omega.maxCoeff();
  const double width = std::max(hi - lo, 1e-300);
  const double below = (lo - basis.mu_min()) / width;
  const double above = (basis.mu_max() - hi) / width;
  return std::min(below, above);
}

void PulseShape::validate() const {
  basis.validate();
  if (amplitudes.size() != basis.num_tones) {
    throw ConfigError("amplitude count does not match basis size");
  }
}

double PulseShape::g(double t) const {
  double acc = 0.0;
  for (int p = 0; p < basis.num_tones; ++p) {
    acc += amplitudes(p) * std::sin(basis.mu(p) * t);
  }
  return acc;
}

RabiPeak max_rabi(const PulseShape& pulse, int samples) {
  pulse.validate();
  const int n = std::max(samples, 10 * pulse.basis.num_tones);
  const double tau = pulse.basis.tau;

  int best = 0;
  double best_val = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double v = std::abs(pulse.g(tau * i / n));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }

  // Golden-section refinement on |g| inside the best bracket.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = tau * std::max(0, best - 1) / n;
  double hi = tau * std::min(n, best + 1) / n;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = std::abs(pulse.g(x1));
  double f2 = std::abs(pulse.g(x2));
  for (int it = 0; it < 160 && (hi - lo) > 1e-16 * tau; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = std::abs(pulse.g(x2));
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = std::abs(pulse.g(x1));
    }
  }
  RabiPeak peak;
  peak.time = 0.5 * (lo + hi);
  peak.value = std::max({best_val, f1, f2});
  return peak;
}

}  // namespace qgt
