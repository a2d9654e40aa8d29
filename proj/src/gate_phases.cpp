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

#include "qgt/gate_phases.hpp"

#include <cmath>
#include <stdexcept>

#include "qgt/detail/mode_kernel.hpp"
#include "qgt/errors.hpp"
#include "qgt/trig_integrals.hpp"

namespace qgt {

std::complex<double> displacement_alpha(const PulseShape& pulse, const ModeSet& modes,
                                        int mode_l, int ion_j) {
  pulse.validate();
  if (mode_l < 0 || mode_l >= modes.num_modes()) throw ConfigError("mode index out of range");
  if (ion_j < 0 || ion_j >= modes.num_ions()) throw ConfigError("ion index out of range");
  const double tau = pulse.basis.tau;
  const double w = modes.omega(mode_l);
  std::complex<double> acc(0.0, 0.0);
  for (int p = 0; p < pulse.basis.num_tones; ++p) {
    const double mu = pulse.basis.mu(p);
    // integral of sin(mu t) e^{i w t} = -(i/2) [E(w + mu) - E(w - mu)]
    const std::complex<double> i_sc =
        std::complex<double>(0.0, -0.5) *
        (trig::exp_moment(0, w + mu, tau) - trig::exp_moment(0, w - mu, tau));
    acc += pulse.amplitudes(p) * i_sc;
  }
  return std::complex<double>(0.0, -modes.eta(mode_l, ion_j)) * acc;
}

double max_abs_displacement(const PulseShape& pulse, const ModeSet& modes,
                            const std::vector<int>& ions) {
  std::vector<int> js = ions;
  if (js.empty()) {
    js.resize(modes.num_ions());
    for (int j = 0; j < modes.num_ions(); ++j) js[j] = j;
  }
  double best = 0.0;
  for (int l = 0; l < modes.num_modes(); ++l)
    for (int j : js) best = std::max(best, std::abs(displacement_alpha(pulse, modes, l, j)));
  return best;
}

Eigen::VectorXd mode_phase_integrals(const PulseShape& pulse, const ModeSet& modes) {
  pulse.validate();
  const int P = pulse.basis.num_tones;
  Eigen::VectorXd theta(modes.num_modes());
  for (int l = 0; l < modes.num_modes(); ++l) {
    detail::ModeKernel kernel(pulse.basis, modes.omega(l), /*with_derivative=*/false);
    double acc = 0.0;
    for (int m = 0; m < P; ++m) {
      const double om = pulse.amplitudes(m);
      if (om == 0.0) continue;
      for (int n = 0; n < P; ++n) {
        const double on = pulse.amplitudes(n);
        if (on == 0.0) continue;
        acc += on * om * kernel.t_ordered(n, m);
      }
    }
    theta(l) = acc;
  }
  return theta;
}

MSPhaseSet ms_phases(const PulseShape& pulse, const ModeSet& modes, int ion_j, int ion_k) {
  if (ion_j < 0 || ion_j >= modes.num_ions() || ion_k < 0 || ion_k >= modes.num_ions())
    throw ConfigError("ion index out of range");
  if (ion_j == ion_k) throw ConfigError("entangled ion indices must differ");
  const Eigen::VectorXd theta = mode_phase_integrals(pulse, modes);
  MSPhaseSet out;
  out.ion_j = ion_j;
  out.ion_k = ion_k;
  for (int l = 0; l < modes.num_modes(); ++l) {
    const double ej = modes.eta(l, ion_j);
    const double ek = modes.eta(l, ion_k);
    out.chi_jj += ej * ej * theta(l);
    out.chi_jk += ej * ek * theta(l);
    out.chi_kk += ek * ek * theta(l);
  }
  return out;
}

Eigen::MatrixXcd ms_evolution(const MSPhaseSet& phases, const Eigen::VectorXd& ac_phases,
                              int dim) {
  if (dim < 2) throw ConfigError("qudit dimension must be at least 2");
  if (ac_phases.size() != 0 && ac_phases.size() != dim)
    throw ConfigError("per-level phase vector must have one entry per level");

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
  x(0, 1) = x(1, 0) = 1.0;
  Eigen::VectorXd phi1 = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd phi2 = Eigen::VectorXd::Zero(dim);
  phi1(0) = phi1(1) = phases.chi_jj;
  phi2(0) = phi2(1) = phases.chi_kk;
  if (ac_phases.size() == dim) {
    phi1 += ac_phases;
    phi2 += ac_phases;
  }

  const int n = dim * dim;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int s1 = 0; s1 < dim; ++s1)
    for (int s2 = 0; s2 < dim; ++s2) {
      const int row = s1 * dim + s2;
      h(row, row) += phi1(s1) + phi2(s2);
      for (int t1 = 0; t1 < dim; ++t1)
        for (int t2 = 0; t2 < dim; ++t2)
          if (x(s1, t1) != 0.0 && x(s2, t2) != 0.0)
            h(row, t1 * dim + t2) += 2.0 * phases.chi_jk * x(s1, t1) * x(s2, t2);
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  if (eig.info() != Eigen::Success) throw ConvergenceError("evolution eigensolve failed");
  Eigen::VectorXcd expvals(n);
  for (int i = 0; i < n; ++i)
    expvals(i) = std::exp(std::complex<double>(0.0, eig.eigenvalues()(i)));
  return eig.eigenvectors().cast<std::complex<double>>() * expvals.asDiagonal() *
         eig.eigenvectors().transpose().cast<std::complex<double>>();
}

void LSAmplitudeProfile::validate() const {
  if (theta.size() < 2) throw ConfigError("amplitude profile needs at least two levels");
  if (std::abs(std::abs(theta(0)) - 1.0) > 1e-12)
    throw ConfigError("leading relative amplitude must have unit magnitude");
  for (int s = 1; s < theta.size(); ++s)
    if (std::abs(theta(s)) > std::abs(theta(s - 1)) + 1e-12)
      throw ConfigError("relative amplitudes must be non-increasing in magnitude");
  if (ac_phases.size() != 0 && ac_phases.size() != theta.size())
    throw ConfigError("per-level phase vector must have one entry per level");
}

LSPhaseTable ls_phase_table(double chi_jk, double chi_jj, double chi_kk,
                            const LSAmplitudeProfile& profile, double zero_order_tol) {
  profile.validate();
  const int d = profile.dim();
  LSPhaseTable table;
  table.dim = d;
  table.zero_order_tol = zero_order_tol;
  table.entangling.resize(d, d);
  table.nonentangling = Eigen::MatrixXd::Zero(2, d);
  double max_tail = 0.0;
  for (int s = 0; s < d; ++s) {
    if (s >= 1) max_tail = std::max(max_tail, std::abs(profile.theta(s)));
    const double th2 = profile.theta(s) * profile.theta(s);
    const double ac = profile.ac_phases.size() == d ? profile.ac_phases(s) : 0.0;
    table.nonentangling(0, s) = chi_jj * th2 + ac;
    table.nonentangling(1, s) = chi_kk * th2 + ac;
    for (int t = 0; t < d; ++t)
      table.entangling(s, t) = 2.0 * chi_jk * profile.theta(s) * profile.theta(t);
  }
  table.zero_order = max_tail < zero_order_tol;
  return table;
}

Eigen::MatrixXcd ls_evolution(const LSPhaseTable& table) {
  const int d = table.dim;
  if (d < 2) throw ConfigError("phase table is empty");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t) {
      const double phase =
          table.entangling(s, t) + table.nonentangling(0, s) + table.nonentangling(1, t);
      u(s * d + t, s * d + t) = std::exp(std::complex<double>(0.0, phase));
    }
  return u;
}

}  // namespace qgt
