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

#include "qgt/dynamics.hpp"

#include <cmath>
#include <complex>

#include "qgt/constants.hpp"
#include "qgt/errors.hpp"

namespace qgt {
namespace {

using cplx = std::complex<double>;

struct DriveSpec {
  const PulseShape* pulse = nullptr;
  int dim = 2;
  bool diagonal = false;       // false: {|0>,|1>} flip coupling; true: theta-diagonal
  Eigen::VectorXd theta;       // used when diagonal
  Eigen::VectorXd omega;       // per included mode
  Eigen::MatrixXd eta;         // 2 x modes, row 0 = first ion
  int fock = 9;                // levels per mode (cutoff + 1)
  double leakage_threshold = 1e-6;
};

class Integrator {
 public:
  explicit Integrator(const DriveSpec& spec) : spec_(spec) {
    const int m = static_cast<int>(spec.omega.size());
    fock_total_ = 1;
    for (int i = 0; i < m; ++i) fock_total_ *= spec.fock;
    strides_.resize(m);
    int s = 1;
    for (int i = m - 1; i >= 0; --i) {
      strides_[i] = s;
      s *= spec.fock;
    }
    dim_ = spec.dim * spec.dim * fock_total_;
  }

  int dim() const { return dim_; }
  int fock_total() const { return fock_total_; }

  // out = -i H(t) state, columnwise.
  void derivative(double t, const Eigen::MatrixXcd& state, Eigen::MatrixXcd& out) const {
    out.setZero();
    const double gt = spec_.pulse->g(t);
    const int m = static_cast<int>(spec_.omega.size());
    const int d = spec_.dim;
    std::vector<cplx> up(m);
    for (int i = 0; i < m; ++i)
      up[i] = std::exp(cplx(0.0, spec_.omega(i) * t));  // pairs with the raising operator

    for (int col = 0; col < state.cols(); ++col) {
      const cplx* in = state.col(col).data();
      cplx* dst = out.col(col).data();
      for (int idx = 0; idx < dim_; ++idx) {
        const cplx amp = in[idx];
        if (amp == 0.0) continue;
        const int e = idx / fock_total_;
        const int rem = idx % fock_total_;
        const int s1 = e / d;
        const int s2 = e % d;
        for (int ion = 0; ion < 2; ++ion) {
          const int s = ion == 0 ? s1 : s2;
          int e_target;
          double elec;
          if (spec_.diagonal) {
            e_target = e;
            elec = spec_.theta(s);
          } else {
            if (s > 1) continue;
            const int flipped = 1 - s;
            e_target = ion == 0 ? flipped * d + s2 : s1 * d + flipped;
            elec = 1.0;
          }
          if (elec == 0.0) continue;
          const int base = e_target * fock_total_ + rem;
          for (int mode = 0; mode < m; ++mode) {
            const double coeff = gt * spec_.eta(ion, mode) * elec;
            if (coeff == 0.0) continue;
            const int n = (rem / strides_[mode]) % spec_.fock;
            // -i * coeff * (a e^{-iwt} + a^dag e^{+iwt})
            const cplx mi_c(0.0, -coeff);
            if (n > 0)
              dst[base - strides_[mode]] += mi_c * std::conj(up[mode]) * std::sqrt(double(n)) * amp;
            if (n + 1 < spec_.fock)
              dst[base + strides_[mode]] += mi_c * up[mode] * std::sqrt(double(n + 1)) * amp;
          }
        }
      }
    }
  }

  // Worst-column population in the two highest Fock levels of any mode.
  double truncation_population(const Eigen::MatrixXcd& state) const {
    const int m = static_cast<int>(spec_.omega.size());
    double worst = 0.0;
    for (int col = 0; col < state.cols(); ++col) {
      double pop = 0.0;
      const cplx* in = state.col(col).data();
      for (int idx = 0; idx < dim_; ++idx) {
        const int rem = idx % fock_total_;
        bool top = false;
        for (int mode = 0; mode < m && !top; ++mode) {
          const int n = (rem / strides_[mode]) % spec_.fock;
          if (n >= spec_.fock - 2) top = true;
        }
        if (top) pop += std::norm(in[idx]);
      }
      worst = std::max(worst, pop);
    }
    return worst;
  }

 private:
  DriveSpec spec_;
  int fock_total_ = 1;
  int dim_ = 0;
  std::vector<int> strides_;
};

OracleResult run_single(const DriveSpec& spec, double tau, long long steps) {
  Integrator integ(spec);
  const int d2 = spec.dim * spec.dim;
  Eigen::MatrixXcd state = Eigen::MatrixXcd::Zero(integ.dim(), d2);
  for (int e = 0; e < d2; ++e) state(e * integ.fock_total(), e) = 1.0;

  Eigen::MatrixXcd k1(integ.dim(), d2), k2(integ.dim(), d2), k3(integ.dim(), d2),
      k4(integ.dim(), d2), tmp(integ.dim(), d2);
  const double h = tau / static_cast<double>(steps);
  for (long long step = 0; step < steps; ++step) {
    const double t = h * static_cast<double>(step);
    integ.derivative(t, state, k1);
    tmp = state + (0.5 * h) * k1;
    integ.derivative(t + 0.5 * h, tmp, k2);
    tmp = state + (0.5 * h) * k2;
    integ.derivative(t + 0.5 * h, tmp, k3);
    tmp = state + h * k3;
    integ.derivative(t + h, tmp, k4);
    state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (integ.truncation_population(state) > spec.leakage_threshold)
      throw TruncationError("motional population reached the top Fock levels; raise the cutoff");
  }

  OracleResult result;
  result.steps = steps;
  result.electronic.resize(d2, d2);
  for (int col = 0; col < d2; ++col)
    for (int e = 0; e < d2; ++e)
      result.electronic(e, col) = state(e * integ.fock_total(), col);
  for (int col = 0; col < d2; ++col)
    result.leakage =
        std::max(result.leakage, 1.0 - result.electronic.col(col).squaredNorm());
  const Eigen::MatrixXcd gram = state.adjoint() * state;
  result.unitarity_defect =
      (gram - Eigen::MatrixXcd::Identity(d2, d2)).cwiseAbs().maxCoeff();
  return result;
}

long long step_count(const PulseShape& pulse, const Eigen::VectorXd& omega,
                     int steps_per_cycle) {
  double fastest = pulse.basis.mu_max() / two_pi;
  for (int i = 0; i < omega.size(); ++i) fastest = std::max(fastest, omega(i) / two_pi);
  const double cycles = fastest * pulse.basis.tau;
  return std::max<long long>(16, static_cast<long long>(std::ceil(cycles * steps_per_cycle)));
}

OracleResult integrate(const PulseShape& pulse, const ModeSet& modes, int ion_j, int ion_k,
                       const OracleConfig& cfg, bool diagonal, const Eigen::VectorXd& theta) {
  pulse.validate();
  if (cfg.fock_cutoff < 4) throw ConfigError("Fock cutoff must be at least 4");
  if (cfg.steps_per_cycle < 4) throw ConfigError("need at least 4 steps per cycle");
  if (cfg.dim < 2) throw ConfigError("qudit dimension must be at least 2");
  if (ion_j < 0 || ion_j >= modes.num_ions() || ion_k < 0 || ion_k >= modes.num_ions() ||
      ion_j == ion_k)
    throw ConfigError("invalid ion pair");
  std::vector<int> included = cfg.included_modes;
  if (included.empty())
    for (int l = 0; l < modes.num_modes(); ++l) included.push_back(l);
  for (int l : included)
    if (l < 0 || l >= modes.num_modes()) throw ConfigError("mode index out of range");
  if (diagonal && theta.size() != cfg.dim)
    throw ConfigError("amplitude profile length must match the qudit dimension");

  DriveSpec spec;
  spec.pulse = &pulse;
  spec.dim = cfg.dim;
  spec.diagonal = diagonal;
  spec.theta = theta;
  spec.fock = cfg.fock_cutoff + 1;
  spec.leakage_threshold = cfg.leakage_threshold;

  if (!cfg.factorized) {
    spec.omega.resize(included.size());
    spec.eta.resize(2, included.size());
    for (std::size_t i = 0; i < included.size(); ++i) {
      spec.omega(i) = modes.omega(included[i]);
      spec.eta(0, i) = modes.eta(included[i], ion_j);
      spec.eta(1, i) = modes.eta(included[i], ion_k);
    }
    return run_single(spec, pulse.basis.tau, step_count(pulse, spec.omega, cfg.steps_per_cycle));
  }

  // The per-mode coupling families commute, so the propagator is an exact
  // product over modes; compose the ground-projected blocks.
  OracleResult total;
  const int d2 = cfg.dim * cfg.dim;
  total.electronic = Eigen::MatrixXcd::Identity(d2, d2);
  for (int l : included) {
    spec.omega = Eigen::VectorXd::Constant(1, modes.omega(l));
    spec.eta.resize(2, 1);
    spec.eta(0, 0) = modes.eta(l, ion_j);
    spec.eta(1, 0) = modes.eta(l, ion_k);
    OracleResult one =
        run_single(spec, pulse.basis.tau, step_count(pulse, spec.omega, cfg.steps_per_cycle));
    total.electronic = one.electronic * total.electronic;
    total.leakage += one.leakage;
    total.unitarity_defect = std::max(total.unitarity_defect, one.unitarity_defect);
    total.steps += one.steps;
  }
  return total;
}

}  // namespace

OracleResult integrate_ms(const PulseShape& pulse, const ModeSet& modes, int ion_j, int ion_k,
                          const OracleConfig& cfg) {
  return integrate(pulse, modes, ion_j, ion_k, cfg, false, Eigen::VectorXd());
}

OracleResult integrate_ls(const PulseShape& pulse, const LSAmplitudeProfile& profile,
                          const ModeSet& modes, int ion_j, int ion_k, const OracleConfig& cfg) {
  profile.validate();
  if (profile.dim() != cfg.dim)
    throw ConfigError("amplitude profile length must match the qudit dimension");
  return integrate(pulse, modes, ion_j, ion_k, cfg, true, profile.theta);
}

}  // namespace qgt
