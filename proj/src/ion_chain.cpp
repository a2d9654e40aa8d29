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

#include "qgt/ion_chain.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qgt/constants.hpp"
#include "qgt/errors.hpp"

namespace qgt {

void TrapConfig::validate() const {
  if (num_ions < 1) throw ConfigError("num_ions must be >= 1");
  if (!(axial_freq_hz > 0.0)) throw ConfigError("axial_freq_hz must be > 0");
  if (!(radial_freq_hz > 0.0)) throw ConfigError("radial_freq_hz must be > 0");
  if (!(ion_mass_kg > 0.0)) throw ConfigError("ion_mass_kg must be > 0");
  if (!(eff_wavevector > 0.0)) throw ConfigError("eff_wavevector must be > 0");
}

ModeSet ModeSet::subset(const std::vector<int>& mode_indices) const {
  ModeSet out;
  const int k = static_cast<int>(mode_indices.size());
  out.omega.resize(k);
  out.b.resize(k, b.cols());
  out.eta.resize(k, eta.cols());
  for (int i = 0; i < k; ++i) {
    const int l = mode_indices[i];
    out.omega(i) = omega(l);
    out.b.row(i) = b.row(l);
    out.eta.row(i) = eta.row(l);
  }
  return out;
}

namespace {

// Force balance: F_j(u) = u_j - sum_{k<j} (u_j-u_k)^-2 + sum_{k>j} (u_j-u_k)^-2.
Eigen::VectorXd force_residual(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::VectorXd f = u;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = u(j) - u(k);
      f(j) -= (d > 0.0 ? 1.0 : -1.0) / (d * d);
    }
  }
  return f;
}

// Jacobian of the force balance; identical in structure to the axial Hessian.
Eigen::MatrixXd force_jacobian(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double w = 2.0 / std::pow(std::abs(u(j) - u(k)), 3);
      jac(j, j) += w;
      jac(j, k) -= w;
    }
  }
  return jac;
}

bool strictly_ascending(const Eigen::VectorXd& u) {
  for (int j = 1; j < u.size(); ++j) {
    if (!(u(j) > u(j - 1))) return false;
  }
  return true;
}

// Inverse-cube pair couplings shared by both branch Hessians.
Eigen::MatrixXd pair_coupling(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double c = 1.0 / std::pow(std::abs(u(j) - u(k)), 3);
      w(j, k) = c;
      w(k, j) = c;
    }
  }
  return w;
}

void fix_mode_signs(Eigen::MatrixXd& rows) {
  for (int l = 0; l < rows.rows(); ++l) {
    const double scale = rows.row(l).cwiseAbs().maxCoeff();
    for (int j = 0; j < rows.cols(); ++j) {
      const double v = rows(l, j);
      if (std::abs(v) > 1e-12 * scale) {
        if (v < 0.0) rows.row(l) *= -1.0;
        break;
      }
    }
  }
}

}  // namespace

Eigen::VectorXd equilibrium_positions(int num_ions) {
  if (num_ions < 1) throw ConfigError("num_ions must be >= 1");
  if (num_ions == 1) return Eigen::VectorXd::Zero(1);

  // Quasi-uniform initial guess with the empirical minimum-spacing law.
  const double spacing = 2.018 / std::pow(static_cast<double>(num_ions), 0.559);
  Eigen::VectorXd u(num_ions);
  for (int j = 0; j < num_ions; ++j) {
    u(j) = spacing * (j - 0.5 * (num_ions - 1));
  }

  const int max_iter = 200;
  double resid = force_residual(u).cwiseAbs().maxCoeff();
  for (int it = 0; it < max_iter && resid > 1e-14; ++it) {
    const Eigen::VectorXd f = force_residual(u);
    const Eigen::VectorXd step = force_jacobian(u).ldlt().solve(f);
    double damp = 1.0;
    Eigen::VectorXd trial = u - damp * step;
    double trial_resid = strictly_ascending(trial)
                             ? force_residual(trial).cwiseAbs().maxCoeff()
                             : std::numeric_limits<double>::infinity();
    while (trial_resid >= resid && damp > 1e-6) {
      damp *= 0.5;
      trial = u - damp * step;
      trial_resid = strictly_ascending(trial)
                        ? force_residual(trial).cwiseAbs().maxCoeff()
                        : std::numeric_limits<double>::infinity();
    }
    u = trial;
    resid = trial_resid;
  }
  if (!(resid <= 1e-12)) {
    std::ostringstream msg;
    msg << "equilibrium solve stalled at residual " << resid << " for N=" << num_ions;
    throw ConvergenceError(msg.str());
  }

  // The exact solution is antisymmetric about the centre; enforce it so
  // downstream symmetry arguments hold to machine precision.
  Eigen::VectorXd sym(num_ions);
  for (int j = 0; j < num_ions; ++j) sym(j) = 0.5 * (u(j) - u(num_ions - 1 - j));
  if (force_residual(sym).cwiseAbs().maxCoeff() > 1e-12) {
    throw ConvergenceError("antisymmetrised equilibrium violates force balance");
  }
  return sym;
}

ModeSet normal_modes(const TrapConfig& trap) {
  trap.validate();
  const int n = trap.num_ions;
  const Eigen::VectorXd u = equilibrium_positions(n);
  const Eigen::MatrixXd w = pair_coupling(u);
  const Eigen::VectorXd row_sums = w.rowwise().sum();

  // Dimensionless Hessian in units of (2 pi nu_z)^2.
  Eigen::MatrixXd hess(n, n);
  if (trap.branch == Branch::axial) {
    hess = -2.0 * w;
    hess.diagonal() = Eigen::VectorXd::Ones(n) + 2.0 * row_sums;
  } else {
    const double ratio = trap.radial_freq_hz / trap.axial_freq_hz;
    hess = w;
    hess.diagonal() = ratio * ratio * Eigen::VectorXd::Ones(n) - row_sums;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hess);
  const Eigen::VectorXd lambda = es.eigenvalues();  // ascending
  const double nu_z_angular = two_pi * trap.axial_freq_hz;

  if (trap.branch == Branch::radial && lambda(0) <= 0.0) {
    std::ostringstream msg;
    msg << "radial branch unstable: squared mode frequency "
        << lambda(0) * trap.axial_freq_hz * trap.axial_freq_hz
        << " Hz^2 is non-positive (zig-zag threshold exceeded)";
    throw InstabilityError(msg.str());
  }

  ModeSet modes;
  modes.omega.resize(n);
  modes.b.resize(n, n);
  for (int l = 0; l < n; ++l) {
    // Reverse so frequencies are descending.
    const int src = n - 1 - l;
    modes.omega(l) = nu_z_angular * std::sqrt(lambda(src));
    modes.b.row(l) = es.eigenvectors().col(src).transpose();
  }
  fix_mode_signs(modes.b);

  modes.eta.resize(n, n);
  for (int l = 0; l < n; ++l) {
    const double scale =
        trap.eff_wavevector * std::sqrt(hbar / (2.0 * trap.ion_mass_kg * modes.omega(l)));
    modes.eta.row(l) = scale * modes.b.row(l);
  }
  return modes;
}

}  // namespace qgt
