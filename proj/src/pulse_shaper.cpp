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

#include "qgt/pulse_shaper.hpp"

#include <cstdio>
#include <cstdlib>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <sstream>

#include "qgt/detail/mode_kernel.hpp"
#include "qgt/errors.hpp"
#include "qgt/trig_integrals.hpp"

namespace qgt {
namespace {

using cplx = std::complex<double>;

double binomial(int k, int j) {
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c *= static_cast<double>(k - i + 1) / i;
  return c;
}

// k-th omega-derivative of integral of sin(mu t) sin(omega (tau/2 - t)) dt.
double decoupling_entry(int k, double mu, double omega, double tau) {
  cplx acc(0.0, 0.0);
  for (int irho = 0; irho < 2; ++irho) {
    const double rho = irho == 0 ? 1.0 : -1.0;
    const cplx carrier = std::exp(cplx(0.0, rho * omega * tau / 2.0));
    cplx inner(0.0, 0.0);
    for (int j = 0; j <= k; ++j) {
      const cplx half = std::pow(cplx(0.0, rho * tau / 2.0), k - j);
      const cplx chain = std::pow(cplx(0.0, -rho), j);
      inner += binomial(k, j) * half * chain * trig::exp_moment(j, mu - rho * omega, tau);
    }
    acc += rho * carrier * inner;
  }
  return -0.5 * acc.real();
}

// Orthonormal residual of v against the columns of basis(: , 0..count-1).
Eigen::VectorXd residual_against(const Eigen::MatrixXd& basis, int count,
                                 const Eigen::VectorXd& v) {
  Eigen::VectorXd r = v;
  if (count > 0) {
    const auto b = basis.leftCols(count);
    r -= b * (b.transpose() * v);
    // Second pass restores orthogonality lost to rounding.
    r -= b * (b.transpose() * r);
  }
  return r;
}

struct SqpOutcome {
  Eigen::VectorXd y;
  bool converged = false;
  int iterations = 0;
};

// Minimize y.y subject to y' B_c y = t_c for the given quadratic forms.
// Levenberg-Marquardt iteration on the KKT residual
//   F = [ 2y - sum_c 2 lambda_c B_c y ; c(y) ]
// with direction (J'J + beta D) d = -J'F.  The damped direction stays a
// descent direction for ||F||^2 even where J is singular, which happens
// structurally when two constraints coincide or the minimizer is degenerate.
SqpOutcome sqp_solve(const std::vector<Eigen::MatrixXd>& b, const Eigen::VectorXd& targets,
                     const Eigen::VectorXd& y0, double tol_c, int max_iters) {
  const int n = static_cast<int>(y0.size());
  const int m = static_cast<int>(b.size());
  SqpOutcome out;
  out.y = y0;

  Eigen::VectorXd y = y0;
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);

  auto kkt_residual = [&](const Eigen::VectorXd& yv, const Eigen::VectorXd& lv) {
    Eigen::VectorXd f(n + m);
    f.head(n) = 2.0 * yv;
    for (int i = 0; i < m; ++i) {
      const Eigen::VectorXd bi = b[i] * yv;
      f.head(n) -= 2.0 * lv(i) * bi;
      f(n + i) = yv.dot(bi) - targets(i);
    }
    return f;
  };

  static const bool trace = std::getenv("QGT_SQP_TRACE") != nullptr;

  // Phase 1: pure feasibility by Gauss-Newton on c(y).  Solving the KKT
  // system from an infeasible start risks the spurious attractor y = 0,
  // where the residual norm is stationary but no constraint holds; the
  // feasibility residual alone has only a saddle there, so this phase
  // escapes it and hands phase 2 a point on the constraint manifold.
  {
    double beta = 1e-10;
    bool feasible = false;
    for (int iter = 0; iter < max_iters; ++iter) {
      Eigen::VectorXd r(m);
      Eigen::MatrixXd jc(m, n);
      for (int i = 0; i < m; ++i) {
        const Eigen::VectorXd bi = b[i] * y;
        r(i) = y.dot(bi) - targets(i);
        jc.row(i) = 2.0 * bi.transpose();
      }
      if (trace)
        std::fprintf(stderr, "feas %d |c|=%.3e beta=%.1e |y|=%.3e\n", iter,
                     r.cwiseAbs().maxCoeff(), beta, y.norm());
      if (r.cwiseAbs().maxCoeff() < tol_c) {
        feasible = true;
        break;
      }
      const Eigen::MatrixXd jjt = jc * jc.transpose();
      const double diag_scale = std::max(jjt.diagonal().maxCoeff(), 1e-300);
      const Eigen::VectorXd d =
          -jc.transpose() *
          (jjt + beta * diag_scale * Eigen::MatrixXd::Identity(m, m)).ldlt().solve(r);
      if (!d.allFinite()) {
        beta *= 10.0;
        if (beta > 1e8) break;
        continue;
      }
      const double psi0 = r.squaredNorm();
      double alpha = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 40; ++ls) {
        const Eigen::VectorXd y_t = y + alpha * d;
        double psi = 0.0;
        for (int i = 0; i < m; ++i) {
          const double ci = y_t.dot(b[i] * y_t) - targets(i);
          psi += ci * ci;
        }
        if (psi <= (1.0 - 1e-4 * alpha) * psi0) {
          y = y_t;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (accepted) {
        beta = std::max(alpha == 1.0 ? beta * 0.25 : beta * 2.0, 1e-12);
        // The target constraint is a homogeneous quadratic, so a rescale
        // re-satisfies it exactly.  Pinning it keeps the iterate off the
        // saddle of the residual norm at y = 0, where damped Gauss-Newton
        // would otherwise stall with the target residual unreduced.
        const double t0 = y.dot(b[0] * y);
        if (t0 * targets(0) > 0.0) {
          const double s = std::sqrt(targets(0) / t0);
          if (s <= 10.0) y *= s;
        }
      } else {
        beta *= 10.0;
        if (beta > 1e8) break;
      }
    }
    if (!feasible) {
      out.y = y;
      return out;  // not converged
    }
  }

  // Least-squares initial multipliers from the stationarity condition.
  {
    Eigen::MatrixXd jt(n, m);
    for (int i = 0; i < m; ++i) jt.col(i) = 2.0 * (b[i] * y);
    lambda = (jt.transpose() * jt +
              1e-14 * jt.squaredNorm() * Eigen::MatrixXd::Identity(m, m))
                 .ldlt()
                 .solve(jt.transpose() * (2.0 * y));
    if (!lambda.allFinite()) lambda.setZero();
  }

  double beta = 1e-10;
  for (int iter = 0; iter < max_iters; ++iter) {
    out.iterations = iter + 1;
    const Eigen::VectorXd f = kkt_residual(y, lambda);
    const double norm_c = f.tail(m).cwiseAbs().maxCoeff();
    const double norm_g = f.head(n).cwiseAbs().maxCoeff();
    const double tol_g = 1e-9 * (1.0 + 2.0 * y.norm());
    if (trace)
      std::fprintf(stderr, "iter %d |c|=%.3e |g|=%.3e beta=%.1e |y|=%.3e\n", iter, norm_c,
                   norm_g, beta, y.norm());
    if (norm_c < tol_c && norm_g < tol_g) {
      out.y = y;
      out.converged = true;
      return out;
    }

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n + m, n + m);
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) * 2.0;
    std::vector<Eigen::VectorXd> by(m);
    for (int i = 0; i < m; ++i) {
      by[i] = b[i] * y;
      h -= 2.0 * lambda(i) * b[i];
    }
    jac.topLeftCorner(n, n) = h;
    for (int i = 0; i < m; ++i) {
      jac.block(0, n + i, n, 1) = -2.0 * by[i];
      jac.block(n + i, 0, 1, n) = 2.0 * by[i].transpose();
    }

    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtf = jac.transpose() * f;
    const double diag_scale = std::max(jtj.diagonal().maxCoeff(), 1e-300);
    if (jtf.cwiseAbs().maxCoeff() <= 1e-14 * (1.0 + f.norm()) * std::sqrt(diag_scale))
      break;  // local minimum of the residual norm, not a root

    const Eigen::VectorXd d =
        (jtj + beta * diag_scale * Eigen::MatrixXd::Identity(n + m, n + m))
            .ldlt()
            .solve(-jtf);
    if (!d.allFinite()) {
      beta *= 10.0;
      if (beta > 1e8) break;
      continue;
    }

    const double psi0 = f.squaredNorm();
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      const Eigen::VectorXd y_t = y + alpha * d.head(n);
      const Eigen::VectorXd l_t = lambda + alpha * d.tail(m);
      const double psi = kkt_residual(y_t, l_t).squaredNorm();
      if (psi <= (1.0 - 1e-4 * alpha) * psi0) {
        y = y_t;
        lambda = l_t;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (accepted) {
      beta = std::max(alpha == 1.0 ? beta * 0.25 : beta * 2.0, 1e-12);
    } else {
      beta *= 10.0;
      if (beta > 1e8) break;  // stalled
    }
  }
  out.y = y;
  return out;
}

// Extreme value of the target form on the intersection of the zero cones of
// the other forms, by minimizing h(nu) = lambda_max(sign*b0 - sum nu_i b_i).
// h is convex with subgradient -y' b_i y at the top eigenvector y, and for
// EVERY nu it upper-bounds the cone maximum of sign*b0, so any non-positive
// h certifies infeasibility of a sign-correct target.
struct ConeExtremum {
  Eigen::VectorXd y;
  double value = 0.0;  // sign*b0 form at y
  double bound = 0.0;  // smallest h seen: upper bound on the cone maximum
};

ConeExtremum cone_extremum(const std::vector<Eigen::MatrixXd>& b, double sign) {
  const int n = static_cast<int>(b[0].rows());
  const int m = static_cast<int>(b.size());
  const Eigen::MatrixXd a0 = sign * b[0];

  double h_best = std::numeric_limits<double>::infinity();
  auto top = [&](const Eigen::VectorXd& nu, Eigen::VectorXd* vec) {
    Eigen::MatrixXd a = a0;
    for (int i = 1; i < m; ++i) a -= nu(i - 1) * b[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    *vec = eig.eigenvectors().col(n - 1);
    h_best = std::min(h_best, eig.eigenvalues()(n - 1));
    return eig.eigenvalues()(n - 1);
  };

  Eigen::VectorXd nu = Eigen::VectorXd::Zero(m - 1);
  Eigen::VectorXd y;
  if (m == 2) {
    // One cone: bisection on the nonincreasing derivative g(nu) = y' b1 y.
    auto g_at = [&](double v) {
      Eigen::VectorXd vec;
      top(Eigen::VectorXd::Constant(1, v), &vec);
      y = vec;
      return y.dot(b[1] * y);
    };
    double span = 4.0 * b[0].norm() / std::max(b[1].norm(), 1e-300);
    double lo = -span, hi = span;
    double g_lo = g_at(lo), g_hi = g_at(hi);
    for (int grow = 0; grow < 60 && g_lo < 0.0; ++grow) {
      lo *= 4.0;
      g_lo = g_at(lo);
    }
    for (int grow = 0; grow < 60 && g_hi > 0.0; ++grow) {
      hi *= 4.0;
      g_hi = g_at(hi);
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (std::abs(lo) + std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g_at(mid) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    g_at(0.5 * (lo + hi));
  } else {
    // Two cones: subgradient descent with diminishing steps.
    Eigen::VectorXd vec;
    double run_best = top(nu, &vec);
    Eigen::VectorXd best_nu = nu;
    const double ref = std::max(b[0].norm(), 1e-300);
    for (int it = 0; it < 120; ++it) {
      Eigen::VectorXd grad(m - 1);
      for (int i = 1; i < m; ++i) grad(i - 1) = -vec.dot(b[i] * vec);
      const double gn = grad.norm();
      if (gn < 1e-16 * ref) break;
      nu -= (0.5 * ref / (gn * std::sqrt(it + 1.0))) * grad;
      const double h = top(nu, &vec);
      if (h < run_best) {
        run_best = h;
        best_nu = nu;
      }
    }
    top(best_nu, &vec);
    y = vec;
  }

  ConeExtremum out;
  out.y = y;
  out.value = y.dot(a0 * y);
  out.bound = h_best;
  return out;
}

}  // namespace

const Eigen::MatrixXd& CouplingMatrices::phase_matrix(ChiIndex which) const {
  switch (which) {
    case ChiIndex::jj:
      return s11;
    case ChiIndex::jk:
      return s12;
    default:
      return s22;
  }
}

Eigen::MatrixXd CouplingMatrices::q_matrix(ChiIndex which, int mode_l) const {
  if (mode_l < 0 || mode_l >= num_modes()) throw ConfigError("mode index out of range");
  return pair_weight(static_cast<int>(which), mode_l) * sens_base[mode_l];
}

const CouplingMatrices::SensSpectrum& CouplingMatrices::sens_spectrum(int mode_l) const {
  if (mode_l < 0 || mode_l >= num_modes()) throw ConfigError("mode index out of range");
  if (spectra_.empty()) spectra_.resize(num_modes());
  if (!spectra_[mode_l]) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sens_base[mode_l]);
    if (eig.info() != Eigen::Success)
      throw ConvergenceError("sensitivity eigendecomposition failed");
    const int p = num_tones();
    std::vector<int> order(p);
    for (int i = 0; i < p; ++i) order[i] = i;
    const Eigen::VectorXd& vals = eig.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](int a, int bI) {
      return std::abs(vals(a)) > std::abs(vals(bI));
    });
    SensSpectrum spec;
    spec.eigenvalues.resize(p);
    spec.eigenvectors.resize(p, p);
    for (int i = 0; i < p; ++i) {
      spec.eigenvalues(i) = vals(order[i]);
      Eigen::VectorXd v = eig.eigenvectors().col(order[i]);
      int pivot = 0;
      v.cwiseAbs().maxCoeff(&pivot);
      if (v(pivot) < 0.0) v = -v;
      spec.eigenvectors.col(i) = v;
    }
    spectra_[mode_l] = std::move(spec);
  }
  return *spectra_[mode_l];
}

CouplingMatrices build_coupling_matrices(const PulseBasis& basis, const ModeSet& modes,
                                         int ion_j, int ion_k, int moment_order) {
  basis.validate();
  if (ion_j < 0 || ion_j >= modes.num_ions() || ion_k < 0 || ion_k >= modes.num_ions())
    throw ConfigError("ion index out of range");
  if (ion_j == ion_k) throw ConfigError("entangled ion indices must differ");
  if (moment_order < 0) throw ConfigError("moment order must be non-negative");

  const int n_modes = modes.num_modes();
  const int p = basis.num_tones;
  const double tau = basis.tau;

  CouplingMatrices out;
  out.basis = basis;
  out.modes = modes;
  out.ion_j = ion_j;
  out.ion_k = ion_k;
  out.omega = modes.omega;
  out.decoupling.resize(n_modes, p);
  out.moment.assign(moment_order, Eigen::MatrixXd(n_modes, p));
  out.s11 = Eigen::MatrixXd::Zero(p, p);
  out.s12 = Eigen::MatrixXd::Zero(p, p);
  out.s22 = Eigen::MatrixXd::Zero(p, p);
  out.sens_base.reserve(n_modes);
  out.pair_weight.resize(3, n_modes);

  for (int l = 0; l < n_modes; ++l) {
    const double w = modes.omega(l);
    for (int q = 0; q < p; ++q) {
      const double mu = basis.mu(q);
      out.decoupling(l, q) = decoupling_entry(0, mu, w, tau);
      for (int k = 1; k <= moment_order; ++k)
        out.moment[k - 1](l, q) = decoupling_entry(k, mu, w, tau);
    }

    detail::ModeKernel kernel(basis, w, /*with_derivative=*/true);
    Eigen::MatrixXd sym(p, p), dsym(p, p);
    for (int m = 0; m < p; ++m) {
      for (int n = m; n < p; ++n) {
        double t_nm, dt_nm, t_mn, dt_mn;
        kernel.entry(n, m, t_nm, dt_nm);
        if (n == m) {
          sym(n, m) = t_nm;
          dsym(n, m) = dt_nm;
          continue;
        }
        kernel.entry(m, n, t_mn, dt_mn);
        const double s = 0.5 * (t_nm + t_mn);
        const double ds = 0.5 * (dt_nm + dt_mn);
        sym(n, m) = sym(m, n) = s;
        dsym(n, m) = dsym(m, n) = ds;
      }
    }

    const double ej = modes.eta(l, ion_j);
    const double ek = modes.eta(l, ion_k);
    out.pair_weight(0, l) = ej * ej;
    out.pair_weight(1, l) = ej * ek;
    out.pair_weight(2, l) = ek * ek;
    out.s11 += out.pair_weight(0, l) * sym;
    out.s12 += out.pair_weight(1, l) * sym;
    out.s22 += out.pair_weight(2, l) * sym;
    out.sens_base.push_back(dsym - sym / w);
  }
  return out;
}

int StabilizationConfig::projected_columns(int num_modes) const {
  return static_cast<int>(phases.size()) * num_modes * m_count + num_modes * k_moments;
}

void StabilizationConfig::validate(int num_tones, int num_modes) const {
  if (m_count < 0 || k_moments < 0)
    throw ConfigError("stabilization counts must be non-negative");
  std::vector<ChiIndex> sorted = phases;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConfigError("stabilized phase list contains duplicates");
  if (m_count > 0 && phases.empty())
    throw ConfigError("projection count positive but no phases selected");
  const int cols = projected_columns(num_modes);
  const int budget = num_tones - (num_modes + 3) - 1;
  if (cols > budget) {
    std::ostringstream msg;
    msg << "infeasible stabilization: " << phases.size() << " phases x " << num_modes
        << " modes x " << m_count << " projections + " << num_modes << " x " << k_moments
        << " moments = " << cols << " columns exceeds " << num_tones << " tones - ("
        << num_modes << " decoupling rows + 3 phase constraints) - 1 = " << budget;
    throw InfeasibleError(msg.str());
  }
}

Eigen::MatrixXd projection_basis(const CouplingMatrices& matrices,
                                 const StabilizationConfig& cfg) {
  cfg.validate(matrices.num_tones(), matrices.num_modes());
  const int n_modes = matrices.num_modes();
  const int p = matrices.num_tones();
  if (cfg.k_moments > matrices.moment_order())
    throw ConfigError("moment order exceeds the prepared derivative matrices");

  std::vector<ChiIndex> selected = cfg.phases;
  std::sort(selected.begin(), selected.end());

  Eigen::MatrixXd r(p, cfg.projected_columns(n_modes));
  int col = 0;
  if (cfg.m_count > 0)
    for (ChiIndex which : selected) {
      (void)which;  // shared mode factor: identical eigenvectors for all pairs
      for (int l = 0; l < n_modes; ++l) {
        const auto& spec = matrices.sens_spectrum(l);
        for (int i = 0; i < cfg.m_count; ++i) r.col(col++) = spec.eigenvectors.col(i);
      }
    }
  for (int k = 1; k <= cfg.k_moments; ++k)
    for (int l = 0; l < n_modes; ++l) r.col(col++) = matrices.moment[k - 1].row(l).transpose();
  return r;
}

OptimizationResult optimize_pulse(const CouplingMatrices& matrices, double target_chi,
                                  const StabilizationConfig& cfg, int num_starts,
                                  unsigned seed) {
  const int p = matrices.num_tones();
  const int n_modes = matrices.num_modes();
  cfg.validate(p, n_modes);
  if (cfg.k_moments > matrices.moment_order())
    throw ConfigError("moment order exceeds the prepared derivative matrices");
  if (num_starts < 1) throw ConfigError("need at least one start");

  OptimizationResult result;
  result.pulse.basis = matrices.basis;
  result.pulse.amplitudes = Eigen::VectorXd::Zero(p);

  if (target_chi == 0.0) {
    result.achieved = ms_phases(result.pulse, matrices.modes, matrices.ion_j, matrices.ion_k);
    result.converged = true;
    return result;
  }

  // Linear conditions: decoupling rows, moment rows, and the claimed
  // stabilization directions.  Directions are claimed per (phase, mode)
  // group in descending sensitivity order, skipping directions already
  // claimed by an earlier group, so each group removes m_count fresh
  // degrees of freedom even when the groups share eigenvectors.
  std::vector<ChiIndex> selected = cfg.phases;
  std::sort(selected.begin(), selected.end());
  Eigen::MatrixXd claimed(p, static_cast<int>(selected.size()) * n_modes * cfg.m_count);
  int n_claimed = 0;
  if (cfg.m_count > 0)
    for (ChiIndex which : selected) {
      (void)which;
      for (int l = 0; l < n_modes; ++l) {
        const auto& spec = matrices.sens_spectrum(l);
        int taken = 0;
        for (int i = 0; i < p && taken < cfg.m_count; ++i) {
          Eigen::VectorXd res = residual_against(claimed, n_claimed, spec.eigenvectors.col(i));
          const double norm = res.norm();
          if (norm < 1e-6) continue;  // already represented
          claimed.col(n_claimed++) = res / norm;
          ++taken;
        }
      }
    }

  const int n_rows = n_modes * (1 + cfg.k_moments) + n_claimed;
  Eigen::MatrixXd a_lin(n_rows, p);
  int row = 0;
  for (int l = 0; l < n_modes; ++l) {
    const Eigen::VectorXd r = matrices.decoupling.row(l).transpose();
    a_lin.row(row++) = (r / std::max(r.norm(), 1e-300)).transpose();
  }
  for (int k = 1; k <= cfg.k_moments; ++k)
    for (int l = 0; l < n_modes; ++l) {
      const Eigen::VectorXd r = matrices.moment[k - 1].row(l).transpose();
      a_lin.row(row++) = (r / std::max(r.norm(), 1e-300)).transpose();
    }
  for (int c = 0; c < n_claimed; ++c) a_lin.row(row++) = claimed.col(c).transpose();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a_lin.transpose());
  const int rank = static_cast<int>(qr.rank());
  const int n_red = p - rank;
  if (n_red < 4)
    throw InfeasibleError("constraint elimination leaves fewer than 4 degrees of freedom");
  Eigen::MatrixXd q_full = qr.householderQ();
  const Eigen::MatrixXd z = q_full.rightCols(n_red);

  std::vector<Eigen::MatrixXd> b;
  b.push_back(z.transpose() * matrices.s12 * z);
  b.push_back(z.transpose() * matrices.s11 * z);
  b.push_back(z.transpose() * matrices.s22 * z);
  for (auto& m : b) m = ((m + m.transpose()) * 0.5).eval();
  // For a mirror-symmetric ion pair the two single-ion forms coincide, which
  // would duplicate a constraint and make the KKT system singular everywhere.
  if ((b[2] - b[1]).norm() <= 1e-12 * std::max(b[1].norm(), b[2].norm())) b.pop_back();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig12(b[0]);
  if (eig12.info() != Eigen::Success)
    throw ConvergenceError("reduced entangling form eigendecomposition failed");
  const double sign = target_chi > 0.0 ? 1.0 : -1.0;
  int top = -1;
  double best_val = 0.0;
  for (int i = 0; i < n_red; ++i) {
    const double v = sign * eig12.eigenvalues()(i);
    if (v > best_val) {
      best_val = v;
      top = i;
    }
  }
  if (top < 0)
    throw InfeasibleError("entangling form cannot reach the target sign in the null space");

  const double scale = std::sqrt(std::abs(target_chi) / best_val);
  for (auto& m : b) m *= scale * scale;
  Eigen::VectorXd targets = Eigen::VectorXd::Zero(static_cast<int>(b.size()));
  targets(0) = target_chi;
  const double tol_c = 1e-12 * std::max(1.0, std::abs(target_chi));

  Eigen::VectorXd start0 = eig12.eigenvectors().col(top);
  {
    int pivot = 0;
    start0.cwiseAbs().maxCoeff(&pivot);
    if (start0(pivot) < 0.0) start0 = -start0;
  }

  std::mt19937 gen(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Start points on the single-ion zero cone {y b1 y = 0} with the target
  // sign of the entangling form, rescaled to hit the target exactly.  The
  // constraints can shrink the sign-correct region to a thin sliver, so
  // random starts alone often miss its basin of attraction.
  auto cone_start = [&]() -> Eigen::VectorXd {
    for (int attempt = 0; attempt < 200; ++attempt) {
      Eigen::VectorXd u(n_red), v(n_red);
      for (int i = 0; i < n_red; ++i) {
        u(i) = gauss(gen);
        v(i) = gauss(gen);
      }
      const double a2 = v.dot(b[1] * v);
      const double a1 = 2.0 * u.dot(b[1] * v);
      const double a0 = u.dot(b[1] * u);
      const double disc = a1 * a1 - 4.0 * a2 * a0;
      if (disc < 0.0 || std::abs(a2) < 1e-300) continue;
      for (double sgn : {1.0, -1.0}) {
        const double t = (-a1 + sgn * std::sqrt(disc)) / (2.0 * a2);
        const Eigen::VectorXd y = u + t * v;
        const double val = y.dot(b[0] * y);
        if (val * target_chi > 0.0) return y * std::sqrt(target_chi / val);
      }
    }
    // Fallback: random direction rescaled onto the entangling target.
    Eigen::VectorXd y0(n_red);
    for (int i = 0; i < n_red; ++i) y0(i) = gauss(gen);
    y0.normalize();
    const double t0 = y0.dot(b[0] * y0);
    if (std::abs(t0) > 1e-300 * std::abs(target_chi))
      y0 *= std::sqrt(std::abs(target_chi / t0));
    return y0;
  };

  SqpOutcome best;
  double best_power = 0.0;
  int converged_count = 0;
  auto consider = [&](const Eigen::VectorXd& y0) {
    SqpOutcome run_out = sqp_solve(b, targets, y0, tol_c, 200);
    if (!run_out.converged) return;
    ++converged_count;
    const double power = run_out.y.norm();
    if (best.y.size() == 0 || power < best_power) {
      best = run_out;
      best_power = power;
    }
  };
  for (int run = 0; run < num_starts; ++run)
    consider(run == 0 ? start0 : cone_start());

  if (converged_count == 0) {
    // Rescue: when the sign-correct region on the zero cones is a thin
    // sliver, sampled starts miss it.  The cone extremum of the entangling
    // form locates it deterministically, and its eigenvalue bound certifies
    // infeasibility when the target sign is unreachable there.
    const ConeExtremum ext = cone_extremum(b, sign);
    if (ext.bound <= 0.0)
      throw InfeasibleError(
          "entangling form cannot reach the target sign on the stabilized subspace");
    if (ext.value > 0.0) consider(ext.y * std::sqrt(std::abs(target_chi) / ext.value));
  }

  result.starts_converged = converged_count;
  if (best.y.size() == 0) {
    // No run converged: report the zero pulse with converged = false.
    result.achieved = ms_phases(result.pulse, matrices.modes, matrices.ion_j, matrices.ion_k);
    result.converged = false;
    return result;
  }

  result.pulse.amplitudes = scale * (z * best.y);
  result.iterations = best.iterations;
  result.achieved = ms_phases(result.pulse, matrices.modes, matrices.ion_j, matrices.ion_k);
  result.residual_phase =
      std::max({std::abs(result.achieved.chi_jk - target_chi), std::abs(result.achieved.chi_jj),
                std::abs(result.achieved.chi_kk)});
  std::vector<int> pair = {matrices.ion_j, matrices.ion_k};
  result.residual_alpha = max_abs_displacement(result.pulse, matrices.modes, pair);
  result.power_norm = result.pulse.amplitudes.norm();
  result.residual_linear = (matrices.decoupling * result.pulse.amplitudes).cwiseAbs().maxCoeff() /
                           std::max(result.power_norm, 1e-300);
  result.omega_max = max_rabi(result.pulse).value;
  result.converged = result.residual_phase <= 1e-9 * std::max(1.0, std::abs(target_chi)) &&
                     result.residual_alpha <= 1e-8 && result.residual_linear <= 1e-8;
  return result;
}

OptimizationResult optimize_pulse(const PulseBasis& basis, const ModeSet& modes, int ion_j,
                                  int ion_k, double target_chi, const StabilizationConfig& cfg,
                                  int num_starts, unsigned seed) {
  const CouplingMatrices matrices =
      build_coupling_matrices(basis, modes, ion_j, ion_k, cfg.k_moments);
  return optimize_pulse(matrices, target_chi, cfg, num_starts, seed);
}

ScanResult sensitivity_scan(const PulseShape& pulse, const TrapConfig& trap, int ion_j,
                            int ion_k, const std::vector<double>& offsets_hz) {
  trap.validate();
  const ModeSet nominal_modes = normal_modes(trap);
  ScanResult out;
  out.nominal = ms_phases(pulse, nominal_modes, ion_j, ion_k);
  out.points.reserve(offsets_hz.size());
  const std::vector<int> pair = {ion_j, ion_k};
  for (double offset : offsets_hz) {
    TrapConfig shifted = trap;
    shifted.radial_freq_hz += offset;
    const ModeSet modes = normal_modes(shifted);
    const MSPhaseSet ph = ms_phases(pulse, modes, ion_j, ion_k);
    ScanPoint pt;
    pt.offset_hz = offset;
    pt.dchi_jj = ph.chi_jj - out.nominal.chi_jj;
    pt.dchi_jk = ph.chi_jk - out.nominal.chi_jk;
    pt.dchi_kk = ph.chi_kk - out.nominal.chi_kk;
    pt.max_alpha = max_abs_displacement(pulse, modes, pair);
    out.points.push_back(pt);
  }
  return out;
}

Eigen::VectorXd existence_theta(const ModeSet& modes, int ion_j, int ion_k,
                                double target_chi) {
  const int n = modes.num_modes();
  if (n < 2) throw ConfigError("phase budget needs at least two modes");
  if (ion_j < 0 || ion_j >= modes.num_ions() || ion_k < 0 || ion_k >= modes.num_ions())
    throw ConfigError("ion index out of range");
  if (ion_j == ion_k) throw ConfigError("entangled ion indices must differ");

  Eigen::MatrixXd a(3, n);
  for (int l = 0; l < n; ++l) {
    const double ej = modes.eta(l, ion_j);
    const double ek = modes.eta(l, ion_k);
    a(0, l) = ej * ek;
    a(1, l) = ej * ej;
    a(2, l) = ek * ek;
  }
  const Eigen::Vector3d rhs(target_chi, 0.0, 0.0);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  const Eigen::VectorXd theta = cod.solve(rhs);
  const double residual = (a * theta - rhs).cwiseAbs().maxCoeff();
  if (residual > 1e-10 * std::max(1.0, std::abs(target_chi)))
    throw InfeasibleError("phase budget system is inconsistent beyond the symmetric degeneracy");
  return theta;
}

}  // namespace qgt
