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

#ifndef QGT_DETAIL_MODE_KERNEL_HPP
#define QGT_DETAIL_MODE_KERNEL_HPP

#include <array>
#include <complex>
#include <vector>

#include "qgt/pulse.hpp"
#include "qgt/trig_integrals.hpp"

namespace qgt::detail {

using trig::cplx;

// Evaluates, for one mode frequency omega and a harmonic sine basis,
//
//   T(n, m) = triple product integral over 0 <= t2 <= t1 <= tau of
//             sin(mu_n t2) sin(mu_m t1) sin(omega (t1 - t2))
//
// and its omega derivative.  Expanding the sines gives eight ordered
// exponential pair integrals per entry.  Because mu_p tau is an exact
// multiple of 2 pi, e^{i mu_p tau} = 1, so the outer window integrals reduce
// to precomputable closed forms with no per-entry trig calls; the only
// entries that need the general series machinery are tones within
// ~1e-3/tau of the mode (flagged per tone).
class ModeKernel {
 public:
  ModeKernel(const PulseBasis& basis, double omega, bool with_derivative)
      : basis_(basis), omega_(omega), deriv_(with_derivative) {
    const int p_count = basis.num_tones;
    const double tau = basis.tau;
    val_.resize(p_count);
    e_.resize(p_count);
    if (deriv_) f1_.resize(p_count);
    near_.assign(p_count, 0);
    mu_.resize(p_count);

    const cplx zeta_plus(std::cos(omega * tau), std::sin(omega * tau));
    const cplx zeta_minus = std::conj(zeta_plus);
    for (int p = 0; p < p_count; ++p) {
      const double mu = basis.mu(p);
      mu_[p] = mu;
      if (std::abs(mu - omega) * tau < trig::detail::kInnerSeriesTol) near_[p] = 1;
      const std::array<double, 4> xs = {mu + omega, mu - omega, -mu + omega, -mu - omega};
      for (int i = 0; i < 4; ++i) {
        const double x = xs[i];
        const cplx zeta = (i == 0 || i == 2) ? zeta_plus : zeta_minus;
        val_[p][i] = x;
        if (std::abs(x) * tau >= 2.0) {
          e_[p][i] = (zeta - 1.0) / cplx(0.0, x);
        } else {
          e_[p][i] = trig::exp_moment(0, x, tau);
        }
        if (deriv_) {
          if (std::abs(x) * tau >= 3.0) {
            f1_[p][i] = (tau * zeta - e_[p][i]) / cplx(0.0, x);
          } else {
            f1_[p][i] = trig::exp_moment(1, x, tau);
          }
        }
      }
    }
  }

  double omega() const { return omega_; }

  // T(n, m) and, when requested at construction, dT(n, m)/domega.
  void entry(int n, int m, double& t_out, double& dt_out) const {
    const double tau = basis_.tau;
    cplx acc_t(0.0, 0.0);
    cplx acc_dt(0.0, 0.0);
    if (near_[n] || near_[m]) {
      for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 0; s2 < 2; ++s2) {
          for (int s3 = 0; s3 < 2; ++s3) {
            const double g1 = s1 ? -1.0 : 1.0;
            const double g2 = s2 ? -1.0 : 1.0;
            const double g3 = s3 ? -1.0 : 1.0;
            const double a = g1 * mu_[m] + g3 * omega_;
            const double b = g2 * mu_[n] - g3 * omega_;
            const double sgn = g1 * g2 * g3;
            acc_t += sgn * trig::ordered_exp_pair(a, b, tau);
            if (deriv_) {
              acc_dt += sgn * g3 *
                        (trig::ordered_exp_pair_da(a, b, tau) -
                         trig::ordered_exp_pair_db(a, b, tau));
            }
          }
        }
      }
    } else {
      // Index map: (sigma1, sigma3) -> 2*s1 + s3 with + encoded as 0.
      for (int s1 = 0; s1 < 2; ++s1) {
        const double g1 = s1 ? -1.0 : 1.0;
        for (int s3 = 0; s3 < 2; ++s3) {
          const double g3 = s3 ? -1.0 : 1.0;
          const int ia = 2 * s1 + s3;
          const cplx ea = e_[m][ia];
          for (int s2 = 0; s2 < 2; ++s2) {
            const double g2 = s2 ? -1.0 : 1.0;
            // b = sigma2 mu_n - sigma3 omega = sigma2 mu_n + (-sigma3) omega.
            const int ib_idx = 2 * s2 + (1 - s3);
            const double b = val_[n][ib_idx];
            const double sgn = g1 * g2 * g3;
            const bool diag = (n == m) && (s2 != s1);
            const cplx e_ab = diag ? cplx(tau, 0.0) : cplx(0.0, 0.0);
            const cplx j = (e_ab - ea) * cplx(0.0, -1.0) / b;
            acc_t += sgn * j;
            if (deriv_) {
              const double apb = g1 * mu_[m] + g2 * mu_[n];
              const cplx f1_ab = diag ? cplx(0.5 * tau * tau, 0.0) : cplx(0.0, -tau / apb);
              const cplx f1_a = f1_[m][ia];
              const cplx j_da = (f1_ab - f1_a) / b;
              const cplx j_db = f1_ab / b + cplx(0.0, 1.0) * (e_ab - ea) / (b * b);
              acc_dt += sgn * g3 * (j_da - j_db);
            }
          }
        }
      }
    }
    const cplx i_over_8(0.0, 0.125);
    t_out = (i_over_8 * acc_t).real();
    dt_out = deriv_ ? (i_over_8 * acc_dt).real() : 0.0;
  }

  double t_ordered(int n, int m) const {
    double t = 0.0, dt = 0.0;
    entry(n, m, t, dt);
    return t;
  }

 private:
  PulseBasis basis_;
  double omega_;
  bool deriv_;
  std::vector<double> mu_;
  std::vector<std::array<double, 4>> val_;
  std::vector<std::array<cplx, 4>> e_;
  std::vector<std::array<cplx, 4>> f1_;
  std::vector<char> near_;
};

}  // namespace qgt::detail

#endif
