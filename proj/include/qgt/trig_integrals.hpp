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

#ifndef QGT_TRIG_INTEGRALS_HPP
#define QGT_TRIG_INTEGRALS_HPP

#include <cmath>
#include <complex>

// Closed forms for the oscillatory window integrals that every phase and
// coupling-matrix expression in this library reduces to.  All integrals run
// over [0, tau].  Each function switches to a power series near its removable
// singularity; the series regions are chosen so that the closed forms are
// never evaluated where their leading terms cancel.

namespace qgt::trig {

using cplx = std::complex<double>;

// exp_moment(k, a, tau) = integral of t^k e^{i a t} dt over [0, tau].
//
// The upward recurrence F_k = (tau^k e^{i a tau} - k F_{k-1}) / (i a) loses
// all accuracy for |a| tau <~ k, so below |a| tau < k + 2 we sum
// F_k = tau^{k+1} * sum_n (i a tau)^n / (n! (n + k + 1)) instead.
inline cplx exp_moment(int k, double a, double tau) {
  const double x = a * tau;
  if (std::abs(x) < static_cast<double>(k) + 2.0) {
    const cplx iz(0.0, x);
    cplx term(1.0, 0.0);
    cplx sum = term / static_cast<double>(k + 1);
    for (int n = 1; n < 96; ++n) {
      term *= iz / static_cast<double>(n);
      const cplx add = term / static_cast<double>(n + k + 1);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum * std::pow(tau, k + 1);
  }
  const cplx eia(std::cos(x), std::sin(x));
  const cplx ia(0.0, a);
  cplx f = (eia - 1.0) / ia;
  double tk = 1.0;
  for (int j = 1; j <= k; ++j) {
    tk *= tau;
    f = (tk * eia - static_cast<double>(j) * f) / ia;
  }
  return f;
}

namespace detail {
// Relative half-width of the series region for the inner frequency of the
// ordered pair integrals.  Below this the direct formula divides a small
// difference by a small i b.
inline constexpr double kInnerSeriesTol = 1e-3;
}  // namespace detail

// ordered_exp_pair(a, b, tau) =
//   integral over 0 <= t2 <= t1 <= tau of e^{i a t1} e^{i b t2}.
inline cplx ordered_exp_pair(double a, double b, double tau) {
  if (std::abs(b) * tau >= detail::kInnerSeriesTol) {
    const cplx ib(0.0, b);
    return (exp_moment(0, a + b, tau) - exp_moment(0, a, tau)) / ib;
  }
  // (e^{i b t} - 1)/(i b) = sum_m (i b)^m t^{m+1} / (m+1)!
  const cplx ib(0.0, b);
  cplx coeff(1.0, 0.0);
  cplx sum(0.0, 0.0);
  double fact = 1.0;
  for (int m = 0; m <= 8; ++m) {
    fact *= static_cast<double>(m + 1);
    sum += coeff / fact * exp_moment(m + 1, a, tau);
    coeff *= ib;
  }
  return sum;
}

// d/da of ordered_exp_pair.
inline cplx ordered_exp_pair_da(double a, double b, double tau) {
  if (std::abs(b) * tau >= detail::kInnerSeriesTol) {
    return (exp_moment(1, a + b, tau) - exp_moment(1, a, tau)) / b;
  }
  const cplx i_unit(0.0, 1.0);
  const cplx ib(0.0, b);
  cplx coeff(1.0, 0.0);
  cplx sum(0.0, 0.0);
  double fact = 1.0;
  for (int m = 0; m <= 8; ++m) {
    fact *= static_cast<double>(m + 1);
    sum += coeff / fact * i_unit * exp_moment(m + 2, a, tau);
    coeff *= ib;
  }
  return sum;
}

// d/db of ordered_exp_pair.
inline cplx ordered_exp_pair_db(double a, double b, double tau) {
  if (std::abs(b) * tau >= detail::kInnerSeriesTol) {
    const cplx i_unit(0.0, 1.0);
    const cplx diff = exp_moment(0, a + b, tau) - exp_moment(0, a, tau);
    return exp_moment(1, a + b, tau) / b + i_unit * diff / (b * b);
  }
  const cplx i_unit(0.0, 1.0);
  const cplx ib(0.0, b);
  cplx coeff(1.0, 0.0);  // (i b)^{m-1} for m starting at 1
  cplx sum(0.0, 0.0);
  double fact = 1.0;
  for (int m = 1; m <= 9; ++m) {
    fact *= static_cast<double>(m + 1);  // builds (m+1)! given fact started at 1 = 1!
    sum += static_cast<double>(m) * i_unit * coeff / fact * exp_moment(m + 1, a, tau);
    coeff *= ib;
  }
  return sum;
}

}  // namespace qgt::trig

#endif
