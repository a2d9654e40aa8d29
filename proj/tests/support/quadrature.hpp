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
//
// Adaptive Simpson quadrature used as an independent oracle for the
// closed-form time integrals.  Deliberately written against the defining
// integrals, not the library's algebra, so the two paths share no code.

#ifndef QGT_TESTS_SUPPORT_QUADRATURE_HPP_
#define QGT_TESTS_SUPPORT_QUADRATURE_HPP_

#include <cmath>
#include <complex>
#include <functional>

namespace qgt_test {

namespace detail {

template <typename F>
std::complex<double> simpson(const F& f, double a, double b, std::complex<double> fa,
                             std::complex<double> fm, std::complex<double> fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
std::complex<double> adaptive(const F& f, double a, double b, std::complex<double> fa,
                              std::complex<double> fm, std::complex<double> fb,
                              std::complex<double> whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const std::complex<double> flm = f(lm);
  const std::complex<double> frm = f(rm);
  const std::complex<double> left = simpson(f, a, m, fa, flm, fm);
  const std::complex<double> right = simpson(f, m, b, fm, frm, fb);
  const std::complex<double> delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Integral of a complex-valued function over [a, b].  The interval is first
// split at irregular interior points; periodic integrands sampled at their
// own zeros would otherwise fool the error estimate into returning 0.
inline std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, double tol = 1e-12,
                                      int depth = 48) {
  static const double cuts[] = {0.0, 0.2173198264, 0.4581367589, 0.7291347211, 1.0};
  std::complex<double> total(0.0, 0.0);
  for (int i = 0; i + 1 < 5; ++i) {
    const double pa = a + (b - a) * cuts[i];
    const double pb = a + (b - a) * cuts[i + 1];
    const double m = 0.5 * (pa + pb);
    const std::complex<double> fa = f(pa);
    const std::complex<double> fm = f(m);
    const std::complex<double> fb = f(pb);
    total += detail::adaptive(f, pa, pb, fa, fm, fb, detail::simpson(f, pa, pb, fa, fm, fb),
                              0.25 * tol, depth);
  }
  return total;
}

inline double integrate_real(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-12, int depth = 48) {
  return integrate([&](double t) { return std::complex<double>(f(t), 0.0); }, a, b, tol,
                   depth)
      .real();
}

// Ordered double integral int_0^tau dt1 f1(t1) int_0^t1 dt2 f2(t2) by nesting
// two adaptive passes.  Inner tolerance is tightened so the outer pass sees a
// smooth integrand.
inline std::complex<double> integrate_ordered(
    const std::function<std::complex<double>(double)>& f1,
    const std::function<std::complex<double>(double)>& f2, double tau, double tol = 1e-11) {
  auto outer = [&](double t1) {
    return f1(t1) * integrate(f2, 0.0, t1, tol * 1e-2, 40);
  };
  return integrate(outer, 0.0, tau, tol, 40);
}

}  // namespace qgt_test

#endif  // QGT_TESTS_SUPPORT_QUADRATURE_HPP_
