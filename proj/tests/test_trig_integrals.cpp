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

#include "qgt/trig_integrals.hpp"

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "support/quadrature.hpp"

namespace {

using qgt::trig::cplx;

cplx quad_exp_moment(int k, double a, double tau) {
  return qgt_test::integrate(
      [=](double t) { return std::pow(t, k) * cplx(std::cos(a * t), std::sin(a * t)); },
      0.0, tau, 1e-14);
}

TEST(ExpMoment, MatchesQuadratureAcrossBothBranches) {
  const double tau = 1.3;
  for (int k = 0; k <= 3; ++k) {
    for (double a : {0.0, 0.3, -0.9, 2.7, -4.1, 11.0, -26.5, 63.0}) {
      const cplx lib = qgt::trig::exp_moment(k, a, tau);
      const cplx ref = quad_exp_moment(k, a, tau);
      const double scale = std::max(1e-12, std::abs(ref));
      EXPECT_LT(std::abs(lib - ref), 1e-11 * scale) << "k=" << k << " a=" << a;
    }
  }
}

TEST(ExpMoment, ZeroFrequencyIsThePowerIntegral) {
  const double tau = 0.77;
  for (int k = 0; k <= 5; ++k) {
    const cplx lib = qgt::trig::exp_moment(k, 0.0, tau);
    const double exact = std::pow(tau, k + 1) / (k + 1);
    EXPECT_NEAR(lib.real(), exact, 1e-15 * exact);
    EXPECT_NEAR(lib.imag(), 0.0, 1e-15 * exact);
  }
}

// The series / recurrence switch sits at |a| tau = k + 2; both branches must
// agree there, or downstream matrix entries would jump under a tiny drift.
TEST(ExpMoment, BranchesAgreeAtTheSwitchover) {
  const double tau = 2.1;
  for (int k = 0; k <= 3; ++k) {
    const double a_switch = (k + 2.0) / tau;
    for (double eps : {-1e-9, 1e-9}) {
      const double a = a_switch * (1.0 + eps);
      const cplx lib = qgt::trig::exp_moment(k, a, tau);
      const cplx ref = quad_exp_moment(k, a, tau);
      EXPECT_LT(std::abs(lib - ref), 1e-12 * std::abs(ref)) << "k=" << k << " eps=" << eps;
    }
  }
}

cplx quad_ordered_pair(double a, double b, double tau) {
  return qgt_test::integrate_ordered(
      [=](double t1) { return cplx(std::cos(a * t1), std::sin(a * t1)); },
      [=](double t2) { return cplx(std::cos(b * t2), std::sin(b * t2)); }, tau, 1e-13);
}

TEST(OrderedExpPair, MatchesNestedQuadrature) {
  const double tau = 1.0;
  const double cases[][2] = {
      {5.0, 3.0},   {5.0, -5.0},  {-7.3, 2.2},  {12.0, 31.0},
      {4.0, 1e-4},  {4.0, -1e-4}, {9.1, 0.0},   {0.0, 6.4},
      {2.5, 9.9e-4}, {2.5, 1.1e-3},
  };
  for (const auto& c : cases) {
    const cplx lib = qgt::trig::ordered_exp_pair(c[0], c[1], tau);
    const cplx ref = quad_ordered_pair(c[0], c[1], tau);
    const double scale = std::max(1e-10, std::abs(ref));
    EXPECT_LT(std::abs(lib - ref), 1e-9 * scale) << "a=" << c[0] << " b=" << c[1];
  }
}

TEST(OrderedExpPair, ZeroInnerFrequencyReducesToFirstMoment) {
  // b = 0 collapses the inner integral to t1, so the pair equals E_1(a).
  const double tau = 1.6;
  for (double a : {0.9, -3.3, 17.0}) {
    const cplx lib = qgt::trig::ordered_exp_pair(a, 0.0, tau);
    const cplx ref = qgt::trig::exp_moment(1, a, tau);
    EXPECT_LT(std::abs(lib - ref), 1e-13 * std::abs(ref)) << "a=" << a;
  }
}

TEST(OrderedExpPair, SeriesAndDirectBranchesAgreeAtTheSeam) {
  const double tau = 1.0;
  const double seam = qgt::trig::detail::kInnerSeriesTol / tau;
  for (double a : {3.7, -8.2}) {
    for (double sgn : {1.0, -1.0}) {
      const cplx below = qgt::trig::ordered_exp_pair(a, sgn * seam * (1.0 - 1e-9), tau);
      const cplx above = qgt::trig::ordered_exp_pair(a, sgn * seam * (1.0 + 1e-9), tau);
      EXPECT_LT(std::abs(below - above), 1e-11 * std::abs(below)) << "a=" << a;
    }
  }
}

TEST(OrderedExpPairDerivatives, MatchQuadratureOfTheDefiningIntegrals) {
  // d/da inserts i t1 under the integral; d/db inserts i t2.
  const double tau = 1.0;
  const double cases[][2] = {{5.0, 3.0}, {-7.3, 2.2}, {4.0, 1e-4}, {9.1, -8.8}, {2.0, 5e-4}};
  for (const auto& c : cases) {
    const double a = c[0];
    const double b = c[1];
    const cplx ref_da = qgt_test::integrate_ordered(
        [=](double t1) {
          return cplx(0.0, t1) * cplx(std::cos(a * t1), std::sin(a * t1));
        },
        [=](double t2) { return cplx(std::cos(b * t2), std::sin(b * t2)); }, tau, 1e-13);
    const cplx ref_db = qgt_test::integrate_ordered(
        [=](double t1) { return cplx(std::cos(a * t1), std::sin(a * t1)); },
        [=](double t2) {
          return cplx(0.0, t2) * cplx(std::cos(b * t2), std::sin(b * t2));
        },
        tau, 1e-13);
    const cplx lib_da = qgt::trig::ordered_exp_pair_da(a, b, tau);
    const cplx lib_db = qgt::trig::ordered_exp_pair_db(a, b, tau);
    EXPECT_LT(std::abs(lib_da - ref_da), 1e-9 * std::max(1e-10, std::abs(ref_da)))
        << "a=" << a << " b=" << b;
    EXPECT_LT(std::abs(lib_db - ref_db), 1e-9 * std::max(1e-10, std::abs(ref_db)))
        << "a=" << a << " b=" << b;
  }
}

TEST(OrderedExpPairDerivatives, AgreeWithCentralDifferences) {
  const double tau = 1.0;
  const double h = 1e-5;
  for (double a : {6.3, -2.9}) {
    for (double b : {4.4, -7.7}) {
      const cplx fd_da = (qgt::trig::ordered_exp_pair(a + h, b, tau) -
                          qgt::trig::ordered_exp_pair(a - h, b, tau)) /
                         (2.0 * h);
      const cplx fd_db = (qgt::trig::ordered_exp_pair(a, b + h, tau) -
                          qgt::trig::ordered_exp_pair(a, b - h, tau)) /
                         (2.0 * h);
      EXPECT_LT(std::abs(qgt::trig::ordered_exp_pair_da(a, b, tau) - fd_da), 1e-7);
      EXPECT_LT(std::abs(qgt::trig::ordered_exp_pair_db(a, b, tau) - fd_db), 1e-7);
    }
  }
}

}  // namespace
