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

#include <gtest/gtest.h>

#include "qgt/constants.hpp"
#include "qgt/errors.hpp"
#include "qgt/gate_phases.hpp"

namespace {

using cplx = std::complex<double>;

// Modes at integer multiples of 2 pi / tau close their phase-space loops for
// every tone, so the electronic closed forms are exact and the oracle error
// is purely the integrator's.
qgt::ModeSet periodic_modes() {
  qgt::ModeSet modes;
  modes.omega.resize(2);
  modes.omega << qgt::two_pi * 40.0, qgt::two_pi * 37.0;
  modes.b.resize(2, 2);
  modes.b << 0.8, 0.6, -0.6, 0.8;
  modes.eta.resize(2, 2);
  modes.eta << 0.10, 0.08, -0.06, 0.09;
  return modes;
}

qgt::ModeSet single_mode() {
  qgt::ModeSet modes;
  modes.omega.resize(1);
  modes.omega << qgt::two_pi * 40.0;
  modes.b = Eigen::MatrixXd::Ones(1, 2);
  modes.eta.resize(1, 2);
  modes.eta << 0.10, 0.08;
  return modes;
}

qgt::PulseShape single_tone(double amplitude) {
  qgt::PulseShape pulse;
  pulse.basis.tau = 1.0;
  pulse.basis.num_tones = 1;
  pulse.basis.n_min = 41;
  pulse.amplitudes = Eigen::VectorXd::Constant(1, amplitude);
  return pulse;
}

qgt::PulseShape five_tone(unsigned seed) {
  qgt::PulseShape pulse;
  pulse.basis.tau = 1.0;
  pulse.basis.num_tones = 5;
  pulse.basis.n_min = 41;
  pulse.amplitudes.resize(5);
  // Fixed quasi-random amplitudes of order unity.
  for (int p = 0; p < 5; ++p) {
    pulse.amplitudes(p) = 6.0 * std::sin(0.7 * (seed + 1) * (p + 1) + 0.3 * seed);
  }
  return pulse;
}

TEST(IntegrateMs, ZeroPulseIsTheIdentity) {
  qgt::PulseShape pulse = single_tone(0.0);
  qgt::OracleConfig cfg;
  cfg.fock_cutoff = 6;
  const qgt::OracleResult res = qgt::integrate_ms(pulse, single_mode(), 0, 1, cfg);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(4, 4);
  EXPECT_LT((res.electronic - eye).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(res.leakage, 1e-12);
  EXPECT_LT(res.unitarity_defect, 1e-12);
  EXPECT_GE(res.steps, 16);
}

TEST(IntegrateMs, SingleToneClosedLoopMatchesTheHandDerivedPhase) {
  // One tone at mu = omega + delta with tau = 2 pi / delta closes the loop;
  // the ordered double integral evaluates to -tau omega / (2 (mu^2 - w^2))
  // per unit amplitude squared.
  const double omega = qgt::two_pi * 40.0;
  const double mu = qgt::two_pi * 41.0;
  const double amp = 15.0;
  const qgt::ModeSet modes = single_mode();
  const qgt::PulseShape pulse = single_tone(amp);

  const double theta_unit = -1.0 * omega / (2.0 * (mu * mu - omega * omega));
  qgt::MSPhaseSet analytic;
  analytic.ion_j = 0;
  analytic.ion_k = 1;
  analytic.chi_jj = modes.eta(0, 0) * modes.eta(0, 0) * amp * amp * theta_unit;
  analytic.chi_jk = modes.eta(0, 0) * modes.eta(0, 1) * amp * amp * theta_unit;
  analytic.chi_kk = modes.eta(0, 1) * modes.eta(0, 1) * amp * amp * theta_unit;

  // The closed-form path must agree with the derivation exactly.
  const qgt::MSPhaseSet lib = qgt::ms_phases(pulse, modes, 0, 1);
  EXPECT_NEAR(lib.chi_jj, analytic.chi_jj, 1e-12);
  EXPECT_NEAR(lib.chi_jk, analytic.chi_jk, 1e-12);
  EXPECT_NEAR(lib.chi_kk, analytic.chi_kk, 1e-12);
  EXPECT_LT(qgt::max_abs_displacement(pulse, modes), 1e-12);

  qgt::OracleConfig cfg;
  cfg.fock_cutoff = 10;
  const qgt::OracleResult res = qgt::integrate_ms(pulse, modes, 0, 1, cfg);
  const Eigen::MatrixXcd closed =
      qgt::ms_evolution(analytic, Eigen::VectorXd::Zero(2), 2);
  EXPECT_LT((res.electronic - closed).cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_LT(res.leakage, 1e-4);
  EXPECT_LT(res.unitarity_defect, 1e-8);
}

TEST(IntegrateMs, MultiTonePeriodicPulseMatchesClosedForm) {
  const qgt::ModeSet modes = periodic_modes();
  const qgt::PulseShape pulse = five_tone(3u);
  EXPECT_LT(qgt::max_abs_displacement(pulse, modes), 1e-12);

  qgt::OracleConfig cfg;
  cfg.fock_cutoff = 8;
  const qgt::OracleResult res = qgt::integrate_ms(pulse, modes, 0, 1, cfg);
  const qgt::MSPhaseSet phases = qgt::ms_phases(pulse, modes, 0, 1);
  const Eigen::MatrixXcd closed =
      qgt::ms_evolution(phases, Eigen::VectorXd::Zero(2), 2);
  EXPECT_LT((res.electronic - closed).cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_LT(res.leakage, 1e-4);
  EXPECT_LT(res.unitarity_defect, 1e-8);
}

TEST(IntegrateMs, StepHalvingShowsFourthOrderConvergence) {
  const qgt::ModeSet modes = single_mode();
  const qgt::PulseShape pulse = single_tone(15.0);
  const qgt::MSPhaseSet phases = qgt::ms_phases(pulse, modes, 0, 1);
  const Eigen::MatrixXcd closed =
      qgt::ms_evolution(phases, Eigen::VectorXd::Zero(2), 2);

  qgt::OracleConfig coarse;
  coarse.fock_cutoff = 10;
  coarse.steps_per_cycle = 12;
  qgt::OracleConfig fine = coarse;
  fine.steps_per_cycle = 24;

  const double dev_coarse =
      (qgt::integrate_ms(pulse, modes, 0, 1, coarse).electronic - closed)
          .cwiseAbs()
          .maxCoeff();
  const double dev_fine =
      (qgt::integrate_ms(pulse, modes, 0, 1, fine).electronic - closed)
          .cwiseAbs()
          .maxCoeff();
  EXPECT_GT(dev_coarse, 0.0);
  EXPECT_GE(dev_coarse / dev_fine, 8.0);
}

TEST(IntegrateMs, FactorizedCompositionMatchesTheJointRun) {
  const qgt::ModeSet modes = periodic_modes();
  const qgt::PulseShape pulse = five_tone(5u);
  qgt::OracleConfig joint;
  joint.fock_cutoff = 8;
  qgt::OracleConfig split = joint;
  split.factorized = true;
  const qgt::OracleResult a = qgt::integrate_ms(pulse, modes, 0, 1, joint);
  const qgt::OracleResult b = qgt::integrate_ms(pulse, modes, 0, 1, split);
  EXPECT_LT((a.electronic - b.electronic).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(IntegrateMs, IncludedModesSelectsTheSubset) {
  const qgt::ModeSet modes = periodic_modes();
  const qgt::PulseShape pulse = five_tone(7u);
  qgt::OracleConfig cfg;
  cfg.fock_cutoff = 8;
  cfg.included_modes = {1};
  const qgt::OracleResult picked = qgt::integrate_ms(pulse, modes, 0, 1, cfg);
  qgt::OracleConfig plain;
  plain.fock_cutoff = 8;
  const qgt::OracleResult direct =
      qgt::integrate_ms(pulse, modes.subset({1}), 0, 1, plain);
  EXPECT_LT((picked.electronic - direct.electronic).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(IntegrateMs, TinyCutoffTripsTheTruncationGuard) {
  qgt::ModeSet modes = single_mode();
  modes.omega(0) = qgt::two_pi * 40.5;  // non-periodic: the loop stays open
  const qgt::PulseShape pulse = single_tone(300.0);
  qgt::OracleConfig cfg;
  cfg.fock_cutoff = 4;
  EXPECT_THROW(qgt::integrate_ms(pulse, modes, 0, 1, cfg), qgt::TruncationError);
}

TEST(IntegrateMs, RejectsUnusableConfigurations) {
  const qgt::ModeSet modes = single_mode();
  const qgt::PulseShape pulse = single_tone(1.0);
  qgt::OracleConfig cfg;
  cfg.fock_cutoff = 3;
  EXPECT_THROW(qgt::integrate_ms(pulse, modes, 0, 1, cfg), qgt::ConfigError);
  cfg.fock_cutoff = 8;
  cfg.steps_per_cycle = 2;
  EXPECT_THROW(qgt::integrate_ms(pulse, modes, 0, 1, cfg), qgt::ConfigError);
  cfg.steps_per_cycle = 48;
  EXPECT_THROW(qgt::integrate_ms(pulse, modes, 0, 0, cfg), qgt::ConfigError);
  cfg.included_modes = {2};
  EXPECT_THROW(qgt::integrate_ms(pulse, modes, 0, 1, cfg), qgt::ConfigError);
}

TEST(IntegrateLs, GenericProfileMatchesThePhaseTable) {
  const qgt::ModeSet modes = single_mode();
  const qgt::PulseShape pulse = single_tone(15.0);
  qgt::LSAmplitudeProfile profile;
  profile.theta.resize(3);
  profile.theta << 1.0, 0.7, -0.4;
  profile.ac_phases = Eigen::VectorXd::Zero(3);

  const qgt::MSPhaseSet phases = qgt::ms_phases(pulse, modes, 0, 1);
  const qgt::LSPhaseTable table =
      qgt::ls_phase_table(phases.chi_jk, phases.chi_jj, phases.chi_kk, profile);
  const Eigen::MatrixXcd closed = qgt::ls_evolution(table);

  qgt::OracleConfig cfg;
  cfg.fock_cutoff = 10;
  cfg.dim = 3;
  const qgt::OracleResult res = qgt::integrate_ls(pulse, profile, modes, 0, 1, cfg);
  EXPECT_LT((res.electronic - closed).cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_LT(res.leakage, 1e-4);
  EXPECT_LT(res.unitarity_defect, 1e-8);
}

TEST(IntegrateLs, ZeroOrderProfilePhasesOnlyTheGroundPair) {
  const qgt::ModeSet modes = single_mode();
  const qgt::PulseShape pulse = single_tone(15.0);
  qgt::LSAmplitudeProfile profile;
  profile.theta = Eigen::VectorXd::Zero(3);
  profile.theta(0) = 1.0;
  profile.ac_phases = Eigen::VectorXd::Zero(3);

  const qgt::MSPhaseSet phases = qgt::ms_phases(pulse, modes, 0, 1);
  const qgt::LSPhaseTable table =
      qgt::ls_phase_table(phases.chi_jk, phases.chi_jj, phases.chi_kk, profile);
  ASSERT_TRUE(table.zero_order);

  qgt::OracleConfig cfg;
  cfg.fock_cutoff = 10;
  cfg.dim = 3;
  const qgt::OracleResult res = qgt::integrate_ls(pulse, profile, modes, 0, 1, cfg);
  const Eigen::MatrixXcd closed = qgt::ls_evolution(table);
  EXPECT_LT((res.electronic - closed).cwiseAbs().maxCoeff(), 1e-3);
  // States with both ions outside level 0 decouple from the drive entirely;
  // states with one ion in level 0 still pick up that ion's single-ion phase.
  for (int s1 = 1; s1 < 3; ++s1)
    for (int s2 = 1; s2 < 3; ++s2) {
      const int idx = s1 * 3 + s2;
      EXPECT_LT(std::abs(res.electronic(idx, idx) - cplx(1.0, 0.0)), 1e-3) << idx;
    }
  const cplx ground = std::exp(cplx(
      0.0, 2.0 * phases.chi_jk + phases.chi_jj + phases.chi_kk));
  EXPECT_LT(std::abs(res.electronic(0, 0) - ground), 1e-3);
}

TEST(IntegrateLs, UniformProfileIsAGlobalPhase) {
  const qgt::ModeSet modes = single_mode();
  const qgt::PulseShape pulse = single_tone(15.0);
  qgt::LSAmplitudeProfile profile;
  profile.theta = Eigen::VectorXd::Ones(3);
  profile.ac_phases = Eigen::VectorXd::Zero(3);

  qgt::OracleConfig cfg;
  cfg.fock_cutoff = 12;
  cfg.dim = 3;
  const qgt::OracleResult res = qgt::integrate_ls(pulse, profile, modes, 0, 1, cfg);
  const cplx global = res.electronic(0, 0);
  EXPECT_NEAR(std::abs(global), 1.0, 1e-4);
  const Eigen::MatrixXcd expect = global * Eigen::MatrixXcd::Identity(9, 9);
  EXPECT_LT((res.electronic - expect).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(IntegrateLs, ProfileDimensionMustMatch) {
  const qgt::ModeSet modes = single_mode();
  const qgt::PulseShape pulse = single_tone(1.0);
  qgt::LSAmplitudeProfile profile;
  profile.theta.resize(2);
  profile.theta << 1.0, 0.5;
  profile.ac_phases = Eigen::VectorXd::Zero(2);
  qgt::OracleConfig cfg;
  cfg.dim = 3;
  EXPECT_THROW(qgt::integrate_ls(pulse, profile, modes, 0, 1, cfg), qgt::ConfigError);
}

}  // namespace
