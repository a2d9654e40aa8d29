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

#ifndef QGT_PULSE_SHAPER_HPP
#define QGT_PULSE_SHAPER_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qgt/gate_phases.hpp"
#include "qgt/ion_chain.hpp"
#include "qgt/pulse.hpp"

namespace qgt {

enum class ChiIndex { jj = 0, jk = 1, kk = 2 };

// Quadratic and linear coupling structure of a tone basis to a mode set.
//
// decoupling(l, p) is the closed form of
//   integral of sin(mu_p t) sin(omega_l (tau/2 - t)) dt,
// whose kernel times the amplitude vector gives the residual displacement of
// mode l (up to the mode's coupling strength and a fixed unit phase), and
// moment[k-1] holds its k-th derivative in omega_l row-wise.
//
// The phase quadratic forms are S_ab = sum_l w_ab(l) Sym_l with Sym_l the
// symmetrized ordered double integral of the tones against mode l and
// w_ab(l) the product of the two ions' couplings to mode l; their
// omega_l-derivatives share the mode factor
//   sens_base[l] = dSym_l/domega_l - Sym_l / omega_l,
// the second term tracking the 1/sqrt(omega) scaling of the coupling, so
// q_matrix(ab, l) = w_ab(l) * sens_base[l] exactly.
class CouplingMatrices {
 public:
  PulseBasis basis;
  ModeSet modes;
  int ion_j = 0;
  int ion_k = 1;
  Eigen::VectorXd omega;                    // per mode, rad/s
  Eigen::MatrixXd decoupling;               // N x P
  std::vector<Eigen::MatrixXd> moment;      // K entries, N x P each
  Eigen::MatrixXd s11, s12, s22;            // P x P symmetric
  std::vector<Eigen::MatrixXd> sens_base;   // per mode, P x P symmetric
  Eigen::MatrixXd pair_weight;              // 3 x N, rows follow ChiIndex

  int num_modes() const { return static_cast<int>(omega.size()); }
  int num_tones() const { return basis.num_tones; }
  int moment_order() const { return static_cast<int>(moment.size()); }

  const Eigen::MatrixXd& phase_matrix(ChiIndex which) const;
  Eigen::MatrixXd q_matrix(ChiIndex which, int mode_l) const;

  // Eigendecomposition of sens_base[mode_l] with eigenvalues sorted by
  // descending magnitude and a fixed eigenvector sign convention; memoized.
  struct SensSpectrum {
    Eigen::VectorXd eigenvalues;   // of sens_base, descending |value|
    Eigen::MatrixXd eigenvectors;  // columns aligned with eigenvalues
  };
  const SensSpectrum& sens_spectrum(int mode_l) const;

 private:
  mutable std::vector<std::optional<SensSpectrum>> spectra_;
};

CouplingMatrices build_coupling_matrices(const PulseBasis& basis, const ModeSet& modes,
                                         int ion_j, int ion_k, int moment_order);

struct StabilizationConfig {
  int m_count = 0;                 // projected eigenvectors per (phase, mode)
  std::vector<ChiIndex> phases;    // which quadratic forms to stabilize
  int k_moments = 0;               // derivative orders of the decoupling rows

  int projected_columns(int num_modes) const;
  // Throws InfeasibleError when the projected columns leave too few degrees
  // of freedom: columns must not exceed P - (N + 3) - 1.
  void validate(int num_tones, int num_modes) const;
};

// Columns: for each stabilized phase (order jj, jk, kk) and each mode, the
// m_count eigenvectors of q_matrix with largest |eigenvalue|; then the
// moment rows for k = 1..k_moments.
Eigen::MatrixXd projection_basis(const CouplingMatrices& matrices,
                                 const StabilizationConfig& cfg);

struct OptimizationResult {
  PulseShape pulse;
  MSPhaseSet achieved;
  double residual_alpha = 0.0;     // max |displacement| over modes and ions
  double residual_linear = 0.0;    // max |decoupling row . amplitudes| / |amplitudes|
  double residual_phase = 0.0;     // max phase-constraint violation, radians
  double power_norm = 0.0;         // ||amplitudes||_2
  double omega_max = 0.0;          // peak |g(t)|, rad/s
  bool converged = false;
  int iterations = 0;
  int starts_converged = 0;
};

// Minimizes the amplitude two-norm subject to the entangling phase hitting
// target_chi, both single-ion phases vanishing, exact decoupling, and the
// stabilization subspace removed.  Linear conditions are eliminated through
// an orthonormal null-space basis; the reduced three-constraint quadratic
// problem is solved by sequential quadratic programming with multi-start.
OptimizationResult optimize_pulse(const CouplingMatrices& matrices, double target_chi,
                                  const StabilizationConfig& cfg, int num_starts = 16,
                                  unsigned seed = 12345u);

OptimizationResult optimize_pulse(const PulseBasis& basis, const ModeSet& modes, int ion_j,
                                  int ion_k, double target_chi, const StabilizationConfig& cfg,
                                  int num_starts = 16, unsigned seed = 12345u);

struct ScanPoint {
  double offset_hz = 0.0;   // shift of the transverse trap frequency
  double dchi_jj = 0.0;
  double dchi_jk = 0.0;
  double dchi_kk = 0.0;
  double max_alpha = 0.0;
};

struct ScanResult {
  MSPhaseSet nominal;
  std::vector<ScanPoint> points;
};

// Re-derives the full mode set at each shifted transverse trap frequency and
// re-evaluates the fixed pulse against it.
ScanResult sensitivity_scan(const PulseShape& pulse, const TrapConfig& trap, int ion_j,
                            int ion_k, const std::vector<double>& offsets_hz);

// Minimum-norm per-mode phase budget Theta solving
//   sum_l w_jk(l) Theta_l = target_chi,  sum_l w_jj(l) Theta_l = 0,
//   sum_l w_kk(l) Theta_l = 0.
// Requires at least two modes; a mirror-symmetric ion pair degenerates the
// two single-ion rows, which stays solvable.
Eigen::VectorXd existence_theta(const ModeSet& modes, int ion_j, int ion_k,
                                double target_chi);

}  // namespace qgt

#endif
