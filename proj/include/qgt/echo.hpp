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

#ifndef QGT_ECHO_HPP
#define QGT_ECHO_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgt/gate_phases.hpp"

namespace qgt {

// One step of an echo sequence.  local_permutation applies the cyclic
// relabeling X_{m1} (x) X_{m2}; local_transposition_pair applies a pi
// rotation in the (0, level) subspace of both qudits around +/- x.
struct EchoStep {
  enum class Kind { apply_ls, local_permutation, local_transposition_pair };
  Kind kind = Kind::apply_ls;
  int shift1 = 0;
  int shift2 = 0;
  int level = 0;
  int direction = +1;
};

struct EchoSequence {
  enum class Type { a, b, c, c_partial };
  int dim = 0;
  Type type_tag = Type::a;
  std::vector<EchoStep> steps;

  int num_ls() const;
  // Net relabeling over the whole sequence, which must be identity.
  void check_closure() const;
};

// Echo sequences interleaving entangling applications with local relabelings:
//   a: d loops of [LS, shift(+1, +1)]
//   b: LS once plainly, then for each level s >= 1 the conjugated block
//      [transpose(0,s), LS, transpose(0,s)]
//   c: even d only; d/2 cycles of (d-1) x [LS, shift(+1, +1)] followed by
//      [LS, shift(+1, -1)], so the relative-level class advances by 2 per
//      cycle and each parity class is swept exactly once
EchoSequence build_sequence(EchoSequence::Type type, int dim);

// Odd-d variant of type (c): the end-of-cycle shift is (+1, 1-p) with p the
// smallest prime divisor of d, sweeping relative-level classes mod p.
EchoSequence build_partial(int dim);

// Accumulated phases per initial two-qudit basis state (entangling, indexed
// by the initial levels) and per ion per initial level (non-entangling).
struct PhaseLedger {
  int dim = 0;
  Eigen::MatrixXd entangling;     // d x d, (s, s') = initial state
  Eigen::MatrixXd nonentangling;  // 2 x d
};

PhaseLedger simulate_ledger(const EchoSequence& seq, const LSPhaseTable& table);

// Partition of values into blocks equal mod 2pi within tol, blocks sorted by
// representative wrapped into (-pi, pi].
struct PhasePartition {
  std::vector<int> block_of;           // per input value
  std::vector<double> representatives;  // per block
  int num_blocks = 0;
};

PhasePartition distinct_phases(const Eigen::MatrixXd& values, double tol = 1e-9);

struct UniformityReport {
  bool is_global = false;
  double spread = 0.0;  // max - min accumulated phase over levels and ions
};

// Whether the accumulated non-entangling phases are level-independent, so
// they amount to a global phase.
UniformityReport nonentangling_uniformity(const EchoSequence& seq, const LSPhaseTable& table);

// Max elementwise deviation, after removing one global phase, between the
// type (c) sequence unitary built from the single-pair table with
// phi_00 = 2 chi and the two-qubit ZZ(chi) on the last qubits of the binary
// encoding of each qudit.  dim must be a power of two in {2,...,16}.
double embedded_zz_check(int dim, double chi);

// Text program, one step per line: LS | SHIFT m1 m2 | ROT 0 s (+x|-x) pi.
std::string program_text(const EchoSequence& seq);

// Flat native expansion: relabelings decomposed into level-0 transpositions.
struct NativeOp {
  enum class Kind { apply_ls, rotation };
  Kind kind = Kind::apply_ls;
  int ion = 0;  // 0 = first, 1 = second, 2 = both (transposition pairs)
  int level = 0;
  int direction = +1;
};

struct NativeProgram {
  std::vector<NativeOp> ops;
  int num_ls = 0;
  int rotations_ion1 = 0;  // both-ion pairs count once per ion
  int rotations_ion2 = 0;
};

NativeProgram expand_to_native(const EchoSequence& seq);

}  // namespace qgt

#endif
