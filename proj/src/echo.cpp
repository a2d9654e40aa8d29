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

#include "qgt/echo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "qgt/constants.hpp"
#include "qgt/cyclic_shift.hpp"
#include "qgt/errors.hpp"

namespace qgt {
namespace {

int smallest_prime_divisor(int n) {
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

int mod(int a, int d) {
  int r = a % d;
  return r < 0 ? r + d : r;
}

EchoStep ls_step() { return EchoStep{EchoStep::Kind::apply_ls, 0, 0, 0, +1}; }

EchoStep shift_step(int m1, int m2) {
  return EchoStep{EchoStep::Kind::local_permutation, m1, m2, 0, +1};
}

EchoStep transposition_step(int level, int direction) {
  return EchoStep{EchoStep::Kind::local_transposition_pair, 0, 0, level, direction};
}

}  // namespace

int EchoSequence::num_ls() const {
  int n = 0;
  for (const EchoStep& s : steps)
    if (s.kind == EchoStep::Kind::apply_ls) ++n;
  return n;
}

void EchoSequence::check_closure() const {
  std::vector<int> img1(dim), img2(dim);
  for (int s = 0; s < dim; ++s) img1[s] = img2[s] = s;
  for (const EchoStep& step : steps) {
    switch (step.kind) {
      case EchoStep::Kind::apply_ls:
        break;
      case EchoStep::Kind::local_permutation:
        for (int& v : img1) v = mod(v + step.shift1, dim);
        for (int& v : img2) v = mod(v + step.shift2, dim);
        break;
      case EchoStep::Kind::local_transposition_pair:
        for (int& v : img1) v = v == 0 ? step.level : (v == step.level ? 0 : v);
        for (int& v : img2) v = v == 0 ? step.level : (v == step.level ? 0 : v);
        break;
    }
  }
  for (int s = 0; s < dim; ++s)
    if (img1[s] != s || img2[s] != s)
      throw ConfigError("echo sequence does not restore the basis labeling");
}

EchoSequence build_sequence(EchoSequence::Type type, int dim) {
  if (dim < 2) throw ConfigError("qudit dimension must be at least 2");
  EchoSequence seq;
  seq.dim = dim;
  seq.type_tag = type;
  switch (type) {
    case EchoSequence::Type::a:
      for (int c = 0; c < dim; ++c) {
        seq.steps.push_back(ls_step());
        seq.steps.push_back(shift_step(1, 1));
      }
      break;
    case EchoSequence::Type::b:
      seq.steps.push_back(ls_step());
      for (int s = 1; s < dim; ++s) {
        seq.steps.push_back(transposition_step(s, +1));
        seq.steps.push_back(ls_step());
        seq.steps.push_back(transposition_step(s, -1));
      }
      break;
    case EchoSequence::Type::c:
      if (dim % 2 != 0)
        throw ConfigError("parity-sweep sequence requires even dimension; use build_partial");
      for (int cycle = 0; cycle < dim / 2; ++cycle) {
        for (int c = 0; c + 1 < dim; ++c) {
          seq.steps.push_back(ls_step());
          seq.steps.push_back(shift_step(1, 1));
        }
        seq.steps.push_back(ls_step());
        seq.steps.push_back(shift_step(1, -1));
      }
      break;
    case EchoSequence::Type::c_partial:
      throw ConfigError("use build_partial for the odd-dimension variant");
  }
  seq.check_closure();
  return seq;
}

EchoSequence build_partial(int dim) {
  if (dim < 3 || dim % 2 == 0)
    throw ConfigError("partial reduction applies to odd dimensions of at least 3");
  const int p = smallest_prime_divisor(dim);
  EchoSequence seq;
  seq.dim = dim;
  seq.type_tag = EchoSequence::Type::c_partial;
  for (int cycle = 0; cycle < dim / p; ++cycle) {
    for (int c = 0; c + 1 < dim; ++c) {
      seq.steps.push_back(ls_step());
      seq.steps.push_back(shift_step(1, 1));
    }
    seq.steps.push_back(ls_step());
    seq.steps.push_back(shift_step(1, 1 - p));
  }
  seq.check_closure();
  return seq;
}

PhaseLedger simulate_ledger(const EchoSequence& seq, const LSPhaseTable& table) {
  if (seq.dim != table.dim) throw ConfigError("sequence and phase table dimensions differ");
  const int d = seq.dim;
  PhaseLedger ledger;
  ledger.dim = d;
  ledger.entangling = Eigen::MatrixXd::Zero(d, d);
  ledger.nonentangling = Eigen::MatrixXd::Zero(2, d);
  for (int s1 = 0; s1 < d; ++s1)
    for (int s2 = 0; s2 < d; ++s2) {
      int a = s1, b = s2;
      for (const EchoStep& step : seq.steps) {
        switch (step.kind) {
          case EchoStep::Kind::apply_ls:
            ledger.entangling(s1, s2) += table.entangling(a, b);
            if (s2 == 0) ledger.nonentangling(0, s1) += table.nonentangling(0, a);
            if (s1 == 0) ledger.nonentangling(1, s2) += table.nonentangling(1, b);
            break;
          case EchoStep::Kind::local_permutation:
            a = mod(a + step.shift1, d);
            b = mod(b + step.shift2, d);
            break;
          case EchoStep::Kind::local_transposition_pair:
            a = a == 0 ? step.level : (a == step.level ? 0 : a);
            b = b == 0 ? step.level : (b == step.level ? 0 : b);
            break;
        }
      }
      if (a != s1 || b != s2)
        throw ConfigError("echo sequence does not restore the basis labeling");
    }
  return ledger;
}

PhasePartition distinct_phases(const Eigen::MatrixXd& values, double tol) {
  if (tol <= 0.0) throw ConfigError("phase tolerance must be positive");
  const int n = static_cast<int>(values.size());
  std::vector<double> wrapped(n);
  for (int i = 0; i < n; ++i) {
    // values.data() is column-major; order only affects block labels.
    double w = std::remainder(values.data()[i], two_pi);  // (-pi, pi]
    wrapped[i] = w <= -pi ? w + two_pi : w;
  }
  auto same = [&](int i, int j) {
    const double diff = std::remainder(wrapped[i] - wrapped[j], two_pi);
    return std::abs(diff) <= tol;
  };
  PhasePartition part;
  part.block_of.assign(n, -1);
  std::vector<int> leaders;
  for (int i = 0; i < n; ++i) {
    for (std::size_t bidx = 0; bidx < leaders.size(); ++bidx)
      if (same(i, leaders[bidx])) {
        part.block_of[i] = static_cast<int>(bidx);
        break;
      }
    if (part.block_of[i] < 0) {
      part.block_of[i] = static_cast<int>(leaders.size());
      leaders.push_back(i);
    }
  }
  part.num_blocks = static_cast<int>(leaders.size());
  part.representatives.resize(leaders.size());
  for (std::size_t bidx = 0; bidx < leaders.size(); ++bidx)
    part.representatives[bidx] = wrapped[leaders[bidx]];
  // Sort blocks by representative value, remapping labels.
  std::vector<int> order(leaders.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return part.representatives[x] < part.representatives[y];
  });
  std::vector<int> rank(order.size());
  std::vector<double> sorted_reps(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = static_cast<int>(i);
    sorted_reps[i] = part.representatives[order[i]];
  }
  for (int& b : part.block_of) b = rank[b];
  part.representatives = std::move(sorted_reps);
  return part;
}

UniformityReport nonentangling_uniformity(const EchoSequence& seq, const LSPhaseTable& table) {
  const PhaseLedger ledger = simulate_ledger(seq, table);
  UniformityReport report;
  double spread = 0.0;
  for (int ion = 0; ion < 2; ++ion) {
    const double lo = ledger.nonentangling.row(ion).minCoeff();
    const double hi = ledger.nonentangling.row(ion).maxCoeff();
    spread = std::max(spread, hi - lo);
  }
  report.spread = spread;
  report.is_global = spread < 1e-9;
  return report;
}

double embedded_zz_check(int dim, double chi) {
  if (dim < 2 || dim > 16 || (dim & (dim - 1)) != 0)
    throw ConfigError("embedded check requires a power-of-two dimension up to 16");
  LSAmplitudeProfile profile;
  profile.theta = Eigen::VectorXd::Zero(dim);
  profile.theta(0) = 1.0;
  const LSPhaseTable table = ls_phase_table(chi, 0.0, 0.0, profile);
  const EchoSequence seq = build_sequence(EchoSequence::Type::c, dim);
  const PhaseLedger ledger = simulate_ledger(seq, table);

  const int n = dim * dim;
  Eigen::VectorXcd u_seq(n), u_zz(n);
  for (int s1 = 0; s1 < dim; ++s1)
    for (int s2 = 0; s2 < dim; ++s2) {
      const int idx = s1 * dim + s2;
      const double phase = ledger.entangling(s1, s2) + ledger.nonentangling(0, s1) +
                           ledger.nonentangling(1, s2);
      u_seq(idx) = std::exp(std::complex<double>(0.0, phase));
      // ZZ on the least significant bits of the binary level encodings.
      const double zz = ((s1 % 2) == (s2 % 2)) ? 1.0 : -1.0;
      u_zz(idx) = std::exp(std::complex<double>(0.0, chi * zz));
    }
  const std::complex<double> align = u_seq(0) / u_zz(0);
  Eigen::MatrixXcd m_seq = u_seq.asDiagonal();
  Eigen::MatrixXcd m_zz = (align * u_zz).asDiagonal();
  return (m_seq - m_zz).cwiseAbs().maxCoeff();
}

std::string program_text(const EchoSequence& seq) {
  std::ostringstream out;
  for (const EchoStep& step : seq.steps) {
    switch (step.kind) {
      case EchoStep::Kind::apply_ls:
        out << "LS\n";
        break;
      case EchoStep::Kind::local_permutation:
        out << "SHIFT " << step.shift1 << " " << step.shift2 << "\n";
        break;
      case EchoStep::Kind::local_transposition_pair:
        out << "ROT 0 " << step.level << " " << (step.direction >= 0 ? "+x" : "-x") << " pi\n";
        break;
    }
  }
  return out.str();
}

NativeProgram expand_to_native(const EchoSequence& seq) {
  NativeProgram prog;
  auto emit_shift = [&](int ion, int m) {
    for (int s : shift_sequence(seq.dim, m)) {
      prog.ops.push_back(NativeOp{NativeOp::Kind::rotation, ion, s, +1});
      if (ion == 0)
        ++prog.rotations_ion1;
      else
        ++prog.rotations_ion2;
    }
  };
  for (const EchoStep& step : seq.steps) {
    switch (step.kind) {
      case EchoStep::Kind::apply_ls:
        prog.ops.push_back(NativeOp{NativeOp::Kind::apply_ls, 0, 0, +1});
        ++prog.num_ls;
        break;
      case EchoStep::Kind::local_permutation:
        emit_shift(0, step.shift1);
        emit_shift(1, step.shift2);
        break;
      case EchoStep::Kind::local_transposition_pair:
        prog.ops.push_back(NativeOp{NativeOp::Kind::rotation, 2, step.level, step.direction});
        ++prog.rotations_ion1;
        ++prog.rotations_ion2;
        break;
    }
  }
  return prog;
}

}  // namespace qgt
