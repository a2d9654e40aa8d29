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

#ifndef QGT_JOB_CONFIG_HPP_
#define QGT_JOB_CONFIG_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qgt/dynamics.hpp"
#include "qgt/echo.hpp"
#include "qgt/gate_phases.hpp"
#include "qgt/ion_chain.hpp"
#include "qgt/pulse.hpp"
#include "qgt/pulse_shaper.hpp"

namespace qgt {

// Sensitivity-scan grid. Either an explicit offset list or a generated one.
struct ScanConfig {
  std::vector<double> offsets_hz;

  double start_hz = 0.0;
  double stop_hz = 0.0;
  int points = 0;
  bool log_spacing = false;

  std::vector<double> grid() const;
};

struct EchoConfig {
  EchoSequence::Type type = EchoSequence::Type::a;
  int dim = 0;
  LSAmplitudeProfile profile;  // theta plus optional per-level offsets
};

// One parsed job file. Frequencies are Hz, times seconds, phases radians;
// conversion to angular units happens inside the library calls.
struct JobConfig {
  TrapConfig trap;

  double tau_s = 0.0;
  int num_tones = 0;
  std::optional<int> n_min;  // default: window centred on the mode band

  int ion_j = 0;
  int ion_k = 0;
  double chi = 0.0;

  StabilizationConfig stabilization;  // m_count == 0 means plain decoupling
  std::optional<ScanConfig> scan;
  std::optional<EchoConfig> echo;
  std::optional<OracleConfig> oracle;

  unsigned seed = 12345u;

  // Basis with n_min resolved against the trap's normal modes.
  PulseBasis basis(const ModeSet& modes) const;
  void validate() const;
};

// Parses the JSON job file. Unknown keys and type mismatches raise
// ConfigError naming the offending field.
JobConfig parse_job_config(const std::string& json_text);

JobConfig load_job_config(const std::string& path);

}  // namespace qgt

#endif  // QGT_JOB_CONFIG_HPP_
