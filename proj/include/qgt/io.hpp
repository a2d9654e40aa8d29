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

#ifndef QGT_IO_HPP
#define QGT_IO_HPP

#include <string>
#include <vector>

#include "qgt/pulse.hpp"

namespace qgt {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

double parse_double(const std::string& text);

// 64-bit FNV-1a of the byte content, as fixed-width lowercase hex.
std::string content_hash(const std::string& bytes);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// One header line, then one line per row; numbers in round-trip form.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

// Pulse serialization: `# key=value` comment lines carry the tone basis
// (tau_s, n_min, num_tones); data rows are tone, mu_hz, omega_hz.
std::string pulse_to_csv(const PulseShape& pulse);
PulseShape pulse_from_csv(const std::string& text);

// Deterministic artifact listing (no timestamps).
std::string manifest_text(const std::string& config_hash,
                          const std::vector<std::string>& artifacts);

}  // namespace qgt

#endif
