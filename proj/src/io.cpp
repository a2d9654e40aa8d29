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

#include "qgt/io.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "qgt/constants.hpp"
#include "qgt/errors.hpp"

namespace qgt {

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) throw ConfigError("number formatting failed");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc()) throw ConfigError("malformed number: '" + text + "'");
  return value;
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path);
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw ConfigError("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string pulse_to_csv(const PulseShape& pulse) {
  pulse.validate();
  std::ostringstream out;
  out << "# tau_s=" << format_double(pulse.basis.tau) << '\n';
  out << "# n_min=" << pulse.basis.n_min << '\n';
  out << "# num_tones=" << pulse.basis.num_tones << '\n';
  out << "tone,mu_hz,omega_hz\n";
  for (int p = 0; p < pulse.basis.num_tones; ++p) {
    out << p << ',' << format_double(pulse.basis.mu(p) / two_pi) << ','
        << format_double(pulse.amplitudes(p) / two_pi) << '\n';
  }
  return out.str();
}

PulseShape pulse_from_csv(const std::string& text) {
  PulseShape pulse;
  pulse.basis.tau = 0.0;
  pulse.basis.n_min = 0;
  pulse.basis.num_tones = 0;
  std::vector<double> amps;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      const std::string value = line.substr(eq + 1);
      if (key == "tau_s")
        pulse.basis.tau = parse_double(value);
      else if (key == "n_min")
        pulse.basis.n_min = static_cast<int>(parse_double(value));
      else if (key == "num_tones")
        pulse.basis.num_tones = static_cast<int>(parse_double(value));
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    std::istringstream row(line);
    std::string tone_s, mu_s, omega_s;
    if (!std::getline(row, tone_s, ',') || !std::getline(row, mu_s, ',') ||
        !std::getline(row, omega_s))
      throw ConfigError("malformed pulse row at line " + std::to_string(lineno));
    amps.push_back(two_pi * parse_double(omega_s));
  }
  if (pulse.basis.tau <= 0.0 || pulse.basis.num_tones <= 0)
    throw ConfigError("pulse file is missing the tone basis comments");
  if (static_cast<int>(amps.size()) != pulse.basis.num_tones)
    throw ConfigError("pulse file row count does not match num_tones");
  pulse.amplitudes = Eigen::Map<Eigen::VectorXd>(amps.data(), amps.size());
  pulse.validate();
  return pulse;
}

std::string manifest_text(const std::string& config_hash,
                          const std::vector<std::string>& artifacts) {
  std::ostringstream out;
  out << "config_hash: " << config_hash << '\n';
  for (const auto& a : artifacts) out << "artifact: " << a << '\n';
  return out.str();
}

}  // namespace qgt
