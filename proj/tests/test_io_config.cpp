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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qgt/constants.hpp"
#include "qgt/errors.hpp"
#include "qgt/io.hpp"
#include "qgt/job_config.hpp"

namespace {

std::string error_message(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

TEST(FormatDouble, RoundTripsExactly) {
  const std::vector<double> values = {
      0.0,        1.0,
      -1.0,       0.1,
      1.0 / 3.0,  3.141592653589793,
      1e-300,     6.02214076e23,
      2.5e-7,     -1.7976931348623157e308,
      5e-324,     123456.78901234567,
  };
  for (double v : values) {
    const std::string text = qgt::format_double(v);
    EXPECT_EQ(qgt::parse_double(text), v) << text;
  }
}

TEST(FormatDouble, UsesTheShortestForm) {
  EXPECT_EQ(qgt::format_double(1.0), "1");
  EXPECT_EQ(qgt::format_double(0.5), "0.5");
  EXPECT_EQ(qgt::format_double(0.1), "0.1");
  EXPECT_EQ(qgt::format_double(-2.0), "-2");
}

TEST(ParseDouble, AcceptsLeadingWhitespaceAndRejectsGarbage) {
  EXPECT_EQ(qgt::parse_double("  3.5"), 3.5);
  EXPECT_EQ(qgt::parse_double("\t-1e3"), -1000.0);
  EXPECT_THROW(qgt::parse_double("abc"), qgt::ConfigError);
  EXPECT_THROW(qgt::parse_double(""), qgt::ConfigError);
}

TEST(ContentHash, MatchesTheReferenceVectors) {
  // FNV-1a 64-bit test vectors.
  EXPECT_EQ(qgt::content_hash(""), "cbf29ce484222325");
  EXPECT_EQ(qgt::content_hash("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(qgt::content_hash("hello").size(), 16u);
  EXPECT_NE(qgt::content_hash("hello"), qgt::content_hash("hellp"));
}

TEST(TextFiles, WriteThenReadIsTheIdentity) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "qgt_io_test.txt").string();
  const std::string payload = "line one\nline two\n\x01\x02 binary-ish\n";
  qgt::write_text_file(path, payload);
  EXPECT_EQ(qgt::read_text_file(path), payload);
  std::remove(path.c_str());
  EXPECT_THROW(qgt::read_text_file(path), qgt::ConfigError);
}

TEST(CsvTable, FormatsRowsAndRejectsRaggedOnes) {
  const std::string text = qgt::csv_table({"a", "b"}, {{1.0, 2.5}, {-3.0, 0.125}});
  EXPECT_EQ(text, "a,b\n1,2.5\n-3,0.125\n");
  EXPECT_THROW(qgt::csv_table({"a", "b"}, {{1.0}}), qgt::ConfigError);
}

TEST(PulseCsv, RoundTripsTheShape) {
  qgt::PulseShape pulse;
  pulse.basis.tau = 123.456e-6;
  pulse.basis.n_min = 17;
  pulse.basis.num_tones = 4;
  pulse.amplitudes.resize(4);
  pulse.amplitudes << 1.0 / 3.0, -2.718281828459045, 6.626e4, 0.0;

  const std::string text = qgt::pulse_to_csv(pulse);
  const qgt::PulseShape back = qgt::pulse_from_csv(text);
  EXPECT_EQ(back.basis.tau, pulse.basis.tau);
  EXPECT_EQ(back.basis.n_min, pulse.basis.n_min);
  EXPECT_EQ(back.basis.num_tones, pulse.basis.num_tones);
  ASSERT_EQ(back.amplitudes.size(), 4);
  for (int p = 0; p < 4; ++p) {
    // Amplitudes pass through a Hz conversion, so allow an ulp of slack.
    EXPECT_NEAR(back.amplitudes(p), pulse.amplitudes(p),
                1e-15 * std::max(1.0, std::abs(pulse.amplitudes(p))))
        << p;
  }
}

TEST(PulseCsv, RejectsFilesWithoutBasisOrWithWrongRowCount) {
  EXPECT_THROW(qgt::pulse_from_csv("tone,mu_hz,omega_hz\n0,1,2\n"), qgt::ConfigError);
  const std::string missing_rows =
      "# tau_s=1e-4\n# n_min=10\n# num_tones=3\ntone,mu_hz,omega_hz\n0,1,2\n";
  EXPECT_THROW(qgt::pulse_from_csv(missing_rows), qgt::ConfigError);
  const std::string bad_row =
      "# tau_s=1e-4\n# n_min=10\n# num_tones=1\ntone,mu_hz,omega_hz\n0\n";
  EXPECT_THROW(qgt::pulse_from_csv(bad_row), qgt::ConfigError);
}

TEST(ManifestText, ListsTheHashThenEachArtifact) {
  EXPECT_EQ(qgt::manifest_text("deadbeef", {"pulse.csv", "scan.csv"}),
            "config_hash: deadbeef\nartifact: pulse.csv\nartifact: scan.csv\n");
  EXPECT_EQ(qgt::manifest_text("00", {}), "config_hash: 00\n");
}

const char* kMinimalConfig = R"json({
  "trap": {"num_ions": 3, "radial_freq_hz": 2.5e6, "axial_freq_hz": 3.0e5},
  "basis": {"tau_s": 1e-4, "num_tones": 8},
  "target": {"ion_j": 0, "ion_k": 2, "chi": 0.39269908169872414}
})json";

TEST(JobConfig, MinimalFileFillsTheDefaults) {
  const qgt::JobConfig cfg = qgt::parse_job_config(kMinimalConfig);
  EXPECT_EQ(cfg.trap.num_ions, 3);
  EXPECT_EQ(cfg.trap.radial_freq_hz, 2.5e6);
  EXPECT_EQ(cfg.trap.axial_freq_hz, 3.0e5);
  EXPECT_EQ(cfg.trap.ion_mass_kg, 2.838e-25);
  EXPECT_EQ(cfg.trap.eff_wavevector, 1.443e7);
  EXPECT_EQ(cfg.tau_s, 1e-4);
  EXPECT_EQ(cfg.num_tones, 8);
  EXPECT_FALSE(cfg.n_min.has_value());
  EXPECT_EQ(cfg.ion_j, 0);
  EXPECT_EQ(cfg.ion_k, 2);
  EXPECT_EQ(cfg.seed, 12345u);
  EXPECT_EQ(cfg.stabilization.m_count, 0);
  EXPECT_TRUE(cfg.stabilization.phases.empty());
  EXPECT_FALSE(cfg.scan.has_value());
  EXPECT_FALSE(cfg.echo.has_value());
  EXPECT_FALSE(cfg.oracle.has_value());
}

TEST(JobConfig, ResolvesTheToneWindowAgainstTheModes) {
  const qgt::JobConfig cfg = qgt::parse_job_config(kMinimalConfig);
  const qgt::ModeSet modes = qgt::normal_modes(cfg.trap);
  const qgt::PulseBasis basis = cfg.basis(modes);
  EXPECT_EQ(basis.tau, cfg.tau_s);
  EXPECT_EQ(basis.num_tones, cfg.num_tones);
  EXPECT_EQ(basis.n_min, qgt::centered_n_min(cfg.tau_s, cfg.num_tones, modes));

  std::string with_n_min(kMinimalConfig);
  const std::string needle = "\"num_tones\": 8";
  with_n_min.replace(with_n_min.find(needle), needle.size(),
                     "\"num_tones\": 8, \"n_min\": 123");
  const qgt::JobConfig cfg2 = qgt::parse_job_config(with_n_min);
  ASSERT_TRUE(cfg2.n_min.has_value());
  EXPECT_EQ(cfg2.basis(modes).n_min, 123);
}

TEST(JobConfig, ParsesEverySection) {
  const char* text = R"json({
    "trap": {"num_ions": 5, "radial_freq_hz": 3.7e6, "axial_freq_hz": 4.0e5,
             "ion_mass_kg": 2.9e-25, "eff_wavevector": 1.2e7},
    "basis": {"tau_s": 5e-4, "num_tones": 32, "n_min": 1840},
    "target": {"ion_j": 1, "ion_k": 3, "chi": -0.1},
    "stabilization": {"m_count": 1, "phases": ["jk", "jj", "kk"], "k_moments": 1},
    "scan": {"start_hz": 10.0, "stop_hz": 100.0, "points": 5, "spacing": "log"},
    "echo": {"type": "partial", "dim": 9, "theta": [1, 0.8, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.05]},
    "oracle": {"fock_cutoff": 12, "dim": 3, "factorized": true,
               "steps_per_cycle": 24, "leakage_threshold": 1e-5,
               "included_modes": [0, 2]},
    "seed": 777
  })json";
  const qgt::JobConfig cfg = qgt::parse_job_config(text);
  EXPECT_EQ(cfg.trap.ion_mass_kg, 2.9e-25);
  EXPECT_EQ(cfg.n_min.value(), 1840);
  EXPECT_EQ(cfg.stabilization.m_count, 1);
  EXPECT_EQ(cfg.stabilization.k_moments, 1);
  ASSERT_EQ(cfg.stabilization.phases.size(), 3u);
  EXPECT_EQ(cfg.stabilization.phases[0], qgt::ChiIndex::jk);
  EXPECT_EQ(cfg.stabilization.phases[1], qgt::ChiIndex::jj);
  EXPECT_EQ(cfg.stabilization.phases[2], qgt::ChiIndex::kk);
  ASSERT_TRUE(cfg.scan.has_value());
  EXPECT_TRUE(cfg.scan->log_spacing);
  ASSERT_TRUE(cfg.echo.has_value());
  EXPECT_EQ(cfg.echo->type, qgt::EchoSequence::Type::c_partial);
  EXPECT_EQ(cfg.echo->dim, 9);
  EXPECT_EQ(cfg.echo->profile.ac_phases.size(), 9);
  EXPECT_EQ(cfg.echo->profile.ac_phases.cwiseAbs().maxCoeff(), 0.0);
  ASSERT_TRUE(cfg.oracle.has_value());
  EXPECT_EQ(cfg.oracle->fock_cutoff, 12);
  EXPECT_EQ(cfg.oracle->dim, 3);
  EXPECT_TRUE(cfg.oracle->factorized);
  EXPECT_EQ(cfg.oracle->leakage_threshold, 1e-5);
  ASSERT_EQ(cfg.oracle->included_modes.size(), 2u);
  EXPECT_EQ(cfg.oracle->included_modes[1], 2);
  EXPECT_EQ(cfg.seed, 777u);
}

TEST(JobConfig, NamesTheOffendingField) {
  std::string with_unknown(kMinimalConfig);
  with_unknown.replace(with_unknown.find("\"num_ions\""), 10, "\"ion_count\"");
  std::string msg = error_message([&] { qgt::parse_job_config(with_unknown); });
  EXPECT_NE(msg.find("trap.ion_count"), std::string::npos) << msg;
  EXPECT_NE(msg.find("unknown"), std::string::npos) << msg;

  std::string missing(kMinimalConfig);
  missing.replace(missing.find("\"chi\": 0.39269908169872414"), 26, "\"chi2\": 1.0");
  msg = error_message([&] { qgt::parse_job_config(missing); });
  EXPECT_NE(msg.find("target.chi"), std::string::npos) << msg;

  std::string bad_type(kMinimalConfig);
  bad_type.replace(bad_type.find("\"num_ions\": 3"), 13, "\"num_ions\": 3.5");
  msg = error_message([&] { qgt::parse_job_config(bad_type); });
  EXPECT_NE(msg.find("integer"), std::string::npos) << msg;

  msg = error_message([&] { qgt::parse_job_config("{ not json"); });
  EXPECT_NE(msg.find("parse error"), std::string::npos) << msg;
}

TEST(JobConfig, RejectsBadTargetsAndEchoTables) {
  std::string same_ions(kMinimalConfig);
  same_ions.replace(same_ions.find("\"ion_k\": 2"), 10, "\"ion_k\": 0");
  EXPECT_THROW(qgt::parse_job_config(same_ions), qgt::ConfigError);

  std::string out_of_range(kMinimalConfig);
  out_of_range.replace(out_of_range.find("\"ion_k\": 2"), 10, "\"ion_k\": 7");
  EXPECT_THROW(qgt::parse_job_config(out_of_range), qgt::ConfigError);

  std::string with_echo(kMinimalConfig);
  with_echo.insert(with_echo.rfind('}'),
                   R"(, "echo": {"type": "a", "dim": 3, "theta": [1, 0.5]})");
  const std::string msg = error_message([&] { qgt::parse_job_config(with_echo); });
  EXPECT_NE(msg.find("echo.theta"), std::string::npos) << msg;

  std::string bad_echo_type(kMinimalConfig);
  bad_echo_type.insert(bad_echo_type.rfind('}'),
                       R"(, "echo": {"type": "z", "dim": 2, "theta": [1, 0]})");
  EXPECT_THROW(qgt::parse_job_config(bad_echo_type), qgt::ConfigError);
}

TEST(ScanConfig, GridsHitTheEndpointsExactly) {
  qgt::ScanConfig linear;
  linear.start_hz = 10.0;
  linear.stop_hz = 100.0;
  linear.points = 4;
  const std::vector<double> lin = linear.grid();
  ASSERT_EQ(lin.size(), 4u);
  EXPECT_EQ(lin.front(), 10.0);
  EXPECT_EQ(lin.back(), 100.0);
  EXPECT_EQ(lin[1], 40.0);

  qgt::ScanConfig log = linear;
  log.points = 3;
  log.log_spacing = true;
  const std::vector<double> lg = log.grid();
  ASSERT_EQ(lg.size(), 3u);
  EXPECT_NEAR(lg[0], 10.0, 1e-12 * 10.0);
  EXPECT_NEAR(lg[1], 31.622776601683793, 1e-12 * 31.6);
  EXPECT_NEAR(lg[2], 100.0, 1e-12 * 100.0);

  qgt::ScanConfig listed;
  listed.offsets_hz = {-5.0, 0.0, 5.0};
  EXPECT_EQ(listed.grid(), listed.offsets_hz);

  qgt::ScanConfig bad;
  bad.points = 1;
  EXPECT_THROW(bad.grid(), qgt::ConfigError);
  qgt::ScanConfig bad_log;
  bad_log.start_hz = 0.0;
  bad_log.stop_hz = 10.0;
  bad_log.points = 3;
  bad_log.log_spacing = true;
  EXPECT_THROW(bad_log.grid(), qgt::ConfigError);
}

}  // namespace
