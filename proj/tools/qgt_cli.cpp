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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <json.hpp>

#include "qgt/constants.hpp"
#include "qgt/cyclic_shift.hpp"
#include "qgt/dynamics.hpp"
#include "qgt/echo.hpp"
#include "qgt/errors.hpp"
#include "qgt/gate_phases.hpp"
#include "qgt/io.hpp"
#include "qgt/ion_chain.hpp"
#include "qgt/job_config.hpp"
#include "qgt/pulse.hpp"
#include "qgt/pulse_shaper.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Session {
  std::string config_path;
  std::string out_dir = ".";
  std::string pulse_path;
  std::optional<unsigned> seed_override;
  int threads = 0;

  qgt::JobConfig config;
  std::string config_hash;
  std::vector<std::string> artifacts;

  qgt::JobConfig& load() {
    const std::string text = qgt::read_text_file(config_path);
    config_hash = qgt::content_hash(text);
    config = qgt::parse_job_config(text);
    if (seed_override) config.seed = *seed_override;
    return config;
  }

  void emit(const std::string& name, const std::string& content) {
    fs::create_directories(out_dir);
    qgt::write_text_file((fs::path(out_dir) / name).string(), content);
    artifacts.push_back(name);
  }

  void finish() {
    fs::create_directories(out_dir);
    qgt::write_text_file((fs::path(out_dir) / "manifest.txt").string(),
                         qgt::manifest_text(config_hash, artifacts));
  }
};

std::string json_dump(const json& j) { return j.dump(2) + "\n"; }

qgt::ModeSet chain_modes(const qgt::JobConfig& cfg) { return qgt::normal_modes(cfg.trap); }

int run_modes(Session& s) {
  const qgt::JobConfig& cfg = s.load();
  const qgt::ModeSet modes = chain_modes(cfg);
  std::vector<std::string> header = {"mode", "freq_hz"};
  for (int j = 0; j < modes.num_ions(); ++j) header.push_back("eta_" + std::to_string(j));
  std::vector<std::vector<double>> rows;
  for (int l = 0; l < modes.num_modes(); ++l) {
    std::vector<double> row = {static_cast<double>(l), modes.omega(l) / qgt::two_pi};
    for (int j = 0; j < modes.num_ions(); ++j) row.push_back(modes.eta(l, j));
    rows.push_back(std::move(row));
  }
  s.emit("modes.csv", qgt::csv_table(header, rows));
  s.finish();
  return 0;
}

int run_shape(Session& s) {
  const qgt::JobConfig& cfg = s.load();
  const qgt::ModeSet modes = chain_modes(cfg);
  const qgt::PulseBasis basis = cfg.basis(modes);
  const double margin = qgt::band_margin_fraction(basis, modes);
  if (margin < 0.2)
    std::cerr << "note: tone window margin " << qgt::format_double(margin)
              << " is below the recommended 0.2\n";

  const qgt::OptimizationResult res = qgt::optimize_pulse(
      basis, modes, cfg.ion_j, cfg.ion_k, cfg.chi, cfg.stabilization, 16, cfg.seed);

  s.emit("pulse.csv", qgt::pulse_to_csv(res.pulse));
  json meta;
  meta["converged"] = res.converged;
  meta["iterations"] = res.iterations;
  meta["starts_converged"] = res.starts_converged;
  meta["chi_jj"] = res.achieved.chi_jj;
  meta["chi_jk"] = res.achieved.chi_jk;
  meta["chi_kk"] = res.achieved.chi_kk;
  meta["residual_alpha"] = res.residual_alpha;
  meta["residual_linear"] = res.residual_linear;
  meta["residual_phase"] = res.residual_phase;
  meta["power_norm_rad_s"] = res.power_norm;
  meta["omega_max_rad_s"] = res.omega_max;
  meta["omega_max_hz"] = res.omega_max / qgt::two_pi;
  meta["tau_s"] = basis.tau;
  meta["num_tones"] = basis.num_tones;
  meta["n_min"] = basis.n_min;
  meta["band_margin"] = margin;
  s.emit("shape_result.json", json_dump(meta));
  s.finish();
  if (!res.converged) {
    std::cerr << "error: optimizer did not converge (phase residual "
              << qgt::format_double(res.residual_phase) << ")\n";
    return 3;
  }
  return 0;
}

int run_scan(Session& s) {
  const qgt::JobConfig& cfg = s.load();
  if (!cfg.scan) throw qgt::ConfigError("config has no scan section");
  if (s.pulse_path.empty()) throw qgt::ConfigError("scan requires --pulse");
  const qgt::PulseShape pulse = qgt::pulse_from_csv(qgt::read_text_file(s.pulse_path));
  const qgt::ScanResult result =
      qgt::sensitivity_scan(pulse, cfg.trap, cfg.ion_j, cfg.ion_k, cfg.scan->grid());
  std::vector<std::vector<double>> rows;
  for (const auto& p : result.points)
    rows.push_back({p.offset_hz, p.dchi_jj, p.dchi_jk, p.dchi_kk, std::abs(p.dchi_jk),
                    p.max_alpha});
  s.emit("scan.csv",
         qgt::csv_table({"offset_hz", "dchi_jj", "dchi_jk", "dchi_kk", "abs_dchi_jk",
                         "max_alpha"},
                        rows));
  s.finish();
  return 0;
}

int run_echo(Session& s) {
  const qgt::JobConfig& cfg = s.load();
  if (!cfg.echo) throw qgt::ConfigError("config has no echo section");
  const qgt::EchoConfig& ec = *cfg.echo;
  const qgt::EchoSequence seq = ec.type == qgt::EchoSequence::Type::c_partial
                                    ? qgt::build_partial(ec.dim)
                                    : qgt::build_sequence(ec.type, ec.dim);
  const qgt::LSPhaseTable table = qgt::ls_phase_table(cfg.chi, 0.0, 0.0, ec.profile);
  const qgt::PhaseLedger ledger = qgt::simulate_ledger(seq, table);

  s.emit("program.txt", qgt::program_text(seq));

  std::vector<std::vector<double>> ent_rows;
  for (int a = 0; a < ledger.dim; ++a)
    for (int b = 0; b < ledger.dim; ++b)
      ent_rows.push_back({static_cast<double>(a), static_cast<double>(b),
                          ledger.entangling(a, b)});
  s.emit("ledger_entangling.csv", qgt::csv_table({"s1", "s2", "phase"}, ent_rows));

  std::vector<std::vector<double>> non_rows;
  for (int ion = 0; ion < 2; ++ion)
    for (int lvl = 0; lvl < ledger.dim; ++lvl)
      non_rows.push_back({static_cast<double>(ion), static_cast<double>(lvl),
                          ledger.nonentangling(ion, lvl)});
  s.emit("ledger_nonentangling.csv", qgt::csv_table({"ion", "level", "phase"}, non_rows));

  const qgt::PhasePartition part = qgt::distinct_phases(ledger.entangling);
  const qgt::UniformityReport uni = qgt::nonentangling_uniformity(seq, table);
  const qgt::NativeProgram native = qgt::expand_to_native(seq);
  std::string report;
  report += "distinct_entangling_phases: " + std::to_string(part.num_blocks) + "\n";
  for (int b = 0; b < part.num_blocks; ++b)
    report += "representative_" + std::to_string(b) + ": " +
              qgt::format_double(part.representatives[b]) + "\n";
  report += "nonentangling_uniform: " + std::string(uni.is_global ? "yes" : "no") + "\n";
  report += "nonentangling_spread: " + qgt::format_double(uni.spread) + "\n";
  report += "ls_applications: " + std::to_string(native.num_ls) + "\n";
  report += "rotations_ion1: " + std::to_string(native.rotations_ion1) + "\n";
  report += "rotations_ion2: " + std::to_string(native.rotations_ion2) + "\n";
  s.emit("phase_report.txt", report);
  s.finish();
  return 0;
}

int run_shift(int dim, int shift, Session& s) {
  const std::vector<int> seq = qgt::shift_sequence(dim, shift);
  std::string text = "levels: " + std::to_string(dim) + "\nshift: " + std::to_string(shift) +
                     "\nswaps: " + std::to_string(seq.size()) + "\n";
  for (int v : seq) text += "swap 0 " + std::to_string(v) + "\n";
  std::cout << text;
  if (!s.out_dir.empty() && s.out_dir != ".") {
    fs::create_directories(s.out_dir);
    qgt::write_text_file((fs::path(s.out_dir) / "swaps.txt").string(), text);
  }
  return 0;
}

int run_validate(Session& s) {
  const qgt::JobConfig& cfg = s.load();
  if (s.pulse_path.empty()) throw qgt::ConfigError("validate requires --pulse");
  const qgt::PulseShape pulse = qgt::pulse_from_csv(qgt::read_text_file(s.pulse_path));
  const qgt::ModeSet modes = chain_modes(cfg);

  qgt::OracleConfig oc;
  oc.factorized = true;  // cheap default; override through the oracle section
  if (cfg.oracle) oc = *cfg.oracle;

  json meta;
  {
    qgt::OracleConfig ms_cfg = oc;
    ms_cfg.dim = 2;
    const qgt::OracleResult run =
        qgt::integrate_ms(pulse, modes, cfg.ion_j, cfg.ion_k, ms_cfg);
    const qgt::MSPhaseSet phases = qgt::ms_phases(pulse, modes, cfg.ion_j, cfg.ion_k);
    const Eigen::MatrixXcd closed =
        qgt::ms_evolution(phases, Eigen::VectorXd::Zero(2), 2);
    const double deviation = (run.electronic - closed).cwiseAbs().maxCoeff();
    meta["ms_deviation"] = deviation;
    meta["ms_leakage"] = run.leakage;
    meta["ms_unitarity_defect"] = run.unitarity_defect;
    meta["ms_steps"] = run.steps;
    meta["chi_jj"] = phases.chi_jj;
    meta["chi_jk"] = phases.chi_jk;
    meta["chi_kk"] = phases.chi_kk;
  }
  if (cfg.echo) {
    qgt::OracleConfig ls_cfg = oc;
    ls_cfg.dim = cfg.echo->profile.dim();
    const qgt::OracleResult run =
        qgt::integrate_ls(pulse, cfg.echo->profile, modes, cfg.ion_j, cfg.ion_k, ls_cfg);
    const qgt::MSPhaseSet phases = qgt::ms_phases(pulse, modes, cfg.ion_j, cfg.ion_k);
    const qgt::LSPhaseTable table =
        qgt::ls_phase_table(phases.chi_jk, phases.chi_jj, phases.chi_kk, cfg.echo->profile);
    const Eigen::MatrixXcd closed = qgt::ls_evolution(table);
    const double deviation = (run.electronic - closed).cwiseAbs().maxCoeff();
    meta["ls_deviation"] = deviation;
    meta["ls_leakage"] = run.leakage;
    meta["ls_unitarity_defect"] = run.unitarity_defect;
    meta["ls_steps"] = run.steps;
  }
  s.emit("validate_report.json", json_dump(meta));
  s.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Session s;
  if (const char* env = std::getenv("QGT_THREADS")) s.threads = std::atoi(env);

  CLI::App app{"design and verification toolkit for trapped-ion qudit entangling gates"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* opt = cmd->add_option("--config", s.config_path, "job file (JSON)");
    if (needs_config) opt->required();
    cmd->add_option("--out", s.out_dir, "output directory");
    cmd->add_option("--seed", s.seed_override, "override the config seed");
    cmd->add_option("--threads", s.threads, "worker threads (default: QGT_THREADS or 1)");
  };

  CLI::App* modes_cmd = app.add_subcommand("modes", "write the normal-mode table");
  add_common(modes_cmd, true);
  CLI::App* shape_cmd = app.add_subcommand("shape", "optimize a pulse for the target gate");
  add_common(shape_cmd, true);
  CLI::App* scan_cmd = app.add_subcommand("scan", "trap-frequency sensitivity of a pulse");
  add_common(scan_cmd, true);
  scan_cmd->add_option("--pulse", s.pulse_path, "pulse CSV from `shape`")->required();
  CLI::App* echo_cmd = app.add_subcommand("echo", "compile and audit an echo sequence");
  add_common(echo_cmd, true);
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "integrate the dynamics and compare to closed forms");
  add_common(validate_cmd, true);
  validate_cmd->add_option("--pulse", s.pulse_path, "pulse CSV from `shape`")->required();

  int shift_dim = 0;
  int shift_by = 0;
  CLI::App* shift_cmd = app.add_subcommand("shift", "swap sequence for a cyclic level shift");
  shift_cmd->add_option("dim", shift_dim, "number of levels")->required();
  shift_cmd->add_option("shift", shift_by, "shift amount")->required();
  add_common(shift_cmd, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (s.threads > 0) Eigen::setNbThreads(s.threads);

  try {
    if (modes_cmd->parsed()) return run_modes(s);
    if (shape_cmd->parsed()) return run_shape(s);
    if (scan_cmd->parsed()) return run_scan(s);
    if (echo_cmd->parsed()) return run_echo(s);
    if (shift_cmd->parsed()) return run_shift(shift_dim, shift_by, s);
    if (validate_cmd->parsed()) return run_validate(s);
  } catch (const qgt::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
