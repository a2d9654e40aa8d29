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

#include "qgt/job_config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "qgt/errors.hpp"
#include "qgt/io.hpp"

namespace qgt {
namespace {

using nlohmann::json;

// Default species constants: a heavy ion driven on a single-photon optical
// quadrupole transition near 435 nm, the regime the reference power figures
// assume.
constexpr double kDefaultMassKg = 2.838e-25;
constexpr double kDefaultWavevector = 1.443e7;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config field '" + where + "': " + what);
}

const json& get_field(const json& obj, const std::string& where, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + "." + key, "missing");
  return *it;
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
  const json& v = get_field(obj, where, key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

double get_number_or(const json& obj, const std::string& where, const std::string& key,
                     double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail(where + "." + key, "expected a number");
  return it->get<double>();
}

int get_int(const json& obj, const std::string& where, const std::string& key) {
  const json& v = get_field(obj, where, key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

int get_int_or(const json& obj, const std::string& where, const std::string& key, int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) fail(where + "." + key, "expected an integer");
  return it->get<int>();
}

bool get_bool_or(const json& obj, const std::string& where, const std::string& key,
                 bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) fail(where + "." + key, "expected a boolean");
  return it->get<bool>();
}

Eigen::VectorXd get_vector(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(where, "expected an array of numbers");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) fail(where + "." + it.key(), "unknown key");
  }
}

ChiIndex parse_phase_name(const std::string& name, const std::string& where) {
  if (name == "jj") return ChiIndex::jj;
  if (name == "jk") return ChiIndex::jk;
  if (name == "kk") return ChiIndex::kk;
  fail(where, "expected one of \"jj\", \"jk\", \"kk\", got \"" + name + "\"");
}

EchoSequence::Type parse_echo_type(const std::string& name, const std::string& where) {
  if (name == "a") return EchoSequence::Type::a;
  if (name == "b") return EchoSequence::Type::b;
  if (name == "c") return EchoSequence::Type::c;
  if (name == "partial") return EchoSequence::Type::c_partial;
  fail(where, "expected one of \"a\", \"b\", \"c\", \"partial\", got \"" + name + "\"");
}

}  // namespace

std::vector<double> ScanConfig::grid() const {
  if (!offsets_hz.empty()) return offsets_hz;
  if (points < 2) throw ConfigError("scan grid needs at least 2 points");
  std::vector<double> out(points);
  if (log_spacing) {
    if (start_hz <= 0.0 || stop_hz <= 0.0)
      throw ConfigError("log-spaced scan needs positive endpoints");
    const double la = std::log(start_hz);
    const double lb = std::log(stop_hz);
    for (int i = 0; i < points; ++i)
      out[i] = std::exp(la + (lb - la) * i / (points - 1));
  } else {
    for (int i = 0; i < points; ++i)
      out[i] = start_hz + (stop_hz - start_hz) * i / (points - 1);
  }
  return out;
}

PulseBasis JobConfig::basis(const ModeSet& modes) const {
  PulseBasis b;
  b.tau = tau_s;
  b.num_tones = num_tones;
  b.n_min = n_min ? *n_min : centered_n_min(tau_s, num_tones, modes);
  b.validate();
  return b;
}

void JobConfig::validate() const {
  if (trap.num_ions < 2) throw ConfigError("trap.num_ions must be at least 2");
  if (tau_s <= 0.0) throw ConfigError("basis.tau_s must be positive");
  if (num_tones <= 0) throw ConfigError("basis.num_tones must be positive");
  if (ion_j < 0 || ion_j >= trap.num_ions || ion_k < 0 || ion_k >= trap.num_ions)
    throw ConfigError("target ions out of range for the chain");
  if (ion_j == ion_k) throw ConfigError("target ions must be distinct");
  if (!stabilization.phases.empty() || stabilization.m_count > 0 ||
      stabilization.k_moments > 0)
    stabilization.validate(num_tones, trap.num_ions);
  if (echo) echo->profile.validate();
}

JobConfig parse_job_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  reject_unknown(root, "config",
                 {"trap", "basis", "target", "stabilization", "scan", "echo", "oracle", "seed"});

  JobConfig cfg;

  const json& trap = get_field(root, "config", "trap");
  reject_unknown(trap, "trap",
                 {"num_ions", "radial_freq_hz", "axial_freq_hz", "ion_mass_kg",
                  "eff_wavevector"});
  cfg.trap.num_ions = get_int(trap, "trap", "num_ions");
  cfg.trap.radial_freq_hz = get_number(trap, "trap", "radial_freq_hz");
  cfg.trap.axial_freq_hz = get_number(trap, "trap", "axial_freq_hz");
  cfg.trap.ion_mass_kg = get_number_or(trap, "trap", "ion_mass_kg", kDefaultMassKg);
  cfg.trap.eff_wavevector =
      get_number_or(trap, "trap", "eff_wavevector", kDefaultWavevector);

  const json& basis = get_field(root, "config", "basis");
  reject_unknown(basis, "basis", {"tau_s", "num_tones", "n_min"});
  cfg.tau_s = get_number(basis, "basis", "tau_s");
  cfg.num_tones = get_int(basis, "basis", "num_tones");
  if (basis.contains("n_min")) cfg.n_min = get_int(basis, "basis", "n_min");

  const json& target = get_field(root, "config", "target");
  reject_unknown(target, "target", {"ion_j", "ion_k", "chi"});
  cfg.ion_j = get_int(target, "target", "ion_j");
  cfg.ion_k = get_int(target, "target", "ion_k");
  cfg.chi = get_number(target, "target", "chi");

  if (root.contains("stabilization")) {
    const json& stab = root["stabilization"];
    reject_unknown(stab, "stabilization", {"m_count", "phases", "k_moments"});
    cfg.stabilization.m_count = get_int(stab, "stabilization", "m_count");
    cfg.stabilization.k_moments = get_int_or(stab, "stabilization", "k_moments", 0);
    const json& phases = get_field(stab, "stabilization", "phases");
    if (!phases.is_array()) fail("stabilization.phases", "expected an array of strings");
    for (const auto& p : phases) {
      if (!p.is_string()) fail("stabilization.phases", "expected an array of strings");
      cfg.stabilization.phases.push_back(
          parse_phase_name(p.get<std::string>(), "stabilization.phases"));
    }
  }

  if (root.contains("scan")) {
    const json& scan = root["scan"];
    reject_unknown(scan, "scan",
                   {"offsets_hz", "start_hz", "stop_hz", "points", "spacing"});
    ScanConfig sc;
    if (scan.contains("offsets_hz")) {
      const Eigen::VectorXd v = get_vector(scan["offsets_hz"], "scan.offsets_hz");
      sc.offsets_hz.assign(v.data(), v.data() + v.size());
    } else {
      sc.start_hz = get_number(scan, "scan", "start_hz");
      sc.stop_hz = get_number(scan, "scan", "stop_hz");
      sc.points = get_int(scan, "scan", "points");
      auto it = scan.find("spacing");
      if (it != scan.end()) {
        if (!it->is_string()) fail("scan.spacing", "expected \"log\" or \"linear\"");
        const std::string s = it->get<std::string>();
        if (s == "log")
          sc.log_spacing = true;
        else if (s == "linear")
          sc.log_spacing = false;
        else
          fail("scan.spacing", "expected \"log\" or \"linear\", got \"" + s + "\"");
      }
    }
    cfg.scan = sc;
  }

  if (root.contains("echo")) {
    const json& echo = root["echo"];
    reject_unknown(echo, "echo", {"type", "dim", "theta", "ac_phases"});
    EchoConfig ec;
    const json& type = get_field(echo, "echo", "type");
    if (!type.is_string()) fail("echo.type", "expected a string");
    ec.type = parse_echo_type(type.get<std::string>(), "echo.type");
    ec.dim = get_int(echo, "echo", "dim");
    ec.profile.theta = get_vector(get_field(echo, "echo", "theta"), "echo.theta");
    if (echo.contains("ac_phases"))
      ec.profile.ac_phases = get_vector(echo["ac_phases"], "echo.ac_phases");
    else
      ec.profile.ac_phases = Eigen::VectorXd::Zero(ec.profile.theta.size());
    if (ec.profile.dim() != ec.dim)
      fail("echo.theta", "length must equal echo.dim");
    cfg.echo = ec;
  }

  if (root.contains("oracle")) {
    const json& oracle = root["oracle"];
    reject_unknown(oracle, "oracle",
                   {"fock_cutoff", "included_modes", "steps_per_cycle", "dim",
                    "factorized", "leakage_threshold"});
    OracleConfig oc;
    oc.fock_cutoff = get_int_or(oracle, "oracle", "fock_cutoff", oc.fock_cutoff);
    oc.steps_per_cycle = get_int_or(oracle, "oracle", "steps_per_cycle", oc.steps_per_cycle);
    oc.dim = get_int_or(oracle, "oracle", "dim", oc.dim);
    oc.factorized = get_bool_or(oracle, "oracle", "factorized", oc.factorized);
    oc.leakage_threshold =
        get_number_or(oracle, "oracle", "leakage_threshold", oc.leakage_threshold);
    if (oracle.contains("included_modes")) {
      const Eigen::VectorXd v = get_vector(oracle["included_modes"], "oracle.included_modes");
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double x = v(i);
        if (x != std::floor(x)) fail("oracle.included_modes", "expected integer indices");
        oc.included_modes.push_back(static_cast<int>(x));
      }
    }
    cfg.oracle = oc;
  }

  if (root.contains("seed")) {
    const json& seed = root["seed"];
    if (!seed.is_number_integer()) fail("seed", "expected an integer");
    cfg.seed = seed.get<unsigned>();
  }

  cfg.validate();
  return cfg;
}

JobConfig load_job_config(const std::string& path) {
  return parse_job_config(read_text_file(path));
}

}  // namespace qgt
