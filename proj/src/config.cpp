#include "maxbloch/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace maxbloch {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::set<std::string> kKnownKeys = {
    // medium
    "omega_c_ghz", "gamma1_ghz", "gamma2_ghz", "d_eq", "length_cm",
    "dipole_esu", "density_cm3", "omega0_ghz",
    // grid
    "t_window_ns", "n_t", "n_z", "phi_deg",
    // pump
    "omega00_ghz", "gamma_pump_ghz", "delta_mode_ghz", "n_modes", "delta0_ghz",
    "t0_ns", "a_ns", "b_ns", "seed", "phases",
    // probe
    "g_ratio", "tau0_ns",
    // run
    "scenario", "ensemble_m", "instrument_fwhm_ghz", "spectrum_floor",
    "output_dir", "sweep_parameter", "sweep_values_ghz", "keep_member_spectra",
    "full_history", "history_slices"};

class KeyValues {
 public:
  explicit KeyValues(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::vector<std::string> unknown, duplicate;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": expected `key = value`, got `" + line + "`");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (!kKnownKeys.count(key)) {
        unknown.push_back(key);
        continue;
      }
      if (values_.count(key)) duplicate.push_back(key);
      values_[key] = value;
    }
    std::string msg;
    if (!unknown.empty()) {
      msg += "unknown config keys:";
      for (const auto& k : unknown) msg += " " + k;
    }
    if (!duplicate.empty()) {
      if (!msg.empty()) msg += "\n";
      msg += "duplicate config keys:";
      for (const auto& k : duplicate) msg += " " + k;
    }
    if (!msg.empty()) throw ConfigError(msg);
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return parse_number(key);
  }

  double required_number(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required config key: " + key);
    return parse_number(key);
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = parse_number(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
      throw ConfigError("config key " + key + " must be an integer");
    }
    return i;
  }

  int required_integer(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required config key: " + key);
    return integer(key, 0);
  }

  std::uint64_t uint64(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = values_.at(key);
    try {
      std::size_t pos = 0;
      const std::uint64_t v = std::stoull(s, &pos);
      if (pos != s.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + ": not an unsigned integer: " + s);
    }
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = values_.at(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("config key " + key + ": expected true/false, got " + s);
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? values_.at(key) : fallback;
  }

  std::vector<double> number_list(const std::string& key) const {
    std::vector<double> out;
    if (!has(key)) return out;
    std::stringstream ss(values_.at(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": bad number in list: " + item);
      }
    }
    return out;
  }

 private:
  double parse_number(const std::string& key) const {
    const std::string& s = values_.at(key);
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + ": not a number: " + s);
    }
  }

  std::map<std::string, std::string> values_;
};

Scenario parse_scenario(const std::string& s) {
  if (s == "single") return Scenario::kSingle;
  if (s == "pumpprobe") return Scenario::kPumpProbe;
  if (s == "sweep-energy") return Scenario::kSweepEnergy;
  if (s == "sweep-detuning") return Scenario::kSweepDetuning;
  if (s == "lintest") return Scenario::kLinTest;
  throw ConfigError("unknown scenario: " + s +
                    " (expected single|pumpprobe|sweep-energy|sweep-detuning|lintest)");
}

SweepParameter parse_sweep_parameter(const std::string& s) {
  if (s == "omega_00") return SweepParameter::kOmega00;
  if (s == "delta0") return SweepParameter::kDelta0;
  if (s == "omega_c") return SweepParameter::kOmegaC;
  throw ConfigError("unknown sweep_parameter: " + s +
                    " (expected omega_00|delta0|omega_c)");
}

}  // namespace

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kSingle: return "single";
    case Scenario::kPumpProbe: return "pumpprobe";
    case Scenario::kSweepEnergy: return "sweep-energy";
    case Scenario::kSweepDetuning: return "sweep-detuning";
    case Scenario::kLinTest: return "lintest";
  }
  return "?";
}

const char* sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::kOmega00: return "omega_00";
    case SweepParameter::kDelta0: return "delta0";
    case SweepParameter::kOmegaC: return "omega_c";
  }
  return "?";
}

RunConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  const KeyValues kv(path);
  RunConfig cfg;

  cfg.medium.omega_c = ghz_to_angular(kv.number("omega_c_ghz", 0.0));
  cfg.medium.gamma1 = ghz_to_angular(kv.number("gamma1_ghz", 0.0));
  cfg.medium.gamma2 = ghz_to_angular(kv.number("gamma2_ghz", 0.0));
  cfg.medium.d_eq = kv.number("d_eq", 1.0);
  cfg.medium.length = kv.required_number("length_cm");
  if (kv.has("dipole_esu") || kv.has("density_cm3") || kv.has("omega0_ghz")) {
    MicroParams micro;
    micro.dipole = kv.number("dipole_esu", 0.0);
    micro.density = kv.number("density_cm3", 0.0);
    micro.omega0 = ghz_to_angular(kv.number("omega0_ghz", 0.0));
    cfg.medium.micro = micro;
  }

  cfg.grid.t_window = ns_to_s(kv.required_number("t_window_ns"));
  cfg.grid.n_t = kv.required_integer("n_t");
  cfg.grid.n_z = kv.required_integer("n_z");
  cfg.grid.phi = deg_to_rad(kv.number("phi_deg", 1.0));

  cfg.pump.omega_00 = ghz_to_angular(kv.required_number("omega00_ghz"));
  cfg.pump.gamma_pump = ghz_to_angular(kv.number("gamma_pump_ghz", 20.0));
  cfg.pump.delta_mode = ghz_to_angular(kv.number("delta_mode_ghz", 0.37));
  cfg.pump.n_modes = kv.integer("n_modes", 50);
  cfg.pump.delta0 = ghz_to_angular(kv.number("delta0_ghz", 0.0));
  cfg.pump.t0 = ns_to_s(kv.number("t0_ns", 1.5));
  cfg.pump.a = ns_to_s(kv.number("a_ns", 2.4));
  cfg.pump.b = ns_to_s(kv.number("b_ns", 0.3));
  cfg.pump.seed = kv.uint64("seed", 1);
  const std::string phases = kv.text("phases", "random");
  if (phases == "random") {
    cfg.pump.phase_mode = PhaseMode::kRandom;
  } else if (phases == "zero") {
    cfg.pump.phase_mode = PhaseMode::kZero;
  } else {
    throw ConfigError("config key phases: expected random|zero, got " + phases);
  }

  if (kv.has("g_ratio") || kv.has("tau0_ns")) {
    ProbeSpec probe;
    probe.g_ratio = kv.number("g_ratio", 100.0);
    probe.tau0 = ns_to_s(kv.number("tau0_ns", 0.01));
    cfg.probe = probe;
  }

  if (kv.has("scenario")) cfg.scenario = parse_scenario(kv.text("scenario", ""));
  cfg.ensemble_m = kv.integer("ensemble_m", 8);
  cfg.instrument_fwhm = ghz_to_angular(kv.number("instrument_fwhm_ghz", 12.0));
  cfg.spectrum_floor = kv.number("spectrum_floor", 1e-3);
  cfg.output_dir = kv.text("output_dir", "out");
  if (kv.has("sweep_parameter")) {
    cfg.sweep_parameter = parse_sweep_parameter(kv.text("sweep_parameter", ""));
  }
  for (double v : kv.number_list("sweep_values_ghz")) {
    cfg.sweep_values.push_back(ghz_to_angular(v));
  }
  cfg.keep_member_spectra = kv.flag("keep_member_spectra", false);
  cfg.full_history = kv.flag("full_history", false);
  cfg.history_slices = kv.integer("history_slices", 65);

  // Command-line overrides.
  if (overrides.scenario) cfg.scenario = *overrides.scenario;
  else if (!kv.has("scenario"))
    throw ConfigError("no scenario given (config key or CLI subcommand)");
  if (overrides.seed) cfg.pump.seed = *overrides.seed;
  if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
  if (overrides.members) cfg.ensemble_m = *overrides.members;
  if (overrides.full_history) cfg.full_history = true;

  // Scenario-dependent requirements and cross-field checks.
  std::vector<std::string> issues;
  for (const auto& s : validation_issues(cfg.medium)) issues.push_back(s);
  for (const auto& s : validation_issues(cfg.grid)) issues.push_back(s);
  for (const auto& s : validation_issues(cfg.pump)) issues.push_back(s);
  if (cfg.probe) {
    for (const auto& s : validation_issues(*cfg.probe)) issues.push_back(s);
  }
  if (cfg.medium.omega_c == 0.0 && !cfg.medium.micro) {
    issues.push_back("medium coupling missing: give omega_c_ghz or dipole/density/omega0");
  }
  const bool needs_probe = cfg.scenario == Scenario::kPumpProbe ||
                           cfg.scenario == Scenario::kSweepEnergy ||
                           cfg.scenario == Scenario::kSweepDetuning;
  if (needs_probe && !cfg.probe) {
    issues.push_back("scenario requires probe keys (g_ratio and/or tau0_ns)");
  }
  const bool is_sweep = cfg.scenario == Scenario::kSweepEnergy ||
                        cfg.scenario == Scenario::kSweepDetuning;
  if (is_sweep && cfg.sweep_values.empty()) {
    issues.push_back("sweep scenario requires a nonempty sweep_values_ghz list");
  }
  if (cfg.ensemble_m < 1) issues.push_back("ensemble_m must be >= 1");
  if (cfg.spectrum_floor < 0.0) issues.push_back("spectrum_floor must be >= 0");
  if (cfg.instrument_fwhm < 0.0) issues.push_back("instrument_fwhm_ghz must be >= 0");
  if (cfg.history_slices < 2) issues.push_back("history_slices must be >= 2");
  if (!issues.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& s : issues) msg += "\n  " + s;
    throw ConfigError(msg);
  }

  // The named sweep scenarios fix the parameter unless overridden in config.
  if (cfg.scenario == Scenario::kSweepEnergy && !kv.has("sweep_parameter")) {
    cfg.sweep_parameter = SweepParameter::kOmega00;
  }
  if (cfg.scenario == Scenario::kSweepDetuning && !kv.has("sweep_parameter")) {
    cfg.sweep_parameter = SweepParameter::kDelta0;
  }
  return cfg;
}

}  // namespace maxbloch
