#pragma once

#include <optional>
#include <string>

#include "maxbloch/scenario.hpp"

namespace maxbloch {

// Command-line overrides applied on top of the config file.
struct ConfigOverrides {
  std::optional<Scenario> scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_dir;
  std::optional<int> members;
  bool full_history = false;
};

// Parses a flat `key = value` config file (# comments, blank lines allowed).
// Frequencies are given in GHz (nu = omega/2pi), times in ns, lengths in cm,
// angles in degrees.  Unknown or duplicate keys raise ConfigError listing
// every offender; scenario-dependent requirements are checked after the
// overrides are applied.
RunConfig load_config(const std::string& path, const ConfigOverrides& overrides);

const char* scenario_name(Scenario s);
const char* sweep_parameter_name(SweepParameter p);

}  // namespace maxbloch
