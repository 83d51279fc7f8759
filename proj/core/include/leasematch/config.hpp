#pragma once

#include <iosfwd>
#include <string>

#include "leasematch/simulation.hpp"

namespace leasematch {

// Flat `key = value` configuration with dotted section names. Unknown keys,
// bad values, and junk lines raise ConfigError with a 1-based line number.
// An empty input reproduces the built-in reference scenario.
//
// Two defaults are derived rather than fixed: game.R_th defaults to the rate
// of a 5 dB SNR and sim.c_fixed to beta2 * P_D / 2 + beta1 under whatever
// game constants the file sets. Setting the key overrides the derivation.
ScenarioConfig default_config();
ScenarioConfig load_config(std::istream& in);
ScenarioConfig load_config_file(const std::string& path);

// Full key-value snapshot, parseable by load_config, round-tripping every
// field exactly. Execution-only knobs (thread count) are not part of it.
std::string serialize_config(const ScenarioConfig& config);

double dbm_to_watts(double dbm);

}  // namespace leasematch
