#pragma once

#include <cstdint>
#include <string>

#include "leasematch/config.hpp"
#include "leasematch/simulation.hpp"

namespace leasematch {

// Locale-independent formatting: decimal point, no grouping, 12 significant
// digits.
std::string format_double(double value);

// results.csv body: header `scheme,n,metric,mean,stderr,drops,seed`, one row
// per (scheme, n, metric) in sweep order. Rows and formatting are stable, so
// equal sweeps produce byte-identical output.
std::string render_csv(const SweepResult& result, std::uint64_t master_seed);

// Manifest sidecar: commented provenance (tool version, timestamp, per-cell
// drop counts) followed by the full config snapshot. The file parses as a
// config, so feeding it back reproduces the results byte for byte.
std::string render_manifest(const ScenarioConfig& config, const SweepResult& result,
                            const std::string& timestamp);

// UTC timestamp, ISO 8601.
std::string current_timestamp();

}  // namespace leasematch
