#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "leasematch/matching.hpp"
#include "leasematch/rates.hpp"

namespace leasematch {

enum class Scheme {
  kProposed,           // Stackelberg pricing + deferred acceptance
  kRandomStackelberg,  // Stackelberg pricing + random assignment
  kStableFixedPrice,   // imposed price + deferred acceptance
};

const char* to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);  // throws ConfigError

// Full experiment description. Defaults reproduce the reference scenario:
// 500 m cell, -114 dBm noise, 100 mW transmitters, 20 CEUs, 5 dB required
// SNR, beta1 = 1, beta2 = 10.
struct ScenarioConfig {
  ChannelParams channel;
  GameParams game;
  double noise_dbm = -114.0;  // canonical noise figure; watts are derived
  int ceu_count = 20;
  std::vector<int> d2d_counts = {5, 10, 15, 20, 25, 30, 35, 40};
  int drops = 500;
  std::vector<Scheme> schemes = {Scheme::kProposed, Scheme::kRandomStackelberg,
                                 Scheme::kStableFixedPrice};
  double fixed_price = 1.5;  // beta2 * P_D / 2 + beta1 under the defaults
  std::uint64_t master_seed = 1;
  bool condition_outage = true;
  // When false, unmatched CEUs contribute zero to the sum-rate instead of
  // their direct-link rate. Outage accounting is unaffected.
  bool count_unmatched_direct_rate = true;
  int threads = 0;  // 0 = hardware concurrency; results do not depend on it
};

// Per-drop aggregates of one (scheme, n) cell.
struct DropMetrics {
  double ceu_total_utility = 0.0;
  double d2d_total_utility = 0.0;
  double ceu_sum_rate = 0.0;
  double d2d_sum_rate = 0.0;
  double outage_fraction = 0.0;
  double matched_count = 0.0;
};

enum class Metric {
  kCeuTotalUtility = 0,
  kD2dTotalUtility,
  kCeuSumRate,
  kD2dSumRate,
  kOutageFraction,
  kMatchedCount,
};

inline constexpr int kMetricCount = 6;
const char* metric_name(Metric metric);
double metric_value(const DropMetrics& metrics, Metric metric);

struct MetricStats {
  double mean = 0.0;
  double stderr_mean = 0.0;  // 0 when drops == 1
  double min = 0.0;
  double max = 0.0;
};

struct CellResult {
  Scheme scheme = Scheme::kProposed;
  int d2d_count = 0;
  int drops = 0;
  std::array<MetricStats, kMetricCount> stats;

  const MetricStats& operator[](Metric metric) const {
    return stats[static_cast<int>(metric)];
  }
};

struct SweepResult {
  std::vector<CellResult> cells;

  const CellResult* find(Scheme scheme, int d2d_count) const;
};

// One Monte Carlo drop: substream from (master_seed, drop_index), placement,
// gains, the M x N game stage, the pairing stage, then metric aggregation.
// A CEU is in outage iff its effective rate (cooperative when matched, direct
// otherwise) falls below the requirement.
DropMetrics run_drop(const ScenarioConfig& config, Scheme scheme, int d2d_count,
                     std::uint64_t drop_index);

// Runs every (scheme, n) cell for config.drops independent drops. Cells are
// reproducible in isolation and the aggregation is independent of the thread
// schedule.
SweepResult run_sweep(const ScenarioConfig& config);

// Aggregates per-drop metrics in index order (two-pass mean / standard
// error). Exposed for tests.
CellResult aggregate_cell(Scheme scheme, int d2d_count,
                          const std::vector<DropMetrics>& per_drop);

// Index-addressed parallel loop used for drops and verification batches.
// Writers target per-index slots, so results never depend on the schedule;
// threads <= 0 selects the hardware count.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace leasematch
