#include "leasematch/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "leasematch/error.hpp"

namespace leasematch {

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kProposed: return "proposed";
    case Scheme::kRandomStackelberg: return "random_stackelberg";
    case Scheme::kStableFixedPrice: return "stable_fixed_price";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "proposed") return Scheme::kProposed;
  if (name == "random_stackelberg") return Scheme::kRandomStackelberg;
  if (name == "stable_fixed_price") return Scheme::kStableFixedPrice;
  throw ConfigError(0, "unknown scheme '" + name + "'");
}

const char* metric_name(Metric metric) {
  switch (metric) {
    case Metric::kCeuTotalUtility: return "ceu_total_utility";
    case Metric::kD2dTotalUtility: return "d2d_total_utility";
    case Metric::kCeuSumRate: return "ceu_sum_rate";
    case Metric::kD2dSumRate: return "d2d_sum_rate";
    case Metric::kOutageFraction: return "outage_fraction";
    case Metric::kMatchedCount: return "matched_count";
  }
  return "unknown";
}

double metric_value(const DropMetrics& metrics, Metric metric) {
  switch (metric) {
    case Metric::kCeuTotalUtility: return metrics.ceu_total_utility;
    case Metric::kD2dTotalUtility: return metrics.d2d_total_utility;
    case Metric::kCeuSumRate: return metrics.ceu_sum_rate;
    case Metric::kD2dSumRate: return metrics.d2d_sum_rate;
    case Metric::kOutageFraction: return metrics.outage_fraction;
    case Metric::kMatchedCount: return metrics.matched_count;
  }
  return 0.0;
}

const CellResult* SweepResult::find(Scheme scheme, int d2d_count) const {
  for (const CellResult& cell : cells) {
    if (cell.scheme == scheme && cell.d2d_count == d2d_count) return &cell;
  }
  return nullptr;
}

DropMetrics run_drop(const ScenarioConfig& config, Scheme scheme, int d2d_count,
                     std::uint64_t drop_index) {
  RandomStream rng = RandomStream::substream(config.master_seed, drop_index);
  const Topology topology = place_nodes(config.channel, config.ceu_count, d2d_count, rng);
  const ChannelGains gains =
      realize_gains(topology, config.channel, rng, config.condition_outage,
                    config.game.ceu_power_w, config.game.rate_requirement);

  OutcomeTable table(config.ceu_count, d2d_count);
  for (int i = 0; i < config.ceu_count; ++i) {
    for (int j = 0; j < d2d_count; ++j) {
      const LinkBudget budget = pair_budget(i, j, gains, config.game);
      table.at(i, j) = scheme == Scheme::kStableFixedPrice
                           ? fixed_price_outcome(config.fixed_price, budget, config.game)
                           : solve_equilibrium(budget, config.game);
    }
  }

  const PreferenceProfile prefs =
      build_preferences(table, topology, config.channel.relay_range_m);
  const Matching matching = scheme == Scheme::kRandomStackelberg
                                ? random_matching(prefs, rng)
                                : deferred_acceptance(prefs);

  DropMetrics metrics;
  int outages = 0;
  for (int i = 0; i < config.ceu_count; ++i) {
    const int j = matching.ceu_to_d2d[i];
    if (j >= 0) {
      const PairOutcome& outcome = table.at(i, j);
      metrics.ceu_total_utility += outcome.ceu_utility;
      metrics.ceu_sum_rate += outcome.ceu_rate;
      if (outcome.ceu_rate < config.game.rate_requirement) ++outages;
    } else {
      const double rate = direct_link_rate(config.game.ceu_power_w, gains.ceu_bs[i],
                                           config.game.noise_w);
      if (config.count_unmatched_direct_rate) metrics.ceu_sum_rate += rate;
      if (rate < config.game.rate_requirement) ++outages;
    }
  }
  for (int j = 0; j < d2d_count; ++j) {
    const int i = matching.d2d_to_ceu[j];
    if (i >= 0) {
      const PairOutcome& outcome = table.at(i, j);
      metrics.d2d_total_utility += outcome.d2d_utility;
      metrics.d2d_sum_rate += outcome.d2d_rate;
    }
  }
  metrics.matched_count = matching.matched_count();
  metrics.outage_fraction =
      config.ceu_count > 0 ? static_cast<double>(outages) / config.ceu_count : 0.0;
  return metrics;
}

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (count <= 0) return;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, count);
  if (threads == 1) {
    for (int k = 0; k < count; ++k) body(k);
    return;
  }

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int k = next.fetch_add(1, std::memory_order_relaxed);
      if (k >= count) return;
      try {
        body(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

CellResult aggregate_cell(Scheme scheme, int d2d_count,
                          const std::vector<DropMetrics>& per_drop) {
  CellResult cell;
  cell.scheme = scheme;
  cell.d2d_count = d2d_count;
  cell.drops = static_cast<int>(per_drop.size());
  for (int k = 0; k < kMetricCount; ++k) {
    const Metric metric = static_cast<Metric>(k);
    MetricStats& stats = cell.stats[k];
    if (per_drop.empty()) continue;
    double sum = 0.0;
    stats.min = metric_value(per_drop.front(), metric);
    stats.max = stats.min;
    for (const DropMetrics& drop : per_drop) {
      const double value = metric_value(drop, metric);
      sum += value;
      stats.min = std::min(stats.min, value);
      stats.max = std::max(stats.max, value);
    }
    stats.mean = sum / cell.drops;
    if (cell.drops > 1) {
      double ssq = 0.0;
      for (const DropMetrics& drop : per_drop) {
        const double delta = metric_value(drop, metric) - stats.mean;
        ssq += delta * delta;
      }
      stats.stderr_mean = std::sqrt(ssq / (cell.drops - 1) / cell.drops);
    }
  }
  return cell;
}

SweepResult run_sweep(const ScenarioConfig& config) {
  SweepResult result;
  for (Scheme scheme : config.schemes) {
    for (int d2d_count : config.d2d_counts) {
      std::vector<DropMetrics> per_drop(config.drops);
      parallel_for(config.drops, config.threads, [&](int drop) {
        try {
          per_drop[drop] = run_drop(config, scheme, d2d_count, drop);
        } catch (const std::exception& e) {
          throw Error("drop " + std::to_string(drop) + " (scheme " +
                      to_string(scheme) + ", n=" + std::to_string(d2d_count) +
                      "): " + e.what());
        }
      });
      result.cells.push_back(aggregate_cell(scheme, d2d_count, per_drop));
    }
  }
  return result;
}

}  // namespace leasematch
