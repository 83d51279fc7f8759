#include "leasematch/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "leasematch/error.hpp"
#include "leasematch/report.hpp"

namespace leasematch {

namespace {

constexpr int kMaxDumps = 5;

void record(CheckSummary& check, double deviation, const std::string& dump) {
  ++check.checked;
  check.worst_deviation = std::max(check.worst_deviation, deviation);
  if (deviation > check.tolerance) {
    ++check.failures;
    if (static_cast<int>(check.failure_dumps.size()) < kMaxDumps) {
      check.failure_dumps.push_back(dump);
    }
  }
}

std::string describe(const SampledInstance& inst) {
  std::ostringstream out;
  out << "coop_rate=" << format_double(inst.budget.coop_rate)
      << " d2d_rate=" << format_double(inst.budget.d2d_rate)
      << " R_th=" << format_double(inst.game.rate_requirement)
      << " beta1=" << format_double(inst.game.beta1)
      << " beta2=" << format_double(inst.game.beta2)
      << " P_D=" << format_double(inst.game.d2d_power_w);
  return out.str();
}

}  // namespace

SampledInstance sample_feasible_instance(RandomStream& rng, const ScenarioConfig& base,
                                         bool randomize_game) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    GameParams game = base.game;
    if (randomize_game) {
      game.beta1 = rng.uniform(0.5, 2.0);
      game.beta2 = rng.uniform(5.0, 20.0);
      game.d2d_power_w = rng.uniform(0.05, 0.2);
      const double snr_db = rng.uniform(3.0, 7.0);
      game.rate_requirement = std::log2(1.0 + std::pow(10.0, snr_db / 10.0));
    }
    const Topology topology = place_nodes(base.channel, 1, 1, rng);
    const ChannelGains gains =
        realize_gains(topology, base.channel, rng, base.condition_outage,
                      game.ceu_power_w, game.rate_requirement);
    const LinkBudget budget = pair_budget(0, 0, gains, game);
    if (cooperation_feasible(budget, game)) return {budget, game};
  }
  throw Error("could not sample a feasible pricing instance");
}

VerifyReport run_verification(const ScenarioConfig& base, const VerifyOptions& options) {
  VerifyReport report;

  // Follower: closed-form best response against the allocation grid at a
  // random admissible price.
  {
    CheckSummary check;
    check.name = "follower closed form vs allocation grid";
    check.tolerance = 10.0 * options.allocation_step;
    RandomStream rng = RandomStream::substream(options.seed, 101);
    for (int k = 0; k < options.instances; ++k) {
      const SampledInstance inst = sample_feasible_instance(rng, base, true);
      const CandidatePrices cands = candidate_prices(inst.budget, inst.game);
      const double price = rng.uniform(0.0, cands.lower_price + 10.0 * inst.game.beta1);
      double alloc = best_response_allocation(price, inst.budget, inst.game) +
                     options.perturb_allocation;
      alloc = std::min(alloc, 0.5 - 1e-12);
      const double closed = follower_utility(alloc, price, inst.budget, inst.game);
      const double gridded = follower_utility(
          oracle_best_allocation(price, inst.budget, inst.game, options.allocation_step),
          price, inst.budget, inst.game);
      record(check, std::abs(closed - gridded),
             describe(inst) + " price=" + format_double(price) +
                 " closed=" + format_double(closed) +
                 " grid=" + format_double(gridded));
    }
    report.checks.push_back(std::move(check));
  }

  // Leader: candidate-set argmax against the one-dimensional price grid.
  {
    CheckSummary check;
    check.name = "leader candidate set vs price grid";
    check.tolerance = 10.0 * options.price_step;
    RandomStream rng = RandomStream::substream(options.seed, 202);
    for (int k = 0; k < options.instances; ++k) {
      const SampledInstance inst = sample_feasible_instance(rng, base, true);
      const PairOutcome closed = solve_equilibrium(inst.budget, inst.game);
      const PairOutcome gridded =
          oracle_leader_sweep(inst.budget, inst.game, options.price_step);
      record(check, std::abs(closed.ceu_utility - gridded.ceu_utility),
             describe(inst) + " closed=" + format_double(closed.ceu_utility) +
                 " grid=" + format_double(gridded.ceu_utility));
    }
    report.checks.push_back(std::move(check));
  }

  // Zero follower surplus whenever relay energy is cheap relative to
  // satisfaction revenue (beta2 * P_D < 2 * beta1), evaluated directly from
  // the payoff definition, not the stored field.
  {
    CheckSummary check;
    check.name = "zero follower surplus (beta2*P_D < 2*beta1)";
    check.tolerance = 1e-9;
    RandomStream rng = RandomStream::substream(options.seed, 303);
    int attempts = 0;
    while (check.checked < options.instances && attempts < 50 * options.instances) {
      ++attempts;
      const SampledInstance inst = sample_feasible_instance(rng, base, true);
      if (!(inst.game.beta2 * inst.game.d2d_power_w < 2.0 * inst.game.beta1)) continue;
      const PairOutcome closed = solve_equilibrium(inst.budget, inst.game);
      const double direct = follower_utility(closed.allocation, closed.price,
                                             inst.budget, inst.game);
      record(check, std::abs(direct),
             describe(inst) + " price=" + format_double(closed.price) +
                 " surplus=" + format_double(direct));
    }
    report.checks.push_back(std::move(check));
  }

  // Deferred acceptance: no blocking pairs at full scale, and agreement with
  // the CEU-best stable matching on exhaustively enumerable instances.
  {
    CheckSummary check;
    check.name = "deferred acceptance stability and CEU-optimality";
    check.tolerance = 0.0;
    RandomStream seeds = RandomStream::substream(options.seed, 404);
    const int full_runs = options.instances / 2;
    for (int k = 0; k < full_runs; ++k) {
      const int n = base.d2d_counts.empty()
                        ? base.ceu_count
                        : base.d2d_counts[k % base.d2d_counts.size()];
      RandomStream rng = RandomStream::substream(seeds.next_u64(), k);
      const Topology topology = place_nodes(base.channel, base.ceu_count, n, rng);
      const ChannelGains gains =
          realize_gains(topology, base.channel, rng, base.condition_outage,
                        base.game.ceu_power_w, base.game.rate_requirement);
      OutcomeTable table(base.ceu_count, n);
      for (int i = 0; i < base.ceu_count; ++i) {
        for (int j = 0; j < n; ++j) {
          table.at(i, j) = solve_equilibrium(pair_budget(i, j, gains, base.game), base.game);
        }
      }
      const PreferenceProfile prefs =
          build_preferences(table, topology, base.channel.relay_range_m);
      const Matching matching = deferred_acceptance(prefs);
      const StabilityReport stability = find_blocking_pairs(matching, prefs);
      record(check, stability.stable() ? 0.0 : 1.0,
             "unstable matching at full scale, n=" + std::to_string(n) +
                 ", blocking pairs=" + std::to_string(stability.blocking_pairs.size()));
    }
    for (int k = 0; k < options.instances - full_runs; ++k) {
      const int m = 1 + static_cast<int>(seeds.below(6));
      const int n = 1 + static_cast<int>(seeds.below(6));
      RandomStream rng = RandomStream::substream(seeds.next_u64(), k);
      const Topology topology = place_nodes(base.channel, m, n, rng);
      const ChannelGains gains =
          realize_gains(topology, base.channel, rng, base.condition_outage,
                        base.game.ceu_power_w, base.game.rate_requirement);
      OutcomeTable table(m, n);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
          table.at(i, j) = solve_equilibrium(pair_budget(i, j, gains, base.game), base.game);
        }
      }
      const PreferenceProfile prefs =
          build_preferences(table, topology, base.channel.relay_range_m);
      const Matching matching = deferred_acceptance(prefs);
      const auto stable_set = enumerate_stable_matchings(prefs);

      // DA must hand every CEU its best partner across all stable matchings.
      bool optimal = true;
      const auto ranks_of = [&](int i, int j) {
        const auto& ranked = prefs.ceu[i].ranked;
        if (j < 0) return static_cast<int>(ranked.size());
        return static_cast<int>(std::find(ranked.begin(), ranked.end(), j) -
                                ranked.begin());
      };
      for (int i = 0; i < m && optimal; ++i) {
        int best_rank = ranks_of(i, matching.ceu_to_d2d[i]);
        for (const Matching& other : stable_set) {
          if (ranks_of(i, other.ceu_to_d2d[i]) < best_rank) optimal = false;
        }
      }
      record(check, optimal ? 0.0 : 1.0,
             "DA not CEU-optimal on instance m=" + std::to_string(m) +
                 " n=" + std::to_string(n));
    }
    report.checks.push_back(std::move(check));
  }

  return report;
}

std::string render_report(const VerifyReport& report) {
  std::ostringstream out;
  for (const CheckSummary& check : report.checks) {
    out << (check.failures == 0 ? "PASS" : "FAIL") << "  " << check.name
        << ": checked=" << check.checked << " failures=" << check.failures
        << " worst=" << format_double(check.worst_deviation)
        << " tolerance=" << format_double(check.tolerance) << '\n';
    for (const std::string& dump : check.failure_dumps) {
      out << "      " << dump << '\n';
    }
  }
  out << (report.ok() ? "verification passed" : "verification FAILED") << '\n';
  return out.str();
}

}  // namespace leasematch
