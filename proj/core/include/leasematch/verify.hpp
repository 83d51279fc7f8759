#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leasematch/simulation.hpp"

namespace leasematch {

// One sampled pricing-game instance: a link budget realized from the channel
// model plus the game constants in force.
struct SampledInstance {
  LinkBudget budget;
  GameParams game;
};

// Draws a feasible instance by dropping one CEU and one D2D pair with the
// configured channel model. When randomize_game is set, the economic
// constants are jittered around the configured values so both signs of
// beta2 * P_D - 2 * beta1 occur.
SampledInstance sample_feasible_instance(RandomStream& rng, const ScenarioConfig& base,
                                         bool randomize_game);

struct VerifyOptions {
  int instances = 1000;
  double price_step = 1e-4;
  double allocation_step = 1e-5;
  std::uint64_t seed = 1;
  // Test hook: offset added to the closed-form allocation before the
  // follower comparison. Nonzero values must make the check fail.
  double perturb_allocation = 0.0;
};

struct CheckSummary {
  std::string name;
  int checked = 0;
  int failures = 0;
  double worst_deviation = 0.0;
  double tolerance = 0.0;
  std::vector<std::string> failure_dumps;  // first few offending instances
};

struct VerifyReport {
  std::vector<CheckSummary> checks;

  bool ok() const {
    for (const auto& check : checks)
      if (check.failures > 0) return false;
    return true;
  }
};

// Runs the full oracle battery: follower closed form vs. allocation grid,
// leader candidate set vs. price grid, the zero-surplus property when
// beta2 * P_D < 2 * beta1, deferred acceptance stability at full size, and
// CEU-optimality against exhaustive enumeration on small instances.
VerifyReport run_verification(const ScenarioConfig& base, const VerifyOptions& options);

std::string render_report(const VerifyReport& report);

}  // namespace leasematch
