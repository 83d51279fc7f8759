#include "leasematch/stackelberg.hpp"

#include <algorithm>
#include <cmath>

#include "leasematch/error.hpp"

namespace leasematch {

namespace {

constexpr double kZeroTol = 1e-9;

double d2d_share(double allocation) { return 1.0 - 2.0 * allocation; }

// Smallest allocation meeting the CEU rate requirement.
double min_allocation(const LinkBudget& budget, const GameParams& game) {
  return game.rate_requirement / budget.coop_rate;
}

// Follower surplus at the minimum allocation under a zero price; the
// participation screen of the leader problem.
double zero_price_surplus(const LinkBudget& budget, const GameParams& game) {
  const double alloc = min_allocation(budget, game);
  return game.beta1 * std::log(d2d_share(alloc) * budget.d2d_rate) -
         game.beta2 * game.d2d_power_w * alloc;
}

double interior_allocation(double price, const GameParams& game) {
  return 0.5 - game.beta1 / (2.0 * price - game.beta2 * game.d2d_power_w);
}

double branch_threshold(const LinkBudget& budget, const GameParams& game) {
  return 0.5 * game.beta2 * game.d2d_power_w +
         game.beta1 * budget.coop_rate /
             (budget.coop_rate - 2.0 * game.rate_requirement);
}

// Fills the outcome for a settled price. The follower surplus is passed in:
// candidates whose surplus vanishes identically carry an exact zero. On the
// minimum-allocation branch the delivered CEU rate equals the requirement by
// construction, so it is stored exactly instead of as allocation * coop_rate.
PairOutcome outcome_at_price(double price, double threshold, const LinkBudget& budget,
                             const GameParams& game, double surplus) {
  PairOutcome out;
  out.feasible = true;
  out.price = price;
  const bool at_minimum = price <= threshold;
  out.allocation =
      at_minimum ? min_allocation(budget, game) : interior_allocation(price, game);
  out.ceu_rate = at_minimum ? game.rate_requirement : out.allocation * budget.coop_rate;
  out.d2d_rate = d2d_share(out.allocation) * budget.d2d_rate;
  out.ceu_utility =
      game.beta1 * std::log(out.ceu_rate) + price * d2d_share(out.allocation);
  out.d2d_utility = surplus;
  return out;
}

}  // namespace

bool cooperation_feasible(const LinkBudget& budget, const GameParams& game) {
  if (!(budget.coop_rate > 2.0 * game.rate_requirement)) return false;
  return zero_price_surplus(budget, game) >= 0.0;
}

double follower_utility(double allocation, double price, const LinkBudget& budget,
                        const GameParams& game) {
  const double share = d2d_share(allocation);
  return game.beta1 * std::log(share * budget.d2d_rate) -
         game.beta2 * game.d2d_power_w * allocation - price * share;
}

double leader_utility(double allocation, double price, const LinkBudget& budget,
                      const GameParams& game) {
  return game.beta1 * std::log(allocation * budget.coop_rate) +
         price * d2d_share(allocation);
}

double best_response_allocation(double price, const LinkBudget& budget,
                                const GameParams& game) {
  if (!cooperation_feasible(budget, game)) {
    throw InfeasiblePairError("best response requested for an infeasible pair");
  }
  return price <= branch_threshold(budget, game) ? min_allocation(budget, game)
                                                 : interior_allocation(price, game);
}

CandidatePrices candidate_prices(const LinkBudget& budget, const GameParams& game) {
  if (!cooperation_feasible(budget, game)) {
    throw InfeasiblePairError("candidate prices requested for an infeasible pair");
  }
  CandidatePrices out;
  const double relay_cost = game.beta2 * game.d2d_power_w;
  const double share0 = d2d_share(min_allocation(budget, game));
  const double surplus0 = zero_price_surplus(budget, game);

  out.lower_price = branch_threshold(budget, game);
  out.upper_price = 0.5 * relay_cost + game.beta1 * budget.d2d_rate /
                                           std::exp(1.0 + 0.5 * relay_cost / game.beta1);
  const double stationary_denom = relay_cost - 2.0 * game.beta1;
  out.stationary_defined = stationary_denom != 0.0;
  if (out.stationary_defined) {
    out.stationary_price = 0.5 * relay_cost + game.beta1 * relay_cost / stationary_denom;
  }

  std::vector<PriceCandidate> raw;
  // Cap price: the full-extraction price surplus0 / share0 zeroes the
  // follower surplus identically when it undercuts the branch threshold.
  const double extraction_price = surplus0 / share0;
  if (extraction_price <= out.lower_price) {
    out.cap_price = extraction_price;
    raw.push_back({extraction_price, 0.0});
  } else {
    out.cap_price = out.lower_price;
    raw.push_back({out.lower_price, surplus0 - out.lower_price * share0});
  }

  const bool stationary_inside = out.stationary_defined &&
                                 out.lower_price < out.stationary_price &&
                                 out.stationary_price < out.upper_price;
  if (stationary_inside) {
    const double alloc = interior_allocation(out.stationary_price, game);
    raw.push_back({out.stationary_price,
                   follower_utility(alloc, out.stationary_price, budget, game)});
  } else if (out.upper_price < out.lower_price) {
    // cap price alone
  } else {
    // Substituting the interior best response at upper_price cancels to
    // beta1 - beta1: its surplus is identically zero.
    raw.push_back({out.upper_price, 0.0});
    raw.push_back({out.lower_price, surplus0 - out.lower_price * share0});
  }

  std::sort(raw.begin(), raw.end(), [](const PriceCandidate& a, const PriceCandidate& b) {
    if (a.price != b.price) return a.price < b.price;
    return std::abs(a.d2d_utility) < std::abs(b.d2d_utility);
  });
  for (const PriceCandidate& cand : raw) {
    if (cand.price < 0.0 || cand.d2d_utility < -kZeroTol) continue;
    if (!out.admissible.empty() && out.admissible.back().price == cand.price) continue;
    out.admissible.push_back(cand);
  }
  return out;
}

PairOutcome solve_equilibrium(const LinkBudget& budget, const GameParams& game) {
  if (!cooperation_feasible(budget, game)) return {};
  const CandidatePrices cands = candidate_prices(budget, game);
  if (cands.admissible.empty()) return {};

  auto leader_value = [&](const PriceCandidate& cand) {
    const bool at_minimum = cand.price <= cands.lower_price;
    const double alloc = at_minimum ? min_allocation(budget, game)
                                    : interior_allocation(cand.price, game);
    const double rate =
        at_minimum ? game.rate_requirement : alloc * budget.coop_rate;
    return game.beta1 * std::log(rate) + cand.price * d2d_share(alloc);
  };

  // Candidates are sorted ascending; strict improvement keeps the smallest
  // price on ties.
  const PriceCandidate* best = &cands.admissible.front();
  double best_value = leader_value(*best);
  for (std::size_t k = 1; k < cands.admissible.size(); ++k) {
    const double value = leader_value(cands.admissible[k]);
    if (value > best_value) {
      best_value = value;
      best = &cands.admissible[k];
    }
  }
  return outcome_at_price(best->price, cands.lower_price, budget, game,
                          best->d2d_utility);
}

PairOutcome fixed_price_outcome(double price, const LinkBudget& budget,
                                const GameParams& game) {
  if (!cooperation_feasible(budget, game)) return {};
  const double threshold = branch_threshold(budget, game);
  const double alloc = price <= threshold ? min_allocation(budget, game)
                                          : interior_allocation(price, game);
  const double surplus = follower_utility(alloc, price, budget, game);
  if (surplus < 0.0) return {};
  PairOutcome out = outcome_at_price(price, threshold, budget, game, surplus);
  if (out.ceu_rate < game.rate_requirement - kZeroTol) return {};
  return out;
}

double oracle_best_allocation(double price, const LinkBudget& budget,
                              const GameParams& game, double allocation_step) {
  if (!(allocation_step > 0.0)) {
    throw Error("allocation grid step must be positive");
  }
  if (!(budget.coop_rate > 2.0 * game.rate_requirement)) {
    throw InfeasiblePairError("allocation grid requested for an infeasible pair");
  }
  const double start = game.rate_requirement / budget.coop_rate;
  double best_alloc = start;
  double best_value = follower_utility(start, price, budget, game);
  for (long long k = 1;; ++k) {
    const double alloc = start + static_cast<double>(k) * allocation_step;
    if (alloc >= 0.5) break;
    const double value = follower_utility(alloc, price, budget, game);
    if (value > best_value) {
      best_value = value;
      best_alloc = alloc;
    }
  }
  return best_alloc;
}

namespace {

// Shared outer price grid for the two oracles.
template <typename AllocFn>
PairOutcome price_grid_search(const LinkBudget& budget, const GameParams& game,
                              double price_step, AllocFn best_alloc) {
  if (!(price_step > 0.0)) {
    throw Error("price grid step must be positive");
  }
  if (!cooperation_feasible(budget, game)) return {};
  const double price_max = branch_threshold(budget, game) + 10.0 * game.beta1;

  PairOutcome best;
  bool found = false;
  for (long long k = 0;; ++k) {
    const double price = static_cast<double>(k) * price_step;
    if (price > price_max) break;
    const double alloc = best_alloc(price);
    const double surplus = follower_utility(alloc, price, budget, game);
    if (surplus < -kZeroTol) continue;
    const double value = leader_utility(alloc, price, budget, game);
    if (!found || value > best.ceu_utility) {
      found = true;
      best.feasible = true;
      best.price = price;
      best.allocation = alloc;
      best.ceu_utility = value;
      best.d2d_utility = surplus;
      best.ceu_rate = alloc * budget.coop_rate;
      best.d2d_rate = (1.0 - 2.0 * alloc) * budget.d2d_rate;
    }
  }
  return found ? best : PairOutcome{};
}

}  // namespace

PairOutcome oracle_equilibrium(const LinkBudget& budget, const GameParams& game,
                               double price_step, double allocation_step) {
  return price_grid_search(budget, game, price_step, [&](double price) {
    return oracle_best_allocation(price, budget, game, allocation_step);
  });
}

PairOutcome oracle_leader_sweep(const LinkBudget& budget, const GameParams& game,
                                double price_step) {
  if (!(price_step > 0.0)) {
    throw Error("price grid step must be positive");
  }
  if (!cooperation_feasible(budget, game)) return {};
  const double threshold = branch_threshold(budget, game);
  const double price_max = threshold + 10.0 * game.beta1;

  // On the minimum-allocation branch both payoffs are affine in the price,
  // so the grid scan only needs transcendentals on the interior branch.
  const double alloc0 = min_allocation(budget, game);
  const double share0 = d2d_share(alloc0);
  const double surplus0 = zero_price_surplus(budget, game);
  const double leader0 = game.beta1 * std::log(game.rate_requirement);

  PairOutcome best;
  bool found = false;
  for (long long k = 0;; ++k) {
    const double price = static_cast<double>(k) * price_step;
    if (price > price_max) break;
    double alloc;
    double surplus;
    double value;
    if (price <= threshold) {
      alloc = alloc0;
      surplus = surplus0 - price * share0;
      value = leader0 + price * share0;
    } else {
      alloc = interior_allocation(price, game);
      surplus = follower_utility(alloc, price, budget, game);
      value = leader_utility(alloc, price, budget, game);
    }
    if (surplus < -kZeroTol) continue;
    if (!found || value > best.ceu_utility) {
      found = true;
      best.feasible = true;
      best.price = price;
      best.allocation = alloc;
      best.ceu_utility = value;
      best.d2d_utility = surplus;
      best.ceu_rate = alloc * budget.coop_rate;
      best.d2d_rate = (1.0 - 2.0 * alloc) * budget.d2d_rate;
    }
  }
  return found ? best : PairOutcome{};
}

}  // namespace leasematch
