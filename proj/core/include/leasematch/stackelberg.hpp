#pragma once

#include <vector>

#include "leasematch/rates.hpp"

namespace leasematch {

// Result of the two-stage pricing game for one CEU-D2D pairing. Infeasible
// pairs carry all-zero numeric fields.
struct PairOutcome {
  bool feasible = false;
  double price = 0.0;        // per-unit-time charge settled by the CEU
  double allocation = 0.0;   // frame fraction of each relay phase
  double ceu_utility = 0.0;
  double d2d_utility = 0.0;
  double ceu_rate = 0.0;
  double d2d_rate = 0.0;
};

struct PriceCandidate {
  double price = 0.0;
  // Follower surplus at this price under its best response. Candidates whose
  // surplus is zero by construction carry an exact 0 here, so downstream
  // sums of settled utilities stay exactly zero instead of accumulating
  // rounding residue.
  double d2d_utility = 0.0;
};

// The leader's closed-form candidate prices.
//   cap_price         lesser of lower_price and the price that extracts the
//                     follower's entire surplus at the minimum allocation
//   stationary_price  stationary point of the leader utility on the interior
//                     branch; undefined when beta2 * P_D == 2 * beta1
//   upper_price       price driving the follower surplus to zero on the
//                     interior branch
//   lower_price       threshold below which the follower stays at the
//                     minimum allocation
struct CandidatePrices {
  double cap_price = 0.0;
  double stationary_price = 0.0;
  double upper_price = 0.0;
  double lower_price = 0.0;
  bool stationary_defined = false;
  // Kept candidates, ascending by price, each screened for price >= 0 and
  // nonnegative follower surplus.
  std::vector<PriceCandidate> admissible;
};

// A pair can cooperate iff the bottleneck rate exceeds twice the requirement
// and the follower keeps nonnegative surplus at the minimum allocation under
// a zero price.
bool cooperation_feasible(const LinkBudget& budget, const GameParams& game);

// Follower payoff: beta1 * ln((1 - 2a) * r_d) - beta2 * P_D * a - c * (1 - 2a).
double follower_utility(double allocation, double price, const LinkBudget& budget,
                        const GameParams& game);

// Leader payoff: beta1 * ln(a * r_c) + c * (1 - 2a).
double leader_utility(double allocation, double price, const LinkBudget& budget,
                      const GameParams& game);

// Follower best response to a posted price: the minimum allocation meeting
// the rate requirement while the price is at most lower_price, the interior
// stationary point above it. Throws InfeasiblePairError when the pair cannot
// cooperate.
double best_response_allocation(double price, const LinkBudget& budget,
                                const GameParams& game);

// Closed-form candidate set of the leader problem. Requires a feasible pair.
CandidatePrices candidate_prices(const LinkBudget& budget, const GameParams& game);

// Backward induction: picks the admissible candidate maximizing the leader
// utility (ties resolved toward the smallest price) and fills the resulting
// rates and utilities. Infeasible pairs, or an empty candidate set, yield the
// all-zero outcome.
PairOutcome solve_equilibrium(const LinkBudget& budget, const GameParams& game);

// Baseline where the price is imposed instead of optimized. The outcome is
// kept only when the pair is feasible and the follower surplus at its best
// response stays nonnegative.
PairOutcome fixed_price_outcome(double price, const LinkBudget& budget,
                                const GameParams& game);

// Brute-force follower: grid over allocations in [requirement / coop_rate,
// 0.5) with the given step, maximizing follower utility. Independent of the
// closed form above.
double oracle_best_allocation(double price, const LinkBudget& budget,
                              const GameParams& game, double allocation_step);

// Brute-force equilibrium: outer grid over prices in [0, lower_price +
// 10 * beta1], inner grid over allocations, keeping prices whose gridded
// follower surplus is nonnegative. The price ceiling covers every candidate
// of the closed form whenever r_d <= (10 + r_c / (r_c - 2 R)) * e^(1 +
// beta2 P_D / (2 beta1)), which holds for all parameter ranges exercised
// here.
PairOutcome oracle_equilibrium(const LinkBudget& budget, const GameParams& game,
                               double price_step, double allocation_step);

// One-dimensional leader oracle: grid over prices only, the follower playing
// its closed-form best response. Verifies the candidate-set argmax once the
// follower closed form has been validated against oracle_best_allocation.
PairOutcome oracle_leader_sweep(const LinkBudget& budget, const GameParams& game,
                                double price_step);

// Dense M x N table of pair outcomes for one drop.
struct OutcomeTable {
  int ceu_count = 0;
  int d2d_count = 0;
  std::vector<PairOutcome> cells;

  OutcomeTable() = default;
  OutcomeTable(int m, int n)
      : ceu_count(m), d2d_count(n),
        cells(static_cast<std::size_t>(m) * static_cast<std::size_t>(n)) {}

  PairOutcome& at(int i, int j) {
    return cells[static_cast<std::size_t>(i) * d2d_count + j];
  }
  const PairOutcome& at(int i, int j) const {
    return cells[static_cast<std::size_t>(i) * d2d_count + j];
  }
};

}  // namespace leasematch
