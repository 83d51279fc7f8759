#include "leasematch/rates.hpp"

#include <algorithm>
#include <cmath>

#include "leasematch/error.hpp"

namespace leasematch {

double direct_link_rate(double power_w, double gain, double noise_w) {
  return std::log2(1.0 + power_w * gain / noise_w);
}

LinkBudget pair_budget(int ceu_index, int d2d_index, const ChannelGains& gains,
                       const GameParams& game) {
  LinkBudget budget;
  const double direct_snr = game.ceu_power_w * gains.ceu_bs[ceu_index] / game.noise_w;
  budget.direct_rate = std::log2(1.0 + direct_snr);
  budget.hop1_rate = std::log2(
      1.0 + game.ceu_power_w * gains.ceu_dt_gain(ceu_index, d2d_index) / game.noise_w);
  budget.hop2_rate = std::log2(
      1.0 + direct_snr + game.d2d_power_w * gains.dt_bs[d2d_index] / game.noise_w);
  budget.coop_rate = std::min(budget.hop1_rate, budget.hop2_rate);
  budget.d2d_rate =
      std::log2(1.0 + game.d2d_power_w * gains.dt_dr[d2d_index] / game.noise_w);
  return budget;
}

PhaseRates cooperative_rates(const LinkBudget& budget, double allocation) {
  if (!(allocation > 0.0 && allocation < 0.5)) {
    throw InvalidAllocationError("allocation coefficient must lie in (0, 0.5)");
  }
  return {allocation * budget.coop_rate, (1.0 - 2.0 * allocation) * budget.d2d_rate};
}

}  // namespace leasematch
