#pragma once

#include "leasematch/channel.hpp"

namespace leasematch {

// Economic and physical constants of the pricing game. Satisfaction of both
// sides is fixed to the natural logarithm of the achieved rate.
struct GameParams {
  double beta1 = 1.0;               // revenue per unit satisfaction
  double beta2 = 10.0;              // cost per unit relay transmission energy
  double ceu_power_w = 0.1;
  double d2d_power_w = 0.1;
  double noise_w = 3.9810717055349695e-15;
  double rate_requirement = 2.057373208606795;  // 5 dB required SNR
};

// Spectral efficiencies (bits/s/Hz) of one CEU-D2D pairing, frame length
// normalized to 1.
//   direct_rate  CEU -> BS with no help
//   hop1_rate    CEU -> DT broadcast phase
//   hop2_rate    DT -> BS relay phase, combined with the direct signal
//   coop_rate    min(hop1, hop2), the decode-and-forward bottleneck
//   d2d_rate     DT -> DR on the leased slot
struct LinkBudget {
  double direct_rate = 0.0;
  double hop1_rate = 0.0;
  double hop2_rate = 0.0;
  double coop_rate = 0.0;
  double d2d_rate = 0.0;
};

// Rates actually delivered once the frame split is fixed.
struct PhaseRates {
  double ceu = 0.0;
  double d2d = 0.0;
};

double direct_link_rate(double power_w, double gain, double noise_w);

LinkBudget pair_budget(int ceu_index, int d2d_index, const ChannelGains& gains,
                       const GameParams& game);

// ceu = allocation * coop_rate, d2d = (1 - 2 * allocation) * d2d_rate.
// Throws InvalidAllocationError unless 0 < allocation < 0.5.
PhaseRates cooperative_rates(const LinkBudget& budget, double allocation);

}  // namespace leasematch
