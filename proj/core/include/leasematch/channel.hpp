#pragma once

#include <cmath>
#include <vector>

#include "leasematch/rng.hpp"

namespace leasematch {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Position a, Position b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Pathloss and placement parameters. Powers are in watts, distances in
// meters, gains are dimensionless linear power gains.
struct ChannelParams {
  double pathloss_constant = 1e-2;   // multiplicative constant of the model
  double pathloss_exponent = 4.0;
  double noise_w = 3.9810717055349695e-15;  // -114 dBm
  double cell_radius_m = 500.0;
  double edge_band_m = 50.0;         // CEUs live in [radius - band, radius]
  double d2d_separation_m = 20.0;    // DT-DR distance
  double relay_range_m = 300.0;      // max CEU-DT distance for pairing
};

// Node placement for one drop. The base station sits at the origin.
struct Topology {
  std::vector<Position> ceu;  // size M, on the edge annulus
  std::vector<Position> dt;   // size N, uniform on the disc
  std::vector<Position> dr;   // size N, at d2d_separation from its DT
  Position bs{0.0, 0.0};
};

// Linear power gains of every link the rate formulas need.
struct ChannelGains {
  int ceu_count = 0;
  int d2d_count = 0;
  std::vector<double> ceu_bs;  // CEU i -> base station
  std::vector<double> ceu_dt;  // CEU i -> transmitter j, row-major
  std::vector<double> dt_bs;   // transmitter j -> base station
  std::vector<double> dt_dr;   // transmitter j -> its receiver

  double ceu_dt_gain(int i, int j) const {
    return ceu_dt[static_cast<std::size_t>(i) * d2d_count + j];
  }
};

// Places m CEUs uniformly on the edge annulus and n D2D pairs uniformly on
// the disc; each receiver sits at d2d_separation from its transmitter in a
// uniform direction, redrawn if it would leave the disc. Deterministic given
// the stream.
Topology place_nodes(const ChannelParams& params, int m, int n, RandomStream& rng);

// Distance-based pathloss with a given fast fading realization.
double pathloss_gain(double distance_m, double fading, const ChannelParams& params);

// Draws unit-mean exponential fading and applies the pathloss model.
// Throws InvalidGeometryError for nonpositive distances.
double channel_gain(double distance_m, const ChannelParams& params, RandomStream& rng);

// Realizes all four gain families for a topology. With condition_outage set,
// each CEU-to-BS gain is redrawn until the direct link falls short of the
// rate requirement, so every CEU starts in outage; exceeding max_retries
// throws ConditioningFailureError.
ChannelGains realize_gains(const Topology& topology, const ChannelParams& params,
                           RandomStream& rng, bool condition_outage,
                           double ceu_power_w, double rate_requirement,
                           int max_retries = 10000);

}  // namespace leasematch
