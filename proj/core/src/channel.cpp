#include "leasematch/channel.hpp"

#include <cmath>

#include "leasematch/error.hpp"
#include "leasematch/rates.hpp"

namespace leasematch {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Area-uniform point on the annulus [inner, outer] around the origin.
Position annulus_point(double inner, double outer, RandomStream& rng) {
  const double u = rng.uniform();
  const double radius = std::sqrt(inner * inner + u * (outer * outer - inner * inner));
  const double angle = kTwoPi * rng.uniform();
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

Topology place_nodes(const ChannelParams& params, int m, int n, RandomStream& rng) {
  if (params.d2d_separation_m > 2.0 * params.cell_radius_m) {
    throw InvalidGeometryError("d2d separation exceeds the cell diameter");
  }
  Topology topology;
  topology.ceu.reserve(m);
  topology.dt.reserve(n);
  topology.dr.reserve(n);

  const double inner = params.cell_radius_m - params.edge_band_m;
  for (int i = 0; i < m; ++i) {
    topology.ceu.push_back(annulus_point(inner, params.cell_radius_m, rng));
  }
  for (int j = 0; j < n; ++j) {
    const Position dt = annulus_point(0.0, params.cell_radius_m, rng);
    topology.dt.push_back(dt);
    // Receiver at fixed separation in a uniform direction; redraw the
    // direction while the point leaves the disc.
    Position dr{};
    bool placed = false;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      const double angle = kTwoPi * rng.uniform();
      dr = {dt.x + params.d2d_separation_m * std::cos(angle),
            dt.y + params.d2d_separation_m * std::sin(angle)};
      if (std::hypot(dr.x, dr.y) <= params.cell_radius_m) {
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw InvalidGeometryError("could not place a D2D receiver inside the cell");
    }
    topology.dr.push_back(dr);
  }
  return topology;
}

double pathloss_gain(double distance_m, double fading, const ChannelParams& params) {
  if (distance_m <= 0.0) {
    throw InvalidGeometryError("link distance must be positive");
  }
  return params.pathloss_constant * fading *
         std::pow(distance_m, -params.pathloss_exponent);
}

double channel_gain(double distance_m, const ChannelParams& params, RandomStream& rng) {
  return pathloss_gain(distance_m, rng.exponential(1.0), params);
}

ChannelGains realize_gains(const Topology& topology, const ChannelParams& params,
                           RandomStream& rng, bool condition_outage,
                           double ceu_power_w, double rate_requirement,
                           int max_retries) {
  const int m = static_cast<int>(topology.ceu.size());
  const int n = static_cast<int>(topology.dt.size());

  ChannelGains gains;
  gains.ceu_count = m;
  gains.d2d_count = n;
  gains.ceu_bs.reserve(m);
  gains.ceu_dt.reserve(static_cast<std::size_t>(m) * n);
  gains.dt_bs.reserve(n);
  gains.dt_dr.reserve(n);

  for (int i = 0; i < m; ++i) {
    const double link = distance(topology.ceu[i], topology.bs);
    double gain = channel_gain(link, params, rng);
    if (condition_outage) {
      int retries = 0;
      while (direct_link_rate(ceu_power_w, gain, params.noise_w) >= rate_requirement) {
        if (++retries > max_retries) {
          throw ConditioningFailureError(i, max_retries);
        }
        gain = channel_gain(link, params, rng);
      }
    }
    gains.ceu_bs.push_back(gain);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      gains.ceu_dt.push_back(
          channel_gain(distance(topology.ceu[i], topology.dt[j]), params, rng));
    }
  }
  for (int j = 0; j < n; ++j) {
    gains.dt_bs.push_back(
        channel_gain(distance(topology.dt[j], topology.bs), params, rng));
  }
  for (int j = 0; j < n; ++j) {
    gains.dt_dr.push_back(
        channel_gain(distance(topology.dt[j], topology.dr[j]), params, rng));
  }
  return gains;
}

}  // namespace leasematch
