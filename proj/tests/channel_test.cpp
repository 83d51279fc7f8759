#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "leasematch/channel.hpp"
#include "leasematch/config.hpp"
#include "leasematch/error.hpp"
#include "leasematch/rates.hpp"

using namespace leasematch;

namespace {

ChannelParams table_params() { return default_config().channel; }

}  // namespace

TEST_CASE("empty placement request yields an empty topology") {
  RandomStream rng(7);
  const Topology topology = place_nodes(table_params(), 0, 0, rng);
  CHECK(topology.ceu.empty());
  CHECK(topology.dt.empty());
  CHECK(topology.dr.empty());
}

TEST_CASE("placement invariants hold over many samples") {
  const ChannelParams params = table_params();
  RandomStream rng(20240501);
  int ceu_samples = 0;
  for (int drop = 0; drop < 500 && ceu_samples < 10000; ++drop) {
    const Topology topology = place_nodes(params, 20, 25, rng);
    for (const Position& p : topology.ceu) {
      const double radius = std::hypot(p.x, p.y);
      CHECK(radius >= params.cell_radius_m - params.edge_band_m);
      CHECK(radius <= params.cell_radius_m);
      ++ceu_samples;
    }
    for (std::size_t j = 0; j < topology.dt.size(); ++j) {
      CHECK(std::hypot(topology.dt[j].x, topology.dt[j].y) <= params.cell_radius_m);
      CHECK(std::hypot(topology.dr[j].x, topology.dr[j].y) <= params.cell_radius_m);
      CHECK(distance(topology.dt[j], topology.dr[j]) ==
            doctest::Approx(params.d2d_separation_m).epsilon(1e-12));
    }
  }
  CHECK(ceu_samples >= 10000);
}

TEST_CASE("pathloss gain matches hand evaluations") {
  ChannelParams params;
  params.pathloss_constant = 1.0;
  params.pathloss_exponent = 4.0;
  CHECK(pathloss_gain(1.0, 0.0, params) == 0.0);
  CHECK(pathloss_gain(1.0, 1.0, params) == doctest::Approx(1.0));

  params.pathloss_constant = 1e-2;
  CHECK(pathloss_gain(500.0, 1.0, params) == doctest::Approx(1.6e-13).epsilon(1e-12));
}

TEST_CASE("nonpositive distances are rejected") {
  RandomStream rng(1);
  const ChannelParams params = table_params();
  CHECK_THROWS_AS(channel_gain(0.0, params, rng), InvalidGeometryError);
  CHECK_THROWS_AS(channel_gain(-3.0, params, rng), InvalidGeometryError);
  CHECK_THROWS_AS(pathloss_gain(0.0, 1.0, params), InvalidGeometryError);
}

TEST_CASE("fading draws have unit mean") {
  RandomStream rng(99);
  double sum = 0.0;
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) sum += rng.exponential(1.0);
  const double mean = sum / draws;
  CHECK(mean >= 0.99);
  CHECK(mean <= 1.01);
}

TEST_CASE("gain is strictly decreasing in distance for fixed fading") {
  const ChannelParams params = table_params();
  RandomStream rng(5);
  for (int k = 0; k < 1000; ++k) {
    const double near = rng.uniform(1.0, 400.0);
    const double far = near + rng.uniform(1.0, 200.0);
    const double fading = rng.exponential(1.0) + 1e-6;
    CHECK(pathloss_gain(near, fading, params) > pathloss_gain(far, fading, params));
  }
}

TEST_CASE("same seed reproduces topology and gains bit for bit") {
  const ScenarioConfig config = default_config();
  auto realize = [&] {
    RandomStream rng = RandomStream::substream(config.master_seed, 3);
    Topology topology = place_nodes(config.channel, 8, 9, rng);
    ChannelGains gains = realize_gains(topology, config.channel, rng, true,
                                       config.game.ceu_power_w,
                                       config.game.rate_requirement);
    return std::pair{topology, gains};
  };
  const auto [topo_a, gains_a] = realize();
  const auto [topo_b, gains_b] = realize();
  REQUIRE(topo_a.ceu.size() == topo_b.ceu.size());
  for (std::size_t i = 0; i < topo_a.ceu.size(); ++i) {
    CHECK(topo_a.ceu[i].x == topo_b.ceu[i].x);
    CHECK(topo_a.ceu[i].y == topo_b.ceu[i].y);
  }
  CHECK(gains_a.ceu_bs == gains_b.ceu_bs);
  CHECK(gains_a.ceu_dt == gains_b.ceu_dt);
  CHECK(gains_a.dt_bs == gains_b.dt_bs);
  CHECK(gains_a.dt_dr == gains_b.dt_dr);
}

TEST_CASE("conditioning forces every CEU below the rate requirement") {
  const ScenarioConfig config = default_config();
  RandomStream rng(11);
  const Topology topology = place_nodes(config.channel, 20, 5, rng);
  const ChannelGains gains =
      realize_gains(topology, config.channel, rng, true, config.game.ceu_power_w,
                    config.game.rate_requirement);
  for (double gain : gains.ceu_bs) {
    CHECK(direct_link_rate(config.game.ceu_power_w, gain, config.game.noise_w) <
          config.game.rate_requirement);
  }
}

TEST_CASE("conditioning failure names the offending CEU") {
  const ScenarioConfig config = default_config();
  RandomStream rng(13);
  const Topology topology = place_nodes(config.channel, 3, 0, rng);
  // An absurdly small requirement makes the outage predicate unsatisfiable.
  try {
    realize_gains(topology, config.channel, rng, true, config.game.ceu_power_w,
                  1e-12, 50);
    FAIL("expected ConditioningFailureError");
  } catch (const ConditioningFailureError& e) {
    CHECK(e.ceu_index() == 0);
    CHECK(std::string(e.what()).find("CEU 0") != std::string::npos);
  }
}

TEST_CASE("mean direct SNR at the cell edge sits near 6 dB") {
  const ScenarioConfig config = default_config();
  const double mean_snr = config.game.ceu_power_w *
                          pathloss_gain(500.0, 1.0, config.channel) /
                          config.game.noise_w;
  CHECK(mean_snr == doctest::Approx(4.019).epsilon(1e-3));
}
