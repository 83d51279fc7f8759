#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "leasematch/config.hpp"
#include "leasematch/error.hpp"
#include "leasematch/report.hpp"

using namespace leasematch;

namespace {

ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return load_config(in);
}

}  // namespace

TEST_CASE("empty input reproduces the reference scenario") {
  const ScenarioConfig config = parse("");
  CHECK(config.channel.pathloss_constant == 0.01);
  CHECK(config.channel.pathloss_exponent == 4.0);
  CHECK(config.channel.cell_radius_m == 500.0);
  CHECK(config.channel.d2d_separation_m == 20.0);
  CHECK(config.channel.relay_range_m == 300.0);
  CHECK(config.noise_dbm == -114.0);
  CHECK(config.game.noise_w == doctest::Approx(3.9810717055349695e-15).epsilon(1e-12));
  CHECK(config.game.beta1 == 1.0);
  CHECK(config.game.beta2 == 10.0);
  CHECK(config.game.ceu_power_w == 0.1);
  CHECK(config.game.d2d_power_w == 0.1);
  CHECK(config.game.rate_requirement == doctest::Approx(2.057373208606795).epsilon(1e-12));
  CHECK(config.ceu_count == 20);
  CHECK(config.d2d_counts == std::vector<int>{5, 10, 15, 20, 25, 30, 35, 40});
  CHECK(config.drops == 500);
  CHECK(config.schemes.size() == 3);
  CHECK(config.fixed_price == doctest::Approx(1.5));
  CHECK(config.condition_outage);
  CHECK(config.count_unmatched_direct_rate);
}

TEST_CASE("values, comments and lists parse") {
  const ScenarioConfig config = parse(
      "# scenario override\n"
      "channel.cell_radius = 400\n"
      "game.beta2 = 12.5   # inline comment\n"
      "sim.N_values = 3, 6, 9\n"
      "sim.schemes = proposed,stable_fixed_price\n"
      "sim.condition_outage = false\n"
      "sim.master_seed = 99\n");
  CHECK(config.channel.cell_radius_m == 400.0);
  CHECK(config.game.beta2 == 12.5);
  CHECK(config.d2d_counts == std::vector<int>{3, 6, 9});
  CHECK(config.schemes ==
        std::vector<Scheme>{Scheme::kProposed, Scheme::kStableFixedPrice});
  CHECK_FALSE(config.condition_outage);
  CHECK(config.master_seed == 99);
}

TEST_CASE("the default fixed price follows the game constants") {
  const ScenarioConfig config = parse("game.beta1 = 2\ngame.P_D = 0.2\n");
  CHECK(config.fixed_price == doctest::Approx(0.5 * 10.0 * 0.2 + 2.0));
  const ScenarioConfig pinned = parse("game.beta1 = 2\nsim.c_fixed = 0.75\n");
  CHECK(pinned.fixed_price == 0.75);
}

TEST_CASE("malformed input reports the offending line") {
  auto line_of = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("channel.K = 0.01\nwhat is this\n") == 2);
  CHECK(line_of("unknown.key = 3\n") == 1);
  CHECK(line_of("game.beta1 = fast\n") == 1);
  CHECK(line_of("\n\nsim.drops = 1.5\n") == 3);
  CHECK(line_of("sim.schemes = proposed,bogus\n") == 1);
}

TEST_CASE("invalid values are rejected") {
  CHECK_THROWS_AS(parse("game.beta1 = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse("sim.drops = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse("sim.M = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse("channel.edge_band = 600\n"), ConfigError);
  CHECK_THROWS_AS(parse("sim.N_values = 5,-1\n"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/path.cfg"), ConfigError);
}

TEST_CASE("serialization round-trips every field exactly") {
  ScenarioConfig config = parse(
      "channel.N0_dBm = -110.5\n"
      "game.R_th = 1.75\n"
      "sim.N_values = 7,11\n"
      "sim.master_seed = 1234567890123\n"
      "sim.c_fixed = 0.333333333333333314829616256247\n");
  const std::string snapshot = serialize_config(config);
  const ScenarioConfig reloaded = parse(snapshot);
  CHECK(reloaded.noise_dbm == config.noise_dbm);
  CHECK(reloaded.game.noise_w == config.game.noise_w);
  CHECK(reloaded.game.rate_requirement == config.game.rate_requirement);
  CHECK(reloaded.fixed_price == config.fixed_price);
  CHECK(reloaded.d2d_counts == config.d2d_counts);
  CHECK(reloaded.master_seed == config.master_seed);
  CHECK(serialize_config(reloaded) == snapshot);
}

TEST_CASE("csv formatting uses 12 significant digits") {
  CHECK(format_double(0.5324768712979725) == "0.532476871298");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.6e-13) == "1.6e-13");
}
