#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "leasematch/error.hpp"
#include "leasematch/rates.hpp"
#include "leasematch/rng.hpp"

using namespace leasematch;

TEST_CASE("direct link rate at reference SNRs") {
  CHECK(direct_link_rate(1.0, 0.0, 1.0) == 0.0);
  CHECK(direct_link_rate(1.0, 3.0, 1.0) == doctest::Approx(2.0));
  // 5 dB
  CHECK(direct_link_rate(1.0, std::pow(10.0, 0.5), 1.0) ==
        doctest::Approx(2.057373208606795).epsilon(1e-12));
}

TEST_CASE("pair budget degenerate relay cases") {
  GameParams game;
  game.noise_w = 1.0;
  game.ceu_power_w = 1.0;
  game.d2d_power_w = 1.0;

  ChannelGains gains;
  gains.ceu_count = 1;
  gains.d2d_count = 1;

  SUBCASE("useless relay link adds nothing over the direct rate") {
    gains.ceu_bs = {3.0};
    gains.ceu_dt = {1e30};  // first hop effectively unbounded
    gains.dt_bs = {0.0};
    gains.dt_dr = {1.0};
    const LinkBudget budget = pair_budget(0, 0, gains, game);
    CHECK(budget.coop_rate == doctest::Approx(budget.direct_rate));
    CHECK(budget.hop2_rate == doctest::Approx(budget.direct_rate));
  }

  SUBCASE("symmetric hop gains collapse to the direct rate") {
    gains.ceu_bs = {3.0};
    gains.ceu_dt = {3.0};
    gains.dt_bs = {0.0};
    gains.dt_dr = {1.0};
    const LinkBudget budget = pair_budget(0, 0, gains, game);
    CHECK(budget.hop1_rate == doctest::Approx(budget.direct_rate));
    CHECK(budget.hop2_rate == doctest::Approx(budget.direct_rate));
    CHECK(budget.coop_rate == doctest::Approx(budget.direct_rate));
  }
}

TEST_CASE("pair budget matches an independent re-evaluation") {
  RandomStream rng(42);
  GameParams game;
  for (int k = 0; k < 1000; ++k) {
    game.noise_w = rng.uniform(1e-15, 1e-12);
    game.ceu_power_w = rng.uniform(0.01, 1.0);
    game.d2d_power_w = rng.uniform(0.01, 1.0);

    ChannelGains gains;
    gains.ceu_count = 1;
    gains.d2d_count = 1;
    gains.ceu_bs = {rng.exponential(1e-13)};
    gains.ceu_dt = {rng.exponential(1e-11)};
    gains.dt_bs = {rng.exponential(1e-12)};
    gains.dt_dr = {rng.exponential(1e-8)};

    const LinkBudget budget = pair_budget(0, 0, gains, game);

    // From-scratch evaluation, written independently of pair_budget.
    const double snr_direct = game.ceu_power_w * gains.ceu_bs[0] / game.noise_w;
    const double expected_direct = std::log2(1.0 + snr_direct);
    const double expected_hop1 =
        std::log2(1.0 + game.ceu_power_w * gains.ceu_dt[0] / game.noise_w);
    const double expected_hop2 = std::log2(
        1.0 + snr_direct + game.d2d_power_w * gains.dt_bs[0] / game.noise_w);
    const double expected_coop = std::min(expected_hop1, expected_hop2);
    const double expected_d2d =
        std::log2(1.0 + game.d2d_power_w * gains.dt_dr[0] / game.noise_w);

    CHECK(budget.direct_rate == doctest::Approx(expected_direct).epsilon(1e-12));
    CHECK(budget.hop1_rate == doctest::Approx(expected_hop1).epsilon(1e-12));
    CHECK(budget.hop2_rate == doctest::Approx(expected_hop2).epsilon(1e-12));
    CHECK(budget.coop_rate == doctest::Approx(expected_coop).epsilon(1e-12));
    CHECK(budget.d2d_rate == doctest::Approx(expected_d2d).epsilon(1e-12));
    CHECK(budget.hop2_rate >= budget.direct_rate);
  }
}

TEST_CASE("cooperative rates split the frame as configured") {
  LinkBudget budget;
  budget.coop_rate = 4.0;
  budget.d2d_rate = 2.0;

  const PhaseRates rates = cooperative_rates(budget, 0.25);
  CHECK(rates.ceu == doctest::Approx(1.0));
  CHECK(rates.d2d == doctest::Approx(1.0));

  // boundary: the D2D share vanishes as the allocation approaches 1/2
  const PhaseRates edge = cooperative_rates(budget, 0.5 - 1e-12);
  CHECK(edge.d2d == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(edge.d2d >= 0.0);

  CHECK_THROWS_AS(cooperative_rates(budget, 0.0), InvalidAllocationError);
  CHECK_THROWS_AS(cooperative_rates(budget, 0.5), InvalidAllocationError);
  CHECK_THROWS_AS(cooperative_rates(budget, -0.1), InvalidAllocationError);
}

TEST_CASE("allocation at the requirement boundary delivers the requirement") {
  LinkBudget budget;
  budget.coop_rate = 6.0;
  budget.d2d_rate = 5.0;
  const double requirement = 2.0;
  const PhaseRates rates = cooperative_rates(budget, requirement / budget.coop_rate);
  CHECK(rates.ceu == doctest::Approx(requirement).epsilon(1e-12));
}

TEST_CASE("CEU rate rises and D2D rate falls with the allocation") {
  RandomStream rng(7);
  for (int k = 0; k < 200; ++k) {
    LinkBudget budget;
    budget.coop_rate = rng.uniform(0.5, 10.0);
    budget.d2d_rate = rng.uniform(0.5, 10.0);
    const double a = rng.uniform(1e-6, 0.5 - 2e-6);
    const double b = rng.uniform(a + 1e-6, 0.5 - 1e-6);
    const PhaseRates at_a = cooperative_rates(budget, a);
    const PhaseRates at_b = cooperative_rates(budget, b);
    CHECK(at_b.ceu > at_a.ceu);
    CHECK(at_b.d2d < at_a.d2d);
    CHECK(at_a.ceu >= 0.0);
    CHECK(at_a.d2d >= 0.0);
  }
}
