#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fdaloha/game.hpp"
#include "fdaloha/linsys.hpp"
#include "fdaloha/model.hpp"

using namespace fdaloha;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DerivedConstants baseline() {
  return derive_constants({3.5, 4.0, 1.0, SnrRefBudget{10.0, 0.7}});
}

DerivedConstants random_constants(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double ic = 0.02 + 0.90 * u(gen);
  const double if_ = ic + 0.02 + (0.97 - ic - 0.02) * u(gen);
  const double beta = 0.55 + 0.45 * u(gen);
  const double phi = 0.2 + 0.8 * u(gen);
  return DerivedConstants::direct(beta, phi, ic, if_);
}

MixedStrategy random_interior_pmf(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  double c[4] = {u(gen), u(gen), u(gen), u(gen)};
  const double sum = c[0] + c[1] + c[2] + c[3];
  return MixedStrategy::make(c[0] / sum, c[1] / sum, c[2] / sum, c[3] / sum);
}

}  // namespace

TEST_CASE("mixed strategy validation and snapping") {
  CHECK_NOTHROW(MixedStrategy::make(0.25, 0.25, 0.25, 0.25).validate());
  CHECK(MixedStrategy::make(-5e-13, 0.5, 0.5, 5e-13).wait == 0.0);
  CHECK(MixedStrategy::make(1.0 - 5e-13, 0.0, 0.0, 5e-13).wait == 1.0);
  CHECK_THROWS_AS(MixedStrategy::make(-0.1, 0.6, 0.3, 0.2), InvalidParameter);
  CHECK_THROWS_AS(MixedStrategy::make(0.5, 0.5, 0.5, 0.5), InvalidParameter);
  CHECK(MixedStrategy::pure(Strategy::tx_fd).tx_fd == 1.0);
}

TEST_CASE("action throughput closed forms") {
  const DerivedConstants k = baseline();

  CHECK(action_throughput(k, MixedStrategy::uniform(), Strategy::wait) == 0.0);
  CHECK_THAT(action_throughput(k, MixedStrategy::pure(Strategy::wait), Strategy::tx_fd),
             WithinRel(2.0 * k.beta * k.phi, 1e-15));

  // Frozen evaluations against a uniform opponent.
  CHECK_THAT(action_throughput(k, MixedStrategy::uniform(), Strategy::tx_a),
             WithinAbs(0.292953934622557, 1e-14));
  CHECK_THAT(action_throughput(k, MixedStrategy::uniform(), Strategy::tx_fd),
             WithinAbs(0.410135508471580, 1e-14));

  SECTION("full-duplex rate is beta times the two half-duplex rates") {
    std::mt19937_64 gen(7);
    for (int i = 0; i < 200; ++i) {
      const MixedStrategy opp = random_interior_pmf(gen);
      const double hd_sum =
          action_throughput(k, opp, Strategy::tx_a) + action_throughput(k, opp, Strategy::tx_b);
      CHECK_THAT(action_throughput(k, opp, Strategy::tx_fd),
                 WithinRel(k.beta * hd_sum, 1e-13));
    }
  }
}

TEST_CASE("utilities subtract action costs") {
  const DerivedConstants k = baseline();
  const CostPolicy costs{0.3, 0.42};
  CHECK(utility(k, MixedStrategy::uniform(), Strategy::wait, costs) == 0.0);
  CHECK_THAT(utility(k, MixedStrategy::pure(Strategy::tx_fd), Strategy::tx_a, costs),
             WithinAbs(k.phi * k.iota_cf() - 0.3, 1e-15));
}

TEST_CASE("dominance screening at the cost-band edges") {
  const DerivedConstants k = baseline();
  const double lo = min_equilibrium_cost(k);
  const double hi = max_equilibrium_cost(k);
  CHECK_THAT(lo, WithinAbs(0.0612386138745768, 1e-15));
  CHECK_THAT(hi, WithinAbs(0.670320046035639, 1e-15));

  SECTION("overpriced half duplex loses to waiting") {
    const double c_hd = hi + 0.01;
    const DominanceReport report = dominance_report(k, {c_hd, 2.0 * k.beta * c_hd});
    CHECK(report.dominated_by[index_of(Strategy::tx_a)] == Strategy::wait);
    CHECK(report.dominated_by[index_of(Strategy::tx_b)] == Strategy::wait);
  }

  SECTION("underpriced access makes waiting dominated") {
    const double c_hd = lo / 2.0;
    const DominanceReport report = dominance_report(k, {c_hd, 2.0 * k.beta * c_hd});
    CHECK(report.dominated_by[index_of(Strategy::wait)] == Strategy::tx_a);
  }

  SECTION("inside the closed band nothing is strictly dominated") {
    for (double c_hd : {lo, 0.3, hi}) {
      const DominanceReport report = dominance_report(k, {c_hd, 2.0 * k.beta * c_hd});
      CHECK_FALSE(report.any());
    }
  }
}

TEST_CASE("equilibrium family bounds and members") {
  const DerivedConstants k = baseline();

  SECTION("outside the cost band there is no equilibrium") {
    CHECK_THROWS_AS(mne_family(k, 0.05), NoEquilibrium);
    CHECK_THROWS_AS(mne_family(k, 0.7), NoEquilibrium);
    CHECK_FALSE(try_mne_family(k, 0.05).has_value());
    CHECK(try_mne_family(k, 0.3).has_value());
  }

  SECTION("frozen band at c_hd = 0.3") {
    const EquilibriumFamily fam = mne_family(k, 0.3);
    CHECK(fam.pi_tfd_min == 0.0);
    CHECK_THAT(fam.pi_tfd_max, WithinAbs(0.607997595201217, 1e-14));
    CHECK_THAT(fam.c_fd, WithinRel(0.42, 1e-14));
  }

  SECTION("frozen member at (c_hd, pi_tfd) = (0.3, 0.3)") {
    const MixedStrategy pi = mne_strategy(k, 0.3, 0.3);
    CHECK_THAT(pi.wait, WithinAbs(0.283298188490003, 1e-14));
    CHECK_THAT(pi.tx_a, WithinAbs(0.208350905754999, 1e-14));
    CHECK(pi.tx_a == pi.tx_b);
    CHECK(pi.tx_fd == 0.3);
  }

  SECTION("the band pinches to pure strategies at the cost edges") {
    const EquilibriumFamily at_hi = mne_family(k, max_equilibrium_cost(k));
    CHECK(at_hi.pi_tfd_min == 0.0);
    CHECK(at_hi.pi_tfd_max == 0.0);
    CHECK(at_hi.member(0.0).wait == 1.0);

    const EquilibriumFamily at_lo = mne_family(k, min_equilibrium_cost(k));
    CHECK(at_lo.pi_tfd_min == 1.0);
    CHECK(at_lo.pi_tfd_max == 1.0);
    CHECK(at_lo.member(1.0).tx_fd == 1.0);
  }

  SECTION("members outside the feasible band are rejected") {
    const EquilibriumFamily fam = mne_family(k, 0.3);
    CHECK_THROWS_AS(fam.member(0.7), OutOfBand);
    CHECK_THROWS_AS(fam.member(-0.1), OutOfBand);
  }
}

TEST_CASE("family members agree with a direct linear solve") {
  // Independent oracle: impose U(t_A) = U(t_B) = 0, pin pi_tfd, and require
  // total probability 1, then run Gaussian elimination on that 4x4 system.
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const DerivedConstants k = random_constants(gen);
    const double lo = min_equilibrium_cost(k);
    const double hi = max_equilibrium_cost(k);
    const double c_hd = lo + (hi - lo) * u(gen);
    const EquilibriumFamily fam = mne_family(k, c_hd);
    const double y = fam.pi_tfd_min + (fam.pi_tfd_max - fam.pi_tfd_min) * u(gen);
    const MixedStrategy pi = fam.member(y);

    const auto [a, b] = indifference_system(k, CostPolicy{c_hd, fam.c_fd});
    Mat4 pinned{a[0], a[1], Vec4{0.0, 0.0, 0.0, 1.0}, a[3]};
    Vec4 rhs{b[0], b[1], y, b[3]};
    const auto solved = solve4(pinned, rhs);
    REQUIRE(solved.has_value());
    CHECK_THAT(pi.wait, WithinAbs((*solved)[0], 1e-11));
    CHECK_THAT(pi.tx_a, WithinAbs((*solved)[1], 1e-11));
    CHECK_THAT(pi.tx_b, WithinAbs((*solved)[2], 1e-11));
    CHECK_THAT(pi.tx_fd, WithinAbs((*solved)[3], 1e-11));
  }
}

TEST_CASE("equilibrium certification") {
  const DerivedConstants k = baseline();

  SECTION("family members pass across the whole band") {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lo = min_equilibrium_cost(k);
    const double hi = max_equilibrium_cost(k);
    for (int i = 0; i < 500; ++i) {
      const double c_hd = lo + (hi - lo) * u(gen);
      const EquilibriumFamily fam = mne_family(k, c_hd);
      const double y = fam.pi_tfd_min + (fam.pi_tfd_max - fam.pi_tfd_min) * u(gen);
      const EquilibriumCheck check =
          verify_mne(k, fam.member(y), CostPolicy{c_hd, fam.c_fd});
      CHECK(check.certified(1e-9));
    }
  }

  SECTION("a silent profile is not an equilibrium below the top cost") {
    const EquilibriumCheck check =
        verify_mne(k, MixedStrategy::pure(Strategy::wait), CostPolicy{0.3, 0.42});
    CHECK_FALSE(check.certified(1e-9));
    CHECK_THAT(check.utilities[index_of(Strategy::tx_a)], WithinAbs(k.phi - 0.3, 1e-15));
  }

  SECTION("disproportionate costs leave a residual on every interior pmf") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const DerivedConstants kk = random_constants(gen);
      const double c_hd =
          min_equilibrium_cost(kk) +
          (max_equilibrium_cost(kk) - min_equilibrium_cost(kk)) * u(gen);
      const double skew = (1e-3 + 0.3 * u(gen)) * (u(gen) < 0.5 ? -1.0 : 1.0);
      const double c_fd = std::max(0.0, 2.0 * kk.beta * c_hd + skew);
      if (std::abs(c_fd - 2.0 * kk.beta * c_hd) < 1e-3) continue;
      const EquilibriumCheck check =
          verify_mne(kk, random_interior_pmf(gen), CostPolicy{c_hd, c_fd});
      CHECK(check.max_abs_utility() > 1e-6);
      CHECK_FALSE(check.costs_proportional);
    }
  }
}

TEST_CASE("indifference system rank structure") {
  std::mt19937_64 gen(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const DerivedConstants k = random_constants(gen);
    const double c_hd =
        min_equilibrium_cost(k) + (max_equilibrium_cost(k) - min_equilibrium_cost(k)) * u(gen);

    const CostPolicy prop{c_hd, 2.0 * k.beta * c_hd};
    const auto [a, b] = indifference_system(k, prop);
    CHECK(numeric_rank(a) == 3);

    std::array<std::array<double, 5>, 4> aug{};
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) aug[r][c] = a[r][c];
      aug[r][4] = b[r];
    }
    CHECK(numeric_rank(aug) == 3);

    const CostPolicy skew{c_hd, 2.0 * k.beta * c_hd + 5e-3};
    const auto b2 = indifference_system(k, skew).second;
    for (int r = 0; r < 4; ++r) aug[r][4] = b2[r];
    CHECK(numeric_rank(aug) == 4);
  }
}

TEST_CASE("cost design inverts the family bounds") {
  const DerivedConstants k = baseline();

  SECTION("frozen interval for a silent-capable target") {
    const CostInterval band = design_costs(k, 0.0);
    CHECK_THAT(band.c_hd_min, WithinAbs(0.220128539290006, 1e-14));
    CHECK_THAT(band.c_hd_max, WithinAbs(0.670320046035639, 1e-14));
    CHECK_FALSE(band.degenerate(1e-15));
  }

  SECTION("the all-FD target admits exactly one cost") {
    const CostInterval band = design_costs(k, 1.0);
    CHECK(band.degenerate(1e-15));
    CHECK_THAT(band.c_hd_min, WithinAbs(min_equilibrium_cost(k), 1e-15));
    CHECK_THAT(band.c_fd_min, WithinRel(2.0 * k.beta * band.c_hd_min, 1e-15));
  }

  SECTION("round trip: every cost in the interval reproduces the target") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
      const DerivedConstants kk = random_constants(gen);
      const double y = u(gen);
      const CostInterval band = design_costs(kk, y);
      const double width = band.c_hd_max - band.c_hd_min;
      const double expected =
          0.5 * (1.0 - y) * kk.phi * (2.0 - kk.iota_c - kk.iota_f);
      CHECK_THAT(width, WithinAbs(expected, 1e-12));
      const double c_hd = band.c_hd_min + width * u(gen);
      const EquilibriumFamily fam = mne_family(kk, c_hd);
      CHECK(fam.pi_tfd_min <= y + 1e-12);
      CHECK(fam.pi_tfd_max >= y - 1e-12);
      CHECK_THAT(fam.member(y).tx_fd, WithinAbs(y, 1e-12));
    }
  }

  SECTION("targets outside the unit interval are rejected") {
    CHECK_THROWS_AS(design_costs(k, -0.01), InvalidParameter);
    CHECK_THROWS_AS(design_costs(k, 1.01), InvalidParameter);
  }
}

TEST_CASE("equilibrium feasibility gate") {
  const DerivedConstants k = baseline();
  CHECK(equilibrium_feasible(k, {0.3, 2.0 * k.beta * 0.3}));
  CHECK_FALSE(equilibrium_feasible(k, {0.3, 0.5}));
  CHECK_FALSE(equilibrium_feasible(k, {0.05, 2.0 * k.beta * 0.05}));
  CHECK_FALSE(equilibrium_feasible(k, {0.7, 2.0 * k.beta * 0.7}));
}
