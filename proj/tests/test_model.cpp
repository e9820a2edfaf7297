#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fdaloha/model.hpp"

using namespace fdaloha;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

NetworkParams baseline_params() {
  return {3.5, 4.0, 1.0, SnrRefBudget{10.0, 0.7}};
}

// Values below were frozen from an independent high-precision evaluation of
// the closed forms; they pin the implementation, not the other way around.
constexpr double kPhi = 0.670320046035639;
constexpr double kIotaC = 0.2;
constexpr double kIotaF = 0.456786383137055;

}  // namespace

TEST_CASE("derived constants at the baseline parameter set") {
  const DerivedConstants k = derive_constants(baseline_params());
  CHECK_THAT(k.phi, WithinAbs(kPhi, 1e-15));
  CHECK(k.iota_c == 1.0 / 5.0);  // kappa = 1 makes this exact
  CHECK_THAT(k.iota_f, WithinAbs(kIotaF, 1e-15));
  CHECK(k.beta == 0.7);
}

TEST_CASE("absolute budget route matches the reference-SNR route") {
  // r = 1 makes r^alpha drop out; N/P = kappa^-alpha / snr_ref reproduces phi
  // and eta = -ln(beta)/theta reproduces beta.
  NetworkParams abs_route{3.5, 4.0, 1.0,
                          AbsoluteBudget{10.0, 1.0, 1.0, -std::log(0.7) / 4.0}};
  const DerivedConstants a = derive_constants(abs_route);
  const DerivedConstants b = derive_constants(baseline_params());
  CHECK_THAT(a.phi, WithinRel(b.phi, 1e-14));
  CHECK_THAT(a.beta, WithinRel(b.beta, 1e-14));
  CHECK(a.iota_c == b.iota_c);
  CHECK(a.iota_f == b.iota_f);
}

TEST_CASE("derive_constants rejects invalid inputs") {
  CHECK_THROWS_AS(derive_constants({0.0, 4.0, 1.0, SnrRefBudget{10.0, 0.7}}),
                  InvalidParameter);
  CHECK_THROWS_AS(derive_constants({3.5, -1.0, 1.0, SnrRefBudget{10.0, 0.7}}),
                  InvalidParameter);
  CHECK_THROWS_AS(derive_constants({3.5, 4.0, 0.0, SnrRefBudget{10.0, 0.7}}),
                  InvalidParameter);
  CHECK_THROWS_AS(derive_constants({3.5, 4.0, 1.0, SnrRefBudget{0.0, 0.7}}),
                  InvalidParameter);

  // Direct beta at or below 1/2 is rejected, as is one above 1.
  CHECK_THROWS_AS(derive_constants({3.5, 4.0, 1.0, SnrRefBudget{10.0, 0.5}}),
                  InfeasibleBeta);
  CHECK_THROWS_AS(derive_constants({3.5, 4.0, 1.0, SnrRefBudget{10.0, 1.2}}),
                  InfeasibleBeta);

  // Geometry-based SI: eta = 0.2 at theta = 4, r = 1 gives beta = e^-0.8 < 1/2.
  CHECK_THROWS_AS(derive_constants({3.5, 4.0, 1.0, AbsoluteBudget{10.0, 1.0, 1.0, 0.2}}),
                  InfeasibleBeta);
  CHECK_THROWS_AS(derive_constants({3.5, 4.0, 1.0, AbsoluteBudget{10.0, 1.0, 1.0, 1.0}}),
                  InvalidParameter);

  // Noise exponent so large that phi underflows to zero.
  CHECK_THROWS_AS(derive_constants({6.0, 50.0, 0.25, SnrRefBudget{1e-2, 0.7}}),
                  InvalidParameter);
}

TEST_CASE("vanishing threshold drives every constant to 1") {
  const DerivedConstants k = derive_constants({3.5, 1e-9, 1.0, SnrRefBudget{10.0, 0.7}});
  CHECK(k.phi > 1.0 - 1e-9);
  CHECK(k.phi < 1.0);
  CHECK(k.iota_c > 1.0 - 1e-8);
  CHECK(k.iota_f > k.iota_c);
  CHECK(k.iota_f < 1.0);
}

TEST_CASE("interference factors stay ordered over random parameters") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> alpha(1.5, 6.0);
  std::uniform_real_distribution<double> log_theta(std::log(0.05), std::log(20.0));
  std::uniform_real_distribution<double> log_kappa(std::log(0.3), std::log(3.0));
  for (int i = 0; i < 10000; ++i) {
    NetworkParams p{alpha(gen), std::exp(log_theta(gen)), std::exp(log_kappa(gen)),
                    SnrRefBudget{10.0, 0.7}};
    DerivedConstants k;
    try {
      k = derive_constants(p);
    } catch (const InvalidParameter&) {
      continue;  // phi underflowed; the draw has no representable constants
    }
    CHECK(k.iota_c > 0.0);
    CHECK(k.iota_c < k.iota_f);
    CHECK(k.iota_f < 1.0);
    CHECK(k.iota_c + k.iota_f - 2.0 * k.iota_c * k.iota_f > 0.0);
  }
}

TEST_CASE("success probability enumerates all strategy pairs") {
  const DerivedConstants k = derive_constants(baseline_params());
  const double beta = k.beta, phi = k.phi, ic = k.iota_c, if_ = k.iota_f;

  SECTION("half-duplex sender, receiver B") {
    CHECK(success_probability(k, Receiver::node_b, Strategy::tx_a, Strategy::wait) == phi);
    CHECK_THAT(success_probability(k, Receiver::node_b, Strategy::tx_a, Strategy::tx_a),
               WithinRel(phi * if_, 1e-15));
    CHECK_THAT(success_probability(k, Receiver::node_b, Strategy::tx_a, Strategy::tx_b),
               WithinRel(phi * ic, 1e-15));
    CHECK_THAT(success_probability(k, Receiver::node_b, Strategy::tx_a, Strategy::tx_fd),
               WithinRel(phi * ic * if_, 1e-15));
  }

  SECTION("full-duplex pair, receiver A carries the swapped factors") {
    CHECK_THAT(success_probability(k, Receiver::node_a, Strategy::tx_fd, Strategy::wait),
               WithinRel(beta * phi, 1e-15));
    // Frozen spot value: 0.7 * phi * iota_c.
    CHECK_THAT(success_probability(k, Receiver::node_a, Strategy::tx_fd, Strategy::tx_a),
               WithinAbs(0.0938448064449895, 1e-15));
    CHECK_THAT(success_probability(k, Receiver::node_a, Strategy::tx_fd, Strategy::tx_b),
               WithinRel(beta * phi * if_, 1e-15));
    CHECK_THAT(success_probability(k, Receiver::node_b, Strategy::tx_fd, Strategy::tx_fd),
               WithinRel(beta * phi * ic * if_, 1e-15));
  }

  SECTION("full duplex costs exactly a factor beta at any receiver") {
    for (Strategy opp : all_strategies) {
      CHECK_THAT(success_probability(k, Receiver::node_b, Strategy::tx_fd, opp),
                 WithinRel(beta * success_probability(k, Receiver::node_b, Strategy::tx_a, opp),
                           1e-15));
      CHECK_THAT(success_probability(k, Receiver::node_a, Strategy::tx_fd, opp),
                 WithinRel(beta * success_probability(k, Receiver::node_a, Strategy::tx_b, opp),
                           1e-15));
    }
  }

  SECTION("swap symmetry between the two receivers") {
    CHECK(success_probability(k, Receiver::node_a, Strategy::tx_fd, Strategy::tx_a) ==
          success_probability(k, Receiver::node_b, Strategy::tx_fd, Strategy::tx_b));
    CHECK(success_probability(k, Receiver::node_a, Strategy::tx_fd, Strategy::tx_b) ==
          success_probability(k, Receiver::node_b, Strategy::tx_fd, Strategy::tx_a));
  }

  SECTION("opponent escalation never helps") {
    for (Strategy own : {Strategy::tx_a, Strategy::tx_fd}) {
      const double vs_wait = success_probability(k, Receiver::node_b, own, Strategy::wait);
      for (Strategy opp : {Strategy::tx_a, Strategy::tx_b}) {
        const double single = success_probability(k, Receiver::node_b, own, opp);
        CHECK(single < vs_wait);
        CHECK(success_probability(k, Receiver::node_b, own, Strategy::tx_fd) < single);
      }
    }
  }

  SECTION("non-addressees are rejected") {
    CHECK_THROWS_AS(success_probability(k, Receiver::node_a, Strategy::tx_a, Strategy::wait),
                    InvalidRole);
    CHECK_THROWS_AS(success_probability(k, Receiver::node_b, Strategy::tx_b, Strategy::tx_fd),
                    InvalidRole);
    CHECK_THROWS_AS(success_probability(k, Receiver::node_a, Strategy::wait, Strategy::wait),
                    InvalidRole);
  }
}

TEST_CASE("direct constants are validated") {
  CHECK_THROWS_AS(DerivedConstants::direct(0.5, 0.7, 0.2, 0.4), InfeasibleBeta);
  CHECK_THROWS_AS(DerivedConstants::direct(0.7, 0.0, 0.2, 0.4), InvalidParameter);
  CHECK_THROWS_AS(DerivedConstants::direct(0.7, 0.7, 0.4, 0.2), InvalidParameter);
  CHECK_THROWS_AS(DerivedConstants::direct(0.7, 0.7, 0.2, 1.0), InvalidParameter);
  CHECK_NOTHROW(DerivedConstants::direct(1.0, 1.0, 0.2, 0.4));
}
