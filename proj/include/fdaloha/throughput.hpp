#pragma once

// Network-level throughput: per-profile packet counts, the aggregate
// throughput of symmetric access profiles, and its maximization over the
// feasible region
//   R = { (pi_thd, pi_tfd) : pi_thd in [0, 1/2], pi_tfd in [0, 1],
//         2*pi_thd + pi_tfd <= 1 },
// where pi_thd is the weight each pair puts on each half-duplex action.
//
// Writing x = pi_thd, y = pi_tfd, C = 2 - iota_c - iota_f, D = 1 - iota_c*iota_f:
//   T(x, y) = 4*phi*(x + beta*y) * (1 - C*x - D*y).
// The gradient factors, so the only stationary point with T != 0 solves
// x + beta*y = 0 = 1 - C*x - D*y and has x*y < 0; the maximum therefore
// sits on one of three boundary segments:
//   R1: y = 0,          R2: x = 0,          R3: 2x + y = 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdaloha/errors.hpp"
#include "fdaloha/game.hpp"
#include "fdaloha/model.hpp"

namespace fdaloha {

// Symmetric access profile: both pairs put weight pi_thd on each of t_A and
// t_B, and pi_tfd on the full-duplex action.
struct SymmetricAccessProfile {
  double pi_thd{};
  double pi_tfd{};

  double pi_w() const { return 1.0 - 2.0 * pi_thd - pi_tfd; }

  MixedStrategy pmf() const { return MixedStrategy::make(pi_w(), pi_thd, pi_thd, pi_tfd); }

  void validate() const {
    constexpr double slack = 4e-12;
    if (!(pi_thd >= -slack) || !(pi_thd <= 0.5 + slack) || !(pi_tfd >= -slack) ||
        !(pi_tfd <= 1.0 + slack) || !(2.0 * pi_thd + pi_tfd <= 1.0 + slack))
      throw InvalidParameter("access profile (" + std::to_string(pi_thd) + ", " +
                             std::to_string(pi_tfd) + ") outside the feasible region");
  }
};

// Expected packets delivered network-wide in a slot where pair 1 plays s1
// and pair 2 plays s2. Sums the per-link success probabilities, so the
// same-letter half-duplex profiles see the cross-diagonal (weaker)
// interferer and the mixed-letter ones the near (stronger) one.
inline double profile_throughput(const DerivedConstants& k, Strategy s1, Strategy s2) {
  auto pair_rate = [&](Strategy own, Strategy opp) {
    double t = 0.0;
    if (is_addressee(Receiver::node_b, own))
      t += success_probability(k, Receiver::node_b, own, opp);
    if (is_addressee(Receiver::node_a, own))
      t += success_probability(k, Receiver::node_a, own, opp);
    return t;
  };
  return pair_rate(s1, s2) + pair_rate(s2, s1);
}

// Aggregate throughput of the symmetric profile, closed form.
inline double aggregate_throughput(const DerivedConstants& k, const SymmetricAccessProfile& p) {
  p.validate();
  const double x = p.pi_thd;
  const double y = p.pi_tfd;
  return 4.0 * k.phi * (x + k.beta * y) *
         (1.0 - x * detail::coef_c(k) - y * detail::coef_d(k));
}

// Aggregate throughput as the expectation of profile_throughput when both
// pairs draw independently from pi. Agrees with aggregate_throughput on
// symmetric profiles; kept as a separate route on purpose.
inline double aggregate_from_profiles(const DerivedConstants& k, const MixedStrategy& pi) {
  pi.validate();
  double total = 0.0;
  for (Strategy s1 : all_strategies)
    for (Strategy s2 : all_strategies)
      total += pi.prob(s1) * pi.prob(s2) * profile_throughput(k, s1, s2);
  return total;
}

enum class BoundaryLabel { r1, r2, r3 };

constexpr std::string_view name_of(BoundaryLabel b) {
  switch (b) {
    case BoundaryLabel::r1: return "R1";
    case BoundaryLabel::r2: return "R2";
    case BoundaryLabel::r3: return "R3";
  }
  return "?";
}

struct ThroughputOptimum {
  SymmetricAccessProfile profile{};
  double t_star{};
  BoundaryLabel boundary{BoundaryLabel::r1};
  bool tie{};  // another segment attains t_star within tolerance
  // Half-duplex cost making the optimum profile a mixed equilibrium; NaN
  // until filled by optimal_mne.
  double enabling_c_hd{std::numeric_limits<double>::quiet_NaN()};
};

// The stationary point of T off the boundary (both factors vanishing);
// lies outside R for every valid parameter set since its coordinates have
// opposite signs. Degenerate (no such point) when beta*C = D.
inline std::optional<std::pair<double, double>> interior_stationary_point(
    const DerivedConstants& k) {
  const double den = detail::coef_d(k) - k.beta * detail::coef_c(k);
  if (std::abs(den) < 1e-12) return std::nullopt;
  return std::make_pair(-k.beta / den, 1.0 / den);
}

namespace detail {

struct SegmentBest {
  SymmetricAccessProfile profile{};
  double value{-1.0};
};

inline SegmentBest best_on_segment(const DerivedConstants& k, BoundaryLabel seg) {
  const double c = coef_c(k);
  const double d = coef_d(k);
  const double e = coef_e(k);
  std::vector<SymmetricAccessProfile> cand;
  switch (seg) {
    case BoundaryLabel::r1: {
      cand.push_back({0.0, 0.0});
      cand.push_back({0.5, 0.0});
      const double xs = 1.0 / (2.0 * c);
      if (xs > 0.0 && xs < 0.5) cand.push_back({xs, 0.0});
      break;
    }
    case BoundaryLabel::r2: {
      cand.push_back({0.0, 0.0});
      cand.push_back({0.0, 1.0});
      const double ys = 1.0 / (2.0 * d);
      if (ys > 0.0 && ys < 1.0) cand.push_back({0.0, ys});
      break;
    }
    case BoundaryLabel::r3: {
      cand.push_back({0.5, 0.0});
      cand.push_back({0.0, 1.0});
      const double den = 2.0 * e * (2.0 * k.beta - 1.0);
      const double ys = ((2.0 * k.beta - 1.0) * (k.iota_c + k.iota_f) - e) / den;
      if (std::isfinite(ys) && ys > 0.0 && ys < 1.0)
        cand.push_back({0.5 * (1.0 - ys), ys});
      break;
    }
  }
  SegmentBest best;
  for (const auto& p : cand) {
    const double t = aggregate_throughput(k, p);
    if (t > best.value) {
      best.value = t;
      best.profile = p;
    }
  }
  return best;
}

}  // namespace detail

// Global maximizer of the aggregate throughput over R. Ties across
// segments (shared vertices, flat ridges) resolve to the lowest segment
// index and set the tie flag.
inline ThroughputOptimum maximize_throughput(const DerivedConstants& k) {
  k.validate();
  constexpr std::array<BoundaryLabel, 3> segments{BoundaryLabel::r1, BoundaryLabel::r2,
                                                  BoundaryLabel::r3};
  std::array<detail::SegmentBest, 3> best{};
  double top = -1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    best[i] = detail::best_on_segment(k, segments[i]);
    top = std::max(top, best[i].value);
  }
  const double tie_tol = 1e-12 * std::max(1.0, top);
  ThroughputOptimum opt;
  int hits = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (best[i].value >= top - tie_tol) {
      if (hits == 0) {
        opt.profile = best[i].profile;
        opt.t_star = best[i].value;
        opt.boundary = segments[i];
      }
      ++hits;
    }
  }
  opt.tie = hits > 1;
  return opt;
}

// Maximizer plus the half-duplex cost whose equilibrium family contains it.
// The cost always lands inside [phi*iota_c*iota_f, phi], so the throughput
// optimum is attainable as a mixed equilibrium for every valid parameter
// set.
inline ThroughputOptimum optimal_mne(const DerivedConstants& k) {
  ThroughputOptimum opt = maximize_throughput(k);
  const double y = opt.profile.pi_tfd;
  const double sum_iota = k.iota_c + k.iota_f;
  switch (opt.boundary) {
    case BoundaryLabel::r1:
      opt.enabling_c_hd = (sum_iota <= 1.0) ? 0.5 * k.phi : 0.5 * k.phi * sum_iota;
      break;
    case BoundaryLabel::r2:
      opt.enabling_c_hd = k.phi * (1.0 - y * detail::coef_d(k));
      break;
    case BoundaryLabel::r3:
      opt.enabling_c_hd = 0.5 * k.phi * (sum_iota - y * detail::coef_e(k));
      break;
  }
  return opt;
}

// Throughput optimum over a grid of interference factors at fixed beta.
// Grid points violating 0 < iota_c < iota_f < 1 are reported but skipped.
struct RegimePoint {
  double iota_c{};
  double iota_f{};
  std::optional<ThroughputOptimum> optimum{};
  std::string note{};
};

inline std::vector<RegimePoint> regime_map(const std::vector<std::pair<double, double>>& grid,
                                           double beta, double phi = 1.0) {
  std::vector<RegimePoint> rows;
  rows.reserve(grid.size());
  for (const auto& [ic, if_] : grid) {
    RegimePoint row{ic, if_, std::nullopt, ""};
    try {
      row.optimum = optimal_mne(DerivedConstants::direct(beta, phi, ic, if_));
    } catch (const InvalidParameter& err) {
      row.note = std::string("skipped: ") + err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fdaloha
