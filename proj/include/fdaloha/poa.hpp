#pragma once

// Price of anarchy of the equilibrium family at a pinned full-duplex
// weight: worst-case aggregate throughput across the feasible half-duplex
// costs, against the network optimum.
//
// For fixed pi_tfd = y, sweeping c_hd over design_costs moves the
// equilibrium's half-duplex weight x affinely (x decreases as c_hd grows),
// and T is a concave quadratic along that line, so the minimum sits at an
// interval endpoint. The c_hd = phi endpoint of the y = 0 family is the
// all-wait equilibrium with T = 0: the ratio diverges there.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fdaloha/game.hpp"
#include "fdaloha/model.hpp"
#include "fdaloha/throughput.hpp"

namespace fdaloha {

struct PoaPoint {
  double pi_tfd{};
  double t_min{};
  double t_star{};
  double poa{};  // +inf when t_min = 0

  bool diverges() const { return !(t_min > 0.0); }
};

// Minimum aggregate equilibrium throughput over all feasible c_hd at the
// given full-duplex weight. Candidates: both cost-interval endpoints plus
// the stationary point of the quadratic if it falls inside.
inline double min_mne_throughput(const DerivedConstants& k, double pi_tfd) {
  const CostInterval band = design_costs(k, pi_tfd);
  const double y = pi_tfd;

  auto throughput_at = [&](double c_hd) {
    const MixedStrategy pi = mne_strategy(k, c_hd, y);
    // tx_a lies in [0, (1 - y)/2] analytically, but its rounding error
    // scales with 1/C and can poke past the region guard when the
    // constants are nearly degenerate. Project back before evaluating.
    const double x = std::clamp(pi.tx_a, 0.0, 0.5 * (1.0 - y));
    return aggregate_throughput(k, SymmetricAccessProfile{x, y});
  };

  double t_min = std::min(throughput_at(band.c_hd_min), throughput_at(band.c_hd_max));
  const double c = detail::coef_c(k);
  const double d = detail::coef_d(k);
  const double x_s = (1.0 - d * y - c * k.beta * y) / (2.0 * c);
  const double c_s = k.phi * (1.0 - c * x_s - d * y);
  if (c_s > band.c_hd_min && c_s < band.c_hd_max) t_min = std::min(t_min, throughput_at(c_s));
  return std::max(t_min, 0.0);
}

inline PoaPoint price_of_anarchy(const DerivedConstants& k, double pi_tfd) {
  PoaPoint point;
  point.pi_tfd = pi_tfd;
  point.t_star = maximize_throughput(k).t_star;
  point.t_min = min_mne_throughput(k, pi_tfd);
  point.poa = point.diverges() ? std::numeric_limits<double>::infinity()
                               : point.t_star / point.t_min;
  return point;
}

inline std::vector<PoaPoint> poa_sweep(const DerivedConstants& k, double start, double stop,
                                       double step) {
  if (!(step > 0.0)) throw InvalidParameter("sweep step must be > 0");
  if (!(start >= 0.0) || !(stop <= 1.0) || !(start <= stop))
    throw InvalidParameter("sweep range must satisfy 0 <= start <= stop <= 1");
  const double t_star = maximize_throughput(k).t_star;
  std::vector<PoaPoint> points;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = std::min(start + static_cast<double>(i) * step, stop);
    PoaPoint point;
    point.pi_tfd = y;
    point.t_star = t_star;
    point.t_min = min_mne_throughput(k, y);
    point.poa = point.diverges() ? std::numeric_limits<double>::infinity()
                                 : point.t_star / point.t_min;
    points.push_back(point);
  }
  return points;
}

}  // namespace fdaloha
