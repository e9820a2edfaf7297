#pragma once

// Strategic layer: per-action throughput and utility, dominance screening,
// the symmetric mixed-equilibrium family, and cost design.
//
// The game is symmetric over actions {w, t_A, t_B, t_fd} with
//   U(s) = tau(s | opponent pmf) - c(s),
//   c(w) = 0, c(t_A) = c(t_B) = c_hd, c(t_fd) = c_fd.
// Because U(w) = 0 identically, a fully mixed symmetric equilibrium nets
// zero utility on every action. The full-duplex throughput is beta times
// the sum of the two half-duplex throughputs against any opponent pmf, so
// indifference is consistent only when c_fd = 2*beta*c_hd; one degree of
// freedom then survives and the equilibria form a segment parametrized by
// the full-duplex weight pi_tfd.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "fdaloha/errors.hpp"
#include "fdaloha/linsys.hpp"
#include "fdaloha/model.hpp"

namespace fdaloha {

struct MixedStrategy {
  double wait{1.0};
  double tx_a{};
  double tx_b{};
  double tx_fd{};

  double prob(Strategy s) const {
    switch (s) {
      case Strategy::wait: return wait;
      case Strategy::tx_a: return tx_a;
      case Strategy::tx_b: return tx_b;
      case Strategy::tx_fd: return tx_fd;
    }
    return 0.0;
  }

  void validate() const {
    for (Strategy s : all_strategies) {
      const double p = prob(s);
      if (!(p >= 0.0) || !(p <= 1.0))
        throw InvalidParameter("pmf component " + std::string(name_of(s)) + " = " +
                               std::to_string(p) + " outside [0, 1]");
    }
    const double sum = wait + tx_a + tx_b + tx_fd;
    if (std::abs(sum - 1.0) > 1e-9)
      throw InvalidParameter("pmf sums to " + std::to_string(sum) + ", expected 1");
  }

  // Clamps components within 1e-12 of the simplex onto it, then validates.
  static MixedStrategy make(double w, double a, double b, double fd) {
    auto snap = [](double v) {
      if (std::abs(v) <= 1e-12) return 0.0;
      if (std::abs(v - 1.0) <= 1e-12) return 1.0;
      return v;
    };
    MixedStrategy pi{snap(w), snap(a), snap(b), snap(fd)};
    pi.validate();
    return pi;
  }

  static MixedStrategy pure(Strategy s) {
    MixedStrategy pi{0.0, 0.0, 0.0, 0.0};
    switch (s) {
      case Strategy::wait: pi.wait = 1.0; break;
      case Strategy::tx_a: pi.tx_a = 1.0; break;
      case Strategy::tx_b: pi.tx_b = 1.0; break;
      case Strategy::tx_fd: pi.tx_fd = 1.0; break;
    }
    return pi;
  }

  static MixedStrategy uniform() { return {0.25, 0.25, 0.25, 0.25}; }
};

struct CostPolicy {
  double c_hd{};
  double c_fd{};

  double cost(Strategy s) const {
    switch (s) {
      case Strategy::wait: return 0.0;
      case Strategy::tx_a:
      case Strategy::tx_b: return c_hd;
      case Strategy::tx_fd: return c_fd;
    }
    return 0.0;
  }

  void validate() const {
    if (!(c_hd >= 0.0) || !(c_fd >= 0.0)) throw InvalidParameter("costs must be >= 0");
  }
};

// Expected packets per slot delivered by a pair playing s against an
// opponent drawing from pi.
inline double action_throughput(const DerivedConstants& k, const MixedStrategy& pi, Strategy s) {
  const double icf = k.iota_cf();
  switch (s) {
    case Strategy::wait:
      return 0.0;
    case Strategy::tx_a:
      return k.phi * (pi.wait + k.iota_f * pi.tx_a + k.iota_c * pi.tx_b + icf * pi.tx_fd);
    case Strategy::tx_b:
      return k.phi * (pi.wait + k.iota_c * pi.tx_a + k.iota_f * pi.tx_b + icf * pi.tx_fd);
    case Strategy::tx_fd:
      return k.beta * k.phi *
             (2.0 * pi.wait + (k.iota_c + k.iota_f) * (pi.tx_a + pi.tx_b) + 2.0 * icf * pi.tx_fd);
  }
  return 0.0;
}

inline double utility(const DerivedConstants& k, const MixedStrategy& pi, Strategy s,
                      const CostPolicy& costs) {
  return action_throughput(k, pi, s) - costs.cost(s);
}

// Strict pairwise dominance, screened at the four pure opponent strategies.
// Utilities are affine in the opponent pmf, so strict inequality at every
// vertex is equivalent to strict dominance over the whole simplex.
struct DominanceReport {
  std::array<std::optional<Strategy>, 4> dominated_by{};

  bool any() const {
    for (const auto& d : dominated_by)
      if (d) return true;
    return false;
  }
};

inline DominanceReport dominance_report(const DerivedConstants& k, const CostPolicy& costs) {
  costs.validate();
  DominanceReport report;
  for (Strategy s : all_strategies) {
    for (Strategy by : all_strategies) {
      if (by == s) continue;
      bool strict = true;
      for (Strategy opp : all_strategies) {
        const MixedStrategy vertex = MixedStrategy::pure(opp);
        if (!(utility(k, vertex, by, costs) > utility(k, vertex, s, costs))) {
          strict = false;
          break;
        }
      }
      if (strict) {
        report.dominated_by[index_of(s)] = by;
        break;
      }
    }
  }
  return report;
}

// Cost band inside which a fully mixed symmetric equilibrium exists.
inline double min_equilibrium_cost(const DerivedConstants& k) { return k.phi * k.iota_cf(); }
inline double max_equilibrium_cost(const DerivedConstants& k) { return k.phi; }

namespace detail {
// Shorthands used throughout the equilibrium algebra; all three are
// strictly positive for valid constants.
inline double coef_c(const DerivedConstants& k) { return 2.0 - k.iota_c - k.iota_f; }
inline double coef_d(const DerivedConstants& k) { return 1.0 - k.iota_cf(); }
inline double coef_e(const DerivedConstants& k) {
  return k.iota_c + k.iota_f - 2.0 * k.iota_cf();
}
}  // namespace detail

// One-parameter family of symmetric mixed equilibria at a feasible c_hd
// (c_fd = 2*beta*c_hd implied). Members are indexed by the full-duplex
// weight; the two half-duplex weights are always equal.
struct EquilibriumFamily {
  DerivedConstants constants{};
  double c_hd{};
  double c_fd{};
  double pi_tfd_min{};
  double pi_tfd_max{};

  // Accuracy of the computed band endpoints: the bounds divide by D and E,
  // so their rounding error scales with the reciprocals.
  double band_tolerance() const {
    return 1e-12 +
           1e-13 * (1.0 / detail::coef_d(constants) + 1.0 / detail::coef_e(constants));
  }

  MixedStrategy member(double pi_tfd) const {
    const double tol = band_tolerance();
    if (pi_tfd < pi_tfd_min - tol || pi_tfd > pi_tfd_max + tol)
      throw OutOfBand("pi_tfd = " + std::to_string(pi_tfd) + " outside [" +
                      std::to_string(pi_tfd_min) + ", " + std::to_string(pi_tfd_max) + "]");
    const double y = std::clamp(pi_tfd, pi_tfd_min, pi_tfd_max);
    const DerivedConstants& k = constants;
    const double c = detail::coef_c(k);
    double w =
        y * detail::coef_e(k) / c + (2.0 * c_hd - k.phi * (k.iota_c + k.iota_f)) / (k.phi * c);
    double hd = -y * detail::coef_d(k) / c + (k.phi - c_hd) / (k.phi * c);
    // Both formulas divide by C = 2 - iota_c - iota_f, so rounding error on
    // the components scales like eps / C. Near-degenerate constants (C -> 0)
    // can push an in-band member past the simplex by more than the global
    // 1e-12 snap; pull such overshoots back onto the boundary. Values beyond
    // the conditioning-scaled guard still fail validation.
    const double guard = 1e-13 * (1.0 + 1.0 / c);
    auto pull = [guard](double v) {
      if (v < 0.0 && v >= -guard) return 0.0;
      if (v > 1.0 && v <= 1.0 + guard) return 1.0;
      return v;
    };
    w = pull(w);
    hd = pull(hd);
    return MixedStrategy::make(w, hd, hd, y);
  }
};

inline EquilibriumFamily mne_family(const DerivedConstants& k, double c_hd) {
  const double lo = min_equilibrium_cost(k);
  const double hi = max_equilibrium_cost(k);
  const double slack = 1e-12 * k.phi;
  if (!(c_hd >= lo - slack) || !(c_hd <= hi + slack))
    throw NoEquilibrium("c_hd = " + std::to_string(c_hd) + " outside [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "]: some action is strictly dominated");
  EquilibriumFamily fam;
  fam.constants = k;
  fam.c_hd = c_hd;
  fam.c_fd = 2.0 * k.beta * c_hd;
  const double raw_lo = (k.phi * (k.iota_c + k.iota_f) - 2.0 * c_hd) / (k.phi * detail::coef_e(k));
  const double raw_hi = (k.phi - c_hd) / (k.phi * detail::coef_d(k));
  // Bounds within 1e-12 of the simplex corners snap onto them, mirroring the
  // pmf snapping policy, so the band pinches exactly at the cost edges.
  auto snap = [](double v) {
    if (std::abs(v) <= 1e-12) return 0.0;
    if (std::abs(v - 1.0) <= 1e-12) return 1.0;
    return v;
  };
  fam.pi_tfd_min = snap(std::clamp(raw_lo, 0.0, 1.0));
  fam.pi_tfd_max = snap(std::clamp(raw_hi, 0.0, 1.0));
  fam.pi_tfd_min = std::min(fam.pi_tfd_min, fam.pi_tfd_max);
  return fam;
}

inline std::optional<EquilibriumFamily> try_mne_family(const DerivedConstants& k, double c_hd) {
  const double slack = 1e-12 * k.phi;
  if (!(c_hd >= min_equilibrium_cost(k) - slack) || !(c_hd <= max_equilibrium_cost(k) + slack))
    return std::nullopt;
  return mne_family(k, c_hd);
}

inline MixedStrategy mne_strategy(const DerivedConstants& k, double c_hd, double pi_tfd) {
  return mne_family(k, c_hd).member(pi_tfd);
}

// Symmetric-equilibrium certificate: utilities of all four actions against
// the candidate pmf itself, plus the cost-proportionality predicate.
struct EquilibriumCheck {
  std::array<double, 4> utilities{};
  bool costs_proportional{};

  double max_abs_utility() const {
    double m = 0.0;
    for (double u : utilities) m = std::max(m, std::abs(u));
    return m;
  }

  bool certified(double tol = 1e-9) const {
    return costs_proportional && max_abs_utility() <= tol;
  }
};

inline bool costs_proportional(const DerivedConstants& k, const CostPolicy& costs,
                               double rel_tol = 1e-12) {
  const double want = 2.0 * k.beta * costs.c_hd;
  const double scale = std::max({std::abs(costs.c_fd), std::abs(want), 1e-300});
  return std::abs(costs.c_fd - want) <= rel_tol * scale;
}

inline EquilibriumCheck verify_mne(const DerivedConstants& k, const MixedStrategy& pi,
                                   const CostPolicy& costs) {
  pi.validate();
  costs.validate();
  EquilibriumCheck check;
  for (Strategy s : all_strategies) check.utilities[index_of(s)] = utility(k, pi, s, costs);
  check.costs_proportional = costs_proportional(k, costs);
  return check;
}

inline bool equilibrium_feasible(const DerivedConstants& k, const CostPolicy& costs,
                                 double rel_tol = 1e-12) {
  const double slack = rel_tol * k.phi;
  return costs.c_hd >= min_equilibrium_cost(k) - slack &&
         costs.c_hd <= max_equilibrium_cost(k) + slack && costs_proportional(k, costs, rel_tol);
}

// Closed interval of c_hd values whose equilibrium family contains the
// target full-duplex weight; degenerates to a point at target = 1.
struct CostInterval {
  double c_hd_min{};
  double c_hd_max{};
  double c_fd_min{};
  double c_fd_max{};

  bool degenerate(double tol = 0.0) const { return c_hd_max - c_hd_min <= tol; }
};

inline CostInterval design_costs(const DerivedConstants& k, double target_pi_tfd) {
  if (!(target_pi_tfd >= 0.0) || !(target_pi_tfd <= 1.0))
    throw InvalidParameter("target pi_tfd must lie in [0, 1]");
  const double y = target_pi_tfd;
  CostInterval band;
  band.c_hd_min = std::max(min_equilibrium_cost(k),
                           0.5 * k.phi * ((k.iota_c + k.iota_f) - y * detail::coef_e(k)));
  band.c_hd_max = std::min(max_equilibrium_cost(k), k.phi * (1.0 - y * detail::coef_d(k)));
  band.c_hd_max = std::max(band.c_hd_max, band.c_hd_min);
  band.c_fd_min = 2.0 * k.beta * band.c_hd_min;
  band.c_fd_max = 2.0 * k.beta * band.c_hd_max;
  return band;
}

// Indifference conditions as a linear system A pi = b over the opponent pmf
// (column order w, t_A, t_B, t_fd): rows demand U(t_A) = U(t_B) = 0,
// U(t_fd) = 0, and total probability 1. The third row equals beta times the
// sum of the first two, so rank(A) = 3 and the system is consistent exactly
// when c_fd = 2*beta*c_hd.
inline std::pair<Mat4, Vec4> indifference_system(const DerivedConstants& k,
                                                 const CostPolicy& costs) {
  const double icf = k.iota_cf();
  Mat4 a{{
      {k.phi, k.phi * k.iota_f, k.phi * k.iota_c, k.phi * icf},
      {k.phi, k.phi * k.iota_c, k.phi * k.iota_f, k.phi * icf},
      {2.0 * k.beta * k.phi, k.beta * k.phi * (k.iota_c + k.iota_f),
       k.beta * k.phi * (k.iota_c + k.iota_f), 2.0 * k.beta * k.phi * icf},
      {1.0, 1.0, 1.0, 1.0},
  }};
  Vec4 b{costs.c_hd, costs.c_hd, costs.c_fd, 1.0};
  return {a, b};
}

}  // namespace fdaloha
