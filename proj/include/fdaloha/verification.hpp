#pragma once

// Self-check battery wiring the closed forms against their independent
// oracles at one scenario's parameter set: linear-algebra structure of the
// indifference conditions, the two aggregate-throughput routes, the
// optimizer against a brute grid, and the slot-level Monte-Carlo oracle
// against every closed-form success probability. Used by the CLI verify
// command.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "fdaloha/game.hpp"
#include "fdaloha/linsys.hpp"
#include "fdaloha/model.hpp"
#include "fdaloha/montecarlo.hpp"
#include "fdaloha/poa.hpp"
#include "fdaloha/rng.hpp"
#include "fdaloha/scenario.hpp"
#include "fdaloha/throughput.hpp"

namespace fdaloha {

struct CheckResult {
  std::string name;
  bool passed{};
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed{20240801};
  std::uint64_t mc_slots{1'000'000};
  int eq_samples{200};        // (c_hd, pi_tfd) pairs for the residual sweep
  int profile_samples{2000};  // random symmetric profiles for the identity check
  double grid_step{1e-3};     // brute-force optimizer grid
};

namespace detail {

inline std::string fmt_sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Exhaustive grid max of the aggregate throughput; candidates are laid out
// on an integer lattice so the boundary 2x + y = 1 is hit exactly.
inline double grid_search_max(const DerivedConstants& k, double step) {
  const auto nx = static_cast<long>(std::lround(0.5 / step));
  double best = 0.0;
  for (long i = 0; i <= nx; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(2 * nx);
    const auto ny = 2 * (nx - i);
    for (long j = 0; j <= ny; ++j) {
      const double y = static_cast<double>(j) / static_cast<double>(2 * nx);
      best = std::max(best, aggregate_throughput(k, SymmetricAccessProfile{x, y}));
    }
  }
  return best;
}

}  // namespace detail

inline std::vector<CheckResult> run_verification(const Scenario& scenario,
                                                 const VerifyOptions& opt = {}) {
  std::vector<CheckResult> results;
  const DerivedConstants k = scenario.constants();
  const CounterRng rng(opt.seed);
  std::uint64_t draw = 0;
  auto next_uniform = [&]() { return rng.uniform(draw++, 1u << 20); };

  // Channel constants land in their documented ranges.
  {
    bool ok = true;
    std::string detail;
    try {
      k.validate();
      if (!(detail::coef_e(k) > 0.0)) {
        ok = false;
        detail = "iota_c + iota_f - 2*iota_c*iota_f must be positive";
      }
    } catch (const ModelError& err) {
      ok = false;
      detail = err.what();
    }
    results.push_back({"constants-invariants", ok, detail});
  }

  // Equilibrium members: all four utilities vanish across the cost band.
  {
    double worst_utility = 0.0;
    double worst_pmf = 0.0;
    const double lo = min_equilibrium_cost(k);
    const double hi = max_equilibrium_cost(k);
    for (int i = 0; i < opt.eq_samples; ++i) {
      const double c_hd = lo + (hi - lo) * next_uniform();
      const EquilibriumFamily fam = mne_family(k, c_hd);
      const double y = fam.pi_tfd_min + (fam.pi_tfd_max - fam.pi_tfd_min) * next_uniform();
      const MixedStrategy pi = fam.member(y);
      const EquilibriumCheck check = verify_mne(k, pi, CostPolicy{c_hd, fam.c_fd});
      worst_utility = std::max(worst_utility, check.max_abs_utility());
      worst_pmf =
          std::max(worst_pmf, std::abs(pi.wait + pi.tx_a + pi.tx_b + pi.tx_fd - 1.0));
    }
    // Member components are computed through divisions by C, so the pmf
    // sum is only accurate to ~eps / C.
    const double pmf_tol = 1e-12 + 1e-13 / detail::coef_c(k);
    const bool ok = worst_utility <= 1e-9 && worst_pmf <= pmf_tol;
    results.push_back({"indifference-residuals", ok,
                       "max |utility| = " + detail::fmt_sci(worst_utility) +
                           ", max |pmf sum - 1| = " + detail::fmt_sci(worst_pmf)});
  }

  // Family endpoints pin the expected boundary components to zero.
  {
    double worst = 0.0;
    const double lo = min_equilibrium_cost(k);
    const double hi = max_equilibrium_cost(k);
    for (int i = 0; i < 32; ++i) {
      const double c_hd = lo + (hi - lo) * next_uniform();
      const EquilibriumFamily fam = mne_family(k, c_hd);
      if (fam.pi_tfd_min > 0.0)
        worst = std::max(worst, std::abs(fam.member(fam.pi_tfd_min).wait));
      worst = std::max(worst, std::abs(fam.member(fam.pi_tfd_max).tx_a));
    }
    results.push_back({"family-boundary-structure", worst <= 1e-12,
                       "max boundary component = " + detail::fmt_sci(worst)});
  }

  // Indifference system: rank 3, consistent exactly under proportional costs.
  {
    bool ok = true;
    std::string detail;
    const double lo = min_equilibrium_cost(k);
    const double hi = max_equilibrium_cost(k);
    for (double t : {0.0, 0.5, 1.0}) {
      const double c_hd = lo + (hi - lo) * t;
      const CostPolicy prop{c_hd, 2.0 * k.beta * c_hd};
      const CostPolicy skew{c_hd, 2.0 * k.beta * c_hd * 1.01 + 1e-3};
      const auto [a, b_prop] = indifference_system(k, prop);
      const auto b_skew = indifference_system(k, skew).second;
      std::array<std::array<double, 5>, 4> aug_prop{};
      std::array<std::array<double, 5>, 4> aug_skew{};
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) aug_prop[r][c] = aug_skew[r][c] = a[r][c];
        aug_prop[r][4] = b_prop[r];
        aug_skew[r][4] = b_skew[r];
      }
      if (numeric_rank(a) != 3) {
        ok = false;
        detail = "rank(A) != 3 at c_hd = " + std::to_string(c_hd);
        break;
      }
      if (numeric_rank(aug_prop) != 3) {
        ok = false;
        detail = "proportional costs should be consistent at c_hd = " + std::to_string(c_hd);
        break;
      }
      if (numeric_rank(aug_skew) != 4) {
        ok = false;
        detail = "skewed costs should be inconsistent at c_hd = " + std::to_string(c_hd);
        break;
      }
    }
    if (ok && scenario.costs && !costs_proportional(k, *scenario.costs, 1e-9))
      detail = "note: scenario costs have c_fd != 2*beta*c_hd, no symmetric mixed equilibrium";
    results.push_back({"rank-structure", ok, detail});
  }

  // Aggregate throughput: closed form vs expectation over the 16 profiles.
  {
    double worst = 0.0;
    for (int i = 0; i < opt.profile_samples; ++i) {
      const double y = next_uniform();
      const double x = 0.5 * (1.0 - y) * next_uniform();
      const SymmetricAccessProfile p{x, y};
      worst = std::max(worst,
                       std::abs(aggregate_throughput(k, p) - aggregate_from_profiles(k, p.pmf())));
    }
    results.push_back({"throughput-identity", worst <= 1e-12,
                       "max |closed - profile expectation| = " + detail::fmt_sci(worst)});
  }

  // Optimizer against the brute grid; stationary point stays outside.
  {
    const ThroughputOptimum opt_pt = maximize_throughput(k);
    const double grid = detail::grid_search_max(k, opt.grid_step);
    const double diff = std::abs(opt_pt.t_star - grid);
    bool ok = diff <= 1e-5 * k.phi && opt_pt.t_star >= grid - 1e-12;
    std::string detail = "|t_star - grid| = " + detail::fmt_sci(diff);
    if (const auto sp = interior_stationary_point(k)) {
      if (sp->first > 0.0 && sp->second > 0.0) {
        ok = false;
        detail += "; interior stationary point inside the region";
      }
    }
    results.push_back({"optimizer-grid", ok, detail});
  }

  // The throughput optimum is supported by a feasible cost.
  {
    const ThroughputOptimum best = optimal_mne(k);
    const CostPolicy costs{best.enabling_c_hd, 2.0 * k.beta * best.enabling_c_hd};
    const EquilibriumCheck check = verify_mne(k, best.profile.pmf(), costs);
    const bool in_band = best.enabling_c_hd >= min_equilibrium_cost(k) - 1e-12 * k.phi &&
                         best.enabling_c_hd <= max_equilibrium_cost(k) + 1e-12 * k.phi;
    const bool ok = in_band && check.certified(1e-9) &&
                    std::abs(aggregate_throughput(k, best.profile) - best.t_star) <= 1e-12;
    results.push_back({"optimum-equilibrium", ok,
                       "residual = " + detail::fmt_sci(check.max_abs_utility()) +
                           (in_band ? "" : ", enabling cost out of band")});
  }

  // Cost design round trip: every c_hd in the interval reproduces the target.
  {
    bool ok = true;
    double worst = 0.0;
    // Recovering the target tx_fd goes through the recomputed band bounds,
    // which are only as accurate as their 1/D and 1/E factors allow.
    const double y_tol =
        1e-12 + 1e-13 * (1.0 / detail::coef_d(k) + 1.0 / detail::coef_e(k));
    for (double y : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const CostInterval band = design_costs(k, y);
      const double width = band.c_hd_max - band.c_hd_min;
      const double expected = 0.5 * (1.0 - y) * k.phi * detail::coef_c(k);
      worst = std::max(worst, std::abs(width - expected));
      for (double t : {0.0, 0.5, 1.0}) {
        const double c_hd = band.c_hd_min + width * t;
        const MixedStrategy pi = mne_strategy(k, c_hd, y);
        if (std::abs(pi.tx_fd - y) > y_tol) ok = false;
        const EquilibriumCheck check = verify_mne(k, pi, CostPolicy{c_hd, 2.0 * k.beta * c_hd});
        worst = std::max(worst, check.max_abs_utility());
      }
    }
    results.push_back({"design-roundtrip", ok && worst <= 1e-9,
                       "max residual = " + detail::fmt_sci(worst)});
  }

  // Price-of-anarchy sanity: ratio >= 1, divergence at pi_tfd = 0, pinned
  // degenerate value at pi_tfd = 1.
  {
    bool ok = true;
    std::string detail;
    const double t_star = maximize_throughput(k).t_star;
    for (int i = 0; i <= 10; ++i) {
      const double y = static_cast<double>(i) / 10.0;
      const PoaPoint p = price_of_anarchy(k, y);
      if (p.t_min < 0.0 || p.t_min > t_star + 1e-12 ||
          (!p.diverges() && p.poa < 1.0 - 1e-9)) {
        ok = false;
        detail = "inconsistent point at pi_tfd = " + std::to_string(y);
        break;
      }
    }
    if (ok && !(price_of_anarchy(k, 0.0).diverges())) {
      ok = false;
      detail = "all-wait equilibrium at pi_tfd = 0 should yield t_min = 0";
    }
    if (ok) {
      const double fd_only = 4.0 * k.beta * k.phi * k.iota_cf();
      const double t1 = price_of_anarchy(k, 1.0).t_min;
      if (std::abs(t1 - fd_only) > 1e-12) {
        ok = false;
        detail = "t_min(1) = " + detail::fmt_sci(t1) + " != 4*beta*phi*iota_c*iota_f";
      }
    }
    results.push_back({"poa-sanity", ok, detail});
  }

  // Monte-Carlo oracle: every fixed profile's aggregate and every populated
  // conditional success cell within 3 standard errors of the closed form.
  {
    double worst_z = 0.0;
    std::string where;
    int run = 0;
    for (Strategy s1 : all_strategies) {
      for (Strategy s2 : all_strategies) {
        const SimEstimate est =
            simulate(SimConfig::fixed(k, s1, s2, opt.mc_slots, opt.seed + 1000 + run));
        ++run;
        const double closed = profile_throughput(k, s1, s2);
        const double se = est.aggregate.std_error();
        const double z = std::abs(est.aggregate.mean() - closed) / (se > 0.0 ? se : 1.0);
        if (z > worst_z) {
          worst_z = z;
          where = std::string(name_of(s1)) + "," + std::string(name_of(s2)) + " aggregate";
        }
        for (Receiver rx : {Receiver::node_a, Receiver::node_b}) {
          for (Strategy own : {s1, s2}) {
            const Strategy opp = (own == s1) ? s2 : s1;
            if (!is_addressee(rx, own)) continue;
            const RateCell& cell = est.success_cell(rx, own, opp);
            if (!cell.trials) continue;
            const double p_closed = success_probability(k, rx, own, opp);
            const double cell_se = cell.std_error();
            const double cz = std::abs(cell.rate() - p_closed) / (cell_se > 0.0 ? cell_se : 1.0);
            if (cz > worst_z) {
              worst_z = cz;
              where = std::string(name_of(rx)) + "|" + std::string(name_of(own)) + "," +
                      std::string(name_of(opp));
            }
          }
        }
      }
    }
    results.push_back({"monte-carlo-profiles", worst_z <= 3.0,
                       "worst z = " + detail::fmt_sci(worst_z) + " at " + where});
  }

  // Monte-Carlo oracle under mixed play at an equilibrium member: per-action
  // utilities vanish and the aggregate matches the closed form.
  {
    const double c_hd = 0.5 * (min_equilibrium_cost(k) + max_equilibrium_cost(k));
    const EquilibriumFamily fam = mne_family(k, c_hd);
    const double y = 0.5 * (fam.pi_tfd_min + fam.pi_tfd_max);
    const MixedStrategy pi = fam.member(y);
    const CostPolicy costs{c_hd, fam.c_fd};
    const SimEstimate est =
        simulate(SimConfig::joint(k, pi, pi, opt.mc_slots, opt.seed + 2000));
    double worst_z = 0.0;
    std::string where;
    for (Strategy s : all_strategies) {
      const SlotCount& acc = est.action_delivered[index_of(s)];
      if (acc.n < 100) continue;
      const double closed = utility(k, pi, s, costs);
      const double se = est.action_utility_std_error(s);
      const double z = std::abs(est.action_utility(s, costs) - closed) / (se > 0.0 ? se : 1.0);
      if (z > worst_z) {
        worst_z = z;
        where = std::string("utility ") + std::string(name_of(s));
      }
    }
    const double agg_closed = aggregate_throughput(k, SymmetricAccessProfile{pi.tx_a, pi.tx_fd});
    const double agg_se = est.aggregate.std_error();
    const double agg_z = std::abs(est.aggregate.mean() - agg_closed) / (agg_se > 0.0 ? agg_se : 1.0);
    if (agg_z > worst_z) {
      worst_z = agg_z;
      where = "aggregate";
    }
    results.push_back({"monte-carlo-equilibrium", worst_z <= 3.0,
                       "worst z = " + detail::fmt_sci(worst_z) + " at " + where});
  }

  return results;
}

}  // namespace fdaloha
