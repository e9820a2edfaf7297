#pragma once

// Slot-level Monte-Carlo oracle. Independent of every closed form in this
// library: it draws one exponential fade per directed link per slot and
// applies the SNIR threshold test directly, in exponent coordinates where
// all channel constants reduce to
//   noise floor   -ln(phi)
//   interferer    (1/iota - 1) * fade   (iota_c for the same-letter node,
//                                        iota_f for the cross one)
//   self-interference -ln(beta) when the receiver itself transmits.
// A packet to receiver r decodes iff its desired fade exceeds the summed
// load. Taking expectations recovers exactly the factored success
// probabilities, so agreement is a true end-to-end check.
//
// Node indexing: 0 = A1, 1 = B1, 2 = A2, 3 = B2; the letter is the low bit.
// RNG channels: 0 and 1 draw the two pairs' strategies, 2 + 4*tx + rx the
// fade of directed link tx -> rx.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "fdaloha/errors.hpp"
#include "fdaloha/game.hpp"
#include "fdaloha/model.hpp"
#include "fdaloha/rng.hpp"

namespace fdaloha {

// Accumulator over per-slot packet counts; integer sums keep the estimate
// exact and bit-reproducible.
struct SlotCount {
  std::uint64_t n{};
  std::uint64_t sum{};
  std::uint64_t sum_sq{};

  void add(unsigned count) {
    ++n;
    sum += count;
    sum_sq += static_cast<std::uint64_t>(count) * count;
  }

  double mean() const {
    return n ? static_cast<double>(sum) / static_cast<double>(n)
             : std::numeric_limits<double>::quiet_NaN();
  }

  double variance() const {
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = mean();
    const double raw = static_cast<double>(sum_sq) / static_cast<double>(n) - m * m;
    return std::max(raw, 0.0) * static_cast<double>(n) / static_cast<double>(n - 1);
  }

  double std_error() const { return std::sqrt(variance() / static_cast<double>(n)); }
};

// Bernoulli success counter with the binomial standard error.
struct RateCell {
  std::uint64_t successes{};
  std::uint64_t trials{};

  double rate() const {
    return trials ? static_cast<double>(successes) / static_cast<double>(trials)
                  : std::numeric_limits<double>::quiet_NaN();
  }

  double std_error() const {
    if (!trials) return std::numeric_limits<double>::quiet_NaN();
    const double p = rate();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
};

enum class SimMode { joint_draw, fixed_profile };

struct SimConfig {
  DerivedConstants constants{};
  std::optional<NetworkParams> params{};  // kept when the constants were derived
  SimMode mode{SimMode::joint_draw};
  MixedStrategy pi1{MixedStrategy::uniform()};
  MixedStrategy pi2{MixedStrategy::uniform()};
  Strategy s1{Strategy::wait};
  Strategy s2{Strategy::wait};
  std::uint64_t n_slots{1'000'000};
  std::uint64_t seed{1};

  static SimConfig joint(const DerivedConstants& k, const MixedStrategy& pi1,
                         const MixedStrategy& pi2, std::uint64_t n_slots, std::uint64_t seed) {
    SimConfig cfg;
    cfg.constants = k;
    cfg.mode = SimMode::joint_draw;
    cfg.pi1 = pi1;
    cfg.pi2 = pi2;
    cfg.n_slots = n_slots;
    cfg.seed = seed;
    return cfg;
  }

  static SimConfig fixed(const DerivedConstants& k, Strategy s1, Strategy s2,
                         std::uint64_t n_slots, std::uint64_t seed) {
    SimConfig cfg;
    cfg.constants = k;
    cfg.mode = SimMode::fixed_profile;
    cfg.s1 = s1;
    cfg.s2 = s2;
    cfg.n_slots = n_slots;
    cfg.seed = seed;
    return cfg;
  }

  static SimConfig from_params(const NetworkParams& p, std::uint64_t n_slots,
                               std::uint64_t seed) {
    SimConfig cfg;
    cfg.constants = derive_constants(p);
    cfg.params = p;
    cfg.n_slots = n_slots;
    cfg.seed = seed;
    return cfg;
  }
};

struct SimEstimate {
  std::uint64_t n_slots{};
  std::uint64_t seed{};
  SimMode mode{SimMode::joint_draw};
  CostPolicy costs{};  // cost policy the utilities below are charged against

  std::array<SlotCount, 2> pair_throughput{};  // packets per slot, each pair
  SlotCount aggregate{};                       // network-wide packets per slot

  // Pair 1's delivered packets conditioned on its own action.
  std::array<SlotCount, 4> action_delivered{};

  // Conditional success rates, indexed [receiver][own][opp]; both pairs
  // feed the table (their per-slot link outcomes use disjoint fades, so the
  // samples are independent). Non-addressee cells stay empty.
  std::array<std::array<std::array<RateCell, 4>, 4>, 2> success{};

  const RateCell& success_cell(Receiver rx, Strategy own, Strategy opp) const {
    return success[rx == Receiver::node_a ? 0 : 1][index_of(own)][index_of(opp)];
  }

  double action_utility(Strategy s) const {
    return action_delivered[index_of(s)].mean() - costs.cost(s);
  }

  double action_utility(Strategy s, const CostPolicy& policy) const {
    return action_delivered[index_of(s)].mean() - policy.cost(s);
  }

  double action_utility_std_error(Strategy s) const {
    return action_delivered[index_of(s)].std_error();
  }
};

namespace detail {

inline Strategy draw_strategy(const MixedStrategy& pi, double u) {
  double acc = pi.wait;
  if (u < acc) return Strategy::wait;
  acc += pi.tx_a;
  if (u < acc) return Strategy::tx_a;
  acc += pi.tx_b;
  if (u < acc) return Strategy::tx_b;
  return Strategy::tx_fd;
}

constexpr std::uint64_t fade_channel(int tx_node, int rx_node) {
  return 2ull + static_cast<std::uint64_t>(tx_node) * 4ull +
         static_cast<std::uint64_t>(rx_node);
}

}  // namespace detail

inline SimEstimate simulate(const SimConfig& cfg, const CostPolicy& costs) {
  cfg.constants.validate();
  costs.validate();
  if (cfg.mode == SimMode::joint_draw) {
    cfg.pi1.validate();
    cfg.pi2.validate();
  }
  if (cfg.n_slots == 0) throw InvalidParameter("n_slots must be > 0");

  const DerivedConstants& k = cfg.constants;
  const double noise_load = -std::log(k.phi);
  const double si_load = -std::log(k.beta);
  const double coef_same = 1.0 / k.iota_c - 1.0;
  const double coef_cross = 1.0 / k.iota_f - 1.0;

  const CounterRng rng(cfg.seed);

  SimEstimate est;
  est.n_slots = cfg.n_slots;
  est.seed = cfg.seed;
  est.mode = cfg.mode;
  est.costs = costs;

  for (std::uint64_t slot = 0; slot < cfg.n_slots; ++slot) {
    std::array<Strategy, 2> s;
    if (cfg.mode == SimMode::fixed_profile) {
      s = {cfg.s1, cfg.s2};
    } else {
      s = {detail::draw_strategy(cfg.pi1, rng.uniform(slot, 0)),
           detail::draw_strategy(cfg.pi2, rng.uniform(slot, 1))};
    }

    std::array<bool, 4> tx{};
    for (int p = 0; p < 2; ++p) {
      tx[2 * p + 0] = s[p] == Strategy::tx_a || s[p] == Strategy::tx_fd;
      tx[2 * p + 1] = s[p] == Strategy::tx_b || s[p] == Strategy::tx_fd;
    }

    std::array<unsigned, 2> delivered{};
    for (int p = 0; p < 2; ++p) {
      const Strategy own = s[p];
      const Strategy opp = s[1 - p];
      for (int rx_local = 0; rx_local < 2; ++rx_local) {
        const int rx_node = 2 * p + rx_local;
        const int tx_node = 2 * p + (1 - rx_local);
        if (!tx[tx_node]) continue;  // nobody is sending towards rx_node

        double load = noise_load;
        for (int j = 2 * (1 - p); j < 2 * (1 - p) + 2; ++j) {
          if (!tx[j]) continue;
          const double coef = ((j & 1) == (rx_node & 1)) ? coef_same : coef_cross;
          load += coef * rng.exponential(slot, detail::fade_channel(j, rx_node));
        }
        if (tx[rx_node]) load += si_load;

        const bool ok = rng.exponential(slot, detail::fade_channel(tx_node, rx_node)) > load;
        auto& cell =
            est.success[rx_node & 1][static_cast<std::size_t>(index_of(own))][index_of(opp)];
        ++cell.trials;
        cell.successes += ok ? 1u : 0u;
        delivered[p] += ok ? 1u : 0u;
      }
    }

    est.pair_throughput[0].add(delivered[0]);
    est.pair_throughput[1].add(delivered[1]);
    est.aggregate.add(delivered[0] + delivered[1]);
    est.action_delivered[index_of(s[0])].add(delivered[0]);
  }
  return est;
}

// Cost-free run; utilities read from it equal raw delivery rates.
inline SimEstimate simulate(const SimConfig& cfg) { return simulate(cfg, CostPolicy{}); }

// Conditional success rate of one table cell from a fixed-profile run.
inline RateCell estimate_success_probability(const DerivedConstants& k, Receiver rx,
                                             Strategy own, Strategy opp, std::uint64_t n_slots,
                                             std::uint64_t seed) {
  if (!is_addressee(rx, own))
    throw InvalidRole(std::string("receiver ") + std::string(name_of(rx)) +
                      " is not an addressee under own strategy " + std::string(name_of(own)));
  const SimEstimate est = simulate(SimConfig::fixed(k, own, opp, n_slots, seed));
  return est.success_cell(rx, own, opp);
}

}  // namespace fdaloha
