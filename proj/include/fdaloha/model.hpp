#pragma once

// Physical layer of the two-pair full-duplex Aloha model: channel constants
// and conditional packet-success probabilities.
//
// Two transceiver pairs sit on a grid: the nodes of a pair are r apart,
// same-letter nodes of different pairs are d = kappa*r apart, and
// cross-letter nodes are sqrt(d^2 + r^2) apart. Packets decode when the
// SNIR clears a threshold theta under unit-mean Rayleigh block fading,
// which collapses the whole link budget into four constants:
//
//   phi    = exp(-theta * kappa^-alpha / snr_ref)     noise-only success
//   beta   = exp(-theta * eta * r^alpha)              residual self-interference
//   iota_c = 1 / (1 + theta * kappa^-alpha)           same-letter interferer
//   iota_f = 1 / (1 + theta * (1 + kappa^2)^(-alpha/2))  cross-letter interferer
//
// Every valid parameter set satisfies 0 < iota_c < iota_f < 1: the
// same-letter interferer is closer to the victim receiver than the
// cross-letter one, so it hurts more. Success probabilities under any pair
// of strategies factor into beta^[fd] * phi * (product of iota terms).

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "fdaloha/errors.hpp"

namespace fdaloha {

// Pair-level actions: stay silent, half-duplex uplink from the A node,
// half-duplex from the B node, or a full-duplex exchange.
enum class Strategy { wait, tx_a, tx_b, tx_fd };

inline constexpr std::array<Strategy, 4> all_strategies{
    Strategy::wait, Strategy::tx_a, Strategy::tx_b, Strategy::tx_fd};

constexpr std::size_t index_of(Strategy s) { return static_cast<std::size_t>(s); }

constexpr std::string_view name_of(Strategy s) {
  switch (s) {
    case Strategy::wait: return "w";
    case Strategy::tx_a: return "tA";
    case Strategy::tx_b: return "tB";
    case Strategy::tx_fd: return "tfd";
  }
  return "?";
}

// Which node of a pair is receiving.
enum class Receiver { node_a, node_b };

constexpr std::string_view name_of(Receiver r) {
  return r == Receiver::node_a ? "A" : "B";
}

// Link budget given as a reference SNR (snr_ref = P * d^-alpha / N) plus a
// directly specified residual-SI factor. All figure parameter sets use this
// route.
struct SnrRefBudget {
  double snr_ref{};
  double beta{};  // (1/2, 1]
};

// Absolute link budget; beta = exp(-theta * eta * r^alpha) needs the pair
// distance explicitly.
struct AbsoluteBudget {
  double power{};          // P
  double noise{};          // N
  double pair_distance{};  // r
  double eta{};            // SI cancellation coefficient, [0, 1)
};

struct NetworkParams {
  double alpha{};  // path-loss exponent, > 0
  double theta{};  // SNIR decoding threshold, > 0
  double kappa{};  // pair separation in units of r, > 0
  std::variant<SnrRefBudget, AbsoluteBudget> budget{SnrRefBudget{}};

  void validate() const;
};

struct DerivedConstants {
  double beta{};    // (1/2, 1]
  double phi{};     // (0, 1]
  double iota_c{};  // (0, 1), strictly below iota_f
  double iota_f{};  // (0, 1)

  double iota_cf() const { return iota_c * iota_f; }

  void validate() const;

  // For figure-style inputs that specify the constants directly.
  static DerivedConstants direct(double beta, double phi, double iota_c, double iota_f) {
    DerivedConstants k{beta, phi, iota_c, iota_f};
    k.validate();
    return k;
  }
};

inline void DerivedConstants::validate() const {
  if (!(phi > 0.0) || !(phi <= 1.0))
    throw InvalidParameter("phi = " + std::to_string(phi) + " outside (0, 1]");
  if (!(beta > 0.5) || !(beta <= 1.0)) throw InfeasibleBeta(beta);
  if (!(iota_c > 0.0) || !(iota_f < 1.0) || !(iota_c < iota_f))
    throw InvalidParameter("interference factors must satisfy 0 < iota_c < iota_f < 1 (got " +
                           std::to_string(iota_c) + ", " + std::to_string(iota_f) + ")");
}

inline void NetworkParams::validate() const {
  if (!(alpha > 0.0)) throw InvalidParameter("alpha must be > 0");
  if (!(theta > 0.0)) throw InvalidParameter("theta must be > 0");
  if (!(kappa > 0.0)) throw InvalidParameter("kappa must be > 0");
  if (const auto* s = std::get_if<SnrRefBudget>(&budget)) {
    if (!(s->snr_ref > 0.0)) throw InvalidParameter("snr_ref must be > 0");
    if (!(s->beta > 0.5) || !(s->beta <= 1.0)) throw InfeasibleBeta(s->beta);
  } else {
    const auto& a = std::get<AbsoluteBudget>(budget);
    if (!(a.power > 0.0)) throw InvalidParameter("power must be > 0");
    if (!(a.noise > 0.0)) throw InvalidParameter("noise must be > 0");
    if (!(a.pair_distance > 0.0)) throw InvalidParameter("pair_distance must be > 0");
    if (!(a.eta >= 0.0) || !(a.eta < 1.0)) throw InvalidParameter("eta must be in [0, 1)");
  }
}

inline DerivedConstants derive_constants(const NetworkParams& p) {
  p.validate();
  const double g_c = std::pow(p.kappa, -p.alpha);
  const double g_f = std::pow(1.0 + p.kappa * p.kappa, -p.alpha / 2.0);

  DerivedConstants k;
  k.iota_c = 1.0 / (1.0 + p.theta * g_c);
  k.iota_f = 1.0 / (1.0 + p.theta * g_f);

  if (const auto* s = std::get_if<SnrRefBudget>(&p.budget)) {
    k.phi = std::exp(-p.theta * g_c / s->snr_ref);
    k.beta = s->beta;
  } else {
    const auto& a = std::get<AbsoluteBudget>(p.budget);
    const double r_alpha = std::pow(a.pair_distance, p.alpha);
    k.phi = std::exp(-p.theta * a.noise * r_alpha / a.power);
    k.beta = std::exp(-p.theta * a.eta * r_alpha);
    if (!(k.beta > 0.5))
      throw InfeasibleBeta(k.beta);  // cancellation too weak for this budget
  }
  if (!(k.phi > 0.0))
    throw InvalidParameter("noise exponent too large: phi underflows to 0");
  k.validate();
  return k;
}

constexpr bool is_addressee(Receiver rx, Strategy own) {
  switch (own) {
    case Strategy::wait: return false;
    case Strategy::tx_a: return rx == Receiver::node_b;
    case Strategy::tx_b: return rx == Receiver::node_a;
    case Strategy::tx_fd: return true;
  }
  return false;
}

// Probability that the packet headed to `rx` in its own pair decodes, given
// both pairs' strategies. Interference from the opponent enters through one
// iota factor per transmitting opponent node: the node sharing rx's letter
// contributes iota_c, the other one iota_f. Self-interference contributes
// beta exactly when rx's own pair runs full duplex.
inline double success_probability(const DerivedConstants& k, Receiver rx, Strategy own,
                                  Strategy opp) {
  if (!is_addressee(rx, own))
    throw InvalidRole(std::string("receiver ") + std::string(name_of(rx)) +
                      " is not an addressee under own strategy " + std::string(name_of(own)));
  const double duplex = (own == Strategy::tx_fd) ? k.beta : 1.0;
  double interference = 1.0;
  switch (opp) {
    case Strategy::wait: break;
    case Strategy::tx_a: interference = (rx == Receiver::node_a) ? k.iota_c : k.iota_f; break;
    case Strategy::tx_b: interference = (rx == Receiver::node_b) ? k.iota_c : k.iota_f; break;
    case Strategy::tx_fd: interference = k.iota_c * k.iota_f; break;
  }
  return duplex * k.phi * interference;
}

}  // namespace fdaloha
