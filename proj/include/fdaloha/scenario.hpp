#pragma once

// Scenario files: JSON documents pinning a parameter set, optional costs,
// and an optional sweep range. Exactly one of
//   "params"    physical parameters (alpha, theta, kappa plus either
//               snr_ref+beta or power+noise+pair_distance+eta)
//   "constants" direct channel constants (phi, beta, iota_c, iota_f)
// must be present. Costs may omit c_fd, which then defaults to the
// proportional value 2*beta*c_hd. Unknown keys are rejected.

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fdaloha/errors.hpp"
#include "fdaloha/game.hpp"
#include "fdaloha/model.hpp"

namespace fdaloha {

using nlohmann::json;

struct SweepRange {
  double start{};
  double stop{};
  double step{};

  void validate() const {
    if (!(step > 0.0)) throw ScenarioError("scenario: sweep.step must be > 0");
    if (!(start <= stop)) throw ScenarioError("scenario: sweep.start must be <= sweep.stop");
  }

  std::vector<double> values() const {
    validate();
    std::vector<double> v;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(start + static_cast<double>(i) * step);
    return v;
  }
};

namespace detail {

inline double require_number(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key))
    throw ScenarioError("scenario: missing required key " + where + "." + key);
  if (!j.at(key).is_number())
    throw ScenarioError("scenario: " + where + "." + key + " must be a number");
  return j.at(key).get<double>();
}

inline void reject_unknown(const json& j, const std::string& where,
                           std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ScenarioError("scenario: unknown key " + where + "." + key);
  }
}

}  // namespace detail

struct Scenario {
  std::optional<NetworkParams> params{};
  std::optional<DerivedConstants> constants_override{};
  std::optional<CostPolicy> costs{};
  std::optional<SweepRange> sweep{};

  DerivedConstants constants() const {
    if (constants_override) return *constants_override;
    if (params) return derive_constants(*params);
    throw ScenarioError("scenario: neither params nor constants present");
  }

  static Scenario from_json(const json& j) {
    if (!j.is_object()) throw ScenarioError("scenario: top level must be a JSON object");
    detail::reject_unknown(j, "$", {"params", "constants", "costs", "sweep"});
    if (j.contains("params") == j.contains("constants"))
      throw ScenarioError("scenario: exactly one of params or constants must be present");

    Scenario sc;
    if (j.contains("params")) {
      const json& p = j.at("params");
      if (!p.is_object()) throw ScenarioError("scenario: params must be an object");
      detail::reject_unknown(p, "params",
                             {"alpha", "theta", "kappa", "snr_ref", "beta", "power", "noise",
                              "pair_distance", "eta"});
      NetworkParams np;
      np.alpha = detail::require_number(p, "params", "alpha");
      np.theta = detail::require_number(p, "params", "theta");
      np.kappa = detail::require_number(p, "params", "kappa");
      const bool snr_route = p.contains("snr_ref") || p.contains("beta");
      const bool abs_route = p.contains("power") || p.contains("noise") ||
                             p.contains("pair_distance") || p.contains("eta");
      if (snr_route == abs_route)
        throw ScenarioError(
            "scenario: params needs either {snr_ref, beta} or "
            "{power, noise, pair_distance, eta}");
      if (snr_route) {
        np.budget = SnrRefBudget{detail::require_number(p, "params", "snr_ref"),
                                 detail::require_number(p, "params", "beta")};
      } else {
        np.budget = AbsoluteBudget{detail::require_number(p, "params", "power"),
                                   detail::require_number(p, "params", "noise"),
                                   detail::require_number(p, "params", "pair_distance"),
                                   detail::require_number(p, "params", "eta")};
      }
      try {
        np.validate();
      } catch (const InvalidParameter& err) {
        throw ScenarioError(std::string("scenario: params invalid: ") + err.what());
      }
      sc.params = np;
    } else {
      const json& c = j.at("constants");
      if (!c.is_object()) throw ScenarioError("scenario: constants must be an object");
      detail::reject_unknown(c, "constants", {"phi", "beta", "iota_c", "iota_f"});
      try {
        sc.constants_override = DerivedConstants::direct(
            detail::require_number(c, "constants", "beta"),
            detail::require_number(c, "constants", "phi"),
            detail::require_number(c, "constants", "iota_c"),
            detail::require_number(c, "constants", "iota_f"));
      } catch (const InvalidParameter& err) {
        throw ScenarioError(std::string("scenario: constants invalid: ") + err.what());
      }
    }

    if (j.contains("costs")) {
      const json& c = j.at("costs");
      if (!c.is_object()) throw ScenarioError("scenario: costs must be an object");
      detail::reject_unknown(c, "costs", {"c_hd", "c_fd"});
      CostPolicy costs;
      costs.c_hd = detail::require_number(c, "costs", "c_hd");
      costs.c_fd = c.contains("c_fd") ? detail::require_number(c, "costs", "c_fd")
                                      : 2.0 * sc.constants().beta * costs.c_hd;
      try {
        costs.validate();
      } catch (const InvalidParameter& err) {
        throw ScenarioError(std::string("scenario: costs invalid: ") + err.what());
      }
      sc.costs = costs;
    }

    if (j.contains("sweep")) {
      const json& s = j.at("sweep");
      if (!s.is_object()) throw ScenarioError("scenario: sweep must be an object");
      detail::reject_unknown(s, "sweep", {"start", "stop", "step"});
      SweepRange range{detail::require_number(s, "sweep", "start"),
                       detail::require_number(s, "sweep", "stop"),
                       detail::require_number(s, "sweep", "step")};
      range.validate();
      sc.sweep = range;
    }
    return sc;
  }

  static Scenario load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("scenario: cannot open " + path.string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& err) {
      throw ScenarioError("scenario: " + path.string() + ": " + err.what());
    }
    return from_json(j);
  }

  json to_json() const {
    json j = json::object();
    if (params) {
      json p{{"alpha", params->alpha}, {"theta", params->theta}, {"kappa", params->kappa}};
      if (const auto* s = std::get_if<SnrRefBudget>(&params->budget)) {
        p["snr_ref"] = s->snr_ref;
        p["beta"] = s->beta;
      } else {
        const auto& a = std::get<AbsoluteBudget>(params->budget);
        p["power"] = a.power;
        p["noise"] = a.noise;
        p["pair_distance"] = a.pair_distance;
        p["eta"] = a.eta;
      }
      j["params"] = p;
    }
    if (constants_override) {
      j["constants"] = {{"phi", constants_override->phi},
                        {"beta", constants_override->beta},
                        {"iota_c", constants_override->iota_c},
                        {"iota_f", constants_override->iota_f}};
    }
    if (costs) j["costs"] = {{"c_hd", costs->c_hd}, {"c_fd", costs->c_fd}};
    if (sweep) j["sweep"] = {{"start", sweep->start}, {"stop", sweep->stop}, {"step", sweep->step}};
    return j;
  }
};

}  // namespace fdaloha
