// Command-line front end: equilibrium-band sweeps, single equilibrium
// queries, cost design, throughput optimization maps, price-of-anarchy
// sweeps, Monte-Carlo runs, and the self-check battery.
//
// Exit codes: 0 success, 2 configuration or parameter errors, 3 infeasible
// equilibrium queries, 4 verification failures.
//
// CSV output uses a fixed column order and 12-significant-digit decimals so
// downstream plots are stable across runs; missing values are "nan" and a
// diverging ratio is "inf". JSON output maps non-finite values to null with
// an explicit marker field where one matters.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fdaloha/fdaloha.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerifyFailed = 4;

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw fdaloha::ScenarioError("cannot open output file " + path);
  out << content;
}

fdaloha::Strategy parse_strategy(const std::string& token) {
  for (fdaloha::Strategy s : fdaloha::all_strategies)
    if (token == fdaloha::name_of(s)) return s;
  throw fdaloha::InvalidParameter("unknown strategy '" + token +
                                  "' (expected one of w, tA, tB, tfd)");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw fdaloha::InvalidParameter("cannot parse " + what + " from '" + text + "'");
  }
}

fdaloha::MixedStrategy parse_pmf(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4)
    throw fdaloha::InvalidParameter("pmf must be 4 comma-separated numbers (w,tA,tB,tfd)");
  return fdaloha::MixedStrategy::make(
      parse_double(parts[0], "pmf"), parse_double(parts[1], "pmf"),
      parse_double(parts[2], "pmf"), parse_double(parts[3], "pmf"));
}

struct GridSpec {
  double start{};
  double stop{};
  std::size_t count{};
};

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3)
    throw fdaloha::InvalidParameter("grid must be start:stop:count, got '" + text + "'");
  GridSpec g;
  g.start = parse_double(parts[0], "grid start");
  g.stop = parse_double(parts[1], "grid stop");
  const double raw = parse_double(parts[2], "grid count");
  if (!(raw >= 1.0) || raw != std::floor(raw))
    throw fdaloha::InvalidParameter("grid count must be a positive integer");
  g.count = static_cast<std::size_t>(raw);
  if (g.count > 1 && !(g.start < g.stop))
    throw fdaloha::InvalidParameter("grid start must be < stop when count > 1");
  return g;
}

std::vector<double> grid_values(const GridSpec& g) {
  std::vector<double> v;
  v.reserve(g.count);
  if (g.count == 1) {
    v.push_back(g.start);
    return v;
  }
  for (std::size_t i = 0; i < g.count; ++i)
    v.push_back(g.start +
                (g.stop - g.start) * static_cast<double>(i) / static_cast<double>(g.count - 1));
  return v;
}

json constants_json(const fdaloha::DerivedConstants& k) {
  return {{"phi", k.phi}, {"beta", k.beta}, {"iota_c", k.iota_c}, {"iota_f", k.iota_f}};
}

fdaloha::Scenario load_scenario(const std::string& path) {
  if (path.empty())
    throw fdaloha::ScenarioError("this command needs --scenario");
  return fdaloha::Scenario::load(path);
}

fdaloha::SweepRange resolve_sweep(const fdaloha::Scenario& sc, double start, double stop,
                                  double step) {
  const bool flags = !std::isnan(start) || !std::isnan(stop) || !std::isnan(step);
  if (flags) {
    if (std::isnan(start) || std::isnan(stop) || std::isnan(step))
      throw fdaloha::ScenarioError("give all of --start, --stop, --step or none");
    fdaloha::SweepRange range{start, stop, step};
    range.validate();
    return range;
  }
  if (sc.sweep) return *sc.sweep;
  throw fdaloha::ScenarioError("no sweep range: pass --start/--stop/--step or a scenario sweep");
}

// ---------------------------------------------------------------- region --

int run_region(const std::string& scenario_path, double start, double stop, double step,
               const std::string& out, const std::string& format) {
  const fdaloha::Scenario sc = load_scenario(scenario_path);
  const fdaloha::DerivedConstants k = sc.constants();
  const fdaloha::SweepRange sweep = resolve_sweep(sc, start, stop, step);

  std::string csv = "c_hd,pi_tfd_min,pi_tfd_max,feasible\n";
  json rows = json::array();
  for (double c_hd : sweep.values()) {
    const auto fam = fdaloha::try_mne_family(k, c_hd);
    const double lo = fam ? fam->pi_tfd_min : std::numeric_limits<double>::quiet_NaN();
    const double hi = fam ? fam->pi_tfd_max : std::numeric_limits<double>::quiet_NaN();
    if (format == "csv") {
      csv += fmt12(c_hd) + "," + fmt12(lo) + "," + fmt12(hi) + "," +
             (fam ? "true" : "false") + "\n";
    } else {
      rows.push_back({{"c_hd", c_hd},
                      {"pi_tfd_min", lo},
                      {"pi_tfd_max", hi},
                      {"feasible", fam.has_value()}});
    }
  }
  write_output(out, format == "csv" ? csv : rows.dump(2) + "\n");
  return kExitOk;
}

// ----------------------------------------------------------------- solve --

int run_solve(const std::string& scenario_path, double c_hd_flag, double pi_tfd,
              const std::string& out, const std::string& format) {
  const fdaloha::Scenario sc = load_scenario(scenario_path);
  const fdaloha::DerivedConstants k = sc.constants();
  double c_hd = c_hd_flag;
  if (std::isnan(c_hd)) {
    if (!sc.costs) throw fdaloha::ScenarioError("no c_hd: pass --c-hd or scenario costs");
    c_hd = sc.costs->c_hd;
  }
  const fdaloha::EquilibriumFamily fam = fdaloha::mne_family(k, c_hd);
  const fdaloha::MixedStrategy pi = fam.member(pi_tfd);
  const fdaloha::CostPolicy costs{fam.c_hd, fam.c_fd};
  const fdaloha::EquilibriumCheck check = fdaloha::verify_mne(k, pi, costs);

  if (format == "csv") {
    std::string csv =
        "c_hd,c_fd,pi_tfd_min,pi_tfd_max,pi_w,pi_ta,pi_tb,pi_tfd,max_abs_utility\n";
    csv += fmt12(fam.c_hd) + "," + fmt12(fam.c_fd) + "," + fmt12(fam.pi_tfd_min) + "," +
           fmt12(fam.pi_tfd_max) + "," + fmt12(pi.wait) + "," + fmt12(pi.tx_a) + "," +
           fmt12(pi.tx_b) + "," + fmt12(pi.tx_fd) + "," + fmt12(check.max_abs_utility()) + "\n";
    write_output(out, csv);
    return kExitOk;
  }
  json doc{{"constants", constants_json(k)},
           {"costs", {{"c_hd", fam.c_hd}, {"c_fd", fam.c_fd}}},
           {"band", {{"pi_tfd_min", fam.pi_tfd_min}, {"pi_tfd_max", fam.pi_tfd_max}}},
           {"strategy",
            {{"w", pi.wait}, {"tA", pi.tx_a}, {"tB", pi.tx_b}, {"tfd", pi.tx_fd}}},
           {"utilities",
            {{"w", check.utilities[0]},
             {"tA", check.utilities[1]},
             {"tB", check.utilities[2]},
             {"tfd", check.utilities[3]}}},
           {"max_abs_utility", check.max_abs_utility()}};
  write_output(out, doc.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- design --

int run_design(const std::string& scenario_path, double pi_tfd, const std::string& out,
               const std::string& format) {
  const fdaloha::Scenario sc = load_scenario(scenario_path);
  const fdaloha::DerivedConstants k = sc.constants();
  const fdaloha::CostInterval band = fdaloha::design_costs(k, pi_tfd);
  const bool degenerate = band.degenerate(1e-15);

  if (format == "csv") {
    std::string csv = "pi_tfd,c_hd_min,c_hd_max,c_fd_min,c_fd_max,degenerate\n";
    csv += fmt12(pi_tfd) + "," + fmt12(band.c_hd_min) + "," + fmt12(band.c_hd_max) + "," +
           fmt12(band.c_fd_min) + "," + fmt12(band.c_fd_max) + "," +
           (degenerate ? "true" : "false") + "\n";
    write_output(out, csv);
    return kExitOk;
  }
  json doc{{"pi_tfd", pi_tfd},
           {"c_hd_min", band.c_hd_min},
           {"c_hd_max", band.c_hd_max},
           {"c_fd_min", band.c_fd_min},
           {"c_fd_max", band.c_fd_max},
           {"degenerate", degenerate}};
  write_output(out, doc.dump(2) + "\n");
  return kExitOk;
}

// --------------------------------------------------------------- optimum --

int run_optimum(const std::string& scenario_path, const std::string& iota_c_grid,
                const std::string& iota_f_grid, double beta, double phi, bool absolute,
                const std::string& out, const std::string& format) {
  std::vector<fdaloha::RegimePoint> rows;
  double phi_used = phi;

  const bool grid_mode = !iota_c_grid.empty() || !iota_f_grid.empty();
  if (grid_mode) {
    if (iota_c_grid.empty() || iota_f_grid.empty() || std::isnan(beta))
      throw fdaloha::ScenarioError("grid mode needs --iota-c, --iota-f and --beta");
    std::vector<std::pair<double, double>> grid;
    for (double ic : grid_values(parse_grid(iota_c_grid)))
      for (double if_ : grid_values(parse_grid(iota_f_grid))) grid.emplace_back(ic, if_);
    rows = fdaloha::regime_map(grid, beta, phi);
  } else {
    const fdaloha::Scenario sc = load_scenario(scenario_path);
    const fdaloha::DerivedConstants k = sc.constants();
    phi_used = k.phi;
    rows.push_back({k.iota_c, k.iota_f, fdaloha::optimal_mne(k), ""});
  }

  std::string csv = "iota_c,iota_f,boundary_label,pi_w,pi_thd,pi_tfd,t_star_over_phi,"
                    "enabling_c_hd_over_phi";
  if (absolute) csv += ",t_star,enabling_c_hd";
  csv += "\n";
  json jrows = json::array();
  for (const auto& row : rows) {
    if (!row.optimum) {
      std::cerr << "warning: iota_c=" << fmt12(row.iota_c) << " iota_f=" << fmt12(row.iota_f)
                << " " << row.note << "\n";
      continue;
    }
    const fdaloha::ThroughputOptimum& best = *row.optimum;
    const fdaloha::MixedStrategy pmf = best.profile.pmf();
    if (format == "csv") {
      csv += fmt12(row.iota_c) + "," + fmt12(row.iota_f) + "," +
             std::string(fdaloha::name_of(best.boundary)) + "," + fmt12(pmf.wait) + "," +
             fmt12(best.profile.pi_thd) + "," + fmt12(best.profile.pi_tfd) + "," +
             fmt12(best.t_star / phi_used) + "," + fmt12(best.enabling_c_hd / phi_used);
      if (absolute) csv += "," + fmt12(best.t_star) + "," + fmt12(best.enabling_c_hd);
      csv += "\n";
    } else {
      jrows.push_back({{"iota_c", row.iota_c},
                       {"iota_f", row.iota_f},
                       {"boundary_label", std::string(fdaloha::name_of(best.boundary))},
                       {"pi_w", pmf.wait},
                       {"pi_thd", best.profile.pi_thd},
                       {"pi_tfd", best.profile.pi_tfd},
                       {"t_star_over_phi", best.t_star / phi_used},
                       {"enabling_c_hd_over_phi", best.enabling_c_hd / phi_used},
                       {"t_star", best.t_star},
                       {"enabling_c_hd", best.enabling_c_hd},
                       {"tie", best.tie}});
    }
  }
  write_output(out, format == "csv" ? csv : jrows.dump(2) + "\n");
  return kExitOk;
}

// ------------------------------------------------------------------- poa --

int run_poa(const std::string& scenario_path, double start, double stop, double step,
            const std::string& out, const std::string& format) {
  const fdaloha::Scenario sc = load_scenario(scenario_path);
  const fdaloha::DerivedConstants k = sc.constants();
  const fdaloha::SweepRange sweep = resolve_sweep(sc, start, stop, step);
  const auto points = fdaloha::poa_sweep(k, sweep.start, std::min(sweep.stop, 1.0), sweep.step);

  std::string csv = "pi_tfd,t_min,t_star,poa\n";
  json rows = json::array();
  for (const auto& p : points) {
    if (format == "csv") {
      csv += fmt12(p.pi_tfd) + "," + fmt12(p.t_min) + "," + fmt12(p.t_star) + "," +
             fmt12(p.poa) + "\n";
    } else {
      rows.push_back({{"pi_tfd", p.pi_tfd},
                      {"t_min", p.t_min},
                      {"t_star", p.t_star},
                      {"poa", p.poa},
                      {"diverges", p.diverges()}});
    }
  }
  write_output(out, format == "csv" ? csv : rows.dump(2) + "\n");
  return kExitOk;
}

// -------------------------------------------------------------- simulate --

int run_simulate(const std::string& scenario_path, const std::string& profile,
                 const std::string& pi1_text, const std::string& pi2_text, std::uint64_t slots,
                 std::uint64_t seed, double c_hd_flag, double c_fd_flag, const std::string& out,
                 const std::string& format) {
  const fdaloha::Scenario sc = load_scenario(scenario_path);
  const fdaloha::DerivedConstants k = sc.constants();

  if (!profile.empty() && !pi1_text.empty())
    throw fdaloha::ScenarioError("--profile and --pi are mutually exclusive");
  if (profile.empty() && pi1_text.empty())
    throw fdaloha::ScenarioError("give --profile s1,s2 or --pi w,tA,tB,tfd");

  fdaloha::SimConfig cfg;
  if (!profile.empty()) {
    const auto parts = split(profile, ',');
    if (parts.size() != 2)
      throw fdaloha::InvalidParameter("--profile must be two strategies, e.g. tA,w");
    cfg = fdaloha::SimConfig::fixed(k, parse_strategy(parts[0]), parse_strategy(parts[1]),
                                    slots, seed);
  } else {
    const fdaloha::MixedStrategy pi1 = parse_pmf(pi1_text);
    const fdaloha::MixedStrategy pi2 = pi2_text.empty() ? pi1 : parse_pmf(pi2_text);
    cfg = fdaloha::SimConfig::joint(k, pi1, pi2, slots, seed);
  }
  cfg.params = sc.params;

  fdaloha::CostPolicy costs{0.0, 0.0};
  if (sc.costs) costs = *sc.costs;
  if (!std::isnan(c_hd_flag)) {
    costs.c_hd = c_hd_flag;
    costs.c_fd = std::isnan(c_fd_flag) ? 2.0 * k.beta * c_hd_flag : c_fd_flag;
  } else if (!std::isnan(c_fd_flag)) {
    costs.c_fd = c_fd_flag;
  }
  costs.validate();

  const fdaloha::SimEstimate est = fdaloha::simulate(cfg, costs);

  const bool fixed = cfg.mode == fdaloha::SimMode::fixed_profile;
  double agg_closed = 0.0;
  std::array<double, 2> pair_closed{};
  if (fixed) {
    agg_closed = fdaloha::profile_throughput(k, cfg.s1, cfg.s2);
    pair_closed[0] =
        fdaloha::action_throughput(k, fdaloha::MixedStrategy::pure(cfg.s2), cfg.s1);
    pair_closed[1] =
        fdaloha::action_throughput(k, fdaloha::MixedStrategy::pure(cfg.s1), cfg.s2);
  } else {
    for (fdaloha::Strategy s1 : fdaloha::all_strategies)
      for (fdaloha::Strategy s2 : fdaloha::all_strategies)
        agg_closed += cfg.pi1.prob(s1) * cfg.pi2.prob(s2) * fdaloha::profile_throughput(k, s1, s2);
    for (fdaloha::Strategy s : fdaloha::all_strategies) {
      pair_closed[0] += cfg.pi1.prob(s) * fdaloha::action_throughput(k, cfg.pi2, s);
      pair_closed[1] += cfg.pi2.prob(s) * fdaloha::action_throughput(k, cfg.pi1, s);
    }
  }

  auto zval = [](double diff, double se) {
    if (diff == 0.0) return 0.0;
    return se > 0.0 ? diff / se : std::numeric_limits<double>::infinity();
  };

  if (format == "csv") {
    std::string csv =
        "mode,s1,s2,n_slots,seed,aggregate_mean,aggregate_std_error,aggregate_closed,"
        "aggregate_z,pair1_mean,pair2_mean\n";
    csv += std::string(fixed ? "fixed_profile" : "joint_draw") + ",";
    csv += fixed ? std::string(fdaloha::name_of(cfg.s1)) : "-";
    csv += ",";
    csv += fixed ? std::string(fdaloha::name_of(cfg.s2)) : "-";
    csv += "," + std::to_string(est.n_slots) + "," + std::to_string(est.seed) + "," +
           fmt12(est.aggregate.mean()) + "," + fmt12(est.aggregate.std_error()) + "," +
           fmt12(agg_closed) + "," +
           fmt12(zval(est.aggregate.mean() - agg_closed, est.aggregate.std_error())) + "," +
           fmt12(est.pair_throughput[0].mean()) + "," + fmt12(est.pair_throughput[1].mean()) +
           "\n";
    write_output(out, csv);
    return kExitOk;
  }

  json doc;
  doc["config"] = {{"constants", constants_json(k)},
                   {"mode", fixed ? "fixed_profile" : "joint_draw"},
                   {"n_slots", est.n_slots},
                   {"seed", est.seed},
                   {"costs", {{"c_hd", costs.c_hd}, {"c_fd", costs.c_fd}}}};
  if (sc.params) doc["config"]["scenario_params"] = sc.to_json()["params"];
  if (fixed) {
    doc["config"]["s1"] = std::string(fdaloha::name_of(cfg.s1));
    doc["config"]["s2"] = std::string(fdaloha::name_of(cfg.s2));
  } else {
    doc["config"]["pi1"] = {cfg.pi1.wait, cfg.pi1.tx_a, cfg.pi1.tx_b, cfg.pi1.tx_fd};
    doc["config"]["pi2"] = {cfg.pi2.wait, cfg.pi2.tx_a, cfg.pi2.tx_b, cfg.pi2.tx_fd};
  }

  doc["aggregate"] = {{"mean", est.aggregate.mean()},
                      {"std_error", est.aggregate.std_error()},
                      {"closed_form", agg_closed},
                      {"z", zval(est.aggregate.mean() - agg_closed, est.aggregate.std_error())}};
  doc["pairs"] = json::array();
  for (int p = 0; p < 2; ++p) {
    doc["pairs"].push_back(
        {{"mean", est.pair_throughput[p].mean()},
         {"std_error", est.pair_throughput[p].std_error()},
         {"closed_form", pair_closed[p]},
         {"z", zval(est.pair_throughput[p].mean() - pair_closed[p],
                    est.pair_throughput[p].std_error())}});
  }

  doc["success_cells"] = json::array();
  for (fdaloha::Receiver rx : {fdaloha::Receiver::node_a, fdaloha::Receiver::node_b}) {
    for (fdaloha::Strategy own : fdaloha::all_strategies) {
      for (fdaloha::Strategy opp : fdaloha::all_strategies) {
        if (!fdaloha::is_addressee(rx, own)) continue;
        const fdaloha::RateCell& cell = est.success_cell(rx, own, opp);
        if (!cell.trials) continue;
        const double closed = fdaloha::success_probability(k, rx, own, opp);
        doc["success_cells"].push_back({{"receiver", std::string(fdaloha::name_of(rx))},
                                        {"own", std::string(fdaloha::name_of(own))},
                                        {"opp", std::string(fdaloha::name_of(opp))},
                                        {"successes", cell.successes},
                                        {"trials", cell.trials},
                                        {"rate", cell.rate()},
                                        {"std_error", cell.std_error()},
                                        {"closed_form", closed},
                                        {"z", zval(cell.rate() - closed, cell.std_error())}});
      }
    }
  }

  doc["action_utilities"] = json::array();
  for (fdaloha::Strategy s : fdaloha::all_strategies) {
    const fdaloha::SlotCount& acc = est.action_delivered[fdaloha::index_of(s)];
    if (!acc.n) continue;
    const fdaloha::MixedStrategy opp = fixed ? fdaloha::MixedStrategy::pure(cfg.s2) : cfg.pi2;
    const double closed = fdaloha::utility(k, opp, s, costs);
    doc["action_utilities"].push_back(
        {{"action", std::string(fdaloha::name_of(s))},
         {"slots", acc.n},
         {"mean", est.action_utility(s)},
         {"std_error", est.action_utility_std_error(s)},
         {"closed_form", closed},
         {"z", zval(est.action_utility(s) - closed, est.action_utility_std_error(s))}});
  }

  write_output(out, doc.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------- verify --

int run_verify(const std::string& scenario_path, std::uint64_t seed, std::uint64_t slots,
               const std::string& out, const std::string& format) {
  const fdaloha::Scenario sc = load_scenario(scenario_path);
  fdaloha::VerifyOptions opt;
  opt.seed = seed;
  opt.mc_slots = slots;
  const auto results = fdaloha::run_verification(sc, opt);

  int passed = 0;
  std::string text;
  json rows = json::array();
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    if (format == "json") {
      rows.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    } else {
      text += std::string(r.passed ? "[PASS] " : "[FAIL] ") + r.name;
      if (!r.detail.empty()) text += ": " + r.detail;
      text += "\n";
    }
  }
  if (format == "json") {
    write_output(out, rows.dump(2) + "\n");
  } else {
    text += "verification: " + std::to_string(passed) + "/" + std::to_string(results.size()) +
            " checks passed\n";
    write_output(out, text);
  }
  return passed == static_cast<int>(results.size()) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-pair full-duplex Aloha: equilibria, throughput, price of anarchy"};
  app.require_subcommand(1);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::string scenario_path;
  std::string out = "-";
  std::string format;
  double start = nan, stop = nan, step = nan;
  double c_hd = nan, c_fd = nan, pi_tfd = nan;
  double beta = nan, phi = 1.0;
  std::string iota_c_grid, iota_f_grid, profile, pi1_text, pi2_text;
  bool absolute = false;
  std::uint64_t seed = 1;
  std::uint64_t slots = 1'000'000;

  std::map<CLI::App*, std::string> default_format;
  auto add_common = [&](CLI::App* cmd, const char* fmt_default, bool textual = false) {
    cmd->add_option("--scenario", scenario_path, "scenario JSON file");
    cmd->add_option("--out", out, "output path, - for stdout");
    default_format[cmd] = fmt_default;
    cmd->add_option("--format", format, std::string("output format (default ") + fmt_default + ")")
        ->check(textual ? CLI::IsMember({"text", "json"}) : CLI::IsMember({"csv", "json"}));
  };

  CLI::App* region = app.add_subcommand(
      "region", "equilibrium family bounds across a c_hd sweep");
  add_common(region, "csv");
  region->add_option("--start", start, "sweep start");
  region->add_option("--stop", stop, "sweep stop");
  region->add_option("--step", step, "sweep step");

  CLI::App* solve = app.add_subcommand("solve", "one equilibrium member at (c_hd, pi_tfd)");
  add_common(solve, "json");
  solve->add_option("--c-hd", c_hd, "half-duplex access cost");
  solve->add_option("--pi-tfd", pi_tfd, "full-duplex weight")->required();

  CLI::App* design = app.add_subcommand(
      "design", "cost interval whose equilibria contain a target pi_tfd");
  add_common(design, "json");
  design->add_option("--pi-tfd", pi_tfd, "target full-duplex weight")->required();

  CLI::App* optimum = app.add_subcommand(
      "optimum", "network-optimal profile and its enabling cost");
  add_common(optimum, "csv");
  optimum->add_option("--iota-c", iota_c_grid, "iota_c grid start:stop:count");
  optimum->add_option("--iota-f", iota_f_grid, "iota_f grid start:stop:count");
  optimum->add_option("--beta", beta, "residual self-interference factor (grid mode)");
  optimum->add_option("--phi", phi, "noise-only success factor (grid mode, default 1)");
  optimum->add_flag("--absolute", absolute, "append absolute t_star and enabling_c_hd columns");

  CLI::App* poa = app.add_subcommand("poa", "price of anarchy across a pi_tfd sweep");
  add_common(poa, "csv");
  poa->add_option("--start", start, "sweep start");
  poa->add_option("--stop", stop, "sweep stop");
  poa->add_option("--step", step, "sweep step");

  CLI::App* simulate = app.add_subcommand("simulate", "slot-level Monte-Carlo run");
  add_common(simulate, "json");
  simulate->add_option("--profile", profile, "fixed strategies s1,s2 (w|tA|tB|tfd)");
  simulate->add_option("--pi", pi1_text, "pair pmf w,tA,tB,tfd (joint-draw mode)");
  simulate->add_option("--pi2", pi2_text, "second pair pmf, defaults to --pi");
  simulate->add_option("--slots", slots, "number of slots");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--c-hd", c_hd, "half-duplex cost for utilities");
  simulate->add_option("--c-fd", c_fd, "full-duplex cost for utilities");

  CLI::App* verify = app.add_subcommand("verify", "closed forms against their oracles");
  add_common(verify, "text", true);
  verify->add_option("--slots", slots, "Monte-Carlo slots per profile");
  verify->add_option("--seed", seed, "RNG seed for the battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  for (auto& [cmd, fmt] : default_format)
    if (cmd->parsed() && cmd->count("--format") == 0) format = fmt;

  try {
    if (region->parsed()) return run_region(scenario_path, start, stop, step, out, format);
    if (solve->parsed()) return run_solve(scenario_path, c_hd, pi_tfd, out, format);
    if (design->parsed()) return run_design(scenario_path, pi_tfd, out, format);
    if (optimum->parsed())
      return run_optimum(scenario_path, iota_c_grid, iota_f_grid, beta, phi, absolute, out,
                         format);
    if (poa->parsed()) return run_poa(scenario_path, start, stop, step, out, format);
    if (simulate->parsed())
      return run_simulate(scenario_path, profile, pi1_text, pi2_text, slots, seed, c_hd, c_fd,
                          out, format);
    if (verify->parsed()) return run_verify(scenario_path, seed, slots, out, format);
  } catch (const fdaloha::NoEquilibrium& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const fdaloha::OutOfBand& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const fdaloha::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
