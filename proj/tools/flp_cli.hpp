#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flp/flp.hpp"

namespace flp::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kInfeasible = 2,
  kPrecondition = 3,
  kSpViolation = 4,
  kBoundExceeded = 5,
  kRegressionFailed = 6,
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return io::parse_instance(text);
  } catch (const io::FileError& e) {
    throw io::FileError(path + ": " + e.what(), e.line(), e.column());
  }
}

inline MechanismId mechanism_or_throw(const std::string& name) {
  if (auto id = parse_mechanism(name)) return *id;
  std::string known;
  for (MechanismId id : kAllMechanisms) known += (known.empty() ? "" : ", ") + std::string(cli_name(id));
  throw InputError("unknown mechanism '" + name + "' (known: " + known + ")");
}

inline Variant natural_variant(MechanismId id) {
  return id == MechanismId::UniformLR ? Variant::Max : Variant::Sum;
}

inline std::size_t natural_n(MechanismId id) { return id == MechanismId::TwoMedians ? 4 : 5; }

// Generator flags shared by verify-sp, ratio-sweep and search.
struct GenOptions {
  std::string mech;
  std::string variant;
  std::string family = "uniform-int";
  std::string config;
  std::size_t n = 0;
  std::size_t k = 2;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  CLI::Option* k_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* family_opt = nullptr;

  void attach(CLI::App* cmd, std::size_t default_trials) {
    trials = default_trials;
    cmd->add_option("--mech", mech, "Mechanism id")->required();
    cmd->add_option("--variant", variant, "sum or max (default depends on the mechanism)");
    cmd->add_option("--n", n, "Number of agents");
    k_opt = cmd->add_option("--k", k, "Number of facilities");
    cmd->add_option("--trials", trials, "Number of instances")->capture_default_str();
    seed_opt = cmd->add_option("--seed", seed, "Master seed");
    family_opt = cmd->add_option("--family", family,
                                 "uniform-int, uniform-grid, clustered or coincident");
    cmd->add_option("--config", config, "Experiment config file (generator spec)");
  }

  GenSpec spec(MechanismId id) const {
    GenSpec g;
    if (!config.empty()) g = io::parse_genspec(read_file(config));
    else {
      g.variant = natural_variant(id);
      g.n = natural_n(id);
    }
    if (!variant.empty()) g.variant = parse_variant(variant);
    if (n != 0) g.n = n;
    if (config.empty() || k_opt->count() > 0) g.k = k;
    if (config.empty() || seed_opt->count() > 0) g.seed = seed;
    if (config.empty() || family_opt->count() > 0) g.family = parse_family(family);
    if (config.empty() && n == 0 && g.n < g.k) g.n = g.k + 1;
    return g;
  }
};

inline io::json solution_json(const Instance& inst, const OptResult& r) {
  io::json j = io::solution_to_json(inst, r.solution);
  io::put_rational(j, "cost", r.cost);
  return j;
}

inline int cmd_solve(const std::string& path, std::ostream& out) {
  const Instance inst = load_instance(path);
  const OptResult opt = brute_force_optimal(inst);
  io::json j{{"version", io::kFormatVersion},
             {"command", "solve"},
             {"instance_digest", io::instance_digest(inst)},
             {"optimal", solution_json(inst, opt)}};
  if (inst.variant() == Variant::Sum) {
    const OptResult fast = fast_optimal_sum(inst);
    j["fast_optimal"] = solution_json(inst, fast);
    j["fast_agrees"] = fast.cost == opt.cost;
  }
  out << j.dump(2) << '\n';
  return kOk;
}

inline int cmd_mech(const std::string& name, const std::string& path, std::ostream& out) {
  const MechanismId id = mechanism_or_throw(name);
  const Instance inst = load_instance(path);
  out << io::ratio_report_to_json(approx_ratio(id, inst)).dump(2) << '\n';
  return kOk;
}

inline int cmd_verify_sp(const GenOptions& opts, std::size_t grid_points, std::ostream& out) {
  const MechanismId id = mechanism_or_throw(opts.mech);
  const GenSpec spec = opts.spec(id);
  io::json violations = io::json::array();
  std::size_t checked = 0;
  std::size_t skipped = 0;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const Instance inst = generate_one(spec, t);
    const SpRefutation res = sp_refute(id, inst, grid_points);
    checked += res.deviations_checked;
    skipped += res.skipped;
    if (res.violation) {
      violations.push_back({{"seed_index", t},
                            {"instance", io::instance_to_json(inst)},
                            {"violation", io::violation_to_json(*res.violation)}});
    }
  }
  std::string summary =
      violations.empty()
          ? "no violation found over " + std::to_string(opts.trials) + " trials"
          : std::to_string(violations.size()) + " of " + std::to_string(opts.trials) +
                " trials have a profitable misreport";
  io::json j{{"version", io::kFormatVersion},
             {"command", "verify-sp"},
             {"mechanism", std::string(cli_name(id))},
             {"config", io::genspec_to_json(spec)},
             {"grid_points", grid_points},
             {"trials", opts.trials},
             {"deviations_checked", checked},
             {"deviations_skipped", skipped},
             {"summary", summary},
             {"violations", violations}};
  out << j.dump(2) << '\n';
  return violations.empty() ? kOk : kSpViolation;
}

inline int cmd_ratio_sweep(const GenOptions& opts, const std::string& out_path, std::ostream& out,
                    std::ostream& err) {
  const MechanismId id = mechanism_or_throw(opts.mech);
  const GenSpec spec = opts.spec(id);
  const auto bound = declared_bound(id, spec.variant, spec.n, spec.k);
  std::vector<io::SweepRow> rows;
  std::size_t exceeded = 0;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    const Instance inst = generate_one(spec, t);
    const RatioReport r = approx_ratio(id, inst);
    if (bound && r.ratio > *bound) ++exceeded;
    rows.push_back({t, inst.n(), inst.k(), inst.variant(), r.mech_cost, r.opt_cost, r.ratio});
  }
  if (out_path.empty()) {
    io::write_sweep_csv(out, rows);
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + out_path + "'");
    io::write_sweep_csv(file, rows);
  }
  if (exceeded > 0) {
    err << exceeded << " instance(s) exceed the declared bound " << to_string(*bound) << '\n';
    return kBoundExceeded;
  }
  return kOk;
}

inline int cmd_search(const GenOptions& opts, std::size_t rounds, std::size_t climbers,
               const std::string& out_path, std::ostream& out) {
  const MechanismId id = mechanism_or_throw(opts.mech);
  const GenSpec spec = opts.spec(id);
  SearchConfig cfg;
  cfg.mechanism = id;
  cfg.variant = spec.variant;
  cfg.n = spec.n;
  cfg.k = spec.k;
  cfg.trials = opts.trials;
  cfg.perturb_rounds = rounds;
  cfg.seed = spec.seed;
  cfg.climbers = climbers;
  const RatioReport r = worst_ratio_search(cfg);
  io::json j = io::ratio_report_to_json(r);
  j["command"] = "search";
  if (const auto bound = declared_bound(id, spec.variant, spec.n, spec.k)) {
    j["declared_bound"] = to_string(*bound);
  }
  out << j.dump(2) << '\n';
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + out_path + "'");
    file << io::write_instance(r.instance);
  }
  return kOk;
}

inline int cmd_regress(const std::string& only, std::ostream& out) {
  const auto results =
      run_regressions(only.empty() ? std::nullopt : std::optional<std::string_view>(only));
  std::size_t passed = 0;
  for (const FixtureResult& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  " << r.details << '\n';
    passed += r.passed ? 1 : 0;
  }
  out << passed << "/" << results.size() << " fixtures passed\n";
  return passed == results.size() ? kOk : kRegressionFailed;
}

}  // namespace detail

/// Entry point shared by the executable and the tests. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agent-constrained facility location on a line: solvers, mechanisms, verification",
               "flp"};
  app.require_subcommand(1);

  std::string instance_path;
  auto* solve = app.add_subcommand("solve", "Exact optimum of an instance file");
  solve->add_option("--instance", instance_path, "Instance file")->required();

  std::string mech_name;
  auto* mech = app.add_subcommand("mech", "Apply a mechanism and report its ratio");
  mech->add_option("--mech", mech_name, "Mechanism id")->required();
  mech->add_option("--instance", instance_path, "Instance file")->required();

  std::size_t grid_points = kDefaultGridPoints;
  detail::GenOptions sp_opts;
  auto* verify = app.add_subcommand("verify-sp", "Search random instances for profitable misreports");
  sp_opts.attach(verify, 100);
  verify->add_option("--grid-points", grid_points, "Grid misreports per agent")->capture_default_str();

  std::string out_path;
  detail::GenOptions sweep_opts;
  auto* sweep = app.add_subcommand("ratio-sweep", "Exact ratios over a generated family (CSV)");
  sweep_opts.attach(sweep, 500);
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");

  detail::GenOptions search_opts;
  std::size_t rounds = 20;
  std::size_t climbers = 4;
  auto* search = app.add_subcommand("search", "Hill-climb for a worst-case instance");
  search_opts.attach(search, 200);
  search->add_option("--rounds", rounds, "Step-halving rounds")->capture_default_str();
  search->add_option("--climbers", climbers, "Sampled instances to hill-climb")->capture_default_str();
  search->add_option("--out", out_path, "Write the worst instance to this file");

  std::string only;
  auto* regress = app.add_subcommand("regress", "Replay the lower-bound fixtures");
  regress->add_option("--only", only, "Run a single fixture");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*solve) return detail::cmd_solve(instance_path, out);
    if (*mech) return detail::cmd_mech(mech_name, instance_path, out);
    if (*verify) return detail::cmd_verify_sp(sp_opts, grid_points, out);
    if (*sweep) return detail::cmd_ratio_sweep(sweep_opts, out_path, out, err);
    if (*search) return detail::cmd_search(search_opts, rounds, climbers, out_path, out);
    if (*regress) return detail::cmd_regress(only, out);
  } catch (const InfeasibleError& e) {
    err << e.what() << '\n';
    return kInfeasible;
  } catch (const PreconditionError& e) {
    err << "mechanism precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace flp::cli
