#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lry/examples.hpp"
#include "lry/geodelta.hpp"
#include "lry/io.hpp"
#include "lry/oracle.hpp"
#include "lry/protocol.hpp"
#include "lry/sweep.hpp"

namespace lry::cli {

enum ExitCode : int { kOk = 0, kViolations = 1, kInputError = 2 };

struct CommandConfig {
  std::string command;
  std::string input;
  std::string plan;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::uint64_t count = 10000;
  int n_max = 20;
  int delta = 0;
  int oracle_cap = kDefaultBruteForceCap;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("--input: cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline io::Json header(const CommandConfig& cfg, const std::string& digest) {
  return io::Json{{"command", cfg.command}, {"seed", cfg.seed}, {"inputDigest", digest}};
}

inline void emit(std::ostream& out, const CommandConfig& cfg, const io::Json& report, const std::string& digest,
                 const std::string& csv) {
  if (cfg.format == "csv")
    out << "# command=" << cfg.command << " seed=" << cfg.seed << " inputDigest=" << digest << '\n' << csv;
  else
    out << report.dump(2) << '\n';
}

inline std::string kv_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string s = "metric,value\n";
  for (const auto& [k, v] : rows) s += k + "," + v + "\n";
  return s;
}

/// Shared by `simulate` and `example-2gap`: protocol run, fairness, and the
/// per-profile invariant checks when preferences are the optimal ones.
inline int analyse_profile(const CommandConfig& cfg, const io::ProfileInput& in, const std::string& digest,
                           std::ostream& out) {
  const auto profile = ValidProfile::make(in.profile);
  const auto table = win_table(profile);
  const bool optimal = !in.preferences.has_value();
  const auto prefs = optimal ? optimal_preferences(table) : *in.preferences;
  const auto run = resolve_protocol(table, prefs, cfg.seed);
  const auto fairness = fairness_report(table, run);

  auto report = header(cfg, digest);
  report["profile"] = io::to_json(in.profile);
  report["preferencesSource"] = optimal ? "optimal" : "input";
  report.update(io::run_json(run, fairness));
  report["winTable"] = io::to_json(table);
  report["preferences"] = io::to_json(prefs);
  int status = kOk;
  if (optimal) {
    const auto check = check_profile(profile);
    io::Json violations = io::Json::array();
    for (const auto& v : check.violations) violations.push_back({{"invariant", v.invariant}, {"detail", v.detail}});
    report["invariantChecks"] = {{"checks", check.checks}, {"violations", violations}};
    if (!check.violations.empty() || !fairness.all_bounds_hold()) status = kViolations;
  }
  emit(out, cfg, report, digest, io::run_csv(run, fairness));
  return status;
}

inline int cmd_simulate(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.input.empty()) throw InputError("--input: a profile JSON file is required");
  const auto text = read_file(cfg.input);
  return analyse_profile(cfg, io::profile_from_text(text), io::fnv1a64(text), out);
}

inline int cmd_example(const CommandConfig& cfg, std::ostream& out) {
  io::ProfileInput in{example_two_gap_profile(), std::nullopt};
  return analyse_profile(cfg, in, io::fnv1a64("builtin:example-2gap:" + io::to_json(in.profile).dump()), out);
}

inline int cmd_verify(const CommandConfig& cfg, std::ostream& out) {
  SweepReport sweep;
  std::string digest;
  if (!cfg.input.empty()) {
    const auto text = read_file(cfg.input);
    digest = io::fnv1a64(text);
    sweep = property_sweep({ValidProfile::make(io::profile_from_text(text).profile)});
  } else {
    digest = io::fnv1a64("sweep:count=" + std::to_string(cfg.count) + ":n_max=" + std::to_string(cfg.n_max));
    sweep = property_sweep(cfg.count, cfg.n_max, cfg.seed);
  }
  auto report = header(cfg, digest);
  report.update(io::to_json(sweep));
  std::vector<std::pair<std::string, std::string>> rows{{"count", std::to_string(sweep.count)},
                                                        {"checks", std::to_string(sweep.checks)},
                                                        {"violations", std::to_string(sweep.violations.size())}};
  for (const auto& [kind, n] : sweep.outcomes) rows.emplace_back("outcome:" + kind, std::to_string(n));
  emit(out, cfg, report, digest, kv_csv(rows));
  return sweep.clean() ? kOk : kViolations;
}

inline int cmd_geodelta(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.delta < 1) throw InputError("--delta: must be at least 1");
  const auto rep = geodelta_report(make_geodelta(cfg.delta), cfg.seed);
  const auto digest = io::fnv1a64("builtin:geodelta:delta=" + std::to_string(cfg.delta));
  auto report = header(cfg, digest);
  report.update(io::to_json(rep));
  emit(out, cfg, report, digest, io::run_csv(rep.run, rep.fairness));
  return kOk;
}

inline int cmd_oracle(const CommandConfig& cfg, std::ostream& out) {
  if (cfg.oracle_cap < 1 || cfg.oracle_cap > 64) throw InputError("--oracle-cap: must be in [1, 64]");
  if (!cfg.input.empty()) {
    const auto text = read_file(cfg.input);
    const auto grid = io::grid_from_json(io::parse_json(text, "grid"));
    std::string digest_src = text;
    auto report = header(cfg, "");
    int status = kOk;
    if (!cfg.plan.empty()) {
      const auto plan_text = read_file(cfg.plan);
      digest_src += plan_text;
      const auto plan = io::plan_from_json(io::parse_json(plan_text, "plan"));
      const auto v = validate_plan(grid, plan);
      io::Json issues = io::Json::array();
      for (const auto& pv : v.violations) issues.push_back({{"district", pv.district}, {"message", pv.message}});
      report["plan"] = {{"valid", v.ok()}, {"violations", issues}};
      if (v.ok())
        report["plan"].update({{"winsA", count_wins(grid, plan.districts, Party::A)},
                               {"winsB", count_wins(grid, plan.districts, Party::B)}});
      else
        status = kViolations;
    }
    for (Party p : {Party::A, Party::B}) {
      const auto sol = solve_side_bruteforce(grid, grid.all_cells(), p, cfg.oracle_cap);
      report[std::string("best") + to_char(p)] = {{"plans", sol.plans},
                                                  {"wins", sol.districter_wins},
                                                  {"opponentWins", sol.opponent_wins},
                                                  {"witness", io::to_json(sol.witness)}};
    }
    report["inputDigest"] = io::fnv1a64(digest_src);
    emit(out, cfg, report, report["inputDigest"].get<std::string>(), "");
    return status;
  }
  const auto strategy = strategy_oracle_sweep();
  const auto grids = grid_oracle_sweep(static_cast<int>(std::min<std::uint64_t>(cfg.count, 100000)), cfg.seed,
                                       std::min(cfg.oracle_cap, kDefaultBruteForceCap));
  const auto shrunk = shrunk_geodelta_check(4, cfg.oracle_cap);
  const auto witness = geodelta_witness_check(make_geodelta(std::max(cfg.delta, 1)));
  const auto digest = io::fnv1a64("oracle:count=" + std::to_string(cfg.count) + ":cap=" +
                                  std::to_string(cfg.oracle_cap) + ":delta=" + std::to_string(std::max(cfg.delta, 1)));
  auto list = [](const auto& items) {
    io::Json a = io::Json::array();
    for (const auto& s : items) a.push_back(s);
    return a;
  };
  io::Json strategy_mismatches = io::Json::array();
  for (const auto& m : strategy.mismatches)
    strategy_mismatches.push_back({{"size", m.size}, {"units", m.units}, {"detail", m.detail}});
  auto report = header(cfg, digest);
  report["strategy"] = {{"sides", strategy.sides},
                        {"viaProfile", strategy.via_profile},
                        {"allocations", strategy.allocations},
                        {"mismatches", strategy_mismatches}};
  report["grids"] = {{"grids", grids.grids},
                     {"plans", grids.plans_checked},
                     {"shapes", grids.shapes},
                     {"mismatches", list(grids.mismatches)}};
  report["shrunkGeodelta"] = {{"sidesCompared", shrunk.sides_compared},
                              {"witnessSides", shrunk.witness_sides},
                              {"mismatches", list(shrunk.mismatches)}};
  report["geodeltaWitness"] = {{"delta", std::max(cfg.delta, 1)},
                               {"sides", witness.sides_checked},
                               {"forcedLowerBounds", witness.forced_lower_bounds},
                               {"failures", list(witness.failures)}};
  const std::size_t total =
      strategy.mismatches.size() + grids.mismatches.size() + shrunk.mismatches.size() + witness.failures.size();
  report["mismatchCount"] = total;
  emit(out, cfg, report, digest,
       kv_csv({{"strategy_mismatches", std::to_string(strategy.mismatches.size())},
               {"grid_mismatches", std::to_string(grids.mismatches.size())},
               {"shrunk_geodelta_mismatches", std::to_string(shrunk.mismatches.size())},
               {"geodelta_witness_failures", std::to_string(witness.failures.size())}}));
  return total == 0 ? kOk : kViolations;
}

}  // namespace detail

/// Parses `args` (without the program name), runs the subcommand, and writes
/// the report to `out` and diagnostics to `err`. Returns 0 when clean, 1 when
/// violations were found, 2 on bad input or flags.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"Two-party redistricting protocol with exact arithmetic"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Seed for randomized outcome rules and sweeps")->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  auto* simulate = app.add_subcommand("simulate", "Run the protocol on a profile JSON file");
  simulate->add_option("--input", cfg.input, "Profile JSON file")->required();
  add_seed(simulate);
  add_format(simulate);

  auto* verify = app.add_subcommand("verify", "Property sweep over random profiles (or one --input profile)");
  verify->add_option("--input", cfg.input, "Check only this profile JSON file");
  verify->add_option("--count", cfg.count, "Random profiles to check")->capture_default_str()->check(CLI::Range(1ULL, 100000000ULL));
  verify->add_option("--n-max", cfg.n_max, "Largest n drawn")->capture_default_str()->check(CLI::Range(2, 60));
  add_seed(verify);
  add_format(verify);

  auto* example = app.add_subcommand("example-2gap", "Built-in ten-district profile whose coin flip costs A two seats");
  add_seed(example);
  add_format(example);

  auto* geodelta = app.add_subcommand("geodelta", "Grid construction with a growing gap from the geometric target");
  geodelta->add_option("--delta", cfg.delta, "Number of 20-row bands")->required()->check(CLI::Range(1, 60));
  add_seed(geodelta);
  add_format(geodelta);

  auto* oracle = app.add_subcommand("oracle", "Brute-force cross-checks, or best plans for an --input grid");
  oracle->add_option("--input", cfg.input, "Grid JSON file to solve exhaustively");
  oracle->add_option("--plan", cfg.plan, "Plan JSON file to validate against --input")->needs("--input");
  oracle->add_option("--count", cfg.count, "Random grids to check")->default_val(100);
  oracle->add_option("--oracle-cap", cfg.oracle_cap, "Largest region searched exhaustively, in cells")
      ->capture_default_str();
  oracle->add_option("--delta", cfg.delta, "Full-size construction whose witness plans are checked")->default_val(2);
  add_seed(oracle);
  add_format(oracle);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (cfg.command == "simulate") return detail::cmd_simulate(cfg, out);
    if (cfg.command == "verify") return detail::cmd_verify(cfg, out);
    if (cfg.command == "example-2gap") return detail::cmd_example(cfg, out);
    if (cfg.command == "geodelta") return detail::cmd_geodelta(cfg, out);
    return detail::cmd_oracle(cfg, out);
  } catch (const ProtocolViolation& e) {
    err << "protocol violation: " << e.what() << '\n';
    return kViolations;
  } catch (const InvalidProfile& e) {
    err << "invalid profile: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::overflow_error& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace lry::cli
