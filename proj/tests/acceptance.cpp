// Acceptance checks. `lry_acceptance N` runs criterion N, no argument runs all.
// Each criterion prints one PASS or FAIL line; indented lines carry details.
// All comparisons are exact: the tolerance is zero throughout.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lry/cli.hpp"
#include "lry/lry.hpp"

using namespace lry;

namespace {

constexpr double kExampleSeconds = 1.0;
constexpr double kSweepSeconds = 60.0;
constexpr double kGeodeltaSeconds = 10.0;
constexpr std::uint64_t kSweepCount = 10000;
constexpr int kSweepNMax = 20;
constexpr std::uint64_t kSweepSeed = 1;
constexpr int kOracleSize = 4;
constexpr int kOracleGranularity = 20;
constexpr int kGridCount = 120;
constexpr std::uint64_t kGridSeed = 1;
constexpr int kShrunkMaxDelta = 4;
constexpr int kShrunkCap = 40;

class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    detail_ << "  [" << (ok ? "ok" : "FAILED") << "] " << what << '\n';
  }
  void info(const std::string& what) { detail_ << "  [info] " << what << '\n'; }
  int report(int number, const std::string& name) const {
    std::cout << (ok_ ? "PASS" : "FAIL") << " criterion " << number << ": " << name << '\n' << detail_.str();
    return ok_ ? 0 : 1;
  }

 private:
  bool ok_ = true;
  std::ostringstream detail_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string secs(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << " s";
  return o.str();
}

std::string pair_str(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

int example_profile() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto profile = ValidProfile::make(example_two_gap_profile());
  const auto table = win_table(profile);
  const auto prefs = optimal_preferences(table);
  const auto run = resolve_protocol(table, prefs, 0);
  const double elapsed = seconds_since(t0);

  const struct {
    int k;
    Option o;
    int a, b;
  } expected[] = {{5, Option::Option1, 3, 7}, {5, Option::Option2, 4, 6}, {6, Option::Option1, 5, 5}, {6, Option::Option2, 2, 8}};
  for (const auto& e : expected) {
    const int a = table.wins(Party::A, e.o, e.k), b = table.wins(Party::B, e.o, e.k);
    c.check(a == e.a && b == e.b, "k=" + std::to_string(e.k) + " " + std::string(to_string(e.o)) + ": (A,B) = " +
                                      pair_str(a, b) + ", expected " + pair_str(e.a, e.b));
  }
  const Ratio seven_halves(7, 2);
  c.check(table.split_target(Party::A, 5).value() == seven_halves, "geo_5(A) = " + table.split_target(Party::A, 5).value().to_string());
  c.check(table.split_target(Party::A, 6).value() == seven_halves, "geo_6(A) = " + table.split_target(Party::A, 6).value().to_string());
  c.check(table.target(Party::A).value() == Ratio(4), "geo(A) = " + table.target(Party::A).value().to_string());
  c.check(run.outcome.kind == OutcomeKind::CoinFlip && run.outcome.k == 6,
          "outcome " + std::string(to_string(run.outcome.kind)) + " between k=" + std::to_string(run.outcome.k - 1) +
              " and k=" + std::to_string(run.outcome.k) + ", expected coin_flip between 5 and 6");
  c.check(elapsed < kExampleSeconds, "runtime " + secs(elapsed));
  return c.report(1, "example profile reproduced exactly");
}

int tightness() {
  Criterion c;
  const auto profile = ValidProfile::make(example_two_gap_profile());
  const auto table = win_table(profile);
  const auto run = resolve_protocol(table, optimal_preferences(table), 0);
  const auto fairness = fairness_report(table, run);
  const Candidate* worst = &run.candidates.front();
  for (const auto& cand : run.candidates)
    if (cand.wins_a < worst->wins_a) worst = &cand;
  const Ratio geo = table.target(Party::A).value();
  const Ratio geo_k = table.split_target(Party::A, worst->assignment.k).value();
  const Ratio gap = (geo - Ratio(worst->wins_a)).abs();
  const Ratio gap_k = (geo_k - Ratio(worst->wins_a)).abs();
  c.info("worst candidate k=" + std::to_string(worst->assignment.k) + " " + std::string(to_string(worst->assignment.option)) +
         ", A wins " + std::to_string(worst->wins_a));
  c.check(gap == Ratio(2), "|geo(A) - wins| = " + gap.to_string() + ", expected 2");
  c.check(gap_k == Ratio(3, 2), "|geo_k(A) - wins| = " + gap_k.to_string() + ", expected 3/2");
  c.check(fairness.all_bounds_hold(), "every candidate within the bounds 2 and 3/2");
  return c.report(2, "fairness bounds are attained");
}

int sweep() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = property_sweep(kSweepCount, kSweepNMax, kSweepSeed);
  const double elapsed = seconds_since(t0);
  c.info(std::to_string(report.count) + " profiles, n <= " + std::to_string(report.n_max) + ", seed " +
         std::to_string(report.seed) + ", " + std::to_string(report.checks) + " checks");
  for (const auto& [kind, n] : report.outcomes) c.info("outcome " + kind + ": " + std::to_string(n));
  c.check(report.count == kSweepCount, "profile count");
  c.check(report.clean(), std::to_string(report.violations.size()) + " violations");
  for (const auto& [name, v] : report.reproducers)
    c.info("violated " + name + " (n = " + std::to_string(v.profile.n) + "): " + v.detail);
  c.check(elapsed < kSweepSeconds, "runtime " + secs(elapsed));
  return c.report(3, "property sweep");
}

int strategy_oracle() {
  Criterion c;
  const auto report = strategy_oracle_sweep(kOracleSize, kOracleGranularity);
  c.info(std::to_string(report.sides) + " sides, " + std::to_string(report.via_profile) + " through a profile, " +
         std::to_string(report.allocations) + " allocations");
  c.check(report.sides > 0, "sides compared");
  c.check(report.mismatches.empty(), std::to_string(report.mismatches.size()) + " mismatches");
  for (const auto& m : report.mismatches)
    c.info("size " + std::to_string(m.size) + ", units " + std::to_string(m.units) + ": " + m.detail);
  return c.report(4, "closed forms match the allocation oracle");
}

int geodelta() {
  Criterion c;
  for (int delta : {1, 2, 5, 10}) {
    const std::string tag = "delta " + std::to_string(delta) + ": ";
    const auto t0 = std::chrono::steady_clock::now();
    const auto inst = make_geodelta(delta);
    const auto rep = geodelta_report(inst, 0);
    const double elapsed = seconds_since(t0);
    const Ratio half_delta(delta, 2);

    c.check(rep.total_support == Ratio(51 * delta), tag + "total support " + rep.total_support.to_string());
    c.check(rep.geo_a.value() == half_delta, tag + "geo(A) = " + rep.geo_a.value().to_string());
    if (delta >= 2) {
      std::string wins;
      for (const auto& cand : rep.run.candidates) wins += (wins.empty() ? "" : ",") + std::to_string(cand.wins_a);
      const bool coin = rep.run.outcome.kind == OutcomeKind::CoinFlip && rep.run.outcome.k == delta;
      const bool pattern = rep.run.candidates.size() == 4 && rep.run.candidates[0].wins_a == 0 &&
                           rep.run.candidates[1].wins_a == 1 && rep.run.candidates[2].wins_a == 1 &&
                           rep.run.candidates[3].wins_a == 0;
      c.check(coin && pattern, tag + "outcome " + std::string(to_string(rep.run.outcome.kind)) + " at k=" +
                                   std::to_string(rep.run.outcome.k) + ", candidate A wins (" + wins +
                                   "); expected coin_flip at (" + std::to_string(delta - 1) + "," +
                                   std::to_string(delta) + ") with (0,1,1,0)");
    }
    c.check(rep.gap == half_delta, tag + "worst-case gap " + rep.gap.to_string() + ", expected " + half_delta.to_string());
    if (delta >= 5) c.check(rep.exceeds_unconstrained_bound, tag + "gap " + rep.gap.to_string() + " exceeds 2");
    if (delta == 1) {
      c.check(rep.z == 20, tag + "z = " + std::to_string(rep.z));
      c.check(rep.best_plan_valid && rep.best_plan_wins_a == 1,
              tag + "winning plan valid: " + std::string(rep.best_plan_valid ? "yes" : "no") + ", A wins " +
                  std::to_string(rep.best_plan_wins_a));
    }
    c.check(elapsed < kGeodeltaSeconds, tag + "runtime " + secs(elapsed));

    const auto witness = geodelta_witness_check(inst);
    c.info(tag + "side counts witnessed on " + std::to_string(witness.sides_checked) + " sides, " +
           std::to_string(witness.forced_lower_bounds) + " B-drawn counts proven by forced districts, " +
           std::to_string(witness.failures.size()) + " failures");
    c.info(tag + "if B could cut every group: " + std::string(to_string(rep.all_cut_run.outcome.kind)) + " at k=" +
           std::to_string(rep.all_cut_run.outcome.k) + ", worst A wins " + std::to_string(rep.all_cut_worst_wins_a) +
           ", gap " + rep.all_cut_gap.to_string());
  }
  c.info("with compact districts B cannot cut the last band's group once it lies alone at the top of its side,");
  c.info("so both candidates at k=delta give A one seat and the gap is delta/2 - 1; see the README");
  return c.report(5, "geodelta family outcome and gap");
}

int grid_oracle() {
  Criterion c;
  const auto grids = grid_oracle_sweep(kGridCount, kGridSeed, kDefaultBruteForceCap);
  c.info(std::to_string(grids.grids) + " grids, " + std::to_string(grids.plans_checked) + " plans, " +
         std::to_string(grids.shapes) + " shapes");
  c.check(grids.grids >= 100, "at least 100 grids");
  c.check(grids.mismatches.empty(), std::to_string(grids.mismatches.size()) + " grid mismatches");
  for (const auto& m : grids.mismatches) c.info(m);
  const auto shrunk = shrunk_geodelta_check(kShrunkMaxDelta, kShrunkCap);
  c.info("shrunk construction: " + std::to_string(shrunk.sides_compared) + " sides searched exhaustively (cap " +
         std::to_string(kShrunkCap) + " cells), " + std::to_string(shrunk.witness_sides) + " sides witnessed");
  c.check(shrunk.sides_compared > 0, "shrunk sides compared");
  c.check(shrunk.mismatches.empty(), std::to_string(shrunk.mismatches.size()) + " shrunk mismatches");
  for (const auto& m : shrunk.mismatches) c.info(m);
  return c.report(6, "grid oracle");
}

int determinism() {
  Criterion c;
  const std::vector<std::vector<std::string>> commands = {
      {"example-2gap", "--seed", "2"},
      {"example-2gap", "--seed", "5", "--format", "csv"},
      {"verify", "--count", "200", "--n-max", "12", "--seed", "4"},
      {"geodelta", "--delta", "3", "--seed", "1"},
      {"oracle", "--count", "10", "--oracle-cap", "16", "--delta", "1"},
  };
  for (const auto& args : commands) {
    std::ostringstream out1, err1, out2, err2;
    const int code1 = cli::run_command(args, out1, err1);
    const int code2 = cli::run_command(args, out2, err2);
    std::string line;
    for (const auto& a : args) line += (line.empty() ? "" : " ") + a;
    c.check(code1 == code2 && out1.str() == out2.str() && !out1.str().empty(),
            "'" + line + "' repeated byte-identically (" + std::to_string(out1.str().size()) + " bytes)");
  }
  const auto table = win_table(ValidProfile::make(example_two_gap_profile()));
  const auto prefs = optimal_preferences(table);
  const Assignment canonical[] = {{5, Option::Option1}, {5, Option::Option2}, {6, Option::Option1}, {6, Option::Option2}};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto run = resolve_protocol(table, prefs, seed);
    const auto& got = run.resolved().assignment;
    c.check(got == canonical[seed], "seed " + std::to_string(seed) + " selects k=" + std::to_string(got.k) + " " +
                                        std::string(to_string(got.option)));
  }
  return c.report(7, "determinism");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<int()>> criteria = {example_profile, tightness, sweep, strategy_oracle,
                                                      geodelta,        grid_oracle, determinism};
  if (argc > 1) {
    const int which = std::atoi(argv[1]);
    if (which < 1 || which > static_cast<int>(criteria.size())) {
      std::cerr << "usage: lry_acceptance [1-" << criteria.size() << "]\n";
      return 2;
    }
    return criteria[which - 1]();
  }
  int failed = 0;
  for (const auto& run : criteria) failed += run();
  return failed == 0 ? 0 : 1;
}
