// Runs the protocol on a small profile, then checks a grid plan and asks the
// exhaustive search for each party's best plan.
#include <iostream>

#include "lry/lry.hpp"

int main() {
  using namespace lry;

  const auto profile = ValidProfile::make(example_two_gap_profile());
  const auto table = win_table(profile);
  const auto run = resolve_protocol(table, optimal_preferences(table), 3);
  const auto fairness = fairness_report(table, run);
  const auto& got = run.resolved();
  std::cout << "outcome " << to_string(run.outcome.kind) << " at k = " << run.outcome.k << '\n'
            << "A wins " << got.wins_a << " of " << run.n << ", geo(A) = " << table.target(Party::A).value().to_string()
            << ", bounds hold: " << (fairness.all_bounds_hold() ? "yes" : "no") << '\n';

  std::vector<Ratio> cells(16, Ratio(0));
  for (int c = 0; c < 3; ++c) cells[c] = cells[8 + c] = 1;
  const auto grid = GridState::make(4, 4, cells);
  DistrictPlan rows;
  for (int r = 0; r < 4; ++r) rows.districts.push_back({{r, 0}, {r, 1}, {r, 2}, {r, 3}});
  if (!validate_plan(grid, rows).ok()) return 1;
  std::cout << "row plan: A wins " << count_wins(grid, rows, Party::A) << '\n';
  for (Party p : {Party::A, Party::B}) {
    const auto best = solve_side_bruteforce(grid, grid.all_cells(), p);
    std::cout << "best for " << to_char(p) << ": " << best.districter_wins << " of " << grid.district_count() << " ("
              << best.plans << " plans searched)\n";
  }
  return fairness.all_bounds_hold() && got.wins_a == 2 ? 0 : 1;
}
