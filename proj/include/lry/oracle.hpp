#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <vector>

#include "lry/geodelta.hpp"
#include "lry/grid.hpp"
#include "lry/model.hpp"
#include "lry/rng.hpp"
#include "lry/strategy.hpp"

namespace lry {

/// Exhaustive optimum over every way to spread a party's support across the
/// districts of one side. The side's support is `units`/granularity; each
/// district's share is placed on the finer grid 1/(granularity * size) so that
/// a share just above one half is always representable. A district is won by
/// strictly more than half of it. Exponential in side size; for validation only.
struct AllocationOutcome {
  int max_party_wins = 0;     // party draws the side
  int min_party_wins = 0;     // adversarial drawing
  int max_opponent_wins = 0;  // opponent draws the side
  long allocations = 0;
};

inline AllocationOutcome allocation_oracle(int size, int units, int granularity = 20) {
  if (size < 1 || units < 0 || units > size * granularity)
    throw std::invalid_argument("allocation_oracle: bad side (size " + std::to_string(size) + ", units " +
                                std::to_string(units) + ")");
  AllocationOutcome out;
  out.min_party_wins = size + 1;
  const int capacity = granularity * size;
  const int total = units * size;
  std::vector<int> share(size);
  // Non-decreasing shares are enough: win counts ignore district order.
  std::function<void(int, int, int)> place = [&](int i, int left, int floor_share) {
    if (i == size - 1) {
      if (left < floor_share || left > capacity) return;
      share[i] = left;
      int mine = 0, theirs = 0;
      for (int c : share) {
        mine += 2 * c > capacity;
        theirs += 2 * (capacity - c) > capacity;
      }
      ++out.allocations;
      out.max_party_wins = std::max(out.max_party_wins, mine);
      out.min_party_wins = std::min(out.min_party_wins, mine);
      out.max_opponent_wins = std::max(out.max_opponent_wins, theirs);
      return;
    }
    const int remaining = size - i;
    for (int c = floor_share; c <= capacity && c * remaining <= left; ++c) {
      share[i] = c;
      place(i + 1, left - c, c);
    }
  };
  place(0, total, 0);
  return out;
}

/// Builds a valid profile whose side L_size carries exactly `units` of A's
/// support, so the oracle can be compared through the profile API. Returns
/// nothing when no layout tried satisfies the half-integer convention.
inline std::optional<ValidProfile> profile_with_left_side(int size, int units, int granularity = 20) {
  for (int spread = 0; spread < granularity; ++spread) {
    std::vector<int> parts(size, units / size);
    for (int i = 0; i < units % size; ++i) ++parts[i];
    // Shift units between neighbours to move prefix sums off multiples of 1/2.
    for (int i = 0; i + 1 < size && spread > 0; ++i) {
      const int move = std::min({spread, parts[i + 1], granularity - parts[i]});
      parts[i] += move;
      parts[i + 1] -= move;
    }
    for (int tail = 1; tail < granularity; ++tail) {
      SplitProfile p;
      p.n = size + 1;
      for (int u : parts) p.segments_a.emplace_back(u, granularity);
      p.segments_a.emplace_back(tail, granularity);
      if (validate_profile(p).ok()) return ValidProfile::make(std::move(p));
    }
  }
  return std::nullopt;
}

struct OracleMismatch {
  int size = 0;
  int units = 0;
  std::string detail;
};

struct StrategyOracleReport {
  long sides = 0;            // (size, units) pairs compared
  long via_profile = 0;      // of those, also compared through a ValidProfile
  long allocations = 0;      // allocations enumerated
  std::vector<OracleMismatch> mismatches;
};

/// Compares the closed forms against allocation_oracle for every side of at
/// most max_size districts and every support on the 1/granularity grid that
/// is not a multiple of 1/2.
inline StrategyOracleReport strategy_oracle_sweep(int max_size = 4, int granularity = 20) {
  StrategyOracleReport report;
  for (int size = 1; size <= max_size; ++size) {
    for (int units = 0; units <= size * granularity; ++units) {
      if ((2 * units) % granularity == 0) continue;
      const auto oracle = allocation_oracle(size, units, granularity);
      report.allocations += oracle.allocations;
      ++report.sides;
      const Ratio own(units, granularity);
      const Ratio other(size * granularity - units, granularity);
      auto fail = [&](const std::string& what) { report.mismatches.push_back({size, units, what}); };
      const int districting = districter_wins(own, size);
      const int opposed = non_districter_wins(own, other);
      if (districting != oracle.max_party_wins)
        fail("districting: formula " + std::to_string(districting) + ", oracle " + std::to_string(oracle.max_party_wins));
      if (opposed != size - oracle.max_opponent_wins)
        fail("opposed: formula " + std::to_string(opposed) + ", oracle complement " +
             std::to_string(size - oracle.max_opponent_wins));
      if (opposed != oracle.min_party_wins)
        fail("opposed: formula " + std::to_string(opposed) + ", oracle minimum " + std::to_string(oracle.min_party_wins));
      if (auto profile = profile_with_left_side(size, units, granularity)) {
        ++report.via_profile;
        if (wins_when_districting(*profile, Party::A, left(size)) != oracle.max_party_wins)
          fail("wins_when_districting disagrees with oracle");
        if (wins_when_opponent_districts(*profile, Party::A, left(size)) != size - oracle.max_opponent_wins)
          fail("wins_when_opponent_districts disagrees with oracle");
      }
    }
  }
  return report;
}

/// Every partition of the whole grid into valid districts, found without the
/// connected-growth search: each district is an arbitrary d-subset holding
/// the lowest free cell, kept only if district_issues accepts it. Districts
/// and plans come back sorted so that plan sets can be compared.
inline std::set<std::vector<District>> plans_by_subsets(const GridState& grid) {
  std::set<std::vector<District>> out;
  const auto cells = grid.all_cells();
  const int count = static_cast<int>(cells.size());
  std::vector<bool> used(count, false);
  std::vector<District> chosen;
  std::function<void()> next_district = [&]() {
    int root = 0;
    while (root < count && used[root]) ++root;
    if (root == count) {
      auto plan = chosen;
      std::sort(plan.begin(), plan.end());
      out.insert(std::move(plan));
      return;
    }
    District d{cells[root]};
    used[root] = true;
    std::function<void(int)> pick = [&](int from) {
      if (static_cast<int>(d.size()) == grid.d()) {
        if (!district_issues(grid, d).empty()) return;
        chosen.push_back(d);
        next_district();
        chosen.pop_back();
        return;
      }
      for (int i = from; i < count; ++i) {
        if (used[i]) continue;
        used[i] = true;
        d.push_back(cells[i]);
        pick(i + 1);
        d.pop_back();
        used[i] = false;
      }
    };
    pick(root + 1);
    used[root] = false;
  };
  next_district();
  return out;
}

struct GridOracleReport {
  int grids = 0;
  long plans_checked = 0;
  int shapes = 0;  // (m, d) pairs whose plan sets were compared
  std::vector<std::string> mismatches;
};

/// Random grids with m in {2, 4} and d in {2, 4}, cell supports in quarters.
/// Checks that the search enumerates exactly the plans found by subset
/// filtering, that every plan passes validate_plan, and that the reported
/// maximum for each party is attained by the witness and by no plan beyond.
inline GridOracleReport grid_oracle_sweep(int grids, std::uint64_t seed, int cap = kDefaultBruteForceCap) {
  GridOracleReport report;
  std::map<std::pair<int, int>, std::set<std::vector<District>>> reference;
  for (int i = 0; i < grids; ++i) {
    Rng rng(sub_seed(seed, static_cast<std::uint64_t>(i)));
    const int m = rng.chance(1, 2) ? 2 : 4;
    const int d = rng.chance(1, 2) ? 2 : 4;
    if (m * m > cap) continue;
    std::vector<Ratio> cells;
    for (int c = 0; c < m * m; ++c) cells.emplace_back(rng.uniform(0, 4), 4);
    const auto grid = GridState::make(m, d, std::move(cells));
    ++report.grids;
    auto fail = [&](const std::string& what) {
      report.mismatches.push_back("grid " + std::to_string(i) + " (m " + std::to_string(m) + ", d " +
                                  std::to_string(d) + "): " + what);
    };
    auto [it, fresh] = reference.try_emplace({m, d});
    if (fresh) {
      it->second = plans_by_subsets(grid);
      ++report.shapes;
    }
    const auto& expected = it->second;
    std::set<std::vector<District>> found;
    int best[2] = {0, 0};
    enumerate_plans(grid, grid.all_cells(), cap, [&](const std::vector<District>& plan) {
      ++report.plans_checked;
      std::vector<District> sorted;
      for (auto dist : plan) {
        std::sort(dist.begin(), dist.end());
        sorted.push_back(std::move(dist));
      }
      std::sort(sorted.begin(), sorted.end());
      if (!found.insert(sorted).second) fail("plan enumerated twice");
      if (!validate_plan(grid, DistrictPlan{plan}).ok()) fail("enumerated plan fails validate_plan");
      best[0] = std::max(best[0], count_wins(grid, plan, Party::A));
      best[1] = std::max(best[1], count_wins(grid, plan, Party::B));
    });
    if (found != expected)
      fail("search found " + std::to_string(found.size()) + " plans, subset filtering " +
           std::to_string(expected.size()));
    int reference_best[2] = {0, 0};
    for (const auto& plan : expected)
      for (int p = 0; p < 2; ++p)
        reference_best[p] = std::max(reference_best[p], count_wins(grid, plan, p == 0 ? Party::A : Party::B));
    for (Party party : {Party::A, Party::B}) {
      const int p = party == Party::A ? 0 : 1;
      const auto sol = solve_side_bruteforce(grid, grid.all_cells(), party, cap);
      if (sol.districter_wins != best[p] || sol.districter_wins != reference_best[p])
        fail(std::string("max wins for ") + to_char(party) + " is " + std::to_string(sol.districter_wins) +
             ", plans give " + std::to_string(reference_best[p]));
      if (!validate_plan(grid, sol.witness).ok() || count_wins(grid, sol.witness, party) != sol.districter_wins)
        fail(std::string("witness for ") + to_char(party) + " does not attain the maximum");
    }
  }
  return report;
}

/// Exhaustive cross-check of the construction's side counts on the shrunk
/// layout for delta = 1..max_delta, plus the constructive witness check.
struct ShrunkGeodeltaReport {
  int sides_compared = 0;
  int witness_sides = 0;
  std::vector<std::string> mismatches;
};

inline ShrunkGeodeltaReport shrunk_geodelta_check(int max_delta = 4, int cap = kDefaultBruteForceCap) {
  ShrunkGeodeltaReport out;
  for (int delta = 1; delta <= max_delta; ++delta) {
    const auto inst = make_geodelta(delta, GeodeltaLayout::shrunk());
    const auto cross = geodelta_crosscheck(inst, cap);
    out.sides_compared += cross.sides_compared;
    for (const auto& m : cross.mismatches) out.mismatches.push_back(m);
    if (cross.sides_without_plan > 0)
      out.mismatches.push_back("delta " + std::to_string(delta) + ": " + std::to_string(cross.sides_without_plan) +
                               " sides admit no plan");
    const auto witness = geodelta_witness_check(inst);
    out.witness_sides += witness.sides_checked;
    for (const auto& f : witness.failures) out.mismatches.push_back("delta " + std::to_string(delta) + ", " + f);
  }
  return out;
}

}  // namespace lry
