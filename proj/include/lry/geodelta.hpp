#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lry/grid.hpp"
#include "lry/protocol.hpp"

namespace lry {

// A grid family on which the protocol lands far below A's geometric target
// once districts must be compact and simply connected.
//
// The grid is delta bands of `band` rows. In each band, A has full support in
// the top group_rows rows of the first group_cols columns plus the first cell
// of the next row, and none elsewhere. That group is just over half a district.
// Every increment L_k \ L_{k-1} is itself a valid district, so every side has
// at least one valid plan. In order:
//   k = 1 .. delta-1   strips `strip_cols` wide down the left edge of bands
//                      1 .. delta-1, each cutting its band's group;
//   k = delta          the top-left (band/2)-square of the last band, holding
//                      that band's group whole (the "block");
//   then               every other (band/2)-square outside the first band/2
//                      columns, row-major, except the one right of the block;
//   then               the square right of the block (U), the square below
//                      the block (W), and the strips beside the left-edge
//                      strips that complete groups 1 .. delta-1.
//
// Win counts on each side:
//   * A wins a district only by enclosing d/2 + 1 support inside the z rows it
//     spans; those sets are the groups and, in the full layout, a group's
//     extra cell plus the next group's rows. They chain so that A can hold at
//     most one district per group lying wholly on the side, and A reaches that
//     by re-cutting each completed band into (band/2)-squares.
//   * B cuts every group with full-height strips, except the block: while U
//     and W are on the other side, the left-edge strips above the block are
//     forced top-down by the z-row limit, and so is the block itself. Once U
//     is on B's side, two L-shaped districts split the block and U.

struct GeodeltaLayout {
  int band = 20;
  int d = 100;
  int group_rows = 5;
  int group_cols = 10;
  int strip_cols = 5;

  /// The full-size construction: 20-row bands, 100-cell districts, groups of 51.
  static constexpr GeodeltaLayout full() { return {}; }
  /// The same construction shrunk to 4-row bands, 4-cell districts (z = 4) and
  /// groups of 3, small enough for exhaustive search on many sides.
  static constexpr GeodeltaLayout shrunk() { return {4, 4, 1, 2, 1}; }

  [[nodiscard]] constexpr int half() const { return band / 2; }
  [[nodiscard]] constexpr int group_size() const { return group_rows * group_cols + 1; }

  void check() const {
    const int h = band / 2;
    const bool ok = band % 4 == 0 && h * h == d && band * strip_cols == d && 2 * strip_cols == h &&
                    group_cols == h && group_rows >= 1 && 2 * group_rows <= h && 2 * group_size() > d &&
                    2 * (group_rows * strip_cols + 1) <= d;
    if (!ok) throw InputError("geodelta: inconsistent layout");
  }
};

/// Nested splits as increments: increments[k-1] = L_k minus L_{k-1}.
struct GridSplitSequence {
  std::vector<std::vector<Cell>> increments;
};

struct GeodeltaInstance {
  int delta = 0;
  GeodeltaLayout layout;
  GridState grid;
  GridSplitSequence splits;
  std::vector<int> entry;                       // per cell: the k with cell in L_k \ L_{k-1}
  std::vector<std::pair<int, int>> group_span;  // per band: min and max entry over its group
  std::vector<Ratio> left_support;              // x_A(L_k), k = 0..n
  // Split index of each named increment.
  std::vector<int> edge_strip;  // left-edge strip of band b, b < delta - 1
  std::vector<int> twin_strip;  // strip beside it, completing group b
  int block = 0;
  int right_of_block = 0;
  int below_block = 0;

  [[nodiscard]] int n() const { return grid.district_count(); }

  [[nodiscard]] static bool on_side(int entry_k, int k, Side side) { return (entry_k <= k) == (side == Side::L); }

  [[nodiscard]] std::vector<Cell> side_cells(int k, Side side) const {
    std::vector<Cell> out;
    for (const auto& c : grid.all_cells())
      if (on_side(entry[grid.index(c)], k, side)) out.push_back(c);
    return out;
  }

  [[nodiscard]] Ratio side_support(int k, Side side) const {
    return side == Side::L ? left_support.at(k) : left_support.back() - left_support.at(k);
  }

  /// Groups lying wholly on one side of the k-split.
  [[nodiscard]] int intact_groups(int k, Side side) const {
    int count = 0;
    for (const auto& [lo, hi] : group_span) count += side == Side::L ? hi <= k : lo > k;
    return count;
  }

  /// True when the block sits on the side while U and W do not.
  [[nodiscard]] bool block_pinned(int k, Side side) const {
    return on_side(block, k, side) && !on_side(right_of_block, k, side) && !on_side(below_block, k, side);
  }

  /// The plan of (band/2)-square blocks; the top-left block of each band
  /// encloses that band's group, so A wins delta districts.
  [[nodiscard]] DistrictPlan best_plan_for_a() const {
    DistrictPlan plan;
    const int h = layout.half();
    for (int r = 0; r < grid.m(); r += h)
      for (int c = 0; c < grid.m(); c += h) plan.districts.push_back(rect(r, c, h, h));
    return plan;
  }

  /// Full-height strips `strip_cols` wide; every group is cut, so A wins none.
  [[nodiscard]] DistrictPlan worst_plan_for_a() const {
    DistrictPlan plan;
    for (int r = 0; r < grid.m(); r += layout.band)
      for (int c = 0; c < grid.m(); c += layout.strip_cols)
        plan.districts.push_back(rect(r, c, layout.band, layout.strip_cols));
    return plan;
  }

  /// A plan of one side on which A wins exactly geodelta_side_wins when
  /// `districter` draws it. Built from the side's increments: A re-cuts
  /// every completed band into squares; B splits the block together with U.
  [[nodiscard]] std::vector<District> witness_plan(int k, Side side, Party districter) const {
    const int h = layout.half();
    std::vector<bool> replaced(splits.increments.size() + 1, false);
    std::vector<District> plan;
    if (districter == Party::A) {
      for (std::size_t b = 0; b < edge_strip.size(); ++b)
        if (on_side(edge_strip[b], k, side) && on_side(twin_strip[b], k, side)) {
          replaced[edge_strip[b]] = replaced[twin_strip[b]] = true;
          const int r = static_cast<int>(b) * layout.band;
          plan.push_back(rect(r, 0, h, h));
          plan.push_back(rect(r + h, 0, h, h));
        }
    } else if (on_side(block, k, side) && on_side(right_of_block, k, side)) {
      replaced[block] = replaced[right_of_block] = true;
      const int r = (delta - 1) * layout.band, sc = layout.strip_cols, mid = h / 2;
      // First: the block's left strip plus the lower half of the next h columns.
      District first = rect(r, 0, h, sc);
      for (const auto& c : rect(r + mid, sc, h - mid, h)) first.push_back(c);
      // Second: the rest of the block and of U.
      District second = rect(r, sc, mid, 2 * h - sc);
      for (const auto& c : rect(r + mid, sc + h, h - mid, h - sc)) second.push_back(c);
      plan.push_back(std::move(first));
      plan.push_back(std::move(second));
    }
    for (std::size_t i = 1; i <= splits.increments.size(); ++i)
      if (!replaced[i] && on_side(static_cast<int>(i), k, side)) plan.push_back(splits.increments[i - 1]);
    return plan;
  }

  /// Districts every valid plan of the side must contain, found top-down in
  /// each connected component of the side: if the component's cells within
  /// z rows of its topmost remaining cell number exactly d, they are the
  /// district holding that cell. A component is left once this fails.
  [[nodiscard]] std::vector<District> forced_districts(int k, Side side) const {
    const int m = grid.m(), d = grid.d(), z = grid.z();
    std::vector<char> free(static_cast<std::size_t>(m) * m, 0);
    for (const auto& c : grid.all_cells()) free[grid.index(c)] = on_side(entry[grid.index(c)], k, side);
    auto component = [&](int start) {
      std::vector<int> out{start}, stack{start};
      std::vector<char> seen(free.size(), 0);
      seen[start] = 1;
      while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        const int r = i / m, c = i % m;
        const int nbs[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (const auto& nb : nbs) {
          if (nb[0] < 0 || nb[1] < 0 || nb[0] >= m || nb[1] >= m) continue;
          const int j = nb[0] * m + nb[1];
          if (free[j] && !seen[j]) {
            seen[j] = 1;
            out.push_back(j);
            stack.push_back(j);
          }
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    std::vector<District> forced;
    std::vector<char> visited(free.size(), 0);
    for (int start = 0; start < m * m; ++start) {
      if (!free[start] || visited[start]) continue;
      for (int i : component(start)) visited[i] = 1;
      int top = start;
      while (top >= 0) {
        const auto comp = component(top);
        const int row0 = comp.front() / m;
        District part;
        for (int i : comp)
          if (i / m < row0 + z) part.push_back({i / m, i % m});
        if (static_cast<int>(part.size()) != d) break;
        for (const auto& c : part) free[grid.index(c)] = 0;
        forced.push_back(std::move(part));
        top = -1;
        for (int i : comp)
          if (free[i]) {
            top = i;
            break;
          }
      }
    }
    return forced;
  }

  static District rect(int r, int c, int rows, int cols) {
    District out;
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) out.push_back({r + i, c + j});
    return out;
  }
};

inline GeodeltaInstance make_geodelta(int delta, GeodeltaLayout layout = GeodeltaLayout::full()) {
  if (delta < 1) throw InputError("delta must be at least 1, got " + std::to_string(delta));
  if (delta > 60) throw InputError("delta above 60 is not supported, got " + std::to_string(delta));
  layout.check();
  const int m = layout.band * delta, h = layout.half(), sc = layout.strip_cols;
  std::vector<Ratio> cells(static_cast<std::size_t>(m) * m, Ratio(0));
  auto in_group = [&](int r, int c) {
    const int rr = r % layout.band;
    return (rr < layout.group_rows && c < layout.group_cols) || (rr == layout.group_rows && c == 0);
  };
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      if (in_group(r, c)) cells[static_cast<std::size_t>(r) * m + c] = 1;

  GeodeltaInstance inst{delta, layout, GridState::make(m, layout.d, std::move(cells)), {}, {}, {}, {}, {}, {}};
  const auto& grid = inst.grid;
  inst.entry.assign(static_cast<std::size_t>(m) * m, 0);
  auto add = [&](District inc) {
    const int k = static_cast<int>(inst.splits.increments.size()) + 1;
    for (const auto& c : inc) inst.entry[grid.index(c)] = k;
    inst.splits.increments.push_back(std::move(inc));
    return k;
  };
  const int last = layout.band * (delta - 1);
  for (int b = 0; b + 1 < delta; ++b) inst.edge_strip.push_back(add(GeodeltaInstance::rect(b * layout.band, 0, layout.band, sc)));
  inst.block = add(GeodeltaInstance::rect(last, 0, h, h));
  for (int r = 0; r < m; r += h)
    for (int c = h; c < m; c += h)
      if (!(r == last && c == h)) add(GeodeltaInstance::rect(r, c, h, h));
  inst.right_of_block = add(GeodeltaInstance::rect(last, h, h, h));
  inst.below_block = add(GeodeltaInstance::rect(last + h, 0, h, h));
  for (int b = 0; b + 1 < delta; ++b) inst.twin_strip.push_back(add(GeodeltaInstance::rect(b * layout.band, sc, layout.band, sc)));

  inst.group_span.assign(delta, {inst.n() + 1, 0});
  for (const auto& c : grid.all_cells()) {
    if (!in_group(c.row, c.col)) continue;
    auto& [lo, hi] = inst.group_span[c.row / layout.band];
    lo = std::min(lo, inst.entry[grid.index(c)]);
    hi = std::max(hi, inst.entry[grid.index(c)]);
  }
  inst.left_support.push_back(0);
  for (const auto& inc : inst.splits.increments) {
    Ratio s = inst.left_support.back();
    for (const auto& c : inc) s += grid.at(c);
    inst.left_support.push_back(s);
  }
  return inst;
}

/// Districts A wins on one side of the k-split when `districter` draws it:
/// one per intact group when A draws, and only a pinned block when B draws.
inline int geodelta_side_wins(const GeodeltaInstance& inst, int k, Side side, Party districter) {
  if (k < 0 || k > inst.n())
    throw std::out_of_range("split " + std::to_string(k) + " outside [0, " + std::to_string(inst.n()) + "]");
  if (districter == Party::A) return inst.intact_groups(k, side);
  return inst.block_pinned(k, side) ? 1 : 0;
}

inline int geodelta_side_wins(int delta, int k, Side side, Party districter) {
  return geodelta_side_wins(make_geodelta(delta), k, side, districter);
}

/// The same counts under the simpler assumption that B can always cut every
/// group; kept to show which outcome that assumption would predict.
inline int geodelta_side_wins_if_all_cut(const GeodeltaInstance& inst, int k, Side side, Party districter) {
  return districter == Party::A ? inst.intact_groups(k, side) : 0;
}

using SideWinsRule = int (*)(const GeodeltaInstance&, int, Side, Party);

inline WinTable geodelta_win_table(const GeodeltaInstance& inst, SideWinsRule rule = geodelta_side_wins) {
  WinTable t;
  t.n = inst.n();
  for (int k = 0; k <= t.n; ++k) {
    t.a_option1.push_back(rule(inst, k, Side::L, Party::A) + rule(inst, k, Side::R, Party::B));
    t.a_option2.push_back(rule(inst, k, Side::R, Party::A) + rule(inst, k, Side::L, Party::B));
  }
  return t;
}

struct GeodeltaReport {
  int delta = 0;
  int m = 0;
  int d = 0;
  int z = 0;
  int districts = 0;
  Ratio total_support;
  TargetValue geo_a = TargetValue::from_doubled(0);
  WinTable table;
  PreferenceTable preferences;
  ProtocolRun run;
  FairnessReport fairness;
  int worst_wins_a = 0;  // fewest A wins among the candidates the outcome rule could return
  Ratio gap;             // geo(A) - worst_wins_a
  bool exceeds_unconstrained_bound = false;  // gap > 2
  int best_plan_wins_a = 0;
  int worst_plan_wins_a = 0;
  bool best_plan_valid = false;
  bool worst_plan_valid = false;
  // The same run if B could always cut every group.
  ProtocolRun all_cut_run;
  int all_cut_worst_wins_a = 0;
  Ratio all_cut_gap;
};

namespace detail {
inline int worst_candidate(const ProtocolRun& run) {
  int worst = run.candidates.front().wins_a;
  for (const auto& c : run.candidates) worst = std::min(worst, c.wins_a);
  return worst;
}
}  // namespace detail

/// Runs the protocol on the construction with optimal preferences and
/// measures how far A's result can fall below its geometric target.
inline GeodeltaReport geodelta_report(const GeodeltaInstance& inst, std::uint64_t seed) {
  GeodeltaReport rep;
  rep.delta = inst.delta;
  rep.m = inst.grid.m();
  rep.d = inst.grid.d();
  rep.z = inst.grid.z();
  rep.districts = inst.n();
  rep.total_support = inst.grid.total_support();
  rep.table = geodelta_win_table(inst);
  rep.geo_a = rep.table.target(Party::A);
  rep.preferences = optimal_preferences(rep.table);
  rep.run = resolve_protocol(rep.table, rep.preferences, seed);
  rep.fairness = fairness_report(rep.table, rep.run);
  rep.worst_wins_a = detail::worst_candidate(rep.run);
  rep.gap = rep.geo_a.value() - Ratio(rep.worst_wins_a);
  rep.exceeds_unconstrained_bound = rep.gap > Ratio(2);

  const auto best = inst.best_plan_for_a();
  const auto worst = inst.worst_plan_for_a();
  rep.best_plan_valid = validate_plan(inst.grid, best).ok();
  rep.worst_plan_valid = validate_plan(inst.grid, worst).ok();
  rep.best_plan_wins_a = count_wins(inst.grid, best.districts, Party::A);
  rep.worst_plan_wins_a = count_wins(inst.grid, worst.districts, Party::A);

  const auto all_cut = geodelta_win_table(inst, geodelta_side_wins_if_all_cut);
  rep.all_cut_run = resolve_protocol(all_cut, optimal_preferences(all_cut), seed);
  rep.all_cut_worst_wins_a = detail::worst_candidate(rep.all_cut_run);
  rep.all_cut_gap = all_cut.target(Party::A).value() - Ratio(rep.all_cut_worst_wins_a);
  return rep;
}

inline GeodeltaReport geodelta_report(int delta, std::uint64_t seed) { return geodelta_report(make_geodelta(delta), seed); }

/// Checks every side count against constructive evidence: the witness plan
/// must be a valid plan of exactly the side's cells on which A wins the
/// claimed count, and when B draws, the districts forced on every plan must
/// already give A that many wins.
struct GeodeltaWitnessCheck {
  int sides_checked = 0;
  int forced_lower_bounds = 0;  // B-drawn sides where forcing proves the count
  std::vector<std::string> failures;
};

inline GeodeltaWitnessCheck geodelta_witness_check(const GeodeltaInstance& inst) {
  GeodeltaWitnessCheck out;
  const auto& grid = inst.grid;
  std::vector<int> owner(grid.cells().size());
  for (int k = 0; k <= inst.n(); ++k)
    for (Side side : {Side::L, Side::R})
      for (Party districter : {Party::A, Party::B}) {
        const int claimed = geodelta_side_wins(inst, k, side, districter);
        const auto plan = inst.witness_plan(k, side, districter);
        auto fail = [&](const std::string& what) {
          out.failures.push_back("k " + std::to_string(k) + ", side " + to_char(side) + ", districter " +
                                 to_char(districter) + ": " + what);
        };
        ++out.sides_checked;
        std::fill(owner.begin(), owner.end(), 0);
        bool ok = true;
        for (const auto& district : plan) {
          if (auto issues = district_issues(grid, district); !issues.empty()) {
            fail("witness district " + issues.front());
            ok = false;
          }
          for (const auto& c : district)
            if (grid.contains(c)) ++owner[grid.index(c)];
        }
        for (const auto& c : grid.all_cells()) {
          const bool want = GeodeltaInstance::on_side(inst.entry[grid.index(c)], k, side);
          if (owner[grid.index(c)] != (want ? 1 : 0)) ok = false;
        }
        if (!ok) {
          fail("witness plan does not partition the side");
          continue;
        }
        const int got = count_wins(grid, plan, Party::A);
        if (got != claimed) fail("witness gives A " + std::to_string(got) + ", claimed " + std::to_string(claimed));
        if (districter == Party::B && claimed > 0) {
          const int pinned = count_wins(grid, inst.forced_districts(k, side), Party::A);
          if (pinned < claimed)
            fail("forced districts give A only " + std::to_string(pinned) + ", claimed " + std::to_string(claimed));
          else
            ++out.forced_lower_bounds;
        }
      }
  return out;
}

/// Cross-checks geodelta_side_wins against exhaustive search on every side of
/// at most `cap` cells, for both districters. Exhaustive search has the
/// districter maximize its own wins and then minimize the other party's.
struct GeodeltaCrossCheck {
  int sides_compared = 0;
  int sides_without_plan = 0;
  long plans_enumerated = 0;
  std::vector<std::string> mismatches;
};

inline GeodeltaCrossCheck geodelta_crosscheck(const GeodeltaInstance& inst, int cap = kDefaultBruteForceCap) {
  GeodeltaCrossCheck out;
  for (int k = 0; k <= inst.n(); ++k)
    for (Side side : {Side::L, Side::R}) {
      const auto cells = inst.side_cells(k, side);
      if (cells.empty() || static_cast<int>(cells.size()) > cap) continue;
      for (Party districter : {Party::A, Party::B}) {
        SideSolution sol;
        try {
          sol = solve_side_bruteforce(inst.grid, cells, districter, cap);
        } catch (const InputError&) {
          ++out.sides_without_plan;
          continue;
        }
        ++out.sides_compared;
        out.plans_enumerated += sol.plans;
        const int brute_a = districter == Party::A ? sol.districter_wins : sol.opponent_wins;
        const int analytic = geodelta_side_wins(inst, k, side, districter);
        if (brute_a != analytic)
          out.mismatches.push_back("delta " + std::to_string(inst.delta) + ", k " + std::to_string(k) + ", side " +
                                   to_char(side) + ", districter " + to_char(districter) + ": analytic " +
                                   std::to_string(analytic) + ", exhaustive " + std::to_string(brute_a));
      }
    }
  return out;
}

}  // namespace lry
