#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lry/model.hpp"
#include "lry/ratio.hpp"

namespace lry {

/// floor(sqrt(n)), exact for every 64-bit input.
constexpr std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  // Newton's iteration from above converges monotonically to the floor.
  std::uint64_t x = n;
  std::uint64_t y = x / 2 + (x & 1);
  while (y < x) {
    x = y;
    y = (x + n / x) / 2;
  }
  return x;
}

/// z = floor(2 sqrt(d)) = isqrt(4d): the side of the square a district must
/// fit inside.
constexpr int compactness_bound(int d) { return static_cast<int>(isqrt(4ULL * static_cast<std::uint64_t>(d))); }

/// Zero-based grid coordinate; row 0 is the top row.
struct Cell {
  int row = 0;
  int col = 0;
  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

using District = std::vector<Cell>;

struct DistrictPlan {
  std::vector<District> districts;
};

/// An m x m grid of per-cell support for A, with districts of d cells.
class GridState {
 public:
  static GridState make(int m, int d, std::vector<Ratio> cells) {
    if (m < 1) throw InputError("grid: m must be positive, got " + std::to_string(m));
    if (d < 1) throw InputError("grid: d must be positive, got " + std::to_string(d));
    if ((static_cast<long>(m) * m) % d != 0)
      throw InputError("grid: d = " + std::to_string(d) + " does not divide m^2 = " + std::to_string(long(m) * m));
    if (cells.size() != static_cast<std::size_t>(m) * m)
      throw InputError("grid: expected " + std::to_string(long(m) * m) + " cells, got " + std::to_string(cells.size()));
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (cells[i] < Ratio(0) || cells[i] > Ratio(1))
        throw InputError("grid: cell (" + std::to_string(i / m + 1) + ", " + std::to_string(i % m + 1) +
                         ") support " + cells[i].to_string() + " outside [0, 1]");
    const int z = compactness_bound(d);
    if (static_cast<long>(z) * z < d) throw InputError("grid: no district of d cells fits in a z x z square");
    return GridState(m, d, std::move(cells));
  }

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int d() const { return d_; }
  [[nodiscard]] int z() const { return compactness_bound(d_); }
  [[nodiscard]] int district_count() const { return m_ * m_ / d_; }
  [[nodiscard]] bool contains(Cell c) const { return c.row >= 0 && c.col >= 0 && c.row < m_ && c.col < m_; }
  [[nodiscard]] const Ratio& at(Cell c) const { return cells_[index(c)]; }
  [[nodiscard]] std::size_t index(Cell c) const { return static_cast<std::size_t>(c.row) * m_ + c.col; }
  [[nodiscard]] const std::vector<Ratio>& cells() const { return cells_; }

  [[nodiscard]] Ratio total_support() const {
    Ratio s = 0;
    for (const auto& c : cells_) s += c;
    return s;
  }

  [[nodiscard]] std::vector<Cell> all_cells() const {
    std::vector<Cell> out;
    out.reserve(cells_.size());
    for (int r = 0; r < m_; ++r)
      for (int c = 0; c < m_; ++c) out.push_back({r, c});
    return out;
  }

 private:
  GridState(int m, int d, std::vector<Ratio> cells) : m_(m), d_(d), cells_(std::move(cells)) {}
  int m_;
  int d_;
  std::vector<Ratio> cells_;
};

/// Party support inside a set of cells; B holds 1 - a in every cell.
inline Ratio district_support(const GridState& grid, const District& district, Party party) {
  Ratio a = 0;
  for (const auto& c : district) a += grid.at(c);
  return party == Party::A ? a : Ratio(static_cast<std::int64_t>(district.size())) - a;
}

namespace detail {

// Marks cells on a bitmap over the bounding box grown by one cell, then checks
// 4-connectivity of the district and that every complement cell in the box
// reaches the border (no holes).
struct Footprint {
  int r0, c0, h, w;
  std::vector<char> mark;  // 0 empty, 1 district, 2 reached
  char& at(int r, int c) { return mark[static_cast<std::size_t>(r - r0 + 1) * w + (c - c0 + 1)]; }
};

inline std::size_t flood(std::vector<char>& mark, int h, int w, int start, char from, char to) {
  std::vector<int> stack{start};
  mark[start] = to;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    const int r = i / w, c = i % w;
    const int nbs[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
    for (const auto& nb : nbs) {
      if (nb[0] < 0 || nb[1] < 0 || nb[0] >= h || nb[1] >= w) continue;
      const int j = nb[0] * w + nb[1];
      if (mark[j] == from) {
        mark[j] = to;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached;
}

}  // namespace detail

/// Reasons a single district breaks the constraints; empty when it is valid.
/// A valid district has exactly d distinct in-grid cells, is 4-connected, has
/// no holes, and its bounding box is at most z by z.
inline std::vector<std::string> district_issues(const GridState& grid, const District& district) {
  std::vector<std::string> issues;
  auto where = [](Cell c) { return "(" + std::to_string(c.row + 1) + ", " + std::to_string(c.col + 1) + ")"; };
  if (static_cast<int>(district.size()) != grid.d())
    issues.push_back("has " + std::to_string(district.size()) + " cells, expected " + std::to_string(grid.d()));
  int r0 = std::numeric_limits<int>::max(), c0 = r0, r1 = -1, c1 = -1;
  std::size_t inside = 0;
  for (const auto& c : district) {
    if (!grid.contains(c)) {
      issues.push_back("cell " + where(c) + " outside the grid");
      continue;
    }
    ++inside;
    r0 = std::min(r0, c.row);
    r1 = std::max(r1, c.row);
    c0 = std::min(c0, c.col);
    c1 = std::max(c1, c.col);
  }
  if (inside == 0) return issues;
  detail::Footprint fp{r0, c0, r1 - r0 + 3, c1 - c0 + 3, {}};
  fp.mark.assign(static_cast<std::size_t>(fp.h) * fp.w, 0);
  std::size_t distinct = 0;
  Cell first{};
  for (const auto& c : district) {
    if (!grid.contains(c)) continue;
    char& m = fp.at(c.row, c.col);
    if (m) {
      issues.push_back("cell " + where(c) + " repeated");
      continue;
    }
    m = 1;
    if (distinct++ == 0) first = c;
  }
  const int start = (first.row - r0 + 1) * fp.w + (first.col - c0 + 1);
  if (detail::flood(fp.mark, fp.h, fp.w, start, 1, 3) != distinct) issues.emplace_back("not connected");
  const std::size_t empty = fp.mark.size() - distinct;
  if (detail::flood(fp.mark, fp.h, fp.w, 0, 0, 2) != empty) issues.emplace_back("has a hole");
  const int z = grid.z();
  if (r1 - r0 + 1 > z || c1 - c0 + 1 > z)
    issues.push_back("bounding box " + std::to_string(r1 - r0 + 1) + "x" + std::to_string(c1 - c0 + 1) +
                     " exceeds " + std::to_string(z) + "x" + std::to_string(z));
  return issues;
}

struct PlanViolation {
  int district = -1;  // -1 for plan-level problems
  std::string message;
};

struct PlanValidation {
  std::vector<PlanViolation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// A plan is valid when its districts partition the grid and each district
/// passes district_issues.
inline PlanValidation validate_plan(const GridState& grid, const DistrictPlan& plan) {
  PlanValidation out;
  if (static_cast<int>(plan.districts.size()) != grid.district_count())
    out.violations.push_back({-1, "plan has " + std::to_string(plan.districts.size()) + " districts, expected " +
                                      std::to_string(grid.district_count())});
  std::vector<int> owner(static_cast<std::size_t>(grid.m()) * grid.m(), -1);
  for (int i = 0; i < static_cast<int>(plan.districts.size()); ++i) {
    for (auto& issue : district_issues(grid, plan.districts[i])) out.violations.push_back({i, std::move(issue)});
    for (const auto& c : plan.districts[i]) {
      if (!grid.contains(c)) continue;
      auto& o = owner[grid.index(c)];
      if (o >= 0 && o != i)
        out.violations.push_back({i, "cell (" + std::to_string(c.row + 1) + ", " + std::to_string(c.col + 1) +
                                         ") also in district " + std::to_string(o)});
      else
        o = i;
    }
  }
  const auto uncovered = std::count(owner.begin(), owner.end(), -1);
  if (uncovered > 0) out.violations.push_back({-1, std::to_string(uncovered) + " cells belong to no district"});
  return out;
}

/// Districts where the party's support strictly exceeds d/2.
inline int count_wins(const GridState& grid, const std::vector<District>& districts, Party party) {
  const Ratio half(grid.d(), 2);
  int wins = 0;
  for (const auto& d : districts) wins += district_support(grid, d, party) > half;
  return wins;
}

inline int count_wins(const GridState& grid, const DistrictPlan& plan, Party party) {
  if (auto v = validate_plan(grid, plan); !v.ok())
    throw InputError("count_wins: invalid plan: " + v.violations.front().message);
  return count_wins(grid, plan.districts, party);
}

inline constexpr int kDefaultBruteForceCap = 16;

/// Calls `visit` with every partition of `region` into valid districts and
/// returns how many there were. The region may have any shape; it need not
/// be connected. Throws InputError if the region exceeds `cap` cells (at
/// most 64), is not a multiple of d, or has cells outside the grid or twice.
inline long enumerate_plans(const GridState& grid, const std::vector<Cell>& region, int cap,
                            const std::function<void(const std::vector<District>&)>& visit) {
  if (cap > 64) throw InputError("brute-force cap above 64 cells is not supported");
  if (static_cast<int>(region.size()) > cap)
    throw InputError("region of " + std::to_string(region.size()) + " cells exceeds brute-force cap " +
                     std::to_string(cap));
  if (region.size() % grid.d() != 0)
    throw InputError("region of " + std::to_string(region.size()) + " cells is not a multiple of d = " +
                     std::to_string(grid.d()));
  std::vector<Cell> cells(region);
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end()) throw InputError("region repeats a cell");
  for (const auto& c : cells)
    if (!grid.contains(c)) throw InputError("region cell outside the grid");

  const int count = static_cast<int>(cells.size());
  std::vector<std::uint64_t> nbr(count, 0);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j)
      if (std::abs(cells[i].row - cells[j].row) + std::abs(cells[i].col - cells[j].col) == 1) nbr[i] |= 1ULL << j;

  const int d = grid.d();
  std::vector<District> chosen;
  long plans = 0;
  auto to_district = [&](std::uint64_t mask) {
    District out;
    for (; mask; mask &= mask - 1) out.push_back(cells[std::countr_zero(mask)]);
    return out;
  };

  std::function<void(std::uint64_t)> partition;
  // Connected subsets of `free` with d cells containing the lowest free cell,
  // each produced once (Redelmeier's extension scheme).
  std::function<void(std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t, int)> grow =
      [&](std::uint64_t free, std::uint64_t set, std::uint64_t untried, std::uint64_t seen, int size) {
        while (untried) {
          const int v = std::countr_zero(untried);
          untried &= untried - 1;
          const std::uint64_t next = set | (1ULL << v);
          if (size + 1 == d) {
            District district = to_district(next);
            if (!district_issues(grid, district).empty()) continue;
            chosen.push_back(std::move(district));
            partition(free & ~next);
            chosen.pop_back();
          } else {
            const std::uint64_t fresh = nbr[v] & free & ~seen;
            grow(free, next, untried | fresh, seen | fresh, size + 1);
          }
        }
      };
  partition = [&](std::uint64_t free) {
    if (free == 0) {
      ++plans;
      visit(chosen);
      return;
    }
    const int root = std::countr_zero(free);
    const std::uint64_t root_bit = 1ULL << root;
    grow(free, 0, root_bit, root_bit, 0);
  };
  const std::uint64_t all = count == 64 ? ~0ULL : (1ULL << count) - 1;
  partition(all);
  return plans;
}

/// The districter's best plan for a region: most districts won by the
/// districter, ties broken toward fewest won by the other party.
struct SideSolution {
  long plans = 0;
  int districter_wins = 0;
  int opponent_wins = 0;
  DistrictPlan witness;
};

inline SideSolution solve_side_bruteforce(const GridState& grid, const std::vector<Cell>& region, Party districter,
                                          int cap = kDefaultBruteForceCap) {
  SideSolution best;
  bool found = false;
  best.plans = enumerate_plans(grid, region, cap, [&](const std::vector<District>& plan) {
    const int own = count_wins(grid, plan, districter);
    const int opp = count_wins(grid, plan, opponent(districter));
    if (!found || own > best.districter_wins || (own == best.districter_wins && opp < best.opponent_wins)) {
      found = true;
      best.districter_wins = own;
      best.opponent_wins = opp;
      best.witness.districts = plan;
    }
  });
  if (region.empty()) return best;
  if (!found) throw InputError("region admits no valid district plan");
  return best;
}

/// Most districts `party` can win over all valid plans of `region`.
inline int max_wins_bruteforce(const GridState& grid, const std::vector<Cell>& region, Party party,
                               int cap = kDefaultBruteForceCap) {
  return solve_side_bruteforce(grid, region, party, cap).districter_wins;
}

}  // namespace lry
