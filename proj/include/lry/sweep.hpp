#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lry/model.hpp"
#include "lry/protocol.hpp"
#include "lry/rng.hpp"
#include "lry/strategy.hpp"
#include "lry/targets.hpp"

namespace lry {

// Invariant names used in sweep reports.
namespace inv {
inline constexpr const char* kSupportSplit = "support_split";            // x_P(L_k) + x_P(R_k) = x_P
inline constexpr const char* kSegmentDifference = "segment_difference";  // x_P(L_k) - x_P(L_{k-1}) = x_P(k)
inline constexpr const char* kFloorCeilIdentity = "floor_ceil_identity";
inline constexpr const char* kFloorCeilBounds = "floor_ceil_bounds";
inline constexpr const char* kConservation = "conservation";
inline constexpr const char* kLeftMinorityStep = "left_minority_step";
inline constexpr const char* kLeftMajorityStep = "left_majority_step";
inline constexpr const char* kRightMinorityStep = "right_minority_step";
inline constexpr const char* kRightMajorityStep = "right_majority_step";
inline constexpr const char* kLeftMonotone = "left_total_monotone";
inline constexpr const char* kRightMonotone = "right_total_monotone";
inline constexpr const char* kTargetClosedForm = "target_closed_form";
inline constexpr const char* kTargetGap = "target_vs_split_target";
inline constexpr const char* kGoodChoice = "good_choice";
inline constexpr const char* kSplitTargetSum = "split_target_sum";
inline constexpr const char* kOpposition = "shared_model_opposition";
inline constexpr const char* kCrossingDirection = "crossing_direction";
inline constexpr const char* kOutcomeExists = "outcome_exists";
inline constexpr const char* kCoinFlipGap = "coin_flip_gap_at_most_3";
inline constexpr const char* kSplitTargetBound = "split_target_bound_3_2";
inline constexpr const char* kTargetBound = "target_bound_2";
inline constexpr const char* kSatisfiedParty = "non_coin_flip_meets_split_target";
inline constexpr const char* kDeterminism = "determinism";
}  // namespace inv

struct Violation {
  std::string invariant;
  std::string detail;
};

/// Checks every invariant that involves a single profile and its protocol run
/// under optimal preferences.
struct ProfileCheck {
  std::uint64_t checks = 0;
  std::vector<Violation> violations;
  std::optional<Classification> outcome;
};

inline ProfileCheck check_profile(const ValidProfile& profile) {
  ProfileCheck out;
  const int n = profile.n();
  auto expect = [&](bool ok, const char* name, const std::string& detail) {
    ++out.checks;
    if (!ok) out.violations.push_back({name, detail});
  };
  auto at = [](const std::string& what, int k) { return std::string(what) + " at k=" + std::to_string(k); };

  for (Party p : {Party::A, Party::B}) {
    const std::string tag = std::string("P=") + to_char(p) + ", ";
    const Ratio total = profile.total_support(p);
    for (int k = 0; k <= n; ++k) {
      expect(side_support(profile, p, left(k)) + side_support(profile, p, right(k)) == total, inv::kSupportSplit,
             tag + at("left+right support", k));
      for (Side s : {Side::L, Side::R}) {
        const SideRef side{s, k};
        const Ratio own = side_support(profile, p, side);
        const Ratio opp = side_support(profile, opponent(p), side);
        expect(districter_wins(own, side.size(n)) + non_districter_wins(opp, own) == side.size(n),
               inv::kFloorCeilIdentity, tag + at(s == Side::L ? "left side" : "right side", k));
        expect(total_wins(profile, p, side) + total_wins(profile, opponent(p), side.complement()) == n,
               inv::kConservation, tag + at(s == Side::L ? "L" : "R", k));
      }
    }
    for (int k = 1; k <= n; ++k) {
      const Ratio seg = segment_support(profile, p, k);
      expect(side_support(profile, p, left(k)) - side_support(profile, p, left(k - 1)) == seg,
             inv::kSegmentDifference, tag + at("segment", k));
      const int dl = wins_when_districting(profile, p, left(k)) - wins_when_districting(profile, p, left(k - 1));
      const int dr = wins_when_opponent_districts(profile, p, right(k)) -
                     wins_when_opponent_districts(profile, p, right(k - 1));
      const Ratio half(1, 2);
      if (seg < half) {
        expect(dl >= 0 && dl <= 1, inv::kLeftMinorityStep, tag + at("step " + std::to_string(dl), k));
        expect(dr >= 0 && dr <= 1, inv::kRightMinorityStep, tag + at("step " + std::to_string(dr), k));
      } else if (seg > half) {
        expect(dl >= 1 && dl <= 2, inv::kLeftMajorityStep, tag + at("step " + std::to_string(dl), k));
        expect(dr >= -1 && dr <= 0, inv::kRightMajorityStep, tag + at("step " + std::to_string(dr), k));
      }
      const int l0 = total_wins(profile, p, left(k - 1)), l1 = total_wins(profile, p, left(k));
      const int r0 = total_wins(profile, p, right(k - 1)), r1 = total_wins(profile, p, right(k));
      expect(l0 <= l1 && l1 <= l0 + 2, inv::kLeftMonotone, tag + at("L totals", k));
      expect(r1 <= r0 && r0 <= r1 + 2, inv::kRightMonotone, tag + at("R totals", k));
    }

    const TargetValue geo = geometric_target(profile, p);
    expect(geo == geometric_target_from_extremes(profile, p), inv::kTargetClosedForm,
           tag + "closed form " + geo.value().to_string() + " vs extremes " +
               geometric_target_from_extremes(profile, p).value().to_string());
    for (int k = 0; k <= n; ++k) {
      const TargetValue gk = k_split_target(profile, p, k);
      const auto gap = geo.doubled() - gk.doubled();
      expect(gap >= -1 && gap <= 1, inv::kTargetGap, tag + at("geo - geo_k = " + Ratio(gap, 2).to_string(), k));
      const int best = std::max(total_wins(profile, p, left(k)), total_wins(profile, p, right(k)));
      expect(2 * best >= gk.doubled(), inv::kGoodChoice, tag + at("best option below geo_k", k));
    }
  }
  for (int k = 0; k <= n; ++k)
    expect(k_split_target(profile, Party::A, k).doubled() + k_split_target(profile, Party::B, k).doubled() == 2 * n,
           inv::kSplitTargetSum, at("geo_k(A) + geo_k(B)", k));

  const WinTable table = win_table(profile);
  const PreferenceTable prefs = optimal_preferences(table);
  for (int k = 0; k <= n; ++k) {
    const auto& e = prefs.entries[k];
    expect(e.a == Preference::Indifferent || e.a != e.b, inv::kOpposition, at("both prefer the same option", k));
  }
  for (Party p : {Party::A, Party::B})
    for (int k = 1; k <= n; ++k) {
      const bool crossed = table.side_wins(p, Side::L, k - 1) > table.side_wins(p, Side::R, k - 1) &&
                           table.side_wins(p, Side::L, k) < table.side_wins(p, Side::R, k);
      expect(!crossed, inv::kCrossingDirection, std::string("P=") + to_char(p) + ", " + at("L-to-R crossing", k));
    }

  ProtocolRun run;
  try {
    run = resolve_protocol(table, prefs, 0);
    ++out.checks;
  } catch (const ProtocolViolation& e) {
    out.violations.push_back({inv::kOutcomeExists, e.what()});
    return out;
  }
  out.outcome = run.outcome;
  const int k = run.outcome.k;
  if (run.outcome.kind == OutcomeKind::CoinFlip) {
    for (Party p : {Party::A, Party::B}) {
      const std::string tag = std::string("P=") + to_char(p) + ", ";
      const int gap_lo = table.side_wins(p, Side::R, k - 1) - table.side_wins(p, Side::L, k - 1);
      const int gap_hi = table.side_wins(p, Side::L, k) - table.side_wins(p, Side::R, k);
      expect(gap_lo <= 3 && gap_hi <= 3, inv::kCoinFlipGap,
             tag + "gaps " + std::to_string(gap_lo) + ", " + std::to_string(gap_hi) + " at k=" + std::to_string(k));
    }
  }
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const ProtocolRun r = resolve_protocol(table, prefs, seed);
    const FairnessReport rep = fairness_report(table, r);
    for (const auto& pf : rep.parties) {
      const std::string tag = std::string("P=") + to_char(pf.party) + ", seed " + std::to_string(seed);
      expect(pf.within_geo_k_bound, inv::kSplitTargetBound, tag);
      expect(pf.within_geo_bound, inv::kTargetBound, tag);
      if (r.outcome.kind != OutcomeKind::CoinFlip) {
        expect(pf.delta_geo_k <= Ratio(0), inv::kSatisfiedParty, tag + " wins below geo_k");
        expect(pf.delta_geo <= Ratio(1, 2), inv::kSatisfiedParty, tag + " wins more than 1/2 below geo");
      }
    }
    const ProtocolRun again = resolve_protocol(table, prefs, seed);
    expect(again.chosen == r.chosen && again.outcome == r.outcome && again.resolved().assignment == r.resolved().assignment,
           inv::kDeterminism, "seed " + std::to_string(seed));
  }
  return out;
}

/// Random rational in [lo, hi] with denominator at most max_den.
inline Ratio random_ratio(Rng& rng, std::int64_t lo, std::int64_t hi, std::int64_t max_den) {
  const std::int64_t den = rng.uniform(1, max_den);
  return Ratio(rng.uniform(lo * den, hi * den), den);
}

/// Draws a profile with n in [1, n_max]. A quarter of the draws use coarse
/// denominators (2, 4, 5, 10) so segments of exactly 1/2, ties and
/// indifference show up; the rest use denominators up to 20. Draws that break
/// the half-integer convention are rejected and redrawn.
inline ValidProfile random_profile(Rng& rng, int n_max, std::uint64_t* rejections = nullptr) {
  static constexpr std::int64_t kCoarse[] = {2, 4, 5, 10};
  for (;;) {
    SplitProfile p;
    p.n = static_cast<int>(rng.uniform(1, n_max));
    const bool coarse = rng.chance(1, 4);
    for (int k = 0; k < p.n; ++k) {
      const std::int64_t den = coarse ? kCoarse[rng.uniform(0, 3)] : rng.uniform(1, 20);
      p.segments_a.emplace_back(rng.uniform(0, den), den);
    }
    if (validate_profile(p).ok()) return ValidProfile::make(std::move(p));
    if (rejections) ++*rejections;
  }
}

/// Checks the pure floor/ceiling facts on random rationals:
/// min{floor(2x), k} + max{ceil(y - x), 0} = k whenever x + y = k, and the
/// four |floor/ceil(r + s) - (floor/ceil r + floor/ceil s)| <= 1 bounds.
inline void check_floor_ceil(Rng& rng, ProfileCheck& out) {
  auto expect = [&](bool ok, const char* name, const std::string& detail) {
    ++out.checks;
    if (!ok) out.violations.push_back({name, detail});
  };
  for (int i = 0; i < 4; ++i) {
    const int k = static_cast<int>(rng.uniform(1, 20));
    const Ratio x = random_ratio(rng, 0, k, 20);
    const Ratio y = Ratio(k) - x;
    expect(districter_wins(x, k) + non_districter_wins(y, x) == k, inv::kFloorCeilIdentity,
           "x=" + x.to_string() + ", k=" + std::to_string(k));
  }
  for (int i = 0; i < 4; ++i) {
    Ratio r = random_ratio(rng, 0, 20, 20), s = random_ratio(rng, 0, 20, 20);
    if (r == Ratio(0)) r = Ratio(1, 20);
    if (s == Ratio(0)) s = Ratio(1, 20);
    const Ratio t = r + s;
    auto within1 = [](std::int64_t a, std::int64_t b) { return a - b <= 1 && b - a <= 1; };
    const bool ok = within1(t.ceil(), r.ceil() + s.ceil()) && within1(t.ceil(), r.ceil() + s.floor()) &&
                    within1(t.floor(), r.ceil() + s.floor()) && within1(t.floor(), r.floor() + s.floor());
    expect(ok, inv::kFloorCeilBounds, "r=" + r.to_string() + ", s=" + s.to_string());
  }
}

struct SweepViolation {
  std::uint64_t instance = 0;
  std::string invariant;
  std::string detail;
  SplitProfile profile;  // reproducer (empty for the pure floor/ceiling checks)
};

struct SweepReport {
  std::uint64_t count = 0;
  int n_max = 0;
  std::uint64_t seed = 0;
  std::uint64_t checks = 0;
  std::uint64_t rejections = 0;
  std::map<std::string, std::uint64_t> outcomes;  // outcome kind -> instances
  std::vector<SweepViolation> violations;
  /// Smallest-n violating instance per invariant.
  std::map<std::string, SweepViolation> reproducers;

  [[nodiscard]] bool clean() const { return violations.empty(); }
};

inline void record(SweepReport& report, std::uint64_t instance, const ProfileCheck& check, const SplitProfile& profile) {
  report.checks += check.checks;
  if (check.outcome) ++report.outcomes[std::string(to_string(check.outcome->kind))];
  for (const auto& v : check.violations) {
    SweepViolation sv{instance, v.invariant, v.detail, profile};
    auto it = report.reproducers.find(v.invariant);
    if (it == report.reproducers.end() || profile.n < it->second.profile.n) report.reproducers[v.invariant] = sv;
    report.violations.push_back(std::move(sv));
  }
}

/// Generates `count` random valid profiles with n <= n_max and checks every
/// invariant on each. Instance i draws from sub_seed(seed, i).
inline SweepReport property_sweep(std::uint64_t count, int n_max, std::uint64_t seed) {
  if (count == 0) throw InputError("count must be positive");
  if (n_max < 2) throw InputError("n-max must be at least 2, got " + std::to_string(n_max));
  SweepReport report;
  report.count = count;
  report.n_max = n_max;
  report.seed = seed;
  for (std::uint64_t i = 0; i < count; ++i) {
    Rng rng(sub_seed(seed, i));
    const ValidProfile profile = random_profile(rng, n_max, &report.rejections);
    ProfileCheck check = check_profile(profile);
    check_floor_ceil(rng, check);
    record(report, i, check, profile.raw());
  }
  return report;
}

/// Sweep over a fixed list of profiles instead of random draws.
inline SweepReport property_sweep(const std::vector<ValidProfile>& profiles) {
  SweepReport report;
  report.count = profiles.size();
  for (std::uint64_t i = 0; i < profiles.size(); ++i) {
    report.n_max = std::max(report.n_max, profiles[i].n());
    record(report, i, check_profile(profiles[i]), profiles[i].raw());
  }
  return report;
}

}  // namespace lry
