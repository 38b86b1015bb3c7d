#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lry/model.hpp"
#include "lry/strategy.hpp"
#include "lry/targets.hpp"

namespace lry {

/// Option1: A districts L_k and B districts R_k. Option2: the reverse.
enum class Option { Option1, Option2 };
enum class Preference { Option1, Option2, Indifferent };

constexpr std::string_view to_string(Option o) { return o == Option::Option1 ? "option1" : "option2"; }
constexpr std::string_view to_string(Preference p) {
  switch (p) {
    case Preference::Option1: return "option1";
    case Preference::Option2: return "option2";
    case Preference::Indifferent: return "indifferent";
  }
  return "?";
}

/// The side party P districts under an option.
constexpr Side districted_side(Option o, Party p) {
  const bool a_left = o == Option::Option1;
  return (p == Party::A) == a_left ? Side::L : Side::R;
}

struct PreferencePair {
  Preference a = Preference::Indifferent;
  Preference b = Preference::Indifferent;
  friend bool operator==(const PreferencePair&, const PreferencePair&) = default;
};

/// One preference pair per split index k = 0..n.
struct PreferenceTable {
  std::vector<PreferencePair> entries;
  [[nodiscard]] int n() const { return static_cast<int>(entries.size()) - 1; }
};

/// A's total wins under each option at every split, k = 0..n. B's wins are n
/// minus A's. This is all the protocol needs to know about a state, so the
/// same machinery runs on abstract profiles and on constrained grids.
struct WinTable {
  int n = 0;
  std::vector<int> a_option1;  // A(L_k)
  std::vector<int> a_option2;  // A(R_k)

  [[nodiscard]] int wins(Party p, Option o, int k) const {
    const int a = o == Option::Option1 ? a_option1.at(k) : a_option2.at(k);
    return p == Party::A ? a : n - a;
  }
  /// P(S_k): P's total wins when it districts side s of the k-split.
  [[nodiscard]] int side_wins(Party p, Side s, int k) const {
    const bool a_left = (p == Party::A) == (s == Side::L);
    return wins(p, a_left ? Option::Option1 : Option::Option2, k);
  }
  /// geo_k(P) = (P(L_k) + P(R_k)) / 2.
  [[nodiscard]] TargetValue split_target(Party p, int k) const {
    return TargetValue::from_doubled(wins(p, Option::Option1, k) + wins(p, Option::Option2, k));
  }
  /// geo(P): best case is P districting R_0 (everything), worst is L_0.
  [[nodiscard]] TargetValue target(Party p) const { return split_target(p, 0); }
};

inline WinTable win_table(const ValidProfile& profile) {
  WinTable t;
  t.n = profile.n();
  for (int k = 0; k <= t.n; ++k) {
    t.a_option1.push_back(total_wins(profile, Party::A, left(k)));
    t.a_option2.push_back(total_wins(profile, Party::A, right(k)));
  }
  return t;
}

/// Each party prefers the option that gives it more districts. At k = 0 both
/// parties want the nonempty right side and at k = n the left side, even when
/// the counts tie.
inline PreferenceTable optimal_preferences(const WinTable& table) {
  PreferenceTable prefs;
  prefs.entries.resize(table.n + 1);
  for (int k = 0; k <= table.n; ++k) {
    auto pick = [&](Party p) {
      const int w1 = table.wins(p, Option::Option1, k);
      const int w2 = table.wins(p, Option::Option2, k);
      if (w1 > w2) return Preference::Option1;
      if (w1 < w2) return Preference::Option2;
      return Preference::Indifferent;
    };
    prefs.entries[k] = {pick(Party::A), pick(Party::B)};
  }
  prefs.entries.front() = {Preference::Option2, Preference::Option1};
  prefs.entries.back() = {Preference::Option1, Preference::Option2};
  return prefs;
}

inline PreferenceTable optimal_preferences(const ValidProfile& profile) {
  return optimal_preferences(win_table(profile));
}

enum class OutcomeKind { Agreement, Deferred, BothIndifferent, CoinFlip };

constexpr std::string_view to_string(OutcomeKind o) {
  switch (o) {
    case OutcomeKind::Agreement: return "agreement";
    case OutcomeKind::Deferred: return "deferred";
    case OutcomeKind::BothIndifferent: return "both_indifferent";
    case OutcomeKind::CoinFlip: return "coin_flip";
  }
  return "?";
}

/// Raised when a preference table admits none of the four outcome rules.
/// Optimal preferences never do this; injected ones can.
class ProtocolViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// For CoinFlip, k is the upper split of the crossing pair (k-1, k).
struct Classification {
  OutcomeKind kind = OutcomeKind::Agreement;
  int k = 0;
  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Applies the outcome rules in order, each scanning k = 0..n ascending and
/// taking the first match.
inline Classification classify_outcome(const PreferenceTable& prefs) {
  if (prefs.entries.size() < 2)
    throw InputError("preference table must cover k = 0..n with n >= 1, got " +
                     std::to_string(prefs.entries.size()) + " entries");
  const int n = prefs.n();
  const auto& e = prefs.entries;
  using P = Preference;
  for (int k = 0; k <= n; ++k)
    if (e[k].a != P::Indifferent && e[k].a == e[k].b) return {OutcomeKind::Agreement, k};
  for (int k = 0; k <= n; ++k)
    if ((e[k].a == P::Indifferent) != (e[k].b == P::Indifferent)) return {OutcomeKind::Deferred, k};
  for (int k = 0; k <= n; ++k)
    if (e[k].a == P::Indifferent && e[k].b == P::Indifferent) return {OutcomeKind::BothIndifferent, k};
  const PreferencePair before{P::Option2, P::Option1};
  const PreferencePair after{P::Option1, P::Option2};
  for (int k = 1; k <= n; ++k)
    if (e[k - 1] == before && e[k] == after) return {OutcomeKind::CoinFlip, k};
  throw ProtocolViolation("preference table matches no outcome rule");
}

struct Assignment {
  int k = 0;
  Option option = Option::Option1;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Candidate {
  Assignment assignment;
  int wins_a = 0;
  int wins_b = 0;
};

inline Candidate make_candidate(const WinTable& table, int k, Option o) {
  return {{k, o}, table.wins(Party::A, o, k), table.wins(Party::B, o, k)};
}

/// The four coin-flip options in order: Option1 and Option2 of the
/// (k-1)-split, then Option1 and Option2 of the k-split.
inline std::array<Candidate, 4> coinflip_options(const WinTable& table, int k) {
  if (k < 1 || k > table.n)
    throw std::out_of_range("coin flip split " + std::to_string(k) + " outside [1, " + std::to_string(table.n) + "]");
  return {make_candidate(table, k - 1, Option::Option1), make_candidate(table, k - 1, Option::Option2),
          make_candidate(table, k, Option::Option1), make_candidate(table, k, Option::Option2)};
}

inline std::array<Candidate, 4> coinflip_options(const ValidProfile& profile, int k) {
  return coinflip_options(win_table(profile), k);
}

struct ProtocolRun {
  int n = 0;
  Classification outcome;
  /// Every assignment the triggering rule could return: one for Agreement and
  /// Deferred, two for BothIndifferent, four for CoinFlip.
  std::vector<Candidate> candidates;
  std::size_t chosen = 0;
  /// Set only when the rule consumed randomness.
  std::optional<std::uint64_t> seed;

  [[nodiscard]] const Candidate& resolved() const { return candidates.at(chosen); }
};

/// Runs the outcome rules. Outcome 3 takes Option1 for an even seed and
/// Option2 for an odd one; Outcome 4 takes candidate seed mod 4.
inline ProtocolRun resolve_protocol(const WinTable& table, const PreferenceTable& prefs, std::uint64_t seed) {
  if (prefs.n() != table.n)
    throw InputError("preference table covers n = " + std::to_string(prefs.n()) + " but the state has n = " +
                     std::to_string(table.n));
  ProtocolRun run;
  run.n = table.n;
  run.outcome = classify_outcome(prefs);
  const int k = run.outcome.k;
  const auto& e = prefs.entries[k];
  auto as_option = [](Preference p) { return p == Preference::Option1 ? Option::Option1 : Option::Option2; };
  switch (run.outcome.kind) {
    case OutcomeKind::Agreement:
      run.candidates.push_back(make_candidate(table, k, as_option(e.a)));
      break;
    case OutcomeKind::Deferred:
      run.candidates.push_back(make_candidate(table, k, as_option(e.a == Preference::Indifferent ? e.b : e.a)));
      break;
    case OutcomeKind::BothIndifferent:
      run.candidates.push_back(make_candidate(table, k, Option::Option1));
      run.candidates.push_back(make_candidate(table, k, Option::Option2));
      run.chosen = seed % 2;
      run.seed = seed;
      break;
    case OutcomeKind::CoinFlip: {
      const auto options = coinflip_options(table, k);
      run.candidates.assign(options.begin(), options.end());
      run.chosen = seed % 4;
      run.seed = seed;
      break;
    }
  }
  return run;
}

inline ProtocolRun resolve_protocol(const ValidProfile& profile, const PreferenceTable& prefs, std::uint64_t seed) {
  return resolve_protocol(win_table(profile), prefs, seed);
}

/// Per-candidate distances from a party's targets, as exact half-integers.
/// Deltas are target minus wins, so a positive delta means the party got less
/// than its target.
struct CandidateFairness {
  Candidate candidate;
  TargetValue geo_k_a = TargetValue::from_doubled(0);
  TargetValue geo_k_b = TargetValue::from_doubled(0);
  Ratio delta_geo_a, delta_geo_k_a;
  Ratio delta_geo_b, delta_geo_k_b;
};

struct PartyFairness {
  Party party = Party::A;
  int wins = 0;
  TargetValue geo = TargetValue::from_doubled(0);
  TargetValue geo_k = TargetValue::from_doubled(0);  // for the resolved split
  Ratio delta_geo, delta_geo_k;                      // for the resolved candidate
  Ratio min_delta_geo, max_delta_geo;                // across all candidates
  Ratio min_delta_geo_k, max_delta_geo_k;
  bool within_geo_bound = true;    // |geo - wins| <= 2 for every candidate
  bool within_geo_k_bound = true;  // |geo_k - wins| <= 3/2 for every candidate
};

struct FairnessReport {
  std::array<PartyFairness, 2> parties;  // A then B
  std::vector<CandidateFairness> candidates;

  [[nodiscard]] const PartyFairness& of(Party p) const { return parties[p == Party::A ? 0 : 1]; }
  [[nodiscard]] bool all_bounds_hold() const {
    for (const auto& p : parties)
      if (!p.within_geo_bound || !p.within_geo_k_bound) return false;
    return true;
  }
};

inline constexpr std::int64_t kGeoBoundDoubled = 4;   // 2
inline constexpr std::int64_t kGeoKBoundDoubled = 3;  // 3/2

/// Fairness of a run against the targets implied by the win table. Fails if
/// the run's recorded win counts disagree with the table.
inline FairnessReport fairness_report(const WinTable& table, const ProtocolRun& run) {
  if (run.n != table.n)
    throw InputError("run has n = " + std::to_string(run.n) + " but the state has n = " + std::to_string(table.n));
  FairnessReport report;
  for (const auto& c : run.candidates) {
    const auto expect = make_candidate(table, c.assignment.k, c.assignment.option);
    if (expect.wins_a != c.wins_a || expect.wins_b != c.wins_b)
      throw InputError("run candidate at k = " + std::to_string(c.assignment.k) + " does not match this state");
    CandidateFairness cf;
    cf.candidate = c;
    cf.geo_k_a = table.split_target(Party::A, c.assignment.k);
    cf.geo_k_b = table.split_target(Party::B, c.assignment.k);
    cf.delta_geo_a = table.target(Party::A).value() - Ratio(c.wins_a);
    cf.delta_geo_k_a = cf.geo_k_a.value() - Ratio(c.wins_a);
    cf.delta_geo_b = table.target(Party::B).value() - Ratio(c.wins_b);
    cf.delta_geo_k_b = cf.geo_k_b.value() - Ratio(c.wins_b);
    report.candidates.push_back(cf);
  }
  for (Party p : {Party::A, Party::B}) {
    auto& pf = report.parties[p == Party::A ? 0 : 1];
    const bool is_a = p == Party::A;
    const auto& chosen = report.candidates.at(run.chosen);
    pf.party = p;
    pf.wins = is_a ? chosen.candidate.wins_a : chosen.candidate.wins_b;
    pf.geo = table.target(p);
    pf.geo_k = is_a ? chosen.geo_k_a : chosen.geo_k_b;
    pf.delta_geo = is_a ? chosen.delta_geo_a : chosen.delta_geo_b;
    pf.delta_geo_k = is_a ? chosen.delta_geo_k_a : chosen.delta_geo_k_b;
    bool first = true;
    for (const auto& cf : report.candidates) {
      const Ratio dg = is_a ? cf.delta_geo_a : cf.delta_geo_b;
      const Ratio dk = is_a ? cf.delta_geo_k_a : cf.delta_geo_k_b;
      if (first) {
        pf.min_delta_geo = pf.max_delta_geo = dg;
        pf.min_delta_geo_k = pf.max_delta_geo_k = dk;
        first = false;
      } else {
        pf.min_delta_geo = min(pf.min_delta_geo, dg);
        pf.max_delta_geo = max(pf.max_delta_geo, dg);
        pf.min_delta_geo_k = min(pf.min_delta_geo_k, dk);
        pf.max_delta_geo_k = max(pf.max_delta_geo_k, dk);
      }
      if ((Ratio(2) * dg.abs()) > Ratio(kGeoBoundDoubled)) pf.within_geo_bound = false;
      if ((Ratio(2) * dk.abs()) > Ratio(kGeoKBoundDoubled)) pf.within_geo_k_bound = false;
    }
  }
  return report;
}

inline FairnessReport fairness_report(const ValidProfile& profile, const ProtocolRun& run) {
  return fairness_report(win_table(profile), run);
}

}  // namespace lry
