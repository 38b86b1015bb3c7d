#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lry/geodelta.hpp"
#include "lry/grid.hpp"
#include "lry/model.hpp"
#include "lry/protocol.hpp"
#include "lry/sweep.hpp"

namespace lry::io {

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": malformed JSON: " + e.what());
  }
}

/// Ratios travel as strings ("0.38", "19/50", "3"); bare JSON numbers are
/// refused so that no value passes through a double.
inline Ratio ratio_field(const Json& v, const std::string& field) {
  if (!v.is_string()) throw InputError(field + ": expected a ratio string such as \"19/50\"");
  try {
    return Ratio::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError(field + ": " + e.what());
  }
}

inline int int_field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where + key + ": missing");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw InputError(where + key + ": expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw InputError(where + key + ": out of range");
  return static_cast<int>(x);
}

inline Preference preference_from(const Json& v, const std::string& field) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "option1") return Preference::Option1;
    if (s == "option2") return Preference::Option2;
    if (s == "indifferent") return Preference::Indifferent;
  }
  throw InputError(field + ": expected \"option1\", \"option2\" or \"indifferent\"");
}

struct ProfileInput {
  SplitProfile profile;
  std::optional<PreferenceTable> preferences;
};

/// `{ "n": int, "segments_a": ["<ratio>", ...], "preferences": [[a, b], ...] }`;
/// "preferences" is optional and holds one [A, B] pair per k = 0..n.
inline ProfileInput profile_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("profile: expected a JSON object");
  ProfileInput in;
  in.profile.n = int_field(j, "n", "");
  if (!j.contains("segments_a")) throw InputError("segments_a: missing");
  const auto& segs = j.at("segments_a");
  if (!segs.is_array()) throw InputError("segments_a: expected an array");
  for (std::size_t i = 0; i < segs.size(); ++i)
    in.profile.segments_a.push_back(ratio_field(segs[i], "segments_a[" + std::to_string(i) + "]"));
  if (j.contains("preferences")) {
    const auto& prefs = j.at("preferences");
    if (!prefs.is_array()) throw InputError("preferences: expected an array");
    PreferenceTable table;
    for (std::size_t k = 0; k < prefs.size(); ++k) {
      const std::string field = "preferences[" + std::to_string(k) + "]";
      if (!prefs[k].is_array() || prefs[k].size() != 2) throw InputError(field + ": expected a pair [A, B]");
      table.entries.push_back({preference_from(prefs[k][0], field + "[0]"), preference_from(prefs[k][1], field + "[1]")});
    }
    in.preferences = std::move(table);
  }
  return in;
}

inline ProfileInput profile_from_text(std::string_view text) { return profile_from_json(parse_json(text, "profile")); }

inline Json to_json(const SplitProfile& p) {
  Json segs = Json::array();
  for (const auto& s : p.segments_a) segs.push_back(s.to_string());
  return Json{{"n", p.n}, {"segments_a", segs}};
}

inline Json cell_json(Cell c) { return Json::array({c.row + 1, c.col + 1}); }

inline Cell cell_from(const Json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw InputError(field + ": expected [row, col]");
  return {v[0].get<int>() - 1, v[1].get<int>() - 1};
}

/// `{ "m": int, "d": int, "cells": [["p/q", ...], ...] }`, row 1 first.
inline GridState grid_from_json(const Json& j) {
  const int m = int_field(j, "m", "");
  const int d = int_field(j, "d", "");
  if (!j.contains("cells") || !j.at("cells").is_array()) throw InputError("cells: expected an array of rows");
  const auto& rows = j.at("cells");
  if (m < 1 || rows.size() != static_cast<std::size_t>(m))
    throw InputError("cells: expected " + std::to_string(m) + " rows, got " + std::to_string(rows.size()));
  std::vector<Ratio> cells;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string row_field = "cells[" + std::to_string(r) + "]";
    if (!rows[r].is_array() || rows[r].size() != static_cast<std::size_t>(m))
      throw InputError(row_field + ": expected " + std::to_string(m) + " entries");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      cells.push_back(ratio_field(rows[r][c], row_field + "[" + std::to_string(c) + "]"));
  }
  return GridState::make(m, d, std::move(cells));
}

inline Json to_json(const GridState& g) {
  Json rows = Json::array();
  for (int r = 0; r < g.m(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < g.m(); ++c) row.push_back(g.at({r, c}).to_string());
    rows.push_back(std::move(row));
  }
  return Json{{"m", g.m()}, {"d", g.d()}, {"cells", rows}};
}

/// A list of cell lists, each cell a 1-indexed [row, col] pair.
inline std::vector<District> cell_lists_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of cell lists");
  std::vector<District> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string field = what + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) throw InputError(field + ": expected an array of cells");
    District d;
    for (std::size_t c = 0; c < j[i].size(); ++c) d.push_back(cell_from(j[i][c], field + "[" + std::to_string(c) + "]"));
    out.push_back(std::move(d));
  }
  return out;
}

inline Json cell_lists_json(const std::vector<District>& lists) {
  Json out = Json::array();
  for (const auto& d : lists) {
    Json cells = Json::array();
    for (const auto& c : d) cells.push_back(cell_json(c));
    out.push_back(std::move(cells));
  }
  return out;
}

inline DistrictPlan plan_from_json(const Json& j) { return {cell_lists_from_json(j, "plan")}; }
inline Json to_json(const DistrictPlan& p) { return cell_lists_json(p.districts); }
inline GridSplitSequence splits_from_json(const Json& j) { return {cell_lists_from_json(j, "splits")}; }
inline Json to_json(const GridSplitSequence& s) { return cell_lists_json(s.increments); }

inline Json to_json(const WinTable& t) {
  Json rows = Json::array();
  for (int k = 0; k <= t.n; ++k)
    rows.push_back(Json{{"k", k},
                        {"option1", {{"winsA", t.wins(Party::A, Option::Option1, k)},
                                     {"winsB", t.wins(Party::B, Option::Option1, k)}}},
                        {"option2", {{"winsA", t.wins(Party::A, Option::Option2, k)},
                                     {"winsB", t.wins(Party::B, Option::Option2, k)}}},
                        {"geoKA", t.split_target(Party::A, k).value().to_string()},
                        {"geoKB", t.split_target(Party::B, k).value().to_string()}});
  return rows;
}

inline Json to_json(const PreferenceTable& p) {
  Json rows = Json::array();
  for (const auto& e : p.entries) rows.push_back(Json::array({to_string(e.a), to_string(e.b)}));
  return rows;
}

inline Json to_json(const CandidateFairness& c) {
  return Json{{"k", c.candidate.assignment.k},
              {"option", to_string(c.candidate.assignment.option)},
              {"winsA", c.candidate.wins_a},
              {"winsB", c.candidate.wins_b},
              {"geoKA", c.geo_k_a.value().to_string()},
              {"geoKB", c.geo_k_b.value().to_string()},
              {"deltaGeoA", c.delta_geo_a.to_string()},
              {"deltaGeoKA", c.delta_geo_k_a.to_string()},
              {"deltaGeoB", c.delta_geo_b.to_string()},
              {"deltaGeoKB", c.delta_geo_k_b.to_string()}};
}

inline Json to_json(const PartyFairness& p) {
  return Json{{"wins", p.wins},
              {"geo", p.geo.value().to_string()},
              {"geoK", p.geo_k.value().to_string()},
              {"deltaGeo", p.delta_geo.to_string()},
              {"deltaGeoK", p.delta_geo_k.to_string()},
              {"minDeltaGeo", p.min_delta_geo.to_string()},
              {"maxDeltaGeo", p.max_delta_geo.to_string()},
              {"minDeltaGeoK", p.min_delta_geo_k.to_string()},
              {"maxDeltaGeoK", p.max_delta_geo_k.to_string()},
              {"withinGeoBound", p.within_geo_bound},
              {"withinGeoKBound", p.within_geo_k_bound}};
}

/// The run and its fairness in one object. The headline keys (winsA, geoA,
/// deltaGeo, ...) describe the resolved candidate from A's side.
inline Json run_json(const ProtocolRun& run, const FairnessReport& f) {
  const auto& a = f.of(Party::A);
  const auto& b = f.of(Party::B);
  const auto& chosen = run.resolved();
  Json candidates = Json::array();
  for (const auto& c : f.candidates) candidates.push_back(to_json(c));
  Json j{{"n", run.n},
         {"outcome", {{"kind", to_string(run.outcome.kind)}, {"k", run.outcome.k}}},
         {"randomized", run.seed.has_value()},
         {"chosen", run.chosen},
         {"k", chosen.assignment.k},
         {"option", to_string(chosen.assignment.option)},
         {"winsA", chosen.wins_a},
         {"winsB", chosen.wins_b},
         {"geoA", a.geo.value().to_string()},
         {"geoB", b.geo.value().to_string()},
         {"geoKA", a.geo_k.value().to_string()},
         {"geoKB", b.geo_k.value().to_string()},
         {"deltaGeo", a.delta_geo.to_string()},
         {"deltaGeoK", a.delta_geo_k.to_string()},
         {"candidates", candidates},
         {"fairness", {{"A", to_json(a)}, {"B", to_json(b)}, {"allBoundsHold", f.all_bounds_hold()}}}};
  return j;
}

inline std::string csv_header() {
  return "k,option,winsA,winsB,geoKA,geoKB,deltaGeoA,deltaGeoKA,deltaGeoB,deltaGeoKB,chosen\n";
}

/// One row per candidate the outcome rule could return.
inline std::string run_csv(const ProtocolRun& run, const FairnessReport& f) {
  std::ostringstream out;
  out << csv_header();
  for (std::size_t i = 0; i < f.candidates.size(); ++i) {
    const auto& c = f.candidates[i];
    out << c.candidate.assignment.k << ',' << to_string(c.candidate.assignment.option) << ',' << c.candidate.wins_a
        << ',' << c.candidate.wins_b << ',' << c.geo_k_a.value() << ',' << c.geo_k_b.value() << ',' << c.delta_geo_a
        << ',' << c.delta_geo_k_a << ',' << c.delta_geo_b << ',' << c.delta_geo_k_b << ','
        << (i == run.chosen ? 1 : 0) << '\n';
  }
  return out.str();
}

inline Json to_json(const SweepViolation& v) {
  return Json{{"instance", v.instance},
              {"invariant", v.invariant},
              {"detail", v.detail},
              {"profile", to_json(v.profile)}};
}

inline Json to_json(const SweepReport& r, std::size_t max_listed = 20) {
  Json outcomes = Json::object();
  for (const auto& [kind, count] : r.outcomes) outcomes[kind] = count;
  Json listed = Json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < max_listed; ++i) listed.push_back(to_json(r.violations[i]));
  Json repro = Json::object();
  for (const auto& [inv, v] : r.reproducers) repro[inv] = to_json(v);
  return Json{{"count", r.count},
              {"nMax", r.n_max},
              {"checks", r.checks},
              {"rejections", r.rejections},
              {"outcomes", outcomes},
              {"violationCount", r.violations.size()},
              {"violations", listed},
              {"reproducers", repro}};
}

inline std::string geodelta_summary(const GeodeltaReport& r) {
  return "worst candidate " + std::to_string(r.worst_wins_a) + " wins, geo " + r.geo_a.value().to_string() +
         ", gap " + r.gap.to_string() + (r.exceeds_unconstrained_bound ? " > 2" : " <= 2");
}

inline Json to_json(const GeodeltaReport& r) {
  Json all_cut_candidates = Json::array();
  for (const auto& c : r.all_cut_run.candidates) all_cut_candidates.push_back(c.wins_a);
  Json candidate_wins = Json::array();
  for (const auto& c : r.run.candidates) candidate_wins.push_back(c.wins_a);
  return Json{{"delta", r.delta},
              {"m", r.m},
              {"d", r.d},
              {"z", r.z},
              {"districts", r.districts},
              {"totalSupportA", r.total_support.to_string()},
              {"geoA", r.geo_a.value().to_string()},
              {"run", run_json(r.run, r.fairness)},
              {"candidateWinsA", candidate_wins},
              {"worstWinsA", r.worst_wins_a},
              {"gap", r.gap.to_string()},
              {"exceedsUnconstrainedBound", r.exceeds_unconstrained_bound},
              {"summary", geodelta_summary(r)},
              {"blockPlan", {{"valid", r.best_plan_valid}, {"winsA", r.best_plan_wins_a}}},
              {"stripPlan", {{"valid", r.worst_plan_valid}, {"winsA", r.worst_plan_wins_a}}},
              {"ifBCutEveryGroup",
               {{"outcome", {{"kind", to_string(r.all_cut_run.outcome.kind)}, {"k", r.all_cut_run.outcome.k}}},
                {"candidateWinsA", all_cut_candidates},
                {"worstWinsA", r.all_cut_worst_wins_a},
                {"gap", r.all_cut_gap.to_string()}}}};
}

}  // namespace lry::io
