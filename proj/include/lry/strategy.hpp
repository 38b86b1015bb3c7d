#pragma once

#include <algorithm>
#include <cstdint>

#include "lry/model.hpp"

namespace lry {

// Closed-form optimal play on one side of a split. With no geometric
// constraints the districter packs just over half a district of support into
// as many districts as it can; the opponent keeps whatever is left over.

/// Districts won by a party holding `support` on a side of `size` districts
/// that it draws itself: min{floor(2x), size}.
inline int districter_wins(const Ratio& support, int size) {
  const std::int64_t packed = (Ratio(2) * support).floor();
  return static_cast<int>(std::min<std::int64_t>(packed, size));
}

/// Districts won by a party holding `own` when the opponent, holding `other`,
/// draws the side: max{ceil(own - other), 0}.
inline int non_districter_wins(const Ratio& own, const Ratio& other) {
  return static_cast<int>(std::max<std::int64_t>((own - other).ceil(), 0));
}

/// P(S_k, P).
inline int wins_when_districting(const ValidProfile& profile, Party party, SideRef side) {
  return districter_wins(side_support(profile, party, side), side.size(profile.n()));
}

/// P(S_k, opponent(P)).
inline int wins_when_opponent_districts(const ValidProfile& profile, Party party, SideRef side) {
  return non_districter_wins(side_support(profile, party, side), side_support(profile, opponent(party), side));
}

/// P(S_k): P districts S_k and the opponent districts the other side.
inline int total_wins(const ValidProfile& profile, Party party, SideRef side) {
  return wins_when_districting(profile, party, side) +
         wins_when_opponent_districts(profile, party, side.complement());
}

}  // namespace lry
