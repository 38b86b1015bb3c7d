#pragma once

#include <stdexcept>

#include "lry/model.hpp"
#include "lry/strategy.hpp"

namespace lry {

/// A district-count target. Always an integer or half-integer, so bounds on
/// differences reduce to integer comparisons after doubling.
class TargetValue {
 public:
  static TargetValue from_doubled(std::int64_t twice) { return TargetValue(Ratio(twice, 2)); }

  [[nodiscard]] const Ratio& value() const { return value_; }
  [[nodiscard]] std::int64_t doubled() const { return (Ratio(2) * value_).num(); }

  friend bool operator==(const TargetValue&, const TargetValue&) = default;

 private:
  explicit TargetValue(Ratio v) : value_(v) {}
  Ratio value_;
};

/// geo(P), by the closed form: ceil(2 x_P)/2 for a statewide majority,
/// floor(2 x_P)/2 otherwise.
inline TargetValue geometric_target(const ValidProfile& profile, Party party) {
  const Ratio x = profile.total_support(party);
  const Ratio twice = Ratio(2) * x;
  if (twice == Ratio(profile.n()))
    throw std::domain_error("geometric_target: total support is exactly n/2");
  return TargetValue::from_doubled(twice > Ratio(profile.n()) ? twice.ceil() : twice.floor());
}

/// geo(P) straight from its definition: the mean of the party's best case
/// (it districts everything) and worst case (the opponent does).
inline TargetValue geometric_target_from_extremes(const ValidProfile& profile, Party party) {
  const int n = profile.n();
  return TargetValue::from_doubled(total_wins(profile, party, left(n)) + total_wins(profile, party, left(0)));
}

/// geo_k(P) = (P(L_k) + P(R_k)) / 2.
inline TargetValue k_split_target(const ValidProfile& profile, Party party, int k) {
  check_split_index(profile, k, 0);
  return TargetValue::from_doubled(total_wins(profile, party, left(k)) + total_wins(profile, party, right(k)));
}

}  // namespace lry
