#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lry/ratio.hpp"

namespace lry {

/// Raised for malformed input: bad JSON, out-of-range values, bad flags.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Party { A, B };

constexpr Party opponent(Party p) { return p == Party::A ? Party::B : Party::A; }
constexpr char to_char(Party p) { return p == Party::A ? 'A' : 'B'; }

enum class Side { L, R };

constexpr Side other(Side s) { return s == Side::L ? Side::R : Side::L; }
constexpr char to_char(Side s) { return s == Side::L ? 'L' : 'R'; }

/// One side of a k-split: L_k holds k districts, R_k holds n - k.
struct SideRef {
  Side side = Side::L;
  int k = 0;

  [[nodiscard]] constexpr int size(int n) const { return side == Side::L ? k : n - k; }
  [[nodiscard]] constexpr SideRef complement() const { return {other(side), k}; }
  friend constexpr bool operator==(const SideRef&, const SideRef&) = default;
};

constexpr SideRef left(int k) { return {Side::L, k}; }
constexpr SideRef right(int k) { return {Side::R, k}; }

/// A state of n districts with nested k-splits, given by A's support in each
/// segment between consecutive splits: segments_a[k-1] = x_A(k).
struct SplitProfile {
  int n = 0;
  std::vector<Ratio> segments_a;
};

struct ProfileViolation {
  enum class Kind { Shape, SegmentRange, HalfIntegerSum };
  Kind kind = Kind::Shape;
  Side side = Side::L;  // meaningful for HalfIntegerSum
  int k = 0;            // split index, or segment index for SegmentRange
  std::string message;
};

struct ProfileValidation {
  std::vector<ProfileViolation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks the shape of the profile, that every segment lies in [0, 1], and
/// that no prefix sum x_A(L_k), 1 <= k <= n, and no suffix sum x_A(R_k),
/// 0 <= k < n, is a multiple of 1/2. The empty sides L_0 and R_n are exempt.
/// Since x_B(S) = |S| - x_A(S), the same check covers party B.
inline ProfileValidation validate_profile(const SplitProfile& profile) {
  ProfileValidation result;
  auto add = [&](ProfileViolation::Kind kind, Side side, int k, std::string msg) {
    result.violations.push_back({kind, side, k, std::move(msg)});
  };
  if (profile.n < 1) {
    add(ProfileViolation::Kind::Shape, Side::L, 0, "n must be positive, got " + std::to_string(profile.n));
    return result;
  }
  if (profile.segments_a.size() != static_cast<std::size_t>(profile.n)) {
    add(ProfileViolation::Kind::Shape, Side::L, 0,
        "expected " + std::to_string(profile.n) + " segments, got " + std::to_string(profile.segments_a.size()));
    return result;
  }
  for (int k = 1; k <= profile.n; ++k) {
    const Ratio& x = profile.segments_a[k - 1];
    if (x < Ratio(0) || x > Ratio(1))
      add(ProfileViolation::Kind::SegmentRange, Side::L, k,
          "segment " + std::to_string(k) + " support " + x.to_string() + " outside [0, 1]");
  }
  Ratio total = 0;
  for (const auto& x : profile.segments_a) total += x;
  Ratio prefix = 0;
  for (int k = 1; k <= profile.n; ++k) {
    prefix += profile.segments_a[k - 1];
    if (prefix.is_half_integer())
      add(ProfileViolation::Kind::HalfIntegerSum, Side::L, k,
          "x_A(L_" + std::to_string(k) + ") = " + prefix.to_string() + " is a multiple of 1/2");
  }
  prefix = 0;
  for (int k = 0; k < profile.n; ++k) {
    if (k > 0) prefix += profile.segments_a[k - 1];
    const Ratio suffix = total - prefix;
    if (suffix.is_half_integer())
      add(ProfileViolation::Kind::HalfIntegerSum, Side::R, k,
          "x_A(R_" + std::to_string(k) + ") = " + suffix.to_string() + " is a multiple of 1/2");
  }
  return result;
}

/// Raised when an operation that requires a validated profile is handed one
/// that breaks the invariants.
class InvalidProfile : public InputError {
 public:
  explicit InvalidProfile(ProfileValidation v)
      : InputError(summarize(v)), validation_(std::move(v)) {}
  [[nodiscard]] const ProfileValidation& validation() const { return validation_; }

 private:
  static std::string summarize(const ProfileValidation& v) {
    std::string s = "invalid profile:";
    for (const auto& viol : v.violations) s += " [" + viol.message + "]";
    return s;
  }
  ProfileValidation validation_;
};

/// A SplitProfile that has passed validate_profile. Every strategy, target
/// and protocol operation takes this type, so an unvalidated profile cannot
/// reach them. Prefix sums are cached; the value is immutable.
class ValidProfile {
 public:
  static ValidProfile make(SplitProfile profile) {
    auto v = validate_profile(profile);
    if (!v.ok()) throw InvalidProfile(std::move(v));
    return ValidProfile(std::move(profile));
  }

  [[nodiscard]] int n() const { return raw_.n; }
  [[nodiscard]] const SplitProfile& raw() const { return raw_; }

  /// x_P over the whole state.
  [[nodiscard]] Ratio total_support(Party p) const {
    return p == Party::A ? prefix_a_.back() : Ratio(raw_.n) - prefix_a_.back();
  }

 private:
  explicit ValidProfile(SplitProfile p) : raw_(std::move(p)) {
    prefix_a_.reserve(raw_.segments_a.size() + 1);
    prefix_a_.push_back(0);
    for (const auto& x : raw_.segments_a) prefix_a_.push_back(prefix_a_.back() + x);
  }

  friend Ratio side_support(const ValidProfile&, Party, SideRef);

  SplitProfile raw_;
  std::vector<Ratio> prefix_a_;
};

inline void check_split_index(const ValidProfile& profile, int k, int lo) {
  if (k < lo || k > profile.n())
    throw std::out_of_range("split index " + std::to_string(k) + " outside [" + std::to_string(lo) + ", " +
                            std::to_string(profile.n()) + "]");
}

/// x_P(S_k): party P's support on one side of the k-split.
inline Ratio side_support(const ValidProfile& profile, Party party, SideRef side) {
  check_split_index(profile, side.k, 0);
  const Ratio left_a = profile.prefix_a_[side.k];
  const Ratio a = side.side == Side::L ? left_a : profile.prefix_a_.back() - left_a;
  return party == Party::A ? a : Ratio(side.size(profile.n())) - a;
}

/// x_P(k): party P's support between the (k-1)- and k-split.
inline Ratio segment_support(const ValidProfile& profile, Party party, int k) {
  check_split_index(profile, k, 1);
  const Ratio& a = profile.raw().segments_a[k - 1];
  return party == Party::A ? a : Ratio(1) - a;
}

}  // namespace lry
