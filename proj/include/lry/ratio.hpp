#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lry {

/// Exact rational number with a positive denominator, always kept in lowest
/// terms. Storage is 64-bit; intermediate products use 128-bit integers and
/// any result that does not fit throws std::overflow_error, so a value is
/// never silently rounded.
class Ratio {
 public:
  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Ratio(std::int64_t num, std::int64_t den) { assign(num, den); }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }

  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
  /// True when the value is an integer multiple of 1/2.
  [[nodiscard]] constexpr bool is_half_integer() const { return den_ == 1 || den_ == 2; }

  /// Largest integer not greater than the value.
  [[nodiscard]] constexpr std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  /// Smallest integer not less than the value.
  [[nodiscard]] constexpr std::int64_t ceil() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  [[nodiscard]] Ratio abs() const { return num_ < 0 ? -*this : *this; }

  Ratio operator-() const {
    if (num_ == INT64_MIN) throw std::overflow_error("Ratio: negation overflow");
    Ratio r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    if (a.den_ == b.den_) return from_wide(__int128{a.num_} + b.num_, a.den_);
    return from_wide(__int128{a.num_} * b.den_ + __int128{b.num_} * a.den_,
                     __int128{a.den_} * b.den_);
  }
  friend Ratio operator-(const Ratio& a, const Ratio& b) { return a + (-b); }
  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    return from_wide(__int128{a.num_} * b.num_, __int128{a.den_} * b.den_);
  }
  friend Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.num_ == 0) throw std::domain_error("Ratio: division by zero");
    __int128 n = __int128{a.num_} * b.den_;
    __int128 d = __int128{a.den_} * b.num_;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return from_wide(n, d);
  }

  Ratio& operator+=(const Ratio& o) { return *this = *this + o; }
  Ratio& operator-=(const Ratio& o) { return *this = *this - o; }
  Ratio& operator*=(const Ratio& o) { return *this = *this * o; }

  friend bool operator==(const Ratio& a, const Ratio& b) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    return __int128{a.num_} * b.den_ <=> __int128{b.num_} * a.den_;
  }

  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p/q", an integer, or a decimal such as "-1.25". Throws
  /// std::invalid_argument on malformed text.
  static Ratio parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.to_string(); }

 private:
  void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Ratio: zero denominator");
    *this = from_wide(den < 0 ? -__int128{num} : __int128{num}, den < 0 ? -__int128{den} : __int128{den});
  }

  static __int128 gcd_wide(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  // den must be positive.
  static Ratio from_wide(__int128 num, __int128 den) {
    __int128 g = gcd_wide(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw std::overflow_error("Ratio: value exceeds 64-bit range");
    Ratio r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

namespace detail {

inline std::int64_t parse_int(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  std::int64_t v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
    if (v > (INT64_MAX - (c - '0')) / 10) throw std::overflow_error("number too large: '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace detail

inline Ratio Ratio::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Ratio r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = detail::parse_int(text.substr(0, slash), whole);
    const auto den = detail::parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
    r = Ratio(num, den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
    if (frac_part.size() > 18) throw std::overflow_error("too many decimals: '" + std::string(whole) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const Ratio ip = int_part.empty() ? Ratio(0) : Ratio(detail::parse_int(int_part, whole));
    const Ratio fp = frac_part.empty() ? Ratio(0) : Ratio(detail::parse_int(frac_part, whole), scale);
    r = ip + fp;
  } else {
    r = Ratio(detail::parse_int(text, whole));
  }
  return negative ? -r : r;
}

inline Ratio min(const Ratio& a, const Ratio& b) { return b < a ? b : a; }
inline Ratio max(const Ratio& a, const Ratio& b) { return a < b ? b : a; }

}  // namespace lry
