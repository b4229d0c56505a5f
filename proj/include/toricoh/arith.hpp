#pragma once

#include <atomic>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace toricoh {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Raised when an internal cross-check fails; indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

enum class CheckMode { strict, off };

inline std::atomic<CheckMode>& check_mode_slot() {
  static std::atomic<CheckMode> mode = [] {
    if (const char* env = std::getenv("TORICOH_CHECKS")) {
      if (std::string_view(env) == "off") return CheckMode::off;
      if (std::string_view(env) == "strict") return CheckMode::strict;
    }
#ifdef NDEBUG
    return CheckMode::off;
#else
    return CheckMode::strict;
#endif
  }();
  return mode;
}

inline CheckMode check_mode() { return check_mode_slot().load(); }
inline void set_check_mode(CheckMode m) { check_mode_slot().store(m); }
inline bool checks_enabled() { return check_mode() == CheckMode::strict; }

// Floor division: a = q*d + s with 0 <= s < d. Requires d >= 1.
inline Int floor_div(const Int& a, const Int& d) {
  if (d <= 0) throw std::domain_error("floor_div: divisor must be positive");
  Int q = a / d;
  if (a - q * d < 0) --q;
  return q;
}

// Remainder in [0, d) paired with floor_div.
inline Int mod_floor(const Int& a, const Int& d) { return a - floor_div(a, d) * d; }

inline Int floor_rat(const Rational& x) {
  return floor_div(numerator(x), denominator(x));
}

// Fractional part {x} = x - floor(x), in [0, 1).
inline Rational frac_part(const Rational& x) {
  return x - Rational(floor_rat(x));
}

// Inverse of p modulo d, in [1, d). Requires d >= 2 and gcd(p mod d, d) = 1.
inline Int mod_inverse(const Int& p, const Int& d) {
  if (d < 2) throw std::domain_error("mod_inverse: modulus must be at least 2");
  Int r0 = d, r1 = mod_floor(p, d);
  Int t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments are not coprime");
  return mod_floor(t0, d);
}

// gcd of a list, non-negative; empty list gives 0.
inline Int gcd_list(std::span<const Int> xs) {
  Int g = 0;
  for (const Int& x : xs) g = boost::multiprecision::gcd(g, x);
  return g;
}

inline Int gcd_list(const std::vector<Int>& xs) {
  return gcd_list(std::span<const Int>(xs.data(), xs.size()));
}

// n*(n-1)/2, the triangle count C(n,2); 0 for n < 2.
inline Int binom2(const Int& n) {
  if (n < 2) return 0;
  return n * (n - 1) / 2;
}

// Exact conversion helpers.

inline Int to_int_exact(const Rational& x, const char* what = "value") {
  if (denominator(x) != 1)
    throw internal_error(std::string(what) + ": expected an integer, got " +
                         numerator(x).str() + "/" + denominator(x).str());
  return numerator(x);
}

inline long long to_ll_checked(const Int& x, const char* what = "value") {
  static const Int lo = std::numeric_limits<long long>::min();
  static const Int hi = std::numeric_limits<long long>::max();
  if (x < lo || x > hi)
    throw std::overflow_error(std::string(what) + " out of supported range");
  return x.convert_to<long long>();
}

// Textual form "num/den"; the "/den" part is omitted when den = 1.
inline std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

inline std::string to_string(const Int& x) { return x.str(); }

namespace detail {
inline bool valid_int_token(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}
}  // namespace detail

inline Int parse_int(std::string_view s) {
  if (!detail::valid_int_token(s))
    throw std::invalid_argument("parse_int: malformed integer '" + std::string(s) + "'");
  const bool neg = s.front() == '-';
  std::string_view digits = neg ? s.substr(1) : s;
  // Leading zeros would make the bignum constructor read the token as octal.
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  Int v{std::string(digits)};
  return neg ? Int(-v) : v;
}

// Parses "num" or "num/den" with den > 0.
inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  std::string_view den_tok = s.substr(slash + 1);
  if (!detail::valid_int_token(den_tok) || den_tok.front() == '-')
    throw std::invalid_argument("parse_rational: malformed denominator '" + std::string(s) + "'");
  Int den = parse_int(den_tok);
  if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
  return Rational(num, den);
}

}  // namespace toricoh
