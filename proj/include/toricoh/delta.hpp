#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "toricoh/arith.hpp"

namespace toricoh {

// Cyclic quotient germ of type 1/d(a,b): the order-d group acts on C^2 with
// weights (a,b). Weights are residues mod d.
struct CyclicQuotientType {
  Int d, a, b;
};

// Reduces a germ until gcd(d,a) = gcd(d,b) = gcd(a,b) = 1 or d = 1.
// d = 1 means a smooth point and is returned as (1,0,0).
inline CyclicQuotientType normalize_type(CyclicQuotientType t) {
  using boost::multiprecision::gcd;
  if (t.d <= 0) throw std::invalid_argument("normalize_type: order must be positive");
  for (;;) {
    if (t.d == 1) return {1, 0, 0};
    t.a = mod_floor(t.a, t.d);
    t.b = mod_floor(t.b, t.d);
    Int g = gcd(gcd(t.d, t.a), t.b);
    if (g > 1) { t.d /= g; t.a /= g; t.b /= g; continue; }
    Int v = gcd(t.a, t.b);
    if (v > 1) { t.a /= v; t.b /= v; continue; }
    Int u = gcd(t.d, t.a);
    if (u > 1) { t.d /= u; t.a /= u; continue; }
    Int w = gcd(t.d, t.b);
    if (w > 1) { t.d /= w; t.b /= w; continue; }
    return t;
  }
}

// Correction term Delta_{1/d(1,p)}(k). Euclidean descent:
//   Delta_{1/d(1,p)}(k) = 1 + (k-1-d-p)*k/(2dp) - Delta_{1/p(1,d mod p)}(k mod p)
// with Delta = 0 once the order reaches 1 or the character is trivial.
inline Rational delta(Int d, Int p, Int k) {
  using boost::multiprecision::gcd;
  if (d <= 0) throw std::domain_error("delta: order must be positive");
  if (d == 1) return 0;
  p = mod_floor(p, d);
  if (gcd(p, d) != 1) throw std::invalid_argument("delta: weight not coprime to order");
  k = mod_floor(k, d);
  Rational acc = 0;
  int sign = 1;
  while (d != 1 && k != 0) {
    acc += sign * (Rational(1) + Rational(k * (k - 1 - d - p), 2 * d * p));
    sign = -sign;
    Int d2 = p, p2 = mod_floor(d, p), k2 = mod_floor(k, p);
    d = d2; p = p2; k = k2;
  }
  return acc;
}

// Full row Delta_{1/d(1,p)}(k) for k = 0..d-1, for callers that sweep characters.
inline std::vector<Rational> delta_table(const Int& d, const Int& p) {
  long long n = to_ll_checked(d, "delta_table order");
  if (n <= 0) throw std::domain_error("delta_table: order must be positive");
  std::vector<Rational> row(static_cast<size_t>(n));
  for (long long k = 0; k < n; ++k) row[static_cast<size_t>(k)] = delta(d, p, k);
  return row;
}

// Delta for a general germ 1/d(a,b) at character k. Requires gcd(d,a) =
// gcd(d,b) = 1; rescaling by a^{-1} maps the germ to 1/d(1, a^{-1}b) and the
// character to a^{-1}k.
inline Rational delta_general(const CyclicQuotientType& t, const Int& k) {
  using boost::multiprecision::gcd;
  if (t.d <= 0) throw std::invalid_argument("delta_general: order must be positive");
  if (t.d == 1) return 0;
  Int a = mod_floor(t.a, t.d), b = mod_floor(t.b, t.d);
  if (gcd(a, t.d) != 1 || gcd(b, t.d) != 1)
    throw std::invalid_argument("delta_general: germ has pseudo-reflections; normalize it first");
  Int u = mod_inverse(a, t.d);
  return delta(t.d, mod_floor(u * b, t.d), mod_floor(u * k, t.d));
}

// Weight triple for a weighted projective plane.
struct WeightTriple {
  Int w0, w1, w2;
  Int sum() const { return w0 + w1 + w2; }
  Int prod() const { return w0 * w1 * w2; }
};

inline void require_positive(const WeightTriple& w, const char* who) {
  if (w.w0 <= 0 || w.w1 <= 0 || w.w2 <= 0)
    throw std::invalid_argument(std::string(who) + ": weights must be positive");
}

// g_{w,k} = 1 + k(k+|w|)/(2 w0 w1 w2).
inline Rational g_w(const WeightTriple& w, const Int& k) {
  require_positive(w, "g_w");
  return Rational(1) + Rational(k * (k + w.sum()), 2 * w.prod());
}

namespace detail {

// Number of (j,i) in Z^2_{>=0} with A*j + B*i = M, all positive 64-bit.
inline long long count_two_var(long long A, long long B, long long M) {
  if (M < 0) return 0;
  long long g = std::gcd(A, B);
  if (M % g != 0) return 0;
  long long a = A / g, b = B / g, m = M / g;
  // j == m * a^{-1} (mod b)
  long long j0;
  if (b == 1) {
    j0 = 0;
  } else {
    Int inv = mod_inverse(Int(a % b), Int(b));
    j0 = to_ll_checked(mod_floor(inv * (m % b), Int(b)));
  }
  if (a * j0 > m) return 0;
  return (m - a * j0) / (a * b) + 1;
}

}  // namespace detail

// Number of lattice points (i,j,k) in Z^3_{>=0} with w0*i + w1*j + w2*k = m.
// Weights need not be coprime. Returns 0 for m < 0.
inline Int wp2_lattice_count(const WeightTriple& w, const Int& m) {
  require_positive(w, "wp2_lattice_count");
  if (m < 0) return 0;
  long long ws[3] = {to_ll_checked(w.w0, "weight"), to_ll_checked(w.w1, "weight"),
                     to_ll_checked(w.w2, "weight")};
  long long mm = to_ll_checked(m, "wp2_lattice_count degree");
  if (mm > (1LL << 45)) throw std::overflow_error("wp2_lattice_count: degree too large");
  // Iterate multiples of the largest weight, solve the remaining pair exactly.
  int big = 0;
  if (ws[1] > ws[big]) big = 1;
  if (ws[2] > ws[big]) big = 2;
  long long W = ws[big], A = ws[(big + 1) % 3], B = ws[(big + 2) % 3];
  Int total = 0;
  for (long long t = 0; t * W <= mm; ++t)
    total += detail::count_two_var(A, B, mm - t * W);
  return total;
}

// Euler characteristic of O(m) on the weighted plane P^2_w with pairwise
// coprime positive weights:
//   chi = g_{w,m} - sum over vertices with w_i > 1 of
//         Delta_{1/w_i(w_j, w_k)}(m + |w|).
inline Rational wp2_chi(const WeightTriple& w, const Int& m) {
  using boost::multiprecision::gcd;
  require_positive(w, "wp2_chi");
  if (gcd(w.w0, w.w1) != 1 || gcd(w.w0, w.w2) != 1 || gcd(w.w1, w.w2) != 1)
    throw std::invalid_argument("wp2_chi: weights must be pairwise coprime");
  Rational chi = g_w(w, m);
  Int arg = m + w.sum();
  const Int* ws[3] = {&w.w0, &w.w1, &w.w2};
  for (int i = 0; i < 3; ++i) {
    if (*ws[i] > 1)
      chi -= delta_general({*ws[i], *ws[(i + 1) % 3], *ws[(i + 2) % 3]}, arg);
  }
  return chi;
}

}  // namespace toricoh
