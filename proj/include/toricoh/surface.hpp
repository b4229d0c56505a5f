#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "toricoh/arith.hpp"
#include "toricoh/delta.hpp"

namespace toricoh {

// Divisor class a*Z + b*F + alpha*E_X + beta*E_Y in canonical coordinates:
// 0 <= alpha < d1 and 0 <= beta < d2 (excess multiples of E_X, E_Y are folded
// into F through F = d1*E_X = d2*E_Y).
struct DivisorClass {
  Int a, b, alpha, beta;
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

// Q-divisor z*Z + f*F + ex*E_X + ey*E_Y; no canonical reduction.
struct QDivisor {
  Rational z, f, ex, ey;
  friend bool operator==(const QDivisor&, const QDivisor&) = default;
};

inline QDivisor to_qdivisor(const DivisorClass& D) {
  return {Rational(D.a), Rational(D.b), Rational(D.alpha), Rational(D.beta)};
}

// Rational ruled toric surface S_{(d1,d2,n1,n2,r)}: the fiber F, two ruling
// sections Z (self-intersection -r) and the torsion-twisted complements, and
// singular points of orders d1, d2 on each of the two sections.
class RuledToricSurface {
 public:
  Int d1, d2, n1, n2;
  Rational r;

  // Derived invariants.
  Int k;        // n1/d1 + n2/d2 - r = 1 - k
  Int p1, q1;   // p1 = n1 + k*d1, q1 = d1 - n1
  Int q2, p2;   // q2 = n2,        p2 = d2 - n2
  Int d;        // gcd(d1, d2): order of the torsion part of Pic
  bool biruled; // r = 0

  DivisorClass K; // canonical divisor class, validated on construction

  const std::vector<Rational>& row_q1() const { return dt_q1_; }
  const std::vector<Rational>& row_p1() const { return dt_p1_; }
  const std::vector<Rational>& row_p2() const { return dt_p2_; }
  const std::vector<Rational>& row_q2() const { return dt_q2_; }

 private:
  std::vector<Rational> dt_q1_, dt_p1_, dt_p2_, dt_q2_;
  friend RuledToricSurface make_surface(const Int&, const Int&, const Int&, const Int&,
                                        const Rational&);
};

inline DivisorClass canonical_form(const RuledToricSurface& S, Int a, Int b, Int alpha,
                                   Int beta) {
  Int c1 = floor_div(alpha, S.d1);
  alpha -= c1 * S.d1;
  Int c2 = floor_div(beta, S.d2);
  beta -= c2 * S.d2;
  return {a, b + c1 + c2, alpha, beta};
}

inline DivisorClass canonical_form(const RuledToricSurface& S, const std::array<Int, 4>& v) {
  return canonical_form(S, v[0], v[1], v[2], v[3]);
}

inline DivisorClass add(const RuledToricSurface& S, const DivisorClass& x,
                        const DivisorClass& y) {
  return canonical_form(S, x.a + y.a, x.b + y.b, x.alpha + y.alpha, x.beta + y.beta);
}

inline DivisorClass sub(const RuledToricSurface& S, const DivisorClass& x,
                        const DivisorClass& y) {
  return canonical_form(S, x.a - y.a, x.b - y.b, x.alpha - y.alpha, x.beta - y.beta);
}

inline DivisorClass scale(const RuledToricSurface& S, const Int& m, const DivisorClass& x) {
  return canonical_form(S, m * x.a, m * x.b, m * x.alpha, m * x.beta);
}

// Intersection pairing. Nonzero products of generators:
//   Z.Z = -r, Z.F = 1, Z.E_X = 1/d1, Z.E_Y = 1/d2.
inline Rational intersect(const RuledToricSurface& S, const QDivisor& x, const QDivisor& y) {
  Rational v = -S.r * x.z * y.z;
  v += x.z * y.f + y.z * x.f;
  v += (x.z * y.ex + y.z * x.ex) / Rational(S.d1);
  v += (x.z * y.ey + y.z * x.ey) / Rational(S.d2);
  return v;
}

inline Rational intersect(const RuledToricSurface& S, const DivisorClass& x,
                          const DivisorClass& y) {
  return intersect(S, to_qdivisor(x), to_qdivisor(y));
}

inline Rational intersect(const RuledToricSurface& S, const DivisorClass& x,
                          const QDivisor& y) {
  return intersect(S, to_qdivisor(x), y);
}

// Canonical cycle Z_K = 2Z + rF + E_X + E_Y (so K = -Z_K numerically).
inline QDivisor canonical_cycle(const RuledToricSurface& S) {
  return {Rational(2), S.r, Rational(1), Rational(1)};
}

inline bool linearly_equivalent(const RuledToricSurface& S, const DivisorClass& x,
                                const DivisorClass& y) {
  return x == y;
}

inline bool numerically_trivial(const RuledToricSurface& S, const DivisorClass& x) {
  static const QDivisor gens[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (const QDivisor& g : gens)
    if (intersect(S, to_qdivisor(x), g) != 0) return false;
  return true;
}

inline bool numerically_equivalent(const RuledToricSurface& S, const DivisorClass& x,
                                   const DivisorClass& y) {
  return numerically_trivial(S, sub(S, x, y));
}

// Torsion generator T = (d1/d) E_X - (d2/d) E_Y, of order d in Pic.
inline DivisorClass torsion_generator(const RuledToricSurface& S) {
  return canonical_form(S, 0, 0, S.d1 / S.d, -(S.d2 / S.d));
}

// Index t in [0, d) with D ~ t*T for numerically trivial D; nullopt otherwise.
inline std::optional<Int> torsion_index(const RuledToricSurface& S, const DivisorClass& D) {
  if (!numerically_trivial(S, D)) return std::nullopt;
  DivisorClass T = torsion_generator(S);
  DivisorClass acc = canonical_form(S, 0, 0, 0, 0);
  for (Int t = 0; t < S.d; ++t) {
    if (acc == D) return t;
    acc = add(S, acc, T);
  }
  throw internal_error("torsion_index: numerically trivial class outside the torsion cycle");
}

namespace detail {

// Order cap for precomputed Delta rows; larger orders fall back to the
// descent, which is cheap per call anyway.
inline constexpr long long kDeltaRowCap = 4096;

inline Rational delta_corr(const std::vector<Rational>& row, const Int& d, const Int& p,
                           const Int& k) {
  if (row.empty()) return delta(d, p, k);
  return row[static_cast<size_t>(to_ll_checked(mod_floor(k, d)))];
}

}  // namespace detail

// Euler characteristic of O_S(D), exact. Riemann-Roch on the normal surface:
// smooth part 1 + D(D - K)/2 expanded in canonical coordinates, minus the
// Delta corrections at the four singular points.
inline Rational chi(const RuledToricSurface& S, const DivisorClass& D) {
  const Int &a = D.a, &b = D.b, &al = D.alpha, &be = D.beta;
  Rational v = 1;
  v += Rational(a) * (Rational(b) + S.r) / 2;
  Rational height = Rational(b) + Rational(al, S.d1) + Rational(be, S.d2) - Rational(a) * S.r;
  v += height * Rational(a + 2) / 2;
  v += Rational(a * (al + 1), 2 * S.d1);
  v += Rational(a * (be + 1), 2 * S.d2);
  v -= detail::delta_corr(S.row_q1(), S.d1, S.q1, -al - a * S.q1);
  v -= detail::delta_corr(S.row_p2(), S.d2, S.p2, -be - a * S.p2);
  v -= detail::delta_corr(S.row_p1(), S.d1, S.p1, -al);
  v -= detail::delta_corr(S.row_q2(), S.d2, S.q2, -be);
  return v;
}

namespace detail {

// Deterministic sample of divisor classes that hits every torsion index.
inline std::vector<DivisorClass> duality_sample(const RuledToricSurface& S) {
  std::vector<DivisorClass> out;
  DivisorClass T = torsion_generator(S);
  DivisorClass acc = canonical_form(S, 0, 0, 0, 0);
  long long d = to_ll_checked(S.d);
  for (long long t = 0; t < d; ++t) {
    out.push_back(acc);
    acc = add(S, acc, T);
  }
  for (long long i = 0; i < 60; ++i) {
    Int a = (i % 5) - 2;
    Int b = ((i / 5) % 5) - 2;
    Int alpha = mod_floor(Int(7 * i + 3), S.d1) + (i % d) * (S.d1 / S.d);
    Int beta = mod_floor(Int(11 * i + 5), S.d2);
    out.push_back(canonical_form(S, a, b, alpha, beta));
  }
  return out;
}

}  // namespace detail

inline const DivisorClass& canonical_divisor(const RuledToricSurface& S) { return S.K; }

inline RuledToricSurface make_surface(const Int& d1, const Int& d2, const Int& n1,
                                      const Int& n2, const Rational& r) {
  using boost::multiprecision::gcd;
  RuledToricSurface S;
  if (d1 < 1 || d2 < 1) throw std::invalid_argument("surface: d1, d2 must be >= 1");
  if (n1 < 0 || n1 >= d1 || n2 < 0 || n2 >= d2)
    throw std::invalid_argument("surface: need 0 <= n_i < d_i");
  if (gcd(n1, d1) != 1 || gcd(n2, d2) != 1)
    throw std::invalid_argument("surface: n_i must be coprime to d_i");
  if (r < 0) throw std::invalid_argument("surface: r must be >= 0");
  Rational kq = Rational(1) - (Rational(n1, d1) + Rational(n2, d2) - r);
  if (denominator(kq) != 1)
    throw std::invalid_argument("surface: n1/d1 + n2/d2 - r must be an integer");
  if (numerator(kq) < 0)
    throw std::invalid_argument("surface: n1/d1 + n2/d2 - r exceeds 1");

  S.d1 = d1; S.d2 = d2; S.n1 = n1; S.n2 = n2; S.r = r;
  S.k = numerator(kq);
  S.p1 = n1 + S.k * d1;
  S.q1 = d1 - n1;
  S.q2 = n2;
  S.p2 = d2 - n2;
  S.d = gcd(d1, d2);
  S.biruled = (r == 0);
  if (S.p1 < 1) throw internal_error("surface: derived p1 must be positive");

  if (d1 <= detail::kDeltaRowCap) {
    S.dt_q1_ = delta_table(d1, S.q1);
    S.dt_p1_ = delta_table(d1, S.p1);
  }
  if (d2 <= detail::kDeltaRowCap) {
    S.dt_p2_ = delta_table(d2, S.p2);
    S.dt_q2_ = delta_table(d2, S.q2);
  }

  // Canonical divisor: numerically -Z_K; the torsion part is pinned by the
  // duality chi(K - D) = chi(D) over a sample spanning all torsion indices.
  DivisorClass seed = canonical_form(S, -2, -(1 + S.k), d1 - n1 - 1, d2 - n2 - 1);
  DivisorClass T = torsion_generator(S);
  std::vector<DivisorClass> sample = detail::duality_sample(S);
  std::optional<DivisorClass> found;
  DivisorClass cand = seed;
  for (Int t = 0; t < S.d; ++t) {
    bool ok = true;
    for (const DivisorClass& D : sample) {
      if (chi(S, sub(S, cand, D)) != chi(S, D)) { ok = false; break; }
    }
    if (ok) {
      if (found) throw internal_error("surface: canonical divisor not unique under duality sample");
      found = cand;
    }
    cand = add(S, cand, T);
  }
  if (!found) throw internal_error("surface: no torsion offset satisfies canonical duality");
  S.K = *found;
  return S;
}

}  // namespace toricoh
