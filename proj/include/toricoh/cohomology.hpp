#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toricoh/arith.hpp"
#include "toricoh/delta.hpp"
#include "toricoh/surface.hpp"

namespace toricoh {

enum class Method { enumeration, table1, main2_closed, mixed };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::enumeration: return "enumeration";
    case Method::table1: return "table1";
    case Method::main2_closed: return "main2-closed";
    case Method::mixed: return "mixed";
  }
  return "?";
}

// How the caller wants h_vector computed: pick the fast path automatically,
// force the enumeration oracle, or insist on a closed form.
enum class MethodChoice { automatic, enumeration, closed };

struct HVector {
  Int h0, h1, h2;
  Int chi;
  Method method;
  std::vector<std::string> flags;
};

namespace detail {

// Capacity bound for the int64 enumeration kernel: with every input bounded
// by 2^20 in absolute value, all intermediate products stay below 2^42.
inline constexpr long long kEnumCap = 1LL << 20;

inline long long ll_enum(const Int& x, const char* what) {
  long long v = to_ll_checked(x, what);
  if (v > kEnumCap || v < -kEnumCap)
    throw std::overflow_error(std::string("h0_enum: |") + what +
                              "| exceeds the enumeration capacity bound 2^20");
  return v;
}

inline long long floor_div_ll(long long a, long long b) {
  long long q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long long ceil_div_ll(long long a, long long b) { return -floor_div_ll(-a, b); }

inline bool within_enum_capacity(const RuledToricSurface& S, const DivisorClass& D) {
  auto ok = [](const Int& x) { return x <= kEnumCap && x >= -kEnumCap; };
  return ok(D.a) && ok(D.b) && ok(D.alpha) && ok(D.beta) && ok(S.d1) && ok(S.d2) &&
         ok(S.p1) && ok(S.p2) && ok(S.q2);
}

}  // namespace detail

// Dimension of H^0(O_S(D)) by direct enumeration of monomial exponents:
// pairs (u,v) >= 0 with b <= u+v <= a+b satisfying the two multiplicity
// constraints at the singular fibers,
//   (d1-p1)*u - p1*v >= -p1*b - alpha   and   q2*u - p2*v <= q2*b + beta.
// Requires D canonical (0 <= alpha < d1, 0 <= beta < d2).
inline Int h0_enum(const RuledToricSurface& S, const DivisorClass& D) {
  long long a = detail::ll_enum(D.a, "a"), b = detail::ll_enum(D.b, "b"),
            al = detail::ll_enum(D.alpha, "alpha"), be = detail::ll_enum(D.beta, "beta");
  long long d1 = detail::ll_enum(S.d1, "d1"), p1 = detail::ll_enum(S.p1, "p1"),
            p2 = detail::ll_enum(S.p2, "p2"), q2 = detail::ll_enum(S.q2, "q2");
  if (a + b < 0) return 0;
  long long total = 0;
  for (long long u = 0; u <= a + b; ++u) {
    long long vmax = std::min(a + b - u, detail::floor_div_ll((d1 - p1) * u + p1 * b + al, p1));
    long long vmin = std::max({0LL, b - u, detail::ceil_div_ll(q2 * (u - b) - be, p2)});
    if (vmax >= vmin) total += vmax - vmin + 1;
  }
  return total;
}

inline Int h2_via_duality(const RuledToricSurface& S, const DivisorClass& D) {
  return h0_enum(S, sub(S, S.K, D));
}

// Closed form for h^0 on a biruled surface (r = 0, hence d1 = d2 = d):
// a big triangle minus the strip below b and the two corner triangles, the
// corners counted as weighted-plane lattice points.
inline Int h0_closed_biruled(const RuledToricSurface& S, const DivisorClass& D) {
  if (!S.biruled) throw std::invalid_argument("h0_closed_biruled: requires r = 0");
  const Int &a = D.a, &b = D.b, &al = D.alpha, &be = D.beta;
  if (S.d == 1) return (a >= 0 && b >= 0) ? Int((a + 1) * (b + 1)) : Int(0);
  const Int& d = S.d;
  const Int& p = S.p1;
  const Int& q = S.q1;  // = d - p1 on a biruled surface with d >= 2
  if (a < 0 || b < -1) return 0;
  if (b == -1 && al + be < d) return 0;
  Int tb = wp2_lattice_count({d, 1, q}, q * a - be - 1);
  Int ta = wp2_lattice_count({d, 1, p}, p * a - al - 1);
  return binom2(a + b + 2) - binom2(b + 1) - tb - ta;
}

// Cohomology concentration on biruled surfaces: all of h0,h1,h2 vanish except
// (at most) one degree selected by the signs of a, b and alpha+beta vs d; the
// surviving dimension is |chi|.
inline HVector table1_vector(const RuledToricSurface& S, const DivisorClass& D,
                             const Int& chi_int) {
  if (!S.biruled) throw std::invalid_argument("table1_vector: requires r = 0");
  HVector out;
  out.h0 = 0;
  out.h1 = 0;
  out.h2 = 0;
  out.chi = chi_int;
  out.method = Method::table1;
  if (D.a == -1) {
    if (chi_int != 0)
      throw internal_error("table1_vector: chi must vanish when a = -1");
    return out;
  }
  bool upper = D.b > -1 || (D.b == -1 && D.alpha + D.beta >= S.d);
  int idx = upper ? (D.a > -1 ? 0 : 1) : (D.a > -1 ? 1 : 2);
  Int val = (idx == 1) ? Int(-chi_int) : chi_int;
  if (val < 0)
    throw internal_error("table1_vector: concentration sign violated (chi inconsistent)");
  if (idx == 0) out.h0 = val;
  else if (idx == 1) out.h1 = val;
  else out.h2 = val;
  return out;
}

struct Main2Result {
  int region;  // 1: below the slope-r threshold, 2: at or above it
  Int h1;      // closed-form h1 (0 in region 1)
};

namespace detail {

inline Int main2_rho(const RuledToricSurface& S, const DivisorClass& D, Int& N_out) {
  N_out = to_int_exact(S.r * Rational(S.d1 * S.d2), "r*d1*d2");
  return N_out * D.a - S.d1 * S.d2 * D.b - S.d2 * D.alpha - S.d1 * D.beta;
}

}  // namespace detail

// Closed-form h1 for uniruled surfaces with k = 0 on divisors with a >= 0,
// b >= -1. Region 1 (r*a < b + alpha/d1 + beta/d2) is acyclic above degree 0.
// In region 2, h1 counts the pairs (sigma, tau) >= (1,1) of simultaneous
// violation margins of the two enumeration constraints that land on an
// integral exponent pair (u, v) >= 0 inside the degree strip.
inline std::optional<Main2Result> main2_closed(const RuledToricSurface& S,
                                               const DivisorClass& D) {
  if (!(S.r > 0) || S.k != 0 || D.a < 0 || D.b < -1) return std::nullopt;
  Int N;
  Int rho = detail::main2_rho(S, D, N);
  if (rho < 0) return Main2Result{1, 0};
  if (rho > (Int(1) << 20))
    throw std::overflow_error("main2_closed: rho exceeds the closed-form capacity bound 2^20");
  Int h1 = 0;
  for (Int sigma = 1; S.d2 * sigma + S.d1 <= rho; ++sigma) {
    for (Int tau = 1; S.d2 * sigma + S.d1 * tau <= rho; ++tau) {
      Int slack = rho - S.d2 * sigma - S.d1 * tau;
      if (mod_floor(slack, N) != 0) continue;
      Int A = sigma + S.p1 * D.b + D.alpha;
      Int B = tau + S.q2 * D.b + D.beta;
      Int unum = S.p2 * A + S.p1 * B;
      if (mod_floor(unum, N) != 0) continue;
      Int u = unum / N;                       // exact by the check above
      Int v = D.a + D.b - slack / N - u;      // u + v = a + b - slack/N, exact
      if (u >= 0 && v >= 0) ++h1;
    }
  }
  return Main2Result{2, h1};
}

struct H02Report {
  Rational closed_value;  // best-effort evaluation of the two-cone difference
  Int h0;                 // the enumeration oracle
  bool match;
};

namespace detail {

// Formal polynomial part of chi on a weighted plane, allowing signed weights.
inline Rational g_signed(const Int& w0, const Int& w1, const Int& w2, const Int& rho) {
  return Rational(1) + Rational(rho * (rho + w0 + w1 + w2), 2 * w0 * w1 * w2);
}

inline Rational delta_best_effort(const Int& order, const Int& wa, const Int& wb,
                                  const Int& chr) {
  try {
    return delta_general({order, wa, wb}, chr);
  } catch (const std::invalid_argument&) {
    CyclicQuotientType t = normalize_type({order, wa, wb});
    if (t.d == 1) return 0;
    return delta_general(t, chr);
  }
}

inline Rational pseudo_wp2_chi(const Int& w0, const Int& w1, const Int& w2, const Int& rho) {
  using boost::multiprecision::abs;
  Rational v = g_signed(w0, w1, w2, rho);
  const Int* w[3] = {&w0, &w1, &w2};
  Int chr = rho + w0 + w1 + w2;
  for (int i = 0; i < 3; ++i) {
    Int order = abs(*w[i]);
    if (order > 1) v -= delta_best_effort(order, *w[(i + 1) % 3], *w[(i + 2) % 3], chr);
  }
  return v;
}

}  // namespace detail

// Diagnostic evaluation of the k > 0 closed form whose weight triples contain
// a negative entry. The lattice semantics of those signed weights is not
// pinned down, so the value is reported against the enumeration oracle and
// never asserted.
inline std::optional<H02Report> h02_diagnostic(const RuledToricSurface& S,
                                               const DivisorClass& D) {
  if (!(S.r > 0) || S.k <= 0 || D.b < -1) return std::nullopt;
  Rational height =
      Rational(D.b) + Rational(D.alpha, S.d1) + Rational(D.beta, S.d2);
  if (height < 0) return std::nullopt;
  if (Rational(D.a) * S.r < height) return std::nullopt;
  if (-(S.q1 * D.a) < S.d1 * D.b + D.alpha) return std::nullopt;
  if (S.q2 == 0) return std::nullopt;  // degenerate weight in the second cone
  Int N = to_int_exact(S.r * Rational(S.d1 * S.d2), "r*d1*d2");
  Rational v1 = detail::pseudo_wp2_chi(1, S.p1, -S.q1, S.p1 * D.b + D.alpha);
  Rational v2 = detail::pseudo_wp2_chi(-S.q1, S.q2, N,
                                       S.q2 * S.d1 * D.b + D.alpha * S.q2 + D.beta * S.q1);
  Rational val = v1 - v2 - Rational(binom2(D.b + 1));
  Int h0 = h0_enum(S, D);
  return H02Report{val, h0, val == Rational(h0)};
}

// The full h-vector (h0, h1, h2) of O_S(D), with chi and method metadata.
//   automatic: biruled -> concentration table; uniruled -> enumeration plus
//              duality (method "mixed"), cross-checked in strict mode.
//   enumeration: force the oracle path on any surface.
//   closed: biruled -> concentration table; uniruled -> main2 closed form,
//           invalid_argument when its preconditions fail.
inline HVector h_vector(const RuledToricSurface& S, const DivisorClass& D,
                        MethodChoice choice = MethodChoice::automatic) {
  Int chi_int = to_int_exact(chi(S, D), "chi");
  bool main2_range = S.r > 0 && S.k == 0 && D.a >= 0 && D.b >= -1;
  bool extrapolated = S.r > 0 && !main2_range;

  auto enum_vector = [&](Method tag) {
    HVector out;
    out.method = tag;
    out.chi = chi_int;
    out.h0 = h0_enum(S, D);
    out.h2 = h2_via_duality(S, D);
    out.h1 = out.h0 + out.h2 - chi_int;
    if (out.h1 < 0)
      throw internal_error("h_vector: negative h1; chi or canonical divisor inconsistent");
    return out;
  };
  auto check_main2 = [&](const HVector& hv) {
    Int N;
    Int rho = detail::main2_rho(S, D, N);
    if (rho > 4096) return;  // keep the strict-mode cross-check cheap
    auto m2 = main2_closed(S, D);
    if (!m2) return;
    bool ok = (m2->region == 1) ? (hv.h0 == chi_int && hv.h1 == 0 && hv.h2 == 0)
                                : (hv.h1 == m2->h1 && hv.h2 == 0);
    if (!ok) throw internal_error("h_vector: closed-form h1 disagrees with the oracle");
  };

  HVector out;
  switch (choice) {
    case MethodChoice::enumeration:
      out = enum_vector(Method::enumeration);
      break;
    case MethodChoice::automatic:
      if (S.biruled) {
        out = table1_vector(S, D, chi_int);
        if (checks_enabled() && detail::within_enum_capacity(S, D) &&
            detail::within_enum_capacity(S, sub(S, S.K, D))) {
          HVector oracle = enum_vector(Method::enumeration);
          if (oracle.h0 != out.h0 || oracle.h1 != out.h1 || oracle.h2 != out.h2)
            throw internal_error("h_vector: concentration table disagrees with enumeration");
        }
      } else {
        out = enum_vector(Method::mixed);
        if (checks_enabled() && main2_range) check_main2(out);
      }
      break;
    case MethodChoice::closed:
      if (S.biruled) {
        out = table1_vector(S, D, chi_int);
        if (checks_enabled() && detail::within_enum_capacity(S, D) &&
            detail::within_enum_capacity(S, sub(S, S.K, D))) {
          HVector oracle = enum_vector(Method::enumeration);
          if (oracle.h0 != out.h0 || oracle.h1 != out.h1 || oracle.h2 != out.h2)
            throw internal_error("h_vector: concentration table disagrees with enumeration");
        }
      } else {
        auto m2 = main2_closed(S, D);
        if (!m2)
          throw std::invalid_argument(
              "closed method on a uniruled surface requires k = 0, a >= 0 and b >= -1");
        out.method = Method::main2_closed;
        out.chi = chi_int;
        if (m2->region == 1) {
          if (chi_int < 0)
            throw internal_error("main2_closed: region-1 chi must be non-negative");
          out.h0 = chi_int;
          out.h1 = 0;
          out.h2 = 0;
        } else {
          out.h1 = m2->h1;
          out.h2 = 0;
          out.h0 = chi_int + m2->h1;
          if (out.h0 < 0)
            throw internal_error("main2_closed: region-2 h0 must be non-negative");
        }
        if (checks_enabled()) {
          HVector oracle = enum_vector(Method::enumeration);
          if (oracle.h0 != out.h0 || oracle.h1 != out.h1 || oracle.h2 != out.h2)
            throw internal_error("h_vector: main2 closed form disagrees with enumeration");
        }
      }
      break;
  }
  if (extrapolated) out.flags.push_back("extrapolated");
  return out;
}

}  // namespace toricoh
