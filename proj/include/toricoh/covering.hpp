#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toricoh/arith.hpp"
#include "toricoh/cohomology.hpp"
#include "toricoh/surface.hpp"

namespace toricoh {

// One ramification component: multiplicity m, its canonical class, and the
// 3-coordinate representative a*Z + ex*E_X + ey*E_Y obtained by folding the
// F-part of the divisor exactly as it was supplied (F = d1*E_X).
struct CoveringComponent {
  Int m;
  DivisorClass cls;        // canonical 4-coordinate class
  Int a3, ex3, ey3;        // folded representative of the input as given
};

struct Covering {
  RuledToricSurface S;
  std::vector<CoveringComponent> components;
  DivisorClass H_cls;      // canonical class of H
  Int Hz, Hex, Hey;        // folded representative of H as given
  Int n;
  std::vector<std::string> flags;
};

struct EigensheafRow {
  Int k;
  DivisorClass cls;  // canonical class of L^(k)
  Int u, v, w;       // 3-coordinate form u*Z + v*E_X + w*E_Y
  Int h1;
};

struct Splitting {
  Int n1, n2;
  std::vector<size_t> I1, I2;  // 0-based component indices
  std::vector<EigensheafRow> table1, table2;
};

namespace detail {

inline std::array<Int, 3> fold3(const RuledToricSurface& S, const std::array<Int, 4>& v) {
  return {v[0], v[2] + v[1] * S.d1, v[3]};
}

inline Int folded_fiber_sum(const RuledToricSurface& S, const DivisorClass& D) {
  return D.alpha + D.b * S.d1 + D.beta;
}

}  // namespace detail

// n-cyclic branched covering data: ramification components (m_i, D_i) with
// sum(m_i * D_i) linearly equivalent to n*H, all divisors given as raw
// 4-coordinate tuples (a, b, alpha, beta), not necessarily canonical.
inline Covering make_covering(const RuledToricSurface& S,
                              const std::vector<std::pair<Int, std::array<Int, 4>>>& components,
                              const std::array<Int, 4>& H, const Int& n) {
  if (n < 2) throw std::invalid_argument("covering: n must be at least 2");
  Covering c;
  c.S = S;
  c.n = n;
  auto h3 = detail::fold3(S, H);
  c.Hz = h3[0];
  c.Hex = h3[1];
  c.Hey = h3[2];
  c.H_cls = canonical_form(S, H);

  std::array<Int, 4> acc = {0, 0, 0, 0};
  for (size_t i = 0; i < components.size(); ++i) {
    const auto& [m, raw] = components[i];
    if (m < 1)
      throw std::invalid_argument("covering: component " + std::to_string(i) +
                                  " has non-positive multiplicity");
    CoveringComponent comp;
    comp.m = m;
    auto r3 = detail::fold3(S, raw);
    comp.a3 = r3[0];
    comp.ex3 = r3[1];
    comp.ey3 = r3[2];
    comp.cls = canonical_form(S, raw);
    if (comp.cls.a < 0 || detail::folded_fiber_sum(S, comp.cls) < 0)
      throw std::invalid_argument("covering: component " + std::to_string(i) +
                                  " fails the effectivity proxy (a >= 0 and "
                                  "alpha + b*d1 + beta >= 0 on the canonical class)");
    for (int j = 0; j < 4; ++j) acc[j] += m * raw[j];
    c.components.push_back(std::move(comp));
  }

  DivisorClass total = canonical_form(S, acc);
  DivisorClass nH = canonical_form(S, n * H[0], n * H[1], n * H[2], n * H[3]);
  if (!(total == nH)) {
    if (numerically_equivalent(S, total, nH)) {
      auto t = torsion_index(S, sub(S, total, nH));
      throw std::invalid_argument(
          "covering: sum of components differs from n*H by the torsion class of index " +
          to_string(t ? *t : Int(-1)) + " (order " + to_string(S.d) + ")");
    }
    throw std::invalid_argument(
        "covering: sum of components is not linearly equivalent to n*H "
        "(classes differ numerically)");
  }

  if (checks_enabled()) {
    Int za = 0, zf = 0;
    for (const auto& comp : c.components) {
      za += comp.m * comp.a3;
      zf += comp.m * (comp.ex3 + comp.ey3);
    }
    if (za != n * c.Hz)
      throw internal_error("covering: component identity sum(m_i a_i) = n*z violated");
    if (S.biruled && zf != n * (c.Hex + c.Hey))
      throw internal_error(
          "covering: component identity sum(m_i (ex_i+ey_i)) = n*(ex+ey) violated");
  }

  if (S.r > 0) c.flags.push_back("experimental");
  if (S.d1 == 12 && S.d2 == 12 && S.n1 == 1 && S.n2 == 11 && S.r == 0 && n == 12 &&
      c.components.size() == 1 && c.components[0].m == 1 &&
      c.components[0].cls == DivisorClass{0, 1, 0, 0} &&
      c.H_cls == DivisorClass{0, -1, 2, 11})
    c.flags.push_back("documented-table-discrepancy");
  return c;
}

// h1 of the class u*Z + v*E_X + w*E_Y. On biruled surfaces this is the closed
// two-branch floor formula; it is cross-checked against the h-vector engine in
// strict mode. Uniruled surfaces always use the h-vector engine.
inline Int h1_three(const RuledToricSurface& S, const Int& u, const Int& v, const Int& w) {
  if (!S.biruled) return h_vector(S, canonical_form(S, u, 0, v, w)).h1;
  const Int& d = S.d;
  Int closed = 0;
  if (u == 0 && v + w <= -2) {
    closed = -1 - floor_div(v, d) - floor_div(w, d);
  } else if (v + w == 0 && u <= -2) {
    Int pp = (d > 1) ? mod_inverse(mod_floor(S.p1, d), d) : Int(0);
    closed = -1 - floor_div(u - v * pp, d) - floor_div(v * pp, d);
  }
  if (checks_enabled()) {
    HVector hv = h_vector(S, canonical_form(S, u, 0, v, w));
    if (hv.h1 != closed)
      throw internal_error("h1_three: closed form disagrees with the h-vector engine");
  }
  return closed;
}

struct Eigensheaf {
  DivisorClass cls;
  Int u, v, w;
};

// L^(k) = -k*H + sum(floor(k*m_i/n) * D_i), in the folded 3-coordinate form
// of the representatives the covering was built from.
inline Eigensheaf eigensheaf(const Covering& c, const Int& k) {
  if (k < 0 || k >= c.n) throw std::invalid_argument("eigensheaf: k out of range [0, n)");
  Int u = -k * c.Hz, v = -k * c.Hex, w = -k * c.Hey;
  for (const auto& comp : c.components) {
    Int f = floor_div(k * comp.m, c.n);
    u += f * comp.a3;
    v += f * comp.ex3;
    w += f * comp.ey3;
  }
  if (checks_enabled()) {
    if (u > 0) throw internal_error("eigensheaf: u must be non-positive");
    if (c.S.biruled && v + w > 0)
      throw internal_error("eigensheaf: v + w must be non-positive");
  }
  return {canonical_form(c.S, u, 0, v, w), u, v, w};
}

inline Int h1_Lk(const Covering& c, const Int& k) {
  Eigensheaf L = eigensheaf(c, k);
  return h1_three(c.S, L.u, L.v, L.w);
}

inline std::vector<EigensheafRow> eigensheaf_table(const Covering& c) {
  long long n = to_ll_checked(c.n, "covering order n");
  std::vector<EigensheafRow> rows;
  rows.reserve(static_cast<size_t>(n));
  for (long long k = 0; k < n; ++k) {
    Eigensheaf L = eigensheaf(c, k);
    rows.push_back({Int(k), L.cls, L.u, L.v, L.w, h1_three(c.S, L.u, L.v, L.w)});
  }
  return rows;
}

inline Int h1_total(const std::vector<EigensheafRow>& table) {
  Int s = 0;
  for (const auto& row : table) s += row.h1;
  return s;
}

inline Int betti1(const Covering& c) { return 2 * h1_total(eigensheaf_table(c)); }

// Multiplicity of the monodromy eigenvalue exp(2*pi*i*j/n) on H^1 of the
// covering surface (complex coefficients): h1(L^(j)) + h1(L^(n-j mod n)).
// Zero multiplicities are omitted.
inline std::map<Int, Int> eigenvalue_multiset(const Covering& c) {
  auto table = eigensheaf_table(c);
  std::map<Int, Int> out;
  long long n = static_cast<long long>(table.size());
  for (long long j = 0; j < n; ++j) {
    Int m = table[static_cast<size_t>(j)].h1 + table[static_cast<size_t>((n - j) % n)].h1;
    if (m != 0) out[Int(j)] = m;
  }
  return out;
}

// The two sub-coverings of the monodromy decomposition: pi_1 collects the
// indices k divisible by n/n1 (where the Z-coefficient of L^(k) vanishes),
// pi_2 those divisible by n/n2 (vanishing fiber part). The sub-cover of n_j
// sheets has associated divisor H_j = (n/n_j)*H and the identical component
// list, and its eigensheaf table is the main table subsampled at stride n/n_j.
inline Splitting splitting(const Covering& c) {
  Splitting s;
  std::vector<Int> m1, m2;
  for (size_t i = 0; i < c.components.size(); ++i) {
    const auto& comp = c.components[i];
    if (comp.cls.a != 0) {
      s.I1.push_back(i);
      m1.push_back(comp.m);
    }
    if (detail::folded_fiber_sum(c.S, comp.cls) != 0) {
      s.I2.push_back(i);
      m2.push_back(comp.m);
    }
  }
  using boost::multiprecision::gcd;
  s.n1 = gcd(c.n, gcd_list(m1));  // gcd(n, 0) = n for an empty index set
  s.n2 = gcd(c.n, gcd_list(m2));
  auto table = eigensheaf_table(c);
  auto subsample = [&](const Int& nj) {
    std::vector<EigensheafRow> t;
    Int stride = c.n / nj;
    for (Int kj = 0; kj < nj; ++kj) {
      EigensheafRow row = table[static_cast<size_t>(to_ll_checked(stride * kj))];
      row.k = kj;
      t.push_back(std::move(row));
    }
    return t;
  };
  s.table1 = subsample(s.n1);
  s.table2 = subsample(s.n2);
  return s;
}

// Verify that the holomorphic monodromy spectrum of the covering is the
// disjoint union of the two sub-cover spectra, embedding the sub-cover
// eigenvalue exp(2*pi*i*k_j/n_j) at index k_j*(n/n_j) of order n.
inline bool charpoly_factorization_check(const Covering& c) {
  Splitting s = splitting(c);
  std::map<Int, Int> whole, parts;
  for (const auto& row : eigensheaf_table(c))
    if (row.h1 != 0) whole[row.k] += row.h1;
  auto add = [&](const std::vector<EigensheafRow>& t, const Int& nj) {
    Int stride = c.n / nj;
    for (const auto& row : t)
      if (row.h1 != 0) parts[row.k * stride] += row.h1;
  };
  add(s.table1, s.n1);
  add(s.table2, s.n2);
  return whole == parts;
}

// Characteristic polynomial of the monodromy on H^1 of the covering surface
// (complex coefficients) as an exact product over roots of unity.
inline std::string charpoly_string(const Covering& c) {
  auto ev = eigenvalue_multiset(c);
  if (ev.empty()) return "1";
  std::string out;
  for (const auto& [k, m] : ev) {
    out += "(t - zeta_" + to_string(c.n) + "^" + to_string(k) + ")";
    if (m > 1) out += "^" + to_string(m);
  }
  return out;
}

}  // namespace toricoh
