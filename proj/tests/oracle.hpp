#pragma once

// Brute-force reference computations.  They use only elementary tower
// arithmetic (add, mul, pow, exp) and never the library's traces, norms,
// Gauss sums or transforms.

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/cyclotomic.hpp"
#include "charsum/field_tower.hpp"
#include "charsum/grid.hpp"

namespace oracle {

using namespace charsum;

// all elements of F_{q^d}, zero first, then g^0, g^1, ...
inline std::vector<FieldElement> elements(const FieldTower& t, int d) {
  std::vector<FieldElement> out{t.zero(d)};
  for (std::uint64_t k = 0; k + 1 < t.field_size(d); ++k) out.push_back(t.exp(d, k));
  return out;
}

// sum of the conjugates x^{p^i}; lands in the prime field
inline std::uint32_t trace(const FieldTower& t, FieldElement x) {
  FieldElement acc = t.zero(x.degree), y = x;
  const unsigned n = t.s() * static_cast<unsigned>(x.degree);
  for (unsigned i = 0; i < n; ++i) {
    acc = t.add(acc, y);
    y = t.pow(y, t.p());
  }
  if (acc.rep >= t.p()) throw std::logic_error("oracle trace left the prime field");
  return acc.rep;
}

// product of the conjugates x^{q^{e i}}, i < d/e, returned as an element of degree e
inline FieldElement norm(const FieldTower& t, FieldElement x, int e) {
  FieldElement acc = t.one(x.degree), y = x;
  const std::uint64_t qe = t.field_size(e);
  for (int i = 0; i < x.degree / e; ++i) {
    acc = t.mul(acc, y);
    y = t.pow(y, static_cast<std::int64_t>(qe));
  }
  for (const FieldElement& z : elements(t, e))
    if (t.embed(z, x.degree) == acc) return z;
  throw std::logic_error("oracle norm not in subfield");
}

// k with x = g_d^k, by search
inline std::uint64_t dlog(const FieldTower& t, FieldElement x) {
  FieldElement y = t.one(x.degree), g = t.exp(x.degree, 1);
  for (std::uint64_t k = 0; k < t.unit_order(x.degree); ++k) {
    if (y == x) return k;
    y = t.mul(y, g);
  }
  throw std::logic_error("oracle dlog of zero");
}

// Sum over x in `points` of zeta_{Qm}^{mult(x)} zeta_p^{add(x)}, Qm the multiplicative modulus.
inline CycloValue character_sum(std::uint64_t Qm, std::uint64_t p, std::size_t count,
                                const std::function<bool(std::size_t, std::uint64_t&, std::uint64_t&)>& term) {
  const std::uint64_t M = std::lcm(Qm, p);
  std::vector<std::int64_t> counts(M, 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t me = 0, ae = 0;
    if (!term(i, me, ae)) continue;
    counts[((me % Qm) * (M / Qm) + (ae % p) * (M / p)) % M] += 1;
  }
  return CycloValue::from_group_ring(M, counts);
}

// sum over x != 0 of chi(x) zeta_p^{Tr x}
inline CycloValue gauss(const FieldTower& t, const MultCharacter& chi) {
  const int d = chi.degree;
  const std::uint64_t Qm = t.unit_order(d);
  return character_sum(Qm, t.p(), Qm, [&](std::size_t k, std::uint64_t& me, std::uint64_t& ae) {
    me = static_cast<std::uint64_t>((static_cast<unsigned __int128>(chi.index) * k) % Qm);
    ae = trace(t, t.exp(d, k));
    return true;
  });
}

// f^(y) = sum_x f(x) psi(<x, y>) point by point, with psi = zeta_p^{Tr}
inline GridFunction fourier(const FieldTower& t, const GridFunction& f) {
  const std::uint64_t M = std::lcm(f.order, static_cast<std::uint64_t>(t.p()));
  std::vector<FieldElement> coord = elements(t, f.degree);
  GridFunction g = f;
  g.order = M;
  for (std::size_t y = 0; y < f.size(); ++y) {
    CycloValue acc = CycloValue::integer(0, M);
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (f.values[x].is_zero()) continue;
      FieldElement s = t.zero(f.degree);
      std::size_t xi = x, yi = y;
      for (int i = 0; i < f.k; ++i) {
        s = t.add(s, t.mul(coord[xi % f.side], coord[yi % f.side]));
        xi /= f.side;
        yi /= f.side;
      }
      acc += f.values[x].lift_order(M) * CycloValue::root(M, static_cast<std::int64_t>(trace(t, s) * (M / t.p())));
    }
    g.values[y] = acc;
  }
  return g;
}

}  // namespace oracle
