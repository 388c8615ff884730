#include <doctest.h>

#include <numeric>

#include "charsum/fourier.hpp"
#include "charsum/norm_algebra.hpp"
#include "oracle.hpp"

using namespace charsum;

namespace {

// Calls f on every point of k^*, as a vector of factor elements.
template <class F>
void for_each_unit(const FieldTower& t, const EtaleAlgebra& k, F&& f) {
  std::vector<std::uint64_t> idx(k.factors(), 0);
  while (true) {
    AlgebraElement x;
    for (std::size_t i = 0; i < idx.size(); ++i) x.push_back(t.exp(k.degrees[i], idx[i]));
    f(x, idx);
    std::size_t i = idx.size();
    while (i > 0) {
      --i;
      if (++idx[i] < t.unit_order(k.degrees[i])) break;
      idx[i] = 0;
      if (i == 0) return;
    }
  }
}

std::uint64_t unit_count(const FieldTower& t, const EtaleAlgebra& k) {
  std::uint64_t n = 1;
  for (int d : k.degrees) n *= t.unit_order(d);
  return n;
}

std::uint64_t char_lcm(const NormCharacter& c) {
  std::uint64_t m = 1;
  for (auto& x : c.chars) m = std::lcm(m, x.modulus);
  return m;
}

// sum over k^* of chi(x) psi(a det_V(x)), or psi(Tr x) when V is empty
CycloValue brute(const FieldTower& t, const EtaleAlgebra& k, const NormCharacter& chi, const VirtualModule* V,
                 FieldElement a) {
  const std::uint64_t L = char_lcm(chi);
  std::vector<std::int64_t> counts;
  const std::uint64_t M = std::lcm(L, static_cast<std::uint64_t>(t.p()));
  counts.assign(M, 0);
  for_each_unit(t, k, [&](const AlgebraElement& x, const std::vector<std::uint64_t>& idx) {
    std::uint64_t me = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      me = (me + chi.chars[i].index * idx[i] % chi.chars[i].modulus * (L / chi.chars[i].modulus)) % L;
    std::uint64_t ae = 0;
    if (V) {
      FieldElement det = a;
      for (std::size_t i = 0; i < x.size(); ++i)
        det = t.mul(det, t.pow(oracle::norm(t, x[i], k.base), V->ranks[i]));
      ae = oracle::trace(t, det);
    } else {
      for (auto& xi : x) ae += oracle::trace(t, xi);
    }
    counts[(me * (M / L) + (ae % t.p()) * (M / t.p())) % M] += 1;
  });
  return CycloValue::from_group_ring(M, counts);
}

}  // namespace

TEST_SUITE("norm") {
  TEST_CASE("algebra Gauss sums: factorised, direct and brute force agree") {
    auto t = FieldTower::build(3, 1, {1, 2});
    AddCharacter psi(t);
    auto k = make_algebra(t, {2, 1});
    for (auto& c9 : all_chars(*t, 2))
      for (auto& c3 : all_chars(*t, 1)) {
        NormCharacter chi{{c9, c3}};
        CycloValue want = brute(*t, k, chi, nullptr, t->one(1));
        CHECK(gauss_sum_algebra(k, chi, psi) == want);
        CHECK(gauss_sum_algebra_direct(k, chi, psi) == want);
      }
  }

  TEST_CASE("I-sums over algebras: direct, closed form and brute force agree") {
    auto t = FieldTower::build(3, 1, {1, 2});
    AddCharacter psi(t);
    auto k = make_algebra(t, {2, 1});
    for (auto ranks : std::vector<std::vector<std::int64_t>>{{1, -2}, {1, 1}, {2, -1}, {1, 0}})
      for (std::int64_t a : {1, 2})
        for (auto& c9 : all_chars(*t, 2))
          for (auto& c3 : all_chars(*t, 1)) {
            VirtualModule V{ranks};
            NormCharacter l{{c9, c3}};
            FieldElement ae = t->from_integer(1, a);
            CycloValue want = brute(*t, k, l, &V, ae);
            CHECK(i_norm_direct(k, V, l, ae, psi) == want);
            CHECK(i_norm_closed(k, V, l, ae, psi) == want);
            if (!det_root(k, V, l)) CHECK(want.is_zero());
          }
  }

  TEST_CASE("det_V and p(V) by brute force") {
    auto t = FieldTower::build(5, 1, {1, 2});
    auto k = make_algebra(t, {2, 1});
    VirtualModule V{{2, -3}};
    for_each_unit(*t, k, [&](const AlgebraElement& x, const std::vector<std::uint64_t>&) {
      FieldElement want = t->mul(t->pow(oracle::norm(*t, x[0], 1), 2), t->pow(x[1], -3));
      CHECK(det_V(k, V, x) == want);
    });
    // 2^{2*2} (-3)^{-3}
    FieldElement p = t->mul(t->pow(t->from_integer(1, 2), 4), t->pow(t->from_integer(1, -3), -3));
    CHECK(p_of(k, V) == p);
    CHECK(rk(k, V) == 1);
    CHECK(d_of(V) == 1);
    CHECK_THROWS_AS(validate_module(k, VirtualModule{{5, 1}}), DomainError);
  }

  TEST_CASE("Gauss sums twisted through det_V: exponents and parity") {
    auto t = FieldTower::build(3, 1, {1, 2});
    AddCharacter psi(t);
    const MultCharacter one = trivial_char(*t, 1);
    auto k = make_algebra(t, {2, 1, 1});
    VirtualModule V{{1, -1, -1}};
    for (auto& x : all_chars(*t, 1)) {
      NormCharacter chi{{char_lift(*t, x, 2), char_inv(x), char_inv(x)}};
      REQUIRE(divisor_D_chi_V(k, chi, V).is_zero());
      for (auto& l : all_chars(*t, 1)) {
        NormGaussResult r = verify_norm_gauss_identity(k, V, chi, l, psi);
        NormCharacter twisted = norm_char_mul(compose_det(k, V, l), chi);
        CHECK(r.lhs == brute(*t, k, twisted, nullptr, t->one(1)));
        if (r.generic) CHECK(2 * r.m == r.trivial_weight);
      }
    }
    NormCharacter bad{{trivial_char(*t, 2), one, epsilon(*t, 1, 2)}};
    CHECK_THROWS_AS(verify_norm_gauss_identity(k, V, bad, one, psi), DomainError);
  }

  TEST_CASE("extension keeps rank, gcd, p(V) and the divisor modulo Frobenius") {
    auto t = FieldTower::build(3, 1, {1, 2, 3, 4, 6});
    auto k = make_algebra(t, {2, 1});
    for (auto ranks : std::vector<std::vector<std::int64_t>>{{1, -2}, {1, 1}, {2, -1}})
      for (auto& c9 : all_chars(*t, 2))
        for (auto& c3 : all_chars(*t, 1)) {
          NormDatum d{k, {ranks}, {{c9, c3}}, t->one(1)};
          Divisor D = divisor_D_chi_V(k, d.chi, d.module);
          for (int e : {2, 3}) {
            NormDatum x = extend_datum(d, e);
            CHECK(x.algebra.dimension() == k.dimension());
            CHECK(rk(x.algebra, x.module) == rk(k, d.module));
            CHECK(d_of(x.module) == d_of(d.module));
            CHECK(p_of(x.algebra, x.module) == t->embed(p_of(k, d.module), e));
            Divisor Dx = divisor_D_chi_V(x.algebra, x.chi, x.module);
            CHECK(frobenius_quotient(Dx, t->q()) == frobenius_quotient(D, t->q()));
            // a zero divisor stays zero; a nonzero one may vanish once its Frobenius orbits split
            if (D.is_zero()) CHECK(Dx.is_zero());
          }
        }
  }

  TEST_CASE("transform pairings hold over the base and its square") {
    auto t = FieldTower::build(3, 1, {1, 2, 4});
    AddCharacter psi(t);
    for (auto [degs, ranks] : std::vector<std::pair<std::vector<int>, std::vector<std::int64_t>>>{{{2}, {1}}, {{2, 1}, {1, -2}}}) {
      NormCharacter chi;
      for (int d : degs) chi.chars.push_back(trivial_char(*t, d));
      NormDatum nd{make_algebra(t, degs), {ranks}, chi, t->one(1)};
      NormTransformSolution s = solve_norm_transform(nd, psi);
      NormPairingReport r = verify_norm_pairing(nd, s, psi, {1, 2});
      CHECK(r.pass);
      CHECK(r.nonzero > 0);
      CHECK(r.twist_matches_prediction);
      CHECK(r.cross_checked > 0);
    }
  }

  TEST_CASE("split algebras reproduce the monomial solver") {
    auto t = FieldTower::build(7, 1, {1, 2});
    AddCharacter psi(t);
    auto k = make_algebra(t, {1, 1});
    MultCharacter one = trivial_char(*t, 1), e3 = epsilon(*t, 1, 3);
    for (std::int64_t a : {1, 3}) {
      NormDatum nd{k, {{3, -1}}, {{one, e3}}, t->from_integer(1, a)};
      MonomialDatum md{1, {3, -1}, {one, e3}, t->from_integer(1, a)};
      NormTransformSolution ns = solve_norm_transform(nd, psi);
      TransformSolution ms = solve_monomial_transform(md, psi).at(0);
      CHECK(ns.nu == ms.chi);
      CHECK(ns.output.coeff == ms.output.coeff);
      CHECK(ns.output.chi.chars == ms.output.chars);
      NormPairingReport r = verify_norm_pairing(nd, ns, psi, {1});
      CHECK(r.pass);
      REQUIRE(r.twist.has_value());
      CHECK(*r.twist == ms.twist);
      CHECK(r.c == ms.c);
    }
  }
}
