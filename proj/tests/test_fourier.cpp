#include <doctest.h>

#include <random>

#include "charsum/fourier.hpp"
#include "oracle.hpp"

using namespace charsum;

namespace {

MonomialDatum datum(const FieldTower& t, std::vector<std::int64_t> ns, std::vector<std::int64_t> idx, std::int64_t a) {
  MonomialDatum m;
  m.exponents = std::move(ns);
  for (auto i : idx) m.chars.push_back(make_char(t, 1, i));
  m.coeff = t.from_integer(1, a);
  return m;
}

bool grids_equal(const GridFunction& a, const GridFunction& b, const CycloValue& factor) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.values[i] != factor * b.values[i]) return false;
  return true;
}

}  // namespace

TEST_SUITE("fourier") {
  TEST_CASE("transform matches point-by-point summation on random grids") {
    std::mt19937_64 rng(9);
    for (auto [p, s, k] : std::vector<std::tuple<std::uint32_t, std::uint32_t, int>>{{5, 1, 2}, {2, 2, 2}, {7, 1, 1}, {3, 1, 3}}) {
      auto t = FieldTower::build(p, s, {1});
      AddCharacter psi(t);
      GridFunction f = make_grid(*t, 1, k, 4);
      for (auto& v : f.values) v = CycloValue::root(4, static_cast<std::int64_t>(rng() % 4)) * CycloValue(static_cast<long>(rng() % 3));
      CHECK(grids_equal(fourier_transform(f, psi), oracle::fourier(*t, f), CycloValue(1)));
    }
  }

  TEST_CASE("transform of a solved datum is (-1)^k c times the output datum, origin included") {
    struct D {
      std::uint32_t p;
      std::vector<std::int64_t> ns, idx;
      std::int64_t a;
    };
    for (const D& d : std::vector<D>{{7, {3, -1}, {0, 2}, 1}, {7, {3, -1}, {0, 4}, 5}, {5, {4, -2}, {0, 2}, 2},
                                     {5, {1, 1}, {0, 2}, 1}, {7, {1, -1}, {2, 4}, 3}, {7, {2}, {0}, 4}, {5, {2}, {0}, 1}}) {
      auto t = FieldTower::build(d.p, 1, {1});
      AddCharacter psi(t);
      MonomialDatum m = datum(*t, d.ns, d.idx, d.a);
      auto sols = solve_monomial_transform(m, psi);
      REQUIRE(sols.size() == 1);
      const TransformSolution& s = sols[0];
      GridFunction fh = oracle::fourier(*t, gm_trace_function(m, psi));
      CHECK(grids_equal(fh, gm_trace_function(s.output, psi), m.k() % 2 ? -s.c : s.c));
      CHECK(verify_transform_pointwise(m, s, psi).pass);
    }
  }

  TEST_CASE("psi(x^3/y) transforms to q psi(x^3/(27 y)) over F_7 and F_13") {
    for (std::uint32_t p : {7u, 13u}) {
      auto t = FieldTower::build(p, 1, {1});
      AddCharacter psi(t);
      MonomialDatum m = datum(*t, {3, -1}, {0, static_cast<std::int64_t>((p - 1) / 3)}, 1);
      GridFunction f = gm_trace_function(m, psi);
      GridFunction fh = oracle::fourier(*t, f);
      FieldElement s27 = t->from_integer(1, 27);
      for (std::size_t pt = 0; pt < f.size(); ++pt) {
        auto c = grid_unpack(f, pt);
        FieldElement y = grid_coordinate(*t, 1, c[1]);
        c[1] = grid_index(*t, t->mul(s27, y));
        CHECK(fh.values[pt] == CycloValue(static_cast<long>(p)) * f.values[grid_pack(f, c)]);
      }
    }
  }

  TEST_CASE("I-sums: closed form against direct summation") {
    auto t = FieldTower::build(7, 1, {1});
    AddCharacter psi(t);
    auto chars = all_chars(*t, 1);
    for (auto m : {datum(*t, {3, -1}, {0, 2}, 1), datum(*t, {2, -2}, {3, 3}, 2), datum(*t, {1, 1}, {1, 4}, 3)})
      for (std::size_t i = 1; i < chars.size(); ++i)
        for (std::size_t j = 1; j < chars.size(); ++j) {
          std::vector<MultCharacter> l{chars[i], chars[j]};
          CycloValue direct = i_sum_direct(m, l, psi);
          CHECK(i_sum_closed(m, l, psi) == direct);
          if (i_sum_vanishes(m, l)) CHECK(direct.is_zero());
        }
  }

  TEST_CASE("pairing sweeps pass over the base field and its square") {
    auto t = FieldTower::build(7, 1, {1, 2});
    AddCharacter psi(t);
    MonomialDatum m = datum(*t, {3, -1}, {0, 2}, 1);
    auto s = solve_monomial_transform(m, psi).at(0);
    PairingSweep sw = pairing_sweep(m, s, psi, {1, 2});
    CHECK(sw.pass);
    CHECK(sw.nonzero > 0);
  }

  TEST_CASE("size bound is enforced") {
    auto t = FieldTower::build(7, 1, {1});
    AddCharacter psi(t);
    GridFunction f = make_grid(*t, 1, 2, 1);
    CHECK_THROWS_AS(fourier_transform(f, psi, 100), SizeBoundError);
  }

  TEST_CASE("unsolvable exponent sums are rejected") {
    auto t = FieldTower::build(7, 1, {1});
    AddCharacter psi(t);
    CHECK_THROWS_AS(solve_monomial_transform(datum(*t, {2, 1}, {0, 0}, 1), psi), DomainError);
  }
}
