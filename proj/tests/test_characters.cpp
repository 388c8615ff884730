#include <doctest.h>

#include "charsum/characters.hpp"
#include "oracle.hpp"

using namespace charsum;

namespace {

struct Field {
  std::uint32_t p, s;
  int d;
};

const std::vector<Field> kFields = {{3, 1, 1}, {2, 2, 1}, {5, 1, 1}, {7, 1, 1}, {2, 3, 1}, {3, 2, 1},
                                    {11, 1, 1}, {3, 1, 2}, {2, 1, 3}, {5, 1, 2}, {2, 1, 4}};

TowerPtr tower(std::uint32_t p, std::uint32_t s, std::set<int> degrees) { return FieldTower::build(p, s, degrees); }

// lambda(x) from the brute-force dlog
CycloValue value(const FieldTower& t, const MultCharacter& l, FieldElement x) {
  return CycloValue::root(l.modulus, static_cast<std::int64_t>(l.index * oracle::dlog(t, x) % l.modulus));
}

}  // namespace

TEST_SUITE("characters") {
  TEST_CASE("Gauss sums match brute-force summation") {
    for (const Field& f : kFields) {
      std::set<int> degs;
      for (int e = 1; e <= f.d; ++e)
        if (f.d % e == 0) degs.insert(e);
      auto t = tower(f.p, f.s, degs);
      AddCharacter psi(t);
      for (const MultCharacter& c : all_chars(*t, f.d)) CHECK(gauss_sum(c, psi) == oracle::gauss(*t, c));
    }
  }

  TEST_CASE("Gauss sum laws hold on the oracle values") {
    for (const Field& f : kFields) {
      if (f.d != 1) continue;
      auto t = tower(f.p, f.s, {1});
      AddCharacter psi(t);
      const Int q(static_cast<unsigned long>(t->q()));
      for (const MultCharacter& c : all_chars(*t, 1)) {
        CycloValue g = oracle::gauss(*t, c);
        if (c.is_trivial()) {
          CHECK(g == CycloValue(-1));
          continue;
        }
        CycloValue sign = value(*t, c, t->from_integer(1, -1));
        CycloValue gi = oracle::gauss(*t, char_inv(c));
        CHECK(g * gi == q * sign);
        CHECK(g.conjugate() == sign * gi);
        CHECK(abs_squared(g) == q);
      }
    }
  }

  TEST_CASE("characters evaluate as powers of the generator") {
    auto t = tower(3, 1, {1, 2});
    for (const MultCharacter& c : all_chars(*t, 2))
      for (const FieldElement& x : oracle::elements(*t, 2))
        if (!x.is_zero()) CHECK(eval_mult(*t, c, x) == value(*t, c, x));
  }

  TEST_CASE("lifted Gauss sums: brute force over the extension against (-g)^d") {
    for (auto [p, d] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {3, 3}, {5, 2}, {5, 3}, {7, 2}, {2, 4}}) {
      std::set<int> degs;
      for (int e = 1; e <= d; ++e)
        if (d % e == 0) degs.insert(e);
      auto t = tower(p, 1, degs);
      AddCharacter psi(t);
      const std::uint64_t Qm = t->unit_order(d);
      for (const MultCharacter& c : all_chars(*t, 1)) {
        // sum over x in F_{q^d}^* of chi(Nm x) psi(Tr x)
        CycloValue lifted = oracle::character_sum(
            c.modulus, p, Qm, [&](std::size_t k, std::uint64_t& me, std::uint64_t& ae) {
              FieldElement x = t->exp(d, k);
              me = c.index * oracle::dlog(*t, oracle::norm(*t, x, 1)) % c.modulus;
              ae = oracle::trace(*t, x);
              return true;
            });
        CHECK(-lifted == (-oracle::gauss(*t, c)).pow(static_cast<unsigned>(d)));
        CHECK(gauss_sum(char_lift(*t, c, d), psi) == lifted);
        CHECK(check_hd_lift(c, d, psi).pass);
      }
    }
  }

  TEST_CASE("multiplication formula on brute-force Gauss sums") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{7, 2}, {7, 3}, {7, 6}, {13, 4}, {13, 12}, {11, 5}}) {
      auto t = tower(p, 1, {1});
      AddCharacter psi(t);
      MultCharacter eps = epsilon(*t, 1, n);
      CHECK(char_order(eps) == n);
      for (const MultCharacter& l : all_chars(*t, 1)) {
        CycloValue lhs = oracle::gauss(*t, char_pow(l, static_cast<std::int64_t>(n)));
        CycloValue rhs = value(*t, l, t->pow(t->from_integer(1, static_cast<std::int64_t>(n)), static_cast<std::int64_t>(n))) *
                         oracle::gauss(*t, trivial_char(*t, 1));
        for (std::uint64_t i = 0; i < n; ++i) lhs *= oracle::gauss(*t, char_pow(eps, static_cast<std::int64_t>(i)));
        for (std::uint64_t i = 0; i < n; ++i) rhs *= oracle::gauss(*t, char_mul(l, char_pow(eps, static_cast<std::int64_t>(i))));
        CHECK(lhs == rhs);
        IdentityCheck r = check_hd_product(l, n, psi);
        CHECK(r.pass);
      }
    }
  }

  TEST_CASE("two-variable Kloosterman sums match brute force") {
    auto t = tower(7, 1, {1});
    AddCharacter psi(t);
    auto els = oracle::elements(*t, 1);
    auto chars = all_chars(*t, 1);
    for (std::size_t a = 0; a < chars.size(); a += 2)
      for (std::size_t b = 1; b < chars.size(); b += 3)
        for (int tv = 1; tv < 7; ++tv) {
          FieldElement T = t->from_integer(1, tv);
          CycloValue want = CycloValue::integer(0, 42);
          for (auto& x : els) {
            if (x.is_zero()) continue;
            FieldElement y = t->mul(T, t->inv(x));
            want += value(*t, chars[a], x) * value(*t, chars[b], y) *
                    CycloValue::root(7, oracle::trace(*t, t->add(x, y)));
          }
          CHECK(kloosterman({chars[a], chars[b]}, T, psi) == want);
        }
  }

  TEST_CASE("points of Q/Z round-trip through characters") {
    auto t = tower(5, 1, {1, 2});
    for (int d : {1, 2})
      for (const MultCharacter& c : all_chars(*t, d)) {
        XPoint x = x_point(c);
        CHECK(std::gcd(x.num, x.den) == 1);
        MultCharacter back = char_from_x_point(*t, x);
        CHECK(x_point(back) == x);
        if (back.degree == d) CHECK(back == c);
      }
  }
}
