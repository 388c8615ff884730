#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "charsum/cyclotomic.hpp"

using namespace charsum;
using cd = std::complex<double>;

namespace {

// value under the embedding zeta_M -> exp(2 pi i j / M)
cd embed(const CycloValue& v, std::uint64_t j) {
  const double pi = std::acos(-1.0);
  cd acc = 0;
  for (std::size_t i = 0; i < v.coeffs().size(); ++i)
    acc += v.coeffs()[i].get_d() * std::polar(1.0, 2 * pi * double(i * j % v.order()) / double(v.order()));
  return acc;
}

bool same_embeddings(const CycloValue& a, const CycloValue& b) {
  const std::uint64_t M = std::lcm(a.order(), b.order());
  CycloValue x = a.lift_order(M), y = b.lift_order(M);
  for (std::uint64_t j = 1; j < M; ++j) {
    if (std::gcd(j, M) != 1) continue;
    if (std::abs(embed(x, j) - embed(y, j)) > 1e-6) return false;
  }
  return true;
}

CycloValue random_value(std::mt19937_64& rng, std::uint64_t M) {
  std::vector<std::int64_t> c(M);
  for (auto& x : c) x = static_cast<std::int64_t>(rng() % 7) - 3;
  return CycloValue::from_group_ring(M, c);
}

}  // namespace

TEST_SUITE("cyclotomic") {
  TEST_CASE("euler_phi matches a gcd count") {
    for (std::uint64_t m = 1; m <= 300; ++m) {
      std::uint64_t n = 0;
      for (std::uint64_t k = 1; k <= m; ++k) n += std::gcd(k, m) == 1;
      CHECK(euler_phi(m) == n);
    }
  }

  TEST_CASE("product of cyclotomic polynomials over divisors is x^m - 1") {
    for (std::uint64_t m = 1; m <= 60; ++m) {
      IntPoly prod{1};
      for (std::uint64_t d = 1; d <= m; ++d) {
        if (m % d) continue;
        const IntPoly& f = cyclotomic_modulus(d);
        REQUIRE(f.size() == euler_phi(d) + 1);
        IntPoly r(prod.size() + f.size() - 1, 0);
        for (std::size_t i = 0; i < prod.size(); ++i)
          for (std::size_t j = 0; j < f.size(); ++j) r[i + j] += prod[i] * f[j];
        prod = r;
      }
      IntPoly want(m + 1, 0);
      want[0] = -1;
      want[m] = 1;
      CHECK(prod == want);
    }
  }

  TEST_CASE("ring operations agree with every complex embedding") {
    std::mt19937_64 rng(11);
    for (std::uint64_t M : {1, 2, 3, 4, 8, 9, 12, 15, 21, 24, 35, 36}) {
      for (int trial = 0; trial < 5; ++trial) {
        CycloValue a = random_value(rng, M), b = random_value(rng, M);
        for (std::uint64_t j = 1; j <= M; ++j) {
          if (std::gcd(j, M) != 1) continue;
          CHECK(std::abs(embed(a * b, j) - embed(a, j) * embed(b, j)) < 1e-6);
          CHECK(std::abs(embed(a + b, j) - (embed(a, j) + embed(b, j))) < 1e-6);
          CHECK(std::abs(embed(a.conjugate(), j) - std::conj(embed(a, j))) < 1e-6);
        }
        CHECK(same_embeddings(a.lift_order(3 * M), a));
        CHECK((a - a).is_zero());
      }
    }
  }

  TEST_CASE("equality is exact: sum of primitive roots is the Moebius value") {
    for (std::uint64_t M : {1, 2, 6, 10, 12, 30, 105}) {
      CycloValue s = CycloValue::integer(0, M);
      for (std::uint64_t k = 0; k < M; ++k)
        if (std::gcd(k, M) == 1) s += CycloValue::root(M, static_cast<std::int64_t>(k));
      long mu = 1;
      std::uint64_t n = M;
      for (std::uint64_t p = 2; p <= n; ++p)
        if (n % p == 0) {
          n /= p;
          if (n % p == 0) mu = 0;
          mu = -mu;
        }
      CHECK(s == CycloValue(mu));
      CHECK(s.as_integer().value() == mu);
    }
  }

  TEST_CASE("roots of unity have absolute square one") {
    for (std::uint64_t M : {5, 12, 60})
      for (std::int64_t k = 0; k < static_cast<std::int64_t>(M); ++k) {
        CycloValue z = CycloValue::root(M, k);
        CHECK(abs_squared(z) == 1);
        CHECK(z.pow(static_cast<unsigned>(M)) == CycloValue(1));
      }
  }

  TEST_CASE("q_power_ratio recovers the exponent") {
    std::mt19937_64 rng(5);
    CycloValue w = random_value(rng, 15);
    while (w.is_zero()) w = random_value(rng, 15);
    CycloValue q3 = CycloValue(27);
    CHECK(q_power_ratio(q3 * w, w, 3) == 3);
    CHECK(q_power_ratio(w, q3 * w, 3) == -3);
    CHECK(q_power_ratio(w, w, 3) == 0);
    CHECK_FALSE(q_power_ratio(CycloValue(2) * w, w, 3).has_value());
    CHECK_FALSE(q_power_ratio(CycloValue::root(15, 1) * w, w, 3).has_value());
  }
}
