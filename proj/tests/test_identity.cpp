#include <doctest.h>

#include "charsum/identity.hpp"
#include "oracle.hpp"

using namespace charsum;

namespace {

// prod_i g(lambda^{n_i} chi_i) against prod_i lambda(n_i)^{n_i} g(chi_i), from brute-force sums
std::optional<long> oracle_ratio(const FieldTower& t, const GammaMonomial& m, const MultCharacter& l) {
  CycloValue lhs(1), rhs(1);
  for (const MonomialTerm& term : m) {
    MultCharacter chi = char_lift(t, term.chi, l.degree);
    lhs *= oracle::gauss(t, char_mul(char_pow(l, term.n), chi));
    FieldElement n = t.from_integer(l.degree, term.n);
    std::uint64_t e = l.index * oracle::dlog(t, t.pow(n, term.n)) % l.modulus;
    rhs *= CycloValue::root(l.modulus, static_cast<std::int64_t>(e)) * oracle::gauss(t, chi);
  }
  return q_power_ratio(lhs, rhs, t.field_size(l.degree));
}

GammaMonomial multiplication_monomial(const FieldTower& t, std::uint64_t n) {
  GammaMonomial m{{trivial_char(t, 1), static_cast<std::int64_t>(n)}};
  MultCharacter eps = epsilon(t, 1, n);
  for (std::uint64_t j = 0; j < n; ++j) m.push_back({char_pow(eps, static_cast<std::int64_t>(j)), -1});
  return m;
}

}  // namespace

TEST_SUITE("identity") {
  TEST_CASE("multiplication-formula monomials have zero divisor and q-power ratios") {
    for (auto [p, n] : std::vector<std::pair<std::uint32_t, std::uint64_t>>{{7, 2}, {7, 3}, {5, 4}, {13, 3}}) {
      auto t = FieldTower::build(p, 1, {1, 2});
      AddCharacter psi(t);
      GammaMonomial m = multiplication_monomial(*t, n);
      CHECK(predicted_divisor(*t, m).is_zero());
      for (int d : {1, 2})
        for (const MultCharacter& l : all_chars(*t, d)) {
          auto want = oracle_ratio(*t, m, l);
          REQUIRE(want.has_value());
          MonomialPowerResult r = verify_monomial_q_power(m, l, psi);
          CHECK(r.m == *want);
          if (r.generic) CHECK(2 * r.m == r.trivial_count);
        }
    }
  }

  TEST_CASE("a nonzero divisor is refuted by brute force and by find_violation") {
    auto t = FieldTower::build(7, 1, {1, 2});
    AddCharacter psi(t);
    GammaMonomial m{{trivial_char(*t, 1), 2}, {trivial_char(*t, 1), -1}};
    CHECK_FALSE(predicted_divisor(*t, m).is_zero());
    CHECK_THROWS_AS(verify_monomial_q_power(m, trivial_char(*t, 1), psi), DomainError);
    bool oracle_refutes = false;
    for (int d : {1, 2})
      for (const MultCharacter& l : all_chars(*t, d)) oracle_refutes = oracle_refutes || !oracle_ratio(*t, m, l);
    CHECK(oracle_refutes);
    ViolationResult v = find_violation(m, 2, psi);
    CHECK(v.status == ViolationResult::Status::witness);
    CHECK_FALSE(oracle_ratio(*t, m, v.lambda).has_value());
  }

  TEST_CASE("zero-divisor monomials give no witness") {
    auto t = FieldTower::build(7, 1, {1, 2});
    AddCharacter psi(t);
    ViolationResult v = find_violation(multiplication_monomial(*t, 3), 2, psi);
    CHECK(v.status != ViolationResult::Status::witness);
  }
}
