#include <doctest.h>

#include "charsum/stalk.hpp"
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

// psi(a prod x_i^{n_i}) prod chi_i(x_i) at a torus point, from brute-force logs and traces
CycloValue torus_value(const FieldTower& t, const MonomialDatum& m, const std::vector<FieldElement>& x) {
  const std::uint64_t Qm = t.unit_order(1);
  FieldElement arg = m.coeff;
  std::uint64_t e = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    arg = t.mul(arg, t.pow(x[i], m.exponents[i]));
    e = (e + m.chars[i].index * oracle::dlog(t, x[i])) % Qm;
  }
  return CycloValue::root(Qm, static_cast<std::int64_t>(e)) * CycloValue::root(t.p(), oracle::trace(t, arg));
}

}  // namespace

TEST_SUITE("stalk") {
  TEST_CASE("trace function on the torus is the defining character product") {
    auto t = FieldTower::build(7, 1, {1});
    AddCharacter psi(t);
    for (auto m : {datum(*t, {3, -1}, {0, 2}, 1), datum(*t, {2, 1}, {3, 1}, 3), datum(*t, {-1}, {5}, 2)}) {
      GridFunction f = gm_trace_function(m, psi);
      for (std::size_t pt = 0; pt < f.size(); ++pt) {
        auto c = grid_unpack(f, pt);
        bool torus = true;
        std::vector<FieldElement> x;
        for (auto i : c) {
          torus = torus && i != 0;
          if (i) x.push_back(t->exp(1, i - 1));
        }
        if (torus) CHECK(f.values[pt] == torus_value(*t, m, x));
      }
    }
  }

  TEST_CASE("one positive exponent: stalk is 1 exactly when the character is trivial") {
    auto t = FieldTower::build(7, 1, {1});
    AddCharacter psi(t);
    for (std::int64_t n : {1, 2, 3})
      for (std::int64_t i = 0; i < 6; ++i) {
        StalkValue s = stalk_trace_at_zero(datum(*t, {n}, {i}, 3), psi);
        CHECK(s.value == CycloValue(i == 0 ? 1 : 0));
        CHECK(s.rule == StalkRule::single);
      }
  }

  TEST_CASE("all exponents negative: the stalk vanishes") {
    auto t = FieldTower::build(5, 1, {1});
    AddCharacter psi(t);
    StalkValue s = stalk_trace_at_zero(datum(*t, {-1, -2}, {0, 0}, 1), psi);
    CHECK(s.value.is_zero());
    CHECK(s.rule == StalkRule::all_negative);
  }

  TEST_CASE("two variables of opposite sign: brute-force power sum") {
    auto t = FieldTower::build(7, 1, {1});
    AddCharacter psi(t);
    auto els = oracle::elements(*t, 1);
    for (auto [n1, n2] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1, -1}, {2, -1}, {3, -1}, {2, -2}, {3, -3}})
      for (std::int64_t eta = 0; eta < 6; ++eta)
        for (std::int64_t a = 1; a < 7; ++a) {
          std::int64_t d = std::gcd(n1, -n2);
          MonomialDatum m = datum(*t, {n1, n2}, {eta * (n1 / d), eta * (n2 / d)}, a);
          CycloValue want = CycloValue::integer(eta == 0 ? 1 : 0, 42);
          for (auto& x : els) {
            if (x.is_zero()) continue;
            FieldElement arg = t->mul(m.coeff, t->pow(x, d));
            want += CycloValue::root(6, eta * static_cast<std::int64_t>(oracle::dlog(*t, x))) *
                    CycloValue::root(7, oracle::trace(*t, arg));
          }
          StalkValue s = stalk_trace_at_zero(m, psi);
          CHECK(s.rule == StalkRule::two_variable);
          CHECK(s.value == want);
        }
  }

  TEST_CASE("no common root: the stalk vanishes") {
    auto t = FieldTower::build(7, 1, {1});
    AddCharacter psi(t);
    StalkValue s = stalk_trace_at_zero(datum(*t, {1, -1}, {1, 2}, 1), psi);
    CHECK(s.rule == StalkRule::no_common_root);
    CHECK(s.value.is_zero());
  }

  TEST_CASE("balanced data: recursion agrees with the closed form") {
    auto t = FieldTower::build(5, 1, {1});
    AddCharacter psi(t);
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 3; ++m) {
        if (n + m < 3) continue;
        for (std::int64_t eta : {0, 2}) {
          std::vector<std::int64_t> ns, idx;
          for (int i = 0; i < n; ++i) ns.push_back(2), idx.push_back(eta);
          for (int i = 0; i < m; ++i) ns.push_back(-2), idx.push_back((4 - eta) % 4);
          MonomialDatum md = datum(*t, ns, idx, 3);
          StalkValue s = stalk_trace_at_zero(md, psi);
          CHECK(s.rule == StalkRule::recursion);
          CHECK(s.value == balanced_closed_form(n, m, 2, make_char(*t, 1, eta), md.coeff, psi));
        }
      }
    CHECK_THROWS_AS(stalk_trace_at_zero(datum(*t, {1, 2, -1}, {0, 0, 0}, 1), psi), UnsupportedError);
  }

  TEST_CASE("a and b polynomials: boundary values and the binomial identities") {
    for (int n = 0; n <= 5; ++n) {
      CHECK(a_poly(n, 0) == QPolynomial::constant(1));
      CHECK(b_poly(n, 0).is_zero());
    }
    CHECK(a_poly(1, 1).is_zero());
    CHECK(b_poly(1, 1) == QPolynomial::constant(1));
    for (int n = 1; n <= 4; ++n)
      for (int r = 0; r <= n; ++r)
        for (int s = 0; s <= n; ++s) CHECK(verify_binomial_identities(n, r, s).pass);
  }
}
