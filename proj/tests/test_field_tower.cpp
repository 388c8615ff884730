#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "charsum/field_tower.hpp"
#include "oracle.hpp"

using namespace charsum;

namespace {

struct Case {
  std::uint32_t p, s;
  std::set<int> degrees;
};

const std::vector<Case> kTowers = {
    {2, 1, {1, 2, 3, 6}}, {3, 1, {1, 2, 4}}, {5, 1, {1, 2}}, {7, 1, {1, 3}}, {2, 2, {1, 2}}, {3, 2, {1, 2}}, {13, 1, {1, 2}},
};

}  // namespace

TEST_SUITE("field_tower") {
  TEST_CASE("prime fields are integers mod p") {
    for (std::uint32_t p : {2u, 3u, 7u, 13u, 31u}) {
      auto t = FieldTower::build(p, 1, {1});
      for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b) {
          FieldElement x = t->from_integer(1, a), y = t->from_integer(1, b);
          CHECK(x.rep == a);
          CHECK(t->add(x, y).rep == (a + b) % p);
          CHECK(t->mul(x, y).rep == (a * b) % p);
          CHECK(t->sub(x, y).rep == (a - b + p) % p);
        }
      CHECK(t->from_integer(1, -1).rep == p - 1);
    }
  }

  TEST_CASE("small fields satisfy the field axioms exhaustively") {
    for (auto [p, s, d] : std::vector<std::tuple<std::uint32_t, std::uint32_t, int>>{{2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {5, 1, 2}}) {
      auto t = FieldTower::build(p, s, {1, d});
      auto els = oracle::elements(*t, d);
      REQUIRE(els.size() == t->field_size(d));
      for (auto& x : els) {
        if (!x.is_zero()) CHECK(t->mul(x, t->inv(x)) == t->one(d));
        CHECK(t->add(x, t->neg(x)) == t->zero(d));
        for (auto& y : els) {
          CHECK(t->mul(x, y) == t->mul(y, x));
          for (std::size_t k = 0; k < els.size(); k += 3) {
            const FieldElement& z = els[k];
            CHECK(t->mul(x, t->add(y, z)) == t->add(t->mul(x, y), t->mul(x, z)));
            CHECK(t->mul(t->mul(x, y), z) == t->mul(x, t->mul(y, z)));
          }
        }
      }
    }
  }

  TEST_CASE("generators are primitive and discrete logs invert exp") {
    for (const Case& c : kTowers) {
      auto t = FieldTower::build(c.p, c.s, c.degrees);
      for (int d : c.degrees) {
        std::set<std::uint32_t> seen;
        FieldElement g = t->generator(d), y = t->one(d);
        for (std::uint64_t k = 0; k < t->unit_order(d); ++k) {
          seen.insert(y.rep);
          CHECK(t->discrete_log(y) == k);
          CHECK(t->exp(d, k) == y);
          y = t->mul(y, g);
        }
        CHECK(seen.size() == t->unit_order(d));
        CHECK(y == t->one(d));
      }
    }
  }

  TEST_CASE("traces and norms match sums and products of conjugates") {
    for (const Case& c : kTowers) {
      auto t = FieldTower::build(c.p, c.s, c.degrees);
      for (int d : c.degrees) {
        auto els = oracle::elements(*t, d);
        for (std::size_t i = 0; i < els.size(); i += 1 + els.size() / 97) {
          CHECK(t->absolute_trace(els[i]) == oracle::trace(*t, els[i]));
          for (int e : c.degrees) {
            if (d % e || els[i].is_zero()) continue;
            CHECK(t->norm_to(els[i], e) == oracle::norm(*t, els[i], e));
          }
        }
        // generators are compatible along the tower
        for (int e : c.degrees)
          if (d % e == 0) CHECK(oracle::norm(*t, t->generator(d), e) == t->generator(e));
      }
    }
  }

  TEST_CASE("embedding is a ring homomorphism onto the fixed field") {
    auto t = FieldTower::build(3, 1, {1, 2, 4});
    auto els = oracle::elements(*t, 2);
    for (auto& x : els) {
      FieldElement X = t->embed(x, 4);
      CHECK(t->pow(X, 9) == X);
      for (auto& y : els) {
        CHECK(t->embed(t->mul(x, y), 4) == t->mul(X, t->embed(y, 4)));
        CHECK(t->embed(t->add(x, y), 4) == t->add(X, t->embed(y, 4)));
      }
    }
  }

  TEST_CASE("dlog cache does not change results and survives corruption") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "charsum_cache_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    TowerOptions opts;
    opts.cache_dir = dir.string();
    auto plain = FieldTower::build(5, 1, {1, 2, 4});
    auto first = FieldTower::build(5, 1, {1, 2, 4}, opts);
    REQUIRE_FALSE(fs::is_empty(dir));
    for (auto& entry : fs::directory_iterator(dir)) {
      std::fstream f(entry.path(), std::ios::in | std::ios::out | std::ios::binary);
      f.seekp(40);
      f.write("garbage!", 8);
    }
    auto second = FieldTower::build(5, 1, {1, 2, 4}, opts);
    for (std::uint64_t k = 0; k < plain->unit_order(4); k += 7) {
      FieldElement x = plain->exp(4, k);
      CHECK(first->exp(4, k) == x);
      CHECK(second->exp(4, k) == x);
      CHECK(first->discrete_log(x) == k);
      CHECK(second->discrete_log(x) == k);
    }
    fs::remove_all(dir);
  }

  TEST_CASE("degree sets must be closed under divisors") {
    CHECK_THROWS_AS(FieldTower::build(3, 1, {1, 4}), TowerError);
    CHECK_THROWS_AS(FieldTower::build(3, 1, {}), TowerError);
  }
}
