#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "charsum/errors.hpp"

namespace charsum {

struct TowerOptions {
  std::uint64_t max_elements = std::uint64_t(1) << 22;
  // full dlog tables up to this field size, baby-step/giant-step above
  std::uint64_t table_threshold = std::uint64_t(1) << 16;
  // empty: read CHARSUM_CACHE_DIR; "-": caching disabled
  std::string cache_dir;
};

// Element of F_{q^degree}.  rep packs the coefficients c_0..c_{sd-1} over F_p
// of the tower's model for that degree as sum c_i p^i.
struct FieldElement {
  int degree = 1;
  std::uint32_t rep = 0;
  bool is_zero() const { return rep == 0; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.degree == b.degree && a.rep == b.rep;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
};

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t b, unsigned e);

class FieldTower {
public:
  static std::shared_ptr<const FieldTower> build(std::uint32_t p, std::uint32_t s, std::set<int> degrees,
                                                 const TowerOptions& opts = {});

  std::uint32_t p() const { return p_; }
  std::uint32_t s() const { return s_; }
  std::uint64_t q() const { return q_; }
  const std::set<int>& degrees() const { return degrees_; }
  bool has_degree(int d) const { return degrees_.count(d) != 0; }
  int max_degree() const { return *degrees_.rbegin(); }

  std::uint64_t field_size(int d) const;  // q^d
  std::uint64_t unit_order(int d) const;  // q^d - 1
  const std::vector<std::uint32_t>& modulus(int d) const;
  bool uses_table(int d) const;

  FieldElement zero(int d) const { return {d, 0}; }
  FieldElement one(int d) const { return {d, 1}; }
  FieldElement generator(int d) const;
  FieldElement element(int d, std::uint32_t rep) const;
  // n * 1 in F_{q^d}
  FieldElement from_integer(int d, std::int64_t n) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::int64_t e) const;

  // g_d^k
  FieldElement exp(int d, std::uint64_t k) const;
  std::uint64_t discrete_log(FieldElement x) const;

  // Subfield maps; to_degree must divide from-degree.
  FieldElement embed(FieldElement x, int to_degree) const;
  FieldElement trace_to(FieldElement x, int to_degree) const;
  FieldElement norm_to(FieldElement x, int to_degree) const;
  // Tr_{F_{q^d}/F_p}(x) as an integer in [0, p)
  std::uint32_t absolute_trace(FieldElement x) const;

  std::string describe() const;

private:
  struct Level {
    int degree = 0;
    unsigned n = 0;  // s * degree
    std::uint64_t size = 0;
    std::vector<std::uint32_t> modulus;  // monic, length n + 1
    std::uint32_t generator = 0;
    std::vector<std::uint32_t> log;  // rep -> dlog, empty without tables
    std::vector<std::uint32_t> exp;  // dlog -> rep
    std::vector<std::uint32_t> trace_basis;  // Tr(x^i) for the absolute trace
    std::vector<std::uint32_t> abs_trace;  // rep -> absolute trace, table mode
    // baby steps for large fields
    std::unordered_map<std::uint32_t, std::uint32_t> baby;
    std::uint64_t giant_step = 0;
    std::uint32_t giant_factor = 0;  // g^{-giant_step}
  };

  FieldTower() = default;
  const Level& level(int d) const;
  std::uint32_t poly_mul(const Level& L, std::uint32_t a, std::uint32_t b) const;
  std::uint32_t poly_pow(const Level& L, std::uint32_t a, std::uint64_t e) const;
  std::uint32_t rep_add(std::uint32_t a, std::uint32_t b, unsigned n) const;
  std::uint32_t rep_neg(std::uint32_t a, unsigned n) const;
  void build_level(int d, const TowerOptions& opts);
  void build_tables(Level& L, const TowerOptions& opts);

  std::uint32_t p_ = 0, s_ = 0;
  std::uint64_t q_ = 0;
  std::set<int> degrees_;
  std::map<int, Level> levels_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

}  // namespace charsum
