#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "charsum/characters.hpp"

namespace charsum {

// Finite integer combination of points of Q/Z; zero multiplicities are never stored.
class Divisor {
public:
  void add(XPoint x, std::int64_t mult);
  bool is_zero() const { return pts_.empty(); }
  const std::map<XPoint, std::int64_t>& points() const { return pts_; }
  std::int64_t degree() const;

  Divisor operator-() const;
  friend Divisor operator+(Divisor a, const Divisor& b);
  friend Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }
  Divisor& operator+=(const Divisor& b) { return *this = *this + b; }
  friend Divisor operator*(std::int64_t k, const Divisor& a);
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.pts_ == b.pts_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }
  std::string to_string() const;

private:
  std::map<XPoint, std::int64_t> pts_;
};

// Element of A_N, or of A_N^(p) when p != 0 (every n prime to p).
class ANElement {
public:
  explicit ANElement(std::uint64_t N, std::uint64_t p = 0);
  std::uint64_t modulus() const { return N_; }
  std::uint64_t prime() const { return p_; }
  // c * [s, n]_N
  void add(std::int64_t s, std::uint64_t n, std::int64_t c = 1);
  void add(const ANElement& other, std::int64_t c = 1);
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::pair<std::uint64_t, std::uint64_t>, std::int64_t>& terms() const { return terms_; }
  bool in_basis() const;
  friend bool operator==(const ANElement& a, const ANElement& b) {
    return a.N_ == b.N_ && a.terms_ == b.terms_;
  }
  std::string to_string() const;

private:
  std::uint64_t N_, p_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::int64_t> terms_;
};

// Right-hand side of [ds, dn]_N = sum_{i<d} [s + iN/d, n]_N.
ANElement expand_relation(std::int64_t s, std::uint64_t n, std::uint64_t N, std::uint64_t d, std::uint64_t p = 0);
ANElement reduce_to_basis(const ANElement& x);
// D_{r,n} = sum_{j<n} (r + j/n), r = num/den
Divisor divisor_drn(std::int64_t num, std::int64_t den, std::uint64_t n);
Divisor alpha(const ANElement& x);
// [s,n]_N -> [Ms,n]_{MN}
ANElement phi_MN(const ANElement& x, std::uint64_t M);

// sum over xi with xi^n = chi; negative n via D_{chi^-1,-n} = -D_{chi,n}
Divisor divisor_of_char_power(const FieldTower& t, const MultCharacter& chi, std::int64_t n);
// multiplicities summed over orbits of r -> q r; representative is the smallest point
Divisor frobenius_quotient(const Divisor& d, std::uint64_t q);

struct ProbeReport {
  bool pass = true;
  std::size_t checked = 0;
  std::optional<ANElement> counterexample;
  std::string detail;
};

// random elements: alpha(x) = 0 iff reduce_to_basis(x) = 0, plus idempotence
ProbeReport injectivity_probe(std::uint64_t N, std::size_t trials, std::uint64_t seed, std::uint64_t p = 0);
// every single symbol and every difference of two symbols with n <= max_n
ProbeReport exhaustive_probe(std::uint64_t N, std::uint64_t max_n, std::uint64_t p = 0);

}  // namespace charsum
