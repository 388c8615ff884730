#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace charsum {

using Int = mpz_class;

std::uint64_t euler_phi(std::uint64_t m);

// Integer polynomial, lowest degree first.
using IntPoly = std::vector<Int>;

// Phi_M, cached.  Monic of degree phi(M).
const IntPoly& cyclotomic_modulus(std::uint64_t m);

// Element of Z[zeta_M], stored as the residue of a polynomial modulo Phi_M.
// The zero-argument constructor gives 0 in order 1.
class CycloValue {
public:
  CycloValue();
  explicit CycloValue(long v);
  CycloValue(std::uint64_t order, std::vector<Int> coeffs);  // reduces

  static CycloValue integer(const Int& v, std::uint64_t order = 1);
  static CycloValue root(std::uint64_t order, std::int64_t k);
  // counts[e] is the coefficient of zeta^e, e in [0, order).
  static CycloValue from_group_ring(std::uint64_t order, const std::vector<std::int64_t>& counts);

  std::uint64_t order() const { return order_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  std::optional<Int> as_integer() const;

  CycloValue lift_order(std::uint64_t target) const;
  // Smallest order M' | M holding the value; used before serialization.
  CycloValue normalized() const;
  CycloValue conjugate() const;
  CycloValue pow(unsigned e) const;

  CycloValue operator-() const;
  friend CycloValue operator+(const CycloValue& a, const CycloValue& b);
  friend CycloValue operator-(const CycloValue& a, const CycloValue& b);
  friend CycloValue operator*(const CycloValue& a, const CycloValue& b);
  friend CycloValue operator*(const Int& a, const CycloValue& b);
  CycloValue& operator+=(const CycloValue& b) { return *this = *this + b; }
  CycloValue& operator*=(const CycloValue& b) { return *this = *this * b; }
  friend bool operator==(const CycloValue& a, const CycloValue& b);
  friend bool operator!=(const CycloValue& a, const CycloValue& b) { return !(a == b); }

  std::string to_string() const;

private:
  std::uint64_t order_ = 1;
  std::vector<Int> coeffs_;
};

bool equals(const CycloValue& a, const CycloValue& b);

// v * conj(v); throws std::logic_error if the product is not a rational integer.
Int abs_squared(const CycloValue& v);

// m with v == q^m * w, if any.  Requires w != 0.
std::optional<long> q_power_ratio(const CycloValue& v, const CycloValue& w, std::uint64_t q);

// Accumulates sums of roots of unity of a fixed order in the group ring and
// reduces once.  All brute-force character sums go through this.
class RootAccumulator {
public:
  explicit RootAccumulator(std::uint64_t order) : order_(order), counts_(order, 0) {}
  void add(std::uint64_t exponent, std::int64_t mult = 1) { counts_[exponent % order_] += mult; }
  std::uint64_t order() const { return order_; }
  CycloValue value() const { return CycloValue::from_group_ring(order_, counts_); }

private:
  std::uint64_t order_;
  std::vector<std::int64_t> counts_;
};

}  // namespace charsum
