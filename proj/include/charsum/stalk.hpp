#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/grid.hpp"

namespace charsum {

// Integer polynomial in the formal variable q, lowest degree first.
class QPolynomial {
public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<Int> c);
  static QPolynomial constant(const Int& v);
  static QPolynomial q_power(unsigned e);

  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Int eval(const Int& q) const;

  friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b);
  friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b);
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  QPolynomial& operator+=(const QPolynomial& b) { return *this = *this + b; }
  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QPolynomial& a, const QPolynomial& b) { return !(a == b); }
  std::string to_string() const;

private:
  void trim();
  std::vector<Int> c_;
};

QPolynomial a_poly(int n, int m);
QPolynomial b_poly(int n, int m);

// psi(a prod x_i^{n_i}) prod chi_i(x_i) on the torus of F_{q^degree}^k.
struct MonomialDatum {
  int degree = 1;
  std::vector<std::int64_t> exponents;
  std::vector<MultCharacter> chars;
  FieldElement coeff{1, 1};

  std::size_t k() const { return exponents.size(); }
};

// The eta with chi_i = eta^{n_i/d}, d = gcd |n_i|, if any.  Unique because the
// reduced exponents are coprime.
std::optional<MultCharacter> common_root(const std::vector<std::int64_t>& exponents,
                                         const std::vector<MultCharacter>& chars);

// Throws DomainError on zero exponents, p | n_i, a = 0 or degree mismatches.
void validate_datum(const FieldTower& t, const MonomialDatum& m);

enum class StalkRule {
  torus,           // k = 0: the value psi(a)
  all_negative,    // every exponent negative
  no_common_root,  // no eta with chi_i = eta^{n_i/d}
  single,          // k = 1, positive exponent
  all_positive,    // the sheaf extends smoothly where characters are trivial
  two_variable,    // sum_t psi(a t^d) eta(t) + [eta = 1]
  recursion,       // three-term blow-up recursion, +-d shape only
};
std::string rule_name(StalkRule r);

struct StalkValue {
  CycloValue value;
  StalkRule rule = StalkRule::torus;
};

// Trace of Frobenius on the stalk at the origin of the middle extension.
// Mixed-sign data with k >= 3 are supported only when every |n_i| is equal;
// anything else throws UnsupportedError.
StalkValue stalk_trace_at_zero(const MonomialDatum& m, const AddCharacter& psi);

// sum_{t in F^*} psi(a t^d) eta(t) over F_{q^degree}
CycloValue power_character_sum(const AddCharacter& psi, FieldElement a, std::uint64_t d, const MultCharacter& eta);

// a(n,m) + b(n,m) sum_{t in F} psi(a t^d) for eta = 1, b(n,m) sum_{t in F^*} psi(a t^d) eta(t) otherwise
CycloValue balanced_closed_form(int n, int m, std::uint64_t d, const MultCharacter& eta, FieldElement a,
                                const AddCharacter& psi);

// At a point with zero set S: prod_{i not in S} chi_i(x_i) times the origin
// stalk of the datum restricted to S with coefficient a prod_{i not in S} x_i^{n_i}.
GridFunction gm_trace_function(const MonomialDatum& m, const AddCharacter& psi);

struct BinomialReport {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  // whether the first identity also holds with the binomials attached to
  // (r, s) exactly as displayed, rather than as the point count produces them
  bool displayed_orientation_holds = true;
};

// (r,s) != (0,0): the a- and b-identities from counting boundary strata;
// (r,s) = (0,0): sum (n,j)(n,l)(-1)^{j+l} a(j,l) = -[n]_q and the b analogue = [n]_q.
BinomialReport verify_binomial_identities(int n, int r, int s);

}  // namespace charsum
