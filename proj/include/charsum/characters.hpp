#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "charsum/cyclotomic.hpp"
#include "charsum/field_tower.hpp"

namespace charsum {

// chi(g_d^k) = zeta_{q^d-1}^{index * k}
struct MultCharacter {
  int degree = 1;
  std::uint64_t modulus = 1;  // q^degree - 1
  std::uint64_t index = 0;

  bool is_trivial() const { return index == 0; }
  friend bool operator==(const MultCharacter& a, const MultCharacter& b) {
    return a.degree == b.degree && a.index == b.index;
  }
  friend bool operator!=(const MultCharacter& a, const MultCharacter& b) { return !(a == b); }
  friend bool operator<(const MultCharacter& a, const MultCharacter& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.index < b.index;
  }
};

MultCharacter make_char(const FieldTower& t, int degree, std::int64_t index);
MultCharacter trivial_char(const FieldTower& t, int degree);
// the character of index (q^d-1)/n; throws if n does not divide q^d-1
MultCharacter epsilon(const FieldTower& t, int degree, std::uint64_t n);
MultCharacter char_mul(const MultCharacter& a, const MultCharacter& b);
MultCharacter char_inv(const MultCharacter& a);
MultCharacter char_pow(const MultCharacter& a, std::int64_t n);
// a composed with the norm from F_{q^to_degree}
MultCharacter char_lift(const FieldTower& t, const MultCharacter& a, int to_degree);
std::uint64_t char_order(const MultCharacter& a);
// all characters of F_{q^d}^*, by index
std::vector<MultCharacter> all_chars(const FieldTower& t, int degree);

// exponent e with chi(x) = zeta_{q^d-1}^e; x != 0
std::uint64_t mult_exponent(const FieldTower& t, const MultCharacter& chi, FieldElement x);
CycloValue eval_mult(const FieldTower& t, const MultCharacter& chi, FieldElement x);

// psi_c(x) = zeta_p^{Tr_{F_{q^d}/F_p}(c x)} on every tower degree.
class AddCharacter {
public:
  explicit AddCharacter(TowerPtr tower, std::uint32_t twist_rep = 1);

  const FieldTower& tower() const { return *tower_; }
  const TowerPtr& tower_ptr() const { return tower_; }
  FieldElement twist() const { return twist_; }

  // e with psi(x) = zeta_p^e
  std::uint32_t exponent(FieldElement x) const;
  CycloValue eval(FieldElement x) const;
  // Gauss sum over F_{q^d}^*, memoized
  const CycloValue& gauss(const MultCharacter& chi) const;

private:
  TowerPtr tower_;
  FieldElement twist_;
  std::vector<FieldElement> twist_by_degree_;
  struct Cache {
    std::mutex mu;
    std::map<std::pair<int, std::uint64_t>, std::unique_ptr<CycloValue>> values;
  };
  std::shared_ptr<Cache> cache_;
};

CycloValue eval_add(const AddCharacter& psi, FieldElement x);
CycloValue gauss_sum(const MultCharacter& chi, const AddCharacter& psi);
// sum over x_1...x_k = t of psi(x_1+...+x_k) chi_1(x_1)...chi_k(x_k)
CycloValue kloosterman(const std::vector<MultCharacter>& chis, FieldElement t, const AddCharacter& psi);

struct IdentityCheck {
  bool pass = false;
  CycloValue lhs, rhs;
};

// -g(chi o Nm, psi o Tr) over F_{q^{deg(chi) d}} against (-g(chi, psi))^d
IdentityCheck check_hd_lift(const MultCharacter& chi, int d, const AddCharacter& psi);
// g(lambda^n) prod_i g(eps_n^i) against lambda(n^n) g(1) prod_i g(lambda eps_n^i)
IdentityCheck check_hd_product(const MultCharacter& lambda, std::uint64_t n, const AddCharacter& psi);

// point of Q/Z: 0 <= num < den, gcd(num, den) = 1
struct XPoint {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  friend bool operator==(const XPoint& a, const XPoint& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const XPoint& a, const XPoint& b) { return !(a == b); }
  // order by value, then denominator
  friend bool operator<(const XPoint& a, const XPoint& b) {
    unsigned __int128 l = static_cast<unsigned __int128>(a.num) * b.den;
    unsigned __int128 r = static_cast<unsigned __int128>(b.num) * a.den;
    return l != r ? l < r : a.den < b.den;
  }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
};

XPoint make_xpoint(std::int64_t num, std::int64_t den);
XPoint x_point(const MultCharacter& chi);
MultCharacter char_from_x_point(const FieldTower& t, XPoint r);

}  // namespace charsum
