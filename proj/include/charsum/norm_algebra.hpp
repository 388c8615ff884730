#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/divisor.hpp"

namespace charsum {

// k = prod_i F_{q^{degrees_i}} viewed as an algebra over F_{q^base}.
// Factor degrees are absolute tower degrees, each a multiple of base.
struct EtaleAlgebra {
  TowerPtr tower;
  std::vector<int> degrees;
  int base = 1;

  std::size_t factors() const { return degrees.size(); }
  // [k : F_{q^base}]
  int dimension() const;
};

EtaleAlgebra make_algebra(TowerPtr tower, std::vector<int> degrees, int base = 1);

// V = sum_i ranks_i [F_{q^{d_i}}]
struct VirtualModule {
  std::vector<std::int64_t> ranks;
};

// chi = prod_i chi_i with chi_i a character of the i-th factor
struct NormCharacter {
  std::vector<MultCharacter> chars;
  bool non_degenerate() const;
};

using AlgebraElement = std::vector<FieldElement>;

// prod_i Nm(x_i)^{n_i} in F_{q^base}; throws DomainError on a zero coordinate
FieldElement det_V(const EtaleAlgebra& k, const VirtualModule& V, const AlgebraElement& x);
// prod_i n_i^{n_i d_i} in F_{q^base}, d_i relative to the base; rank 0 contributes 1
FieldElement p_of(const EtaleAlgebra& k, const VirtualModule& V);
// gcd of the ranks (0 when every rank is 0)
std::int64_t d_of(const VirtualModule& V);
// sum_i n_i d_i, d_i relative to the base
std::int64_t rk(const EtaleAlgebra& k, const VirtualModule& V);

// Throws DomainError on shape mismatches or when p divides a nonzero rank.
void validate_module(const EtaleAlgebra& k, const VirtualModule& V);
void validate_character(const EtaleAlgebra& k, const NormCharacter& chi);

// prod_i g(chi_i, psi o Tr)
CycloValue gauss_sum_algebra(const EtaleAlgebra& k, const NormCharacter& chi, const AddCharacter& psi);
// sum over k^* of chi(x) psi(Tr x); throws SizeBoundError when |k^*| > max_terms
CycloValue gauss_sum_algebra_direct(const EtaleAlgebra& k, const NormCharacter& chi, const AddCharacter& psi,
                                    std::uint64_t max_terms = 1u << 20);

// sum_i d_i D_{chi_i, n_i}, d_i relative to the base; rank 0 terms vanish
Divisor divisor_D_chi_V(const EtaleAlgebra& k, const NormCharacter& chi, const VirtualModule& V);

// (lambda o det_V) as a character of k^*: components lambda^{n_i} o Nm
NormCharacter compose_det(const EtaleAlgebra& k, const VirtualModule& V, const MultCharacter& lambda);
NormCharacter norm_char_mul(const NormCharacter& a, const NormCharacter& b);
NormCharacter norm_char_inv(const NormCharacter& a);

struct NormGaussResult {
  long m = 0;  // lhs = (q^base)^m rhs
  bool generic = false;
  long trivial_weight = 0;  // sum of d_i over trivial chi_i
  long trivial_count = 0;   // number of trivial chi_i
  bool parity_ok = true;    // 2m = trivial_weight whenever generic
  CycloValue lhs, rhs;      // g((lambda o det_V) chi) and lambda(p(V)) g(chi)
};

// Throws DomainError when D_{chi,V} != 0 or p | p(V), InvariantError when no
// exponent exists or the parity clause fails.
NormGaussResult verify_norm_gauss_identity(const EtaleAlgebra& k, const VirtualModule& V, const NormCharacter& chi,
                                 const MultCharacter& lambda, const AddCharacter& psi);

// sum over x in k^* of psi(a det_V(x)) lambda(x)
CycloValue i_norm_direct(const EtaleAlgebra& k, const VirtualModule& V, const NormCharacter& lambda, FieldElement a,
                         const AddCharacter& psi);
// 0 unless lambda = mu o det_V; then |k^*|/(q-1) sum_{nu^{d(V)} = 1} g(mu nu)(mu nu)(a^{-1})
CycloValue i_norm_closed(const EtaleAlgebra& k, const VirtualModule& V, const NormCharacter& lambda, FieldElement a,
                         const AddCharacter& psi);
// the mu with lambda = mu o det_V, if any
std::optional<MultCharacter> det_root(const EtaleAlgebra& k, const VirtualModule& V, const NormCharacter& lambda);

// psi(a det_V(x)) chi(x) on k^*
struct NormDatum {
  EtaleAlgebra algebra;
  VirtualModule module;
  NormCharacter chi;
  FieldElement coeff{1, 1};
};

void validate_norm_datum(const NormDatum& d);

// The datum over k (x) F_{q^{base e}}.  A factor F_{q^d} splits into gcd(d, e)
// copies of F_{q^lcm}; copy j carries the character (chi o Nm)^{q^{-j}}.
NormDatum extend_datum(const NormDatum& d, int e);

struct NormTransformSolution {
  int kind = 1;        // 1: rk V = 2, W = V;  2: rk V = 0, W = -V
  NormDatum output;    // W, eta = (nu o det_V) chi^{-1}, b
  MultCharacter nu;    // character of F_{q^base}^* from the divisor equation
  CycloValue c_base;   // Frobenius trace on H without the Tate twist
  long predicted_twist = 0;  // 2m + 1 = [nu = 1] + sum of d_i over trivial chi_i
  bool twist_pattern = true;  // false when that count is even
};

// Throws DomainError when rk V is not 0 or 2, p | p(V), the divisor equation
// has no solution or a side condition on d(V) fails.
NormTransformSolution solve_norm_transform(const NormDatum& d, const AddCharacter& psi);

struct NormPairingReport {
  bool pass = true;
  std::size_t tuples = 0;
  std::size_t nonzero = 0;
  std::size_t direct = 0;        // tuples whose sums were brute-forced
  std::size_t cross_checked = 0; // direct tuples also compared with the closed form
  std::optional<long> twist;     // measured m
  bool twist_matches_prediction = false;
  CycloValue c;                  // c_base q^m, when m was measured
  std::string first_failure;
};

// (-q_1)^d (f, lambda) = c_{q_1} conj(g(lambda)) (f', lambda^{-1}) for every
// non-degenerate lambda over each extension, with m measured from the first
// nonzero pairing and then required everywhere.  Sums are brute-forced when
// |k^*| <= direct_limit and cross-checked against the closed form.
NormPairingReport verify_norm_pairing(const NormDatum& d, const NormTransformSolution& s, const AddCharacter& psi,
                                  const std::vector<int>& extensions, std::uint64_t direct_limit = 4096);

}  // namespace charsum
