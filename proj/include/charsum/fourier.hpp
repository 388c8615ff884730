#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charsum/stalk.hpp"

namespace charsum {

// f^(y) = sum_x f(x) psi(<y, x>).  Throws SizeBoundError when q^{2dk} exceeds max_terms.
GridFunction fourier_transform(const GridFunction& f, const AddCharacter& psi,
                               std::uint64_t max_terms = std::uint64_t(1) << 26);
// sum_x f(x) conj(g(x))
CycloValue inner(const GridFunction& f, const GridFunction& g);
// lambda_1 (x) ... (x) lambda_k, extended by zero
GridFunction character_grid(const FieldTower& t, const std::vector<MultCharacter>& lambdas);

// sum over (F^*)^k of psi(a prod x_i^{n_i}) prod lambda_i(x_i)
CycloValue i_sum_direct(const MonomialDatum& m, const std::vector<MultCharacter>& lambdas, const AddCharacter& psi);
// 0 unless lambda_i = lambda^{n_i}; then (Q-1)^{k-1} sum_{chi^d = 1} g(lambda chi)(lambda chi)(a^{-1})
CycloValue i_sum_closed(const MonomialDatum& m, const std::vector<MultCharacter>& lambdas, const AddCharacter& psi);
// cheap structural test for i_sum_closed == 0
bool i_sum_vanishes(const MonomialDatum& m, const std::vector<MultCharacter>& lambdas);

struct TransformSolution {
  int kind = 1;  // 1: sum n_i = 2, outputs m_i = n_i; 2: sum n_i = 0, outputs m_i = -n_i
  MonomialDatum output;  // exponents m_i, characters eta_i = chi^{n_i} chi_i^{-1}, coefficient b
  MultCharacter chi;     // mediating character
  long twist = 0;        // Tate twist m, 2m+1 = #trivial among chi, chi_1..chi_k
  CycloValue c;          // Frobenius trace on the one-dimensional factor
};

// The datum's characters live on its own degree; so must chi.  Throws
// DomainError when sum n_i is not 0 or 2, or when no chi solves the divisor equation.
std::vector<TransformSolution> solve_monomial_transform(const MonomialDatum& m, const AddCharacter& psi);

// The same datum over F_{q^{degree * e}}: characters composed with the norm, a embedded.
MonomialDatum lift_datum(const FieldTower& t, const MonomialDatum& m, int to_degree);
TransformSolution lift_solution(const FieldTower& t, const TransformSolution& s, int to_degree);

enum class ISumMethod { direct, closed };

struct PairingCheck {
  bool pass = false;
  bool nonzero = false;
  CycloValue lhs, rhs;
};

// (-Q)^k I^{n}_{chi_i/lambda_i}(a) = c prod conj(g(lambda_i)) I^{m}_{eta_i lambda_i}(b), all lambda_i nontrivial
PairingCheck verify_pairing(const MonomialDatum& m, const TransformSolution& s, const std::vector<MultCharacter>& lambdas,
                        const AddCharacter& psi, ISumMethod method = ISumMethod::direct);

struct PairingSweep {
  bool pass = true;
  std::size_t tuples = 0;
  std::size_t nonzero = 0;
  std::size_t direct = 0;  // tuples whose I-sums were brute-forced
  std::string first_failure;
};

// Every tuple of nontrivial characters over the datum's degree times each of
// extensions.  I-sums are brute-forced when (Q-1)^k <= direct_limit.
PairingSweep pairing_sweep(const MonomialDatum& m, const TransformSolution& s, const AddCharacter& psi,
                       const std::vector<int>& extensions, std::uint64_t direct_limit = 1024);

struct PointwiseCheck {
  bool pass = true;
  std::size_t points = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
};

// f^ = (-1)^k c f' with f, f' the trace functions of the datum and of the solution's output.
PointwiseCheck verify_transform_pointwise(const MonomialDatum& m, const TransformSolution& s, const AddCharacter& psi);
// f^(x) = factor * f(scale_1 x_1, ..., scale_k x_k)
PointwiseCheck verify_scaled_transform(const MonomialDatum& m, const CycloValue& factor,
                                       const std::vector<FieldElement>& scales, const AddCharacter& psi);

// sum_{x,y != 0} psi(a x/y + x xh + y yh) chi(x/y) = Q psi(-a yh/xh) chi(-yh/xh) - g(chi) chi^{-1}(a)
bool verify_psi_ax_over_y(FieldElement a, FieldElement xh, FieldElement yh, const MultCharacter& chi, const AddCharacter& psi);
// n-fold version with a = 1: Q^n psi(w) chi(w) - [n]_Q g(chi), w = (-1)^n prod yh / prod xh
bool verify_psi_product(const MultCharacter& chi, const std::vector<FieldElement>& xh, const std::vector<FieldElement>& yh,
               const AddCharacter& psi);

}  // namespace charsum
