#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/divisor.hpp"

namespace charsum {

struct MonomialTerm {
  MultCharacter chi;
  std::int64_t n = 1;
};

// prod_i g(lambda^{n_i} chi_i) / (lambda(n_i^{n_i}) g(chi_i)) as lambda varies
using GammaMonomial = std::vector<MonomialTerm>;

Divisor predicted_divisor(const FieldTower& t, const GammaMonomial& m);

struct MonomialPowerResult {
  long m = 0;              // the ratio is (q^d)^m, d the degree of lambda
  bool generic = false;    // no shifted character lambda^{n_i} chi_i is trivial
  long trivial_count = 0;  // #{i : chi_i = 1}
  bool parity_ok = true;   // 2m = trivial_count whenever generic
  CycloValue lhs, rhs;     // cross-multiplied sides, lhs = (q^d)^m rhs
};

// Throws DomainError when the predicted divisor is nonzero and InvariantError
// when no exponent exists or the parity clause fails.
MonomialPowerResult verify_monomial_q_power(const GammaMonomial& m, const MultCharacter& lambda, const AddCharacter& psi);

struct ViolationResult {
  enum class Status { none, witness, inconclusive };
  Status status = Status::none;
  int degree = 0;
  MultCharacter lambda;
  std::size_t characters_checked = 0;
  std::string reason;
};

// Search degrees ascending and characters by index for a lambda at which
// prod_i (-g(lambda^{n_i} chi_i)) = c^d lambda(a) fails for every constant
// pattern (c, a).  Characters with a trivial shifted term are skipped.
ViolationResult find_violation(const GammaMonomial& m, int max_degree, const AddCharacter& psi);

std::string status_name(ViolationResult::Status s);

}  // namespace charsum
