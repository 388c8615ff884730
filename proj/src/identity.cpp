#include "charsum/identity.hpp"

#include <map>

namespace charsum {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t signed_mod(std::int64_t v, std::uint64_t m) {
  std::int64_t mm = static_cast<std::int64_t>(m);
  std::int64_t r = v % mm;
  return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

std::vector<MultCharacter> lifted_chars(const FieldTower& t, const GammaMonomial& m, int degree) {
  std::vector<MultCharacter> out;
  for (auto& term : m) out.push_back(char_lift(t, term.chi, degree));
  return out;
}

}  // namespace

Divisor predicted_divisor(const FieldTower& t, const GammaMonomial& m) {
  Divisor d;
  for (auto& term : m) d += divisor_of_char_power(t, term.chi, term.n);
  return d;
}

MonomialPowerResult verify_monomial_q_power(const GammaMonomial& mono, const MultCharacter& lambda, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  if (!predicted_divisor(t, mono).is_zero())
    throw DomainError("verify_monomial_q_power: predicted divisor is nonzero");
  const int d = lambda.degree;
  const std::uint64_t N = lambda.modulus;
  MonomialPowerResult r;
  r.generic = true;
  r.lhs = CycloValue(1);
  CycloValue gauss_den(1);
  std::uint64_t root_e = 0;  // exponent of zeta_N in prod lambda(n_i)^{n_i}
  auto chis = lifted_chars(t, mono, d);
  for (std::size_t i = 0; i < mono.size(); ++i) {
    const auto& term = mono[i];
    MultCharacter shifted = char_mul(char_pow(lambda, term.n), chis[i]);
    if (shifted.is_trivial()) r.generic = false;
    if (chis[i].is_trivial()) ++r.trivial_count;
    r.lhs *= psi.gauss(shifted);
    gauss_den *= psi.gauss(chis[i]);
    std::uint64_t e = mult_exponent(t, lambda, t.from_integer(d, term.n));
    root_e = (root_e + mulmod(e, signed_mod(term.n, N), N)) % N;
  }
  r.rhs = CycloValue::root(N, static_cast<std::int64_t>(root_e)) * gauss_den;
  auto m = q_power_ratio(r.lhs, r.rhs, t.field_size(d));
  if (!m) throw InvariantError("verify_monomial_q_power: ratio is not a power of q for a zero-divisor monomial");
  r.m = *m;
  if (r.generic && 2 * r.m != r.trivial_count) {
    r.parity_ok = false;
    throw InvariantError("verify_monomial_q_power: parity clause fails (2m=" + std::to_string(2 * r.m) +
                         ", trivial=" + std::to_string(r.trivial_count) + ")");
  }
  return r;
}

std::string status_name(ViolationResult::Status s) {
  switch (s) {
    case ViolationResult::Status::none: return "none";
    case ViolationResult::Status::witness: return "witness";
    case ViolationResult::Status::inconclusive: return "inconclusive";
  }
  return "?";
}

ViolationResult find_violation(const GammaMonomial& mono, int max_degree, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  const bool zero_divisor = predicted_divisor(t, mono).is_zero();
  ViolationResult res;

  // surviving constants a in F_q^*, keyed by representation
  std::vector<FieldElement> cands;
  for (std::uint64_t k = 0; k < t.unit_order(1); ++k) cands.push_back(t.exp(1, k));
  // degree-1 constants c_a, once pinned
  std::map<std::uint32_t, CycloValue> base_c;
  std::optional<Int> base_abs;

  for (int d : t.degrees()) {
    if (d > max_degree) break;
    bool liftable = true;
    for (auto& term : mono)
      if (d % term.chi.degree) liftable = false;
    if (!liftable) continue;
    auto chis = lifted_chars(t, mono, d);
    std::optional<CycloValue> v0;
    MultCharacter lam0;
    Int abs0;
    for (const auto& lam : all_chars(t, d)) {
      bool admissible = true;
      CycloValue v(1);
      std::vector<MultCharacter> shifted;
      for (std::size_t i = 0; i < mono.size(); ++i) {
        MultCharacter s = char_mul(char_pow(lam, mono[i].n), chis[i]);
        if (s.is_trivial()) admissible = false;
        shifted.push_back(s);
      }
      if (!admissible) continue;
      for (auto& s : shifted) v *= -psi.gauss(s);
      ++res.characters_checked;
      Int a2 = abs_squared(v);
      auto fail = [&](const std::string& why) {
        res.status = ViolationResult::Status::witness;
        res.degree = d;
        res.lambda = lam;
        res.reason = why;
        return res;
      };
      if (!v0) {
        if (base_abs && d > 1) {
          Int expect;
          mpz_pow_ui(expect.get_mpz_t(), base_abs->get_mpz_t(), static_cast<unsigned long>(d));
          if (a2 != expect) return fail("|value|^2 does not follow the c^d pattern from degree 1");
        }
        v0 = v;
        lam0 = lam;
        abs0 = a2;
        if (d == 1) {
          base_abs = a2;
          for (auto& a : cands) base_c[a.rep] = v * eval_mult(t, char_inv(lam), a);
        } else if (!base_c.empty()) {
          std::vector<FieldElement> keep;
          for (auto& a : cands) {
            CycloValue pred = base_c.at(a.rep).pow(static_cast<unsigned>(d)) * eval_mult(t, lam, t.embed(a, d));
            if (pred == v) keep.push_back(a);
          }
          cands = std::move(keep);
          if (cands.empty()) return fail("no constant a satisfies value = c^d lambda(a)");
        }
        continue;
      }
      if (a2 != abs0) return fail("|value|^2 changes across characters of one degree");
      std::vector<FieldElement> keep;
      for (auto& a : cands) {
        FieldElement ad = t.embed(a, d);
        if (v * eval_mult(t, lam0, ad) == *v0 * eval_mult(t, lam, ad)) keep.push_back(a);
      }
      cands = std::move(keep);
      if (cands.empty()) return fail("no constant a satisfies value = c^d lambda(a)");
      if (d == 1) {
        for (auto it = base_c.begin(); it != base_c.end();) {
          bool alive = false;
          for (auto& a : cands) alive = alive || a.rep == it->first;
          it = alive ? std::next(it) : base_c.erase(it);
        }
      }
    }
  }
  res.status = zero_divisor ? ViolationResult::Status::none : ViolationResult::Status::inconclusive;
  return res;
}

}  // namespace charsum
