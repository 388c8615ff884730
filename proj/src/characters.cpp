#include "charsum/characters.hpp"

#include <numeric>
#include <stdexcept>

namespace charsum {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

void same_degree(const MultCharacter& a, const MultCharacter& b) {
  if (a.degree != b.degree) throw DomainError("characters live on different degrees");
}

}  // namespace

MultCharacter make_char(const FieldTower& t, int degree, std::int64_t index) {
  std::uint64_t n = t.unit_order(degree);
  std::int64_t m = static_cast<std::int64_t>(n);
  std::int64_t r = index % m;
  if (r < 0) r += m;
  return {degree, n, static_cast<std::uint64_t>(r)};
}

MultCharacter trivial_char(const FieldTower& t, int degree) { return make_char(t, degree, 0); }

MultCharacter epsilon(const FieldTower& t, int degree, std::uint64_t n) {
  std::uint64_t order = t.unit_order(degree);
  if (n == 0 || order % n)
    throw DomainError(std::to_string(n) + " does not divide " + std::to_string(order));
  return {degree, order, (order / n) % order};
}

MultCharacter char_mul(const MultCharacter& a, const MultCharacter& b) {
  same_degree(a, b);
  return {a.degree, a.modulus, (a.index + b.index) % a.modulus};
}

MultCharacter char_inv(const MultCharacter& a) { return {a.degree, a.modulus, (a.modulus - a.index) % a.modulus}; }

MultCharacter char_pow(const MultCharacter& a, std::int64_t n) {
  std::int64_t m = static_cast<std::int64_t>(a.modulus);
  std::int64_t r = n % m;
  if (r < 0) r += m;
  return {a.degree, a.modulus, mulmod(a.index, static_cast<std::uint64_t>(r), a.modulus)};
}

MultCharacter char_lift(const FieldTower& t, const MultCharacter& a, int to_degree) {
  if (to_degree % a.degree) throw DomainError("char_lift: degree does not divide target");
  std::uint64_t n = t.unit_order(to_degree);
  return {to_degree, n, mulmod(a.index, n / a.modulus, n)};
}

std::uint64_t char_order(const MultCharacter& a) { return a.modulus / std::gcd(a.modulus, a.index); }

std::vector<MultCharacter> all_chars(const FieldTower& t, int degree) {
  std::uint64_t n = t.unit_order(degree);
  std::vector<MultCharacter> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back({degree, n, i});
  return out;
}

std::uint64_t mult_exponent(const FieldTower& t, const MultCharacter& chi, FieldElement x) {
  if (x.degree != chi.degree) throw DomainError("character evaluated off its degree");
  if (x.is_zero()) throw DomainError("multiplicative character evaluated at 0");
  return mulmod(chi.index, t.discrete_log(x), chi.modulus);
}

CycloValue eval_mult(const FieldTower& t, const MultCharacter& chi, FieldElement x) {
  return CycloValue::root(chi.modulus, static_cast<std::int64_t>(mult_exponent(t, chi, x)));
}

AddCharacter::AddCharacter(TowerPtr tower, std::uint32_t twist_rep)
    : tower_(std::move(tower)), cache_(std::make_shared<Cache>()) {
  twist_ = tower_->element(1, twist_rep);
  if (twist_.is_zero()) throw DomainError("additive character twist must be nonzero");
  twist_by_degree_.resize(static_cast<std::size_t>(tower_->max_degree()) + 1);
  for (int d : tower_->degrees()) twist_by_degree_[d] = tower_->embed(twist_, d);
}

std::uint32_t AddCharacter::exponent(FieldElement x) const {
  if (twist_.rep == 1) return tower_->absolute_trace(x);
  return tower_->absolute_trace(tower_->mul(twist_by_degree_.at(x.degree), x));
}

CycloValue AddCharacter::eval(FieldElement x) const { return CycloValue::root(tower_->p(), exponent(x)); }

const CycloValue& AddCharacter::gauss(const MultCharacter& chi) const {
  auto key = std::make_pair(chi.degree, chi.index);
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return *it->second;
  }
  const FieldTower& t = *tower_;
  const std::uint64_t n = t.unit_order(chi.degree);
  const std::uint64_t p = t.p();
  RootAccumulator acc(p * n);
  std::uint64_t e = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    FieldElement x = t.exp(chi.degree, k);
    acc.add(e * p + std::uint64_t(exponent(x)) * n);
    e += chi.index;
    if (e >= n) e -= n;
  }
  auto v = std::make_unique<CycloValue>(acc.value());
  std::lock_guard<std::mutex> lk(cache_->mu);
  auto [it, inserted] = cache_->values.emplace(key, std::move(v));
  return *it->second;
}

CycloValue eval_add(const AddCharacter& psi, FieldElement x) { return psi.eval(x); }

CycloValue gauss_sum(const MultCharacter& chi, const AddCharacter& psi) { return psi.gauss(chi); }

CycloValue kloosterman(const std::vector<MultCharacter>& chis, FieldElement t, const AddCharacter& psi) {
  if (chis.empty()) throw DomainError("kloosterman: need at least one character");
  if (t.is_zero()) throw DomainError("kloosterman: t must be nonzero");
  const FieldTower& T = psi.tower();
  const int d = t.degree;
  for (auto& c : chis)
    if (c.degree != d) throw DomainError("kloosterman: character degree mismatch");
  const std::uint64_t n = T.unit_order(d), p = T.p();
  const std::size_t k = chis.size();
  const std::uint64_t lt = T.discrete_log(t);
  RootAccumulator acc(p * n);
  std::vector<std::uint64_t> idx(k - 1, 0);
  while (true) {
    std::uint64_t used = 0, chi_e = 0;
    FieldElement sum = T.zero(d);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      used = (used + idx[i]) % n;
      chi_e = (chi_e + mulmod(chis[i].index, idx[i], n)) % n;
      sum = T.add(sum, T.exp(d, idx[i]));
    }
    std::uint64_t last = (lt + n - used) % n;
    chi_e = (chi_e + mulmod(chis[k - 1].index, last, n)) % n;
    sum = T.add(sum, T.exp(d, last));
    acc.add(chi_e * p + std::uint64_t(psi.exponent(sum)) * n);
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == n) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  return acc.value();
}

IdentityCheck check_hd_lift(const MultCharacter& chi, int d, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  int target = chi.degree * d;
  if (!t.has_degree(target)) throw DomainError("check_hd_lift: degree " + std::to_string(target) + " not in tower");
  IdentityCheck r;
  r.lhs = -psi.gauss(char_lift(t, chi, target));
  r.rhs = (-psi.gauss(chi)).pow(static_cast<unsigned>(d));
  r.pass = r.lhs == r.rhs;
  return r;
}

IdentityCheck check_hd_product(const MultCharacter& lambda, std::uint64_t n, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  MultCharacter eps = epsilon(t, lambda.degree, n);
  MultCharacter one = trivial_char(t, lambda.degree);
  IdentityCheck r;
  r.lhs = psi.gauss(char_pow(lambda, static_cast<std::int64_t>(n)));
  CycloValue lam_n = eval_mult(t, lambda, t.from_integer(lambda.degree, static_cast<std::int64_t>(n)));
  r.rhs = lam_n.pow(static_cast<unsigned>(n)) * psi.gauss(one);
  for (std::uint64_t i = 0; i < n; ++i) {
    MultCharacter e = char_pow(eps, static_cast<std::int64_t>(i));
    r.lhs *= psi.gauss(e);
    r.rhs *= psi.gauss(char_mul(lambda, e));
  }
  r.pass = r.lhs == r.rhs;
  return r;
}

XPoint make_xpoint(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("x-point denominator must be positive");
  std::int64_t r = num % den;
  if (r < 0) r += den;
  std::int64_t g = std::gcd(r, den);
  if (g == 0) g = den;
  return {static_cast<std::uint64_t>(r / g), static_cast<std::uint64_t>(den / g)};
}

XPoint x_point(const MultCharacter& chi) {
  return make_xpoint(static_cast<std::int64_t>(chi.index), static_cast<std::int64_t>(chi.modulus));
}

MultCharacter char_from_x_point(const FieldTower& t, XPoint r) {
  if (r.den % t.p() == 0) throw DomainError("x-point denominator divisible by p");
  for (int d : t.degrees()) {
    std::uint64_t n = t.unit_order(d);
    if (n % r.den == 0) return {d, n, r.num * (n / r.den) % n};
  }
  throw DomainError("no tower degree realizes " + r.to_string());
}

}  // namespace charsum
