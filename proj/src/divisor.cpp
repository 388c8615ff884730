#include "charsum/divisor.hpp"

#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace charsum {

void Divisor::add(XPoint x, std::int64_t mult) {
  if (mult == 0) return;
  auto it = pts_.find(x);
  if (it == pts_.end()) {
    pts_.emplace(x, mult);
    return;
  }
  it->second += mult;
  if (it->second == 0) pts_.erase(it);
}

std::int64_t Divisor::degree() const {
  std::int64_t s = 0;
  for (auto& [x, m] : pts_) s += m;
  return s;
}

Divisor Divisor::operator-() const {
  Divisor r = *this;
  for (auto& [x, m] : r.pts_) m = -m;
  return r;
}

Divisor operator+(Divisor a, const Divisor& b) {
  for (auto& [x, m] : b.pts_) a.add(x, m);
  return a;
}

Divisor operator*(std::int64_t k, const Divisor& a) {
  Divisor r;
  if (k == 0) return r;
  for (auto& [x, m] : a.pts_) r.add(x, k * m);
  return r;
}

std::string Divisor::to_string() const {
  if (pts_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [x, m] : pts_) {
    os << (first ? "" : " ") << (m < 0 ? "-" : "+") << std::llabs(m) << "(" << x.to_string() << ")";
    first = false;
  }
  return os.str();
}

ANElement::ANElement(std::uint64_t N, std::uint64_t p) : N_(N), p_(p) {
  if (N == 0) throw DomainError("A_N needs N >= 1");
}

void ANElement::add(std::int64_t s, std::uint64_t n, std::int64_t c) {
  if (n == 0) throw DomainError("symbol [s,n] needs n >= 1");
  if (p_ && n % p_ == 0) throw DomainError("symbol n divisible by p in the (p)-variant");
  if (c == 0) return;
  std::int64_t m = static_cast<std::int64_t>(N_);
  std::uint64_t sr = static_cast<std::uint64_t>(((s % m) + m) % m);
  auto key = std::make_pair(sr, n);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void ANElement::add(const ANElement& other, std::int64_t c) {
  if (other.N_ != N_) throw DomainError("A_N elements with different N");
  for (auto& [k, v] : other.terms_) add(static_cast<std::int64_t>(k.first), k.second, c * v);
}

bool ANElement::in_basis() const {
  for (auto& [k, v] : terms_)
    if (std::gcd(std::gcd(k.first, k.second), N_) != 1) return false;
  return true;
}

std::string ANElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : terms_) {
    os << (first ? "" : " ") << (v < 0 ? "-" : "+") << std::llabs(v) << "[" << k.first << "," << k.second << "]_" << N_;
    first = false;
  }
  return os.str();
}

ANElement expand_relation(std::int64_t s, std::uint64_t n, std::uint64_t N, std::uint64_t d, std::uint64_t p) {
  if (d == 0 || N % d) throw DomainError("expand_relation: d must divide N");
  if (p && d % p == 0) throw DomainError("expand_relation: d divisible by p in the (p)-variant");
  ANElement out(N, p);
  for (std::uint64_t i = 0; i < d; ++i) out.add(s + static_cast<std::int64_t>(i * (N / d)), n);
  return out;
}

ANElement reduce_to_basis(const ANElement& x) {
  ANElement cur = x;
  const std::uint64_t N = x.modulus();
  while (true) {
    bool changed = false;
    for (auto& [k, v] : cur.terms()) {
      std::uint64_t g = std::gcd(std::gcd(k.first, k.second), N);
      if (g <= 1) continue;
      ANElement next = cur;
      std::int64_t c = v;
      next.add(static_cast<std::int64_t>(k.first), k.second, -c);
      next.add(expand_relation(static_cast<std::int64_t>(k.first / g), k.second / g, N, g, x.prime()), c);
      cur = std::move(next);
      changed = true;
      break;
    }
    if (!changed) return cur;
  }
}

Divisor divisor_drn(std::int64_t num, std::int64_t den, std::uint64_t n) {
  Divisor d;
  std::int64_t nn = static_cast<std::int64_t>(n);
  // r + j/n = (n num + j den) / (n den)
  for (std::int64_t j = 0; j < nn; ++j) d.add(make_xpoint(nn * num + j * den, nn * den), 1);
  return d;
}

Divisor alpha(const ANElement& x) {
  Divisor out;
  std::int64_t N = static_cast<std::int64_t>(x.modulus());
  for (auto& [k, v] : x.terms()) {
    std::int64_t n = static_cast<std::int64_t>(k.second);
    out += v * divisor_drn(static_cast<std::int64_t>(k.first), n * N, k.second);
  }
  return out;
}

ANElement phi_MN(const ANElement& x, std::uint64_t M) {
  ANElement out(x.modulus() * M, x.prime());
  for (auto& [k, v] : x.terms()) out.add(static_cast<std::int64_t>(k.first * M), k.second, v);
  return out;
}

Divisor divisor_of_char_power(const FieldTower& t, const MultCharacter& chi, std::int64_t n) {
  if (n == 0) throw DomainError("D_{chi,n} needs n != 0");
  if (n % static_cast<std::int64_t>(t.p()) == 0) throw DomainError("D_{chi,n} needs n prime to p");
  if (n < 0) return -divisor_of_char_power(t, char_inv(chi), -n);
  // the n-th roots of x are x/n + j/n
  XPoint x = x_point(chi);
  return divisor_drn(static_cast<std::int64_t>(x.num), n * static_cast<std::int64_t>(x.den), static_cast<std::uint64_t>(n));
}

Divisor frobenius_quotient(const Divisor& d, std::uint64_t q) {
  Divisor out;
  for (auto& [x, m] : d.points()) {
    if (std::gcd(x.den, q) != 1) throw DomainError("frobenius_quotient: denominator not prime to q");
    std::uint64_t best = x.num, cur = x.num;
    do {
      cur = static_cast<std::uint64_t>(static_cast<unsigned __int128>(cur) * q % x.den);
      best = std::min(best, cur);
    } while (cur != x.num);
    out.add({best, x.den}, m);
  }
  return out;
}

namespace {

bool check_one(const ANElement& x, ProbeReport& rep) {
  ++rep.checked;
  ANElement r = reduce_to_basis(x);
  if (!r.in_basis()) {
    rep.detail = "reduction left a non-basis symbol";
  } else if (!(reduce_to_basis(r) == r)) {
    rep.detail = "reduction not idempotent";
  } else if (alpha(r) != alpha(x)) {
    rep.detail = "reduction changed alpha";
  } else if (alpha(x).is_zero() != r.is_zero()) {
    rep.detail = "alpha(x) = 0 disagrees with reduce(x) = 0";
  } else {
    return true;
  }
  rep.pass = false;
  rep.counterexample = x;
  return false;
}

}  // namespace

ProbeReport injectivity_probe(std::uint64_t N, std::size_t trials, std::uint64_t seed, std::uint64_t p) {
  ProbeReport rep;
  std::mt19937_64 rng(seed ^ (N * 0x9E3779B97F4A7C15ULL));
  auto pick_n = [&](std::uint64_t hi) {
    while (true) {
      std::uint64_t n = 1 + rng() % hi;
      if (!p || n % p) return n;
    }
  };
  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 1; d <= N; ++d)
    if (N % d == 0 && (!p || d % p)) divs.push_back(d);
  for (std::size_t t = 0; t < trials; ++t) {
    ANElement x(N, p);
    std::size_t nterms = 1 + rng() % 4;
    for (std::size_t i = 0; i < nterms; ++i) {
      std::int64_t c = static_cast<std::int64_t>(rng() % 5) - 2;
      x.add(static_cast<std::int64_t>(rng() % N), pick_n(2 * N), c);
    }
    // every other trial, add relators so that zero-valued elements are exercised
    if (t % 2) {
      ANElement rel(N, p);
      std::uint64_t d = divs[rng() % divs.size()];
      std::int64_t s = static_cast<std::int64_t>(rng() % N);
      std::uint64_t n = pick_n(N);
      rel.add(static_cast<std::int64_t>(d) * s, d * n, 1);
      rel.add(expand_relation(s, n, N, d, p), -1);
      if (rng() % 2) x = rel;
      else x.add(rel, static_cast<std::int64_t>(rng() % 3) + 1);
    }
    if (!check_one(x, rep)) return rep;
  }
  return rep;
}

ProbeReport exhaustive_probe(std::uint64_t N, std::uint64_t max_n, std::uint64_t p) {
  ProbeReport rep;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> syms;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    if (p && n % p == 0) continue;
    for (std::uint64_t s = 0; s < N; ++s) syms.emplace_back(s, n);
  }
  for (std::size_t i = 0; i < syms.size(); ++i) {
    ANElement x(N, p);
    x.add(static_cast<std::int64_t>(syms[i].first), syms[i].second);
    if (!check_one(x, rep)) return rep;
    for (std::size_t j = i + 1; j < syms.size(); ++j) {
      ANElement y = x;
      y.add(static_cast<std::int64_t>(syms[j].first), syms[j].second, -1);
      if (!check_one(y, rep)) return rep;
    }
  }
  for (std::uint64_t d = 1; d <= N; ++d) {
    if (N % d || (p && d % p == 0)) continue;
    for (std::uint64_t n = 1; n <= max_n; ++n) {
      if (p && n % p == 0) continue;
      for (std::uint64_t s = 0; s < N; ++s) {
        ANElement rel(N, p);
        rel.add(static_cast<std::int64_t>(d * s), d * n);
        rel.add(expand_relation(static_cast<std::int64_t>(s), n, N, d, p), -1);
        if (!check_one(rel, rep)) return rep;
      }
    }
  }
  return rep;
}

}  // namespace charsum
