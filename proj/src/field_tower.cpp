#include "charsum/field_tower.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace charsum {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > UINT64_MAX / b) throw std::overflow_error("ipow overflow");
    r *= b;
  }
  return r;
}

namespace {

// Polynomials over F_p, lowest degree first, used while the levels are built.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  Poly g = f;
  trim(g);
  std::uint32_t lead_inv = inv_mod(g.back(), p);
  while (a.size() >= g.size()) {
    std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    std::size_t shift = a.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * g[i] % p) % p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly a, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly r{1};
  a = poly_mod(std::move(a), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, f, p);
    e >>= 1;
    if (e) a = poly_mulmod(a, a, f, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f
Poly frobenius_x(unsigned k, const Poly& f, std::uint32_t p) {
  Poly x{0, 1};
  for (unsigned i = 0; i < k; ++i) x = poly_powmod(x, p, f, p);
  return x;
}

// Rabin's test
bool irreducible(const Poly& f, std::uint32_t p) {
  unsigned n = static_cast<unsigned>(f.size() - 1);
  if (n == 1) return true;
  Poly xpn = frobenius_x(n, f, p);
  Poly x{0, 1};
  x = poly_mod(x, f, p);
  if (xpn != x) return false;
  for (std::uint64_t r : prime_factors(n)) {
    Poly h = frobenius_x(n / static_cast<unsigned>(r), f, p);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    Poly g = poly_gcd(h, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly first_irreducible(std::uint32_t p, unsigned n) {
  std::uint64_t count = ipow(p, n);
  for (std::uint64_t c = 0; c < count; ++c) {
    Poly f(n + 1, 0);
    f[n] = 1;
    std::uint64_t v = c;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (irreducible(f, p)) return f;
  }
  throw TowerError("no irreducible polynomial found");
}

std::vector<int> proper_divisors(int d) {
  std::vector<int> out;
  for (int e = 1; e < d; ++e)
    if (d % e == 0) out.push_back(e);
  return out;
}

constexpr char kCacheMagic[4] = {'C', 'S', 'D', 'L'};
constexpr std::uint32_t kCacheVersion = 1;

}  // namespace

std::uint32_t FieldTower::rep_add(std::uint32_t a, std::uint32_t b, unsigned n) const {
  if (p_ == 2) return a ^ b;
  std::uint32_t r = 0, place = 1;
  for (unsigned i = 0; i < n && (a || b); ++i) {
    std::uint32_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    r += ((da + db) % p_) * place;
    place *= p_;
  }
  return r;
}

std::uint32_t FieldTower::rep_neg(std::uint32_t a, unsigned n) const {
  if (p_ == 2) return a;
  std::uint32_t r = 0, place = 1;
  for (unsigned i = 0; i < n && a; ++i) {
    std::uint32_t da = a % p_;
    a /= p_;
    r += ((p_ - da) % p_) * place;
    place *= p_;
  }
  return r;
}

std::uint32_t FieldTower::poly_mul(const Level& L, std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  const unsigned n = L.n;
  std::uint32_t da[64], db[64];
  std::uint64_t prod[128] = {0};
  for (unsigned i = 0; i < n; ++i) {
    da[i] = a % p_;
    a /= p_;
    db[i] = b % p_;
    b /= p_;
  }
  for (unsigned i = 0; i < n; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < n; ++j) prod[i + j] += std::uint64_t(da[i]) * db[j];
  }
  for (unsigned i = 0; i < 2 * n; ++i) prod[i] %= p_;
  for (unsigned i = 2 * n - 1; i-- > n;) {
    std::uint64_t c = prod[i] % p_;
    if (!c) continue;
    prod[i] = 0;
    for (unsigned j = 0; j < n; ++j) prod[i - n + j] = (prod[i - n + j] + c * (p_ - L.modulus[j])) % p_;
  }
  std::uint32_t r = 0;
  for (unsigned i = n; i-- > 0;) r = r * p_ + static_cast<std::uint32_t>(prod[i] % p_);
  return r;
}

std::uint32_t FieldTower::poly_pow(const Level& L, std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = poly_mul(L, r, a);
    e >>= 1;
    if (e) a = poly_mul(L, a, a);
  }
  return r;
}

std::shared_ptr<const FieldTower> FieldTower::build(std::uint32_t p, std::uint32_t s, std::set<int> degrees,
                                                    const TowerOptions& opts) {
  if (!is_prime(p)) throw TowerError("p = " + std::to_string(p) + " is not prime");
  if (s < 1) throw TowerError("s must be positive");
  if (degrees.empty()) throw TowerError("empty degree set");
  for (int d : degrees) {
    if (d < 1) throw TowerError("degrees must be positive");
    for (int e : proper_divisors(d))
      if (!degrees.count(e))
        throw TowerError("degree set not closed under divisors: " + std::to_string(e) + " | " + std::to_string(d));
  }
  std::shared_ptr<FieldTower> t(new FieldTower());
  t->p_ = p;
  t->s_ = s;
  t->q_ = ipow(p, s);
  t->degrees_ = std::move(degrees);
  for (int d : t->degrees_) {
    std::uint64_t size;
    try {
      size = ipow(p, s * static_cast<unsigned>(d));
    } catch (const std::overflow_error&) {
      throw SizeBoundError("field size overflow");
    }
    if (size > opts.max_elements || size > (std::uint64_t(1) << 32) || s * d > 32)
      throw SizeBoundError("F_" + std::to_string(p) + "^" + std::to_string(s * d) + " exceeds the size bound");
  }
  for (int d : t->degrees_) t->build_level(d, opts);
  return t;
}

void FieldTower::build_level(int d, const TowerOptions& opts) {
  Level L;
  L.degree = d;
  L.n = s_ * static_cast<unsigned>(d);
  L.size = ipow(p_, L.n);
  L.modulus = first_irreducible(p_, L.n);
  const std::uint64_t order = L.size - 1;
  const auto primes = prime_factors(order);

  // minimal polynomials over F_p of the generators already fixed below d
  struct Constraint {
    std::uint64_t exponent;
    std::vector<std::uint32_t> minpoly;  // coefficients in F_p
  };
  std::vector<Constraint> constraints;
  for (int e : proper_divisors(d)) {
    const Level& low = levels_.at(e);
    std::vector<std::uint32_t> poly{1};  // coefficients are reps of the level-e field
    std::uint32_t conj = low.generator;
    for (unsigned i = 0; i < low.n; ++i) {
      // poly *= (X - conj)
      std::vector<std::uint32_t> next(poly.size() + 1, 0);
      std::uint32_t nc = rep_neg(conj, low.n);
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j + 1] = rep_add(next[j + 1], poly[j], low.n);
        next[j] = rep_add(next[j], poly_mul(low, poly[j], nc), low.n);
      }
      poly = std::move(next);
      conj = poly_pow(low, conj, p_);
    }
    for (auto c : poly)
      if (c >= p_) throw InvariantError("minimal polynomial not over F_p");
    constraints.push_back({order / (ipow(q_, static_cast<unsigned>(e)) - 1), poly});
  }

  bool found = false;
  for (std::uint64_t cand = 1; cand < L.size && !found; ++cand) {
    std::uint32_t g = static_cast<std::uint32_t>(cand);
    bool gen = true;
    for (auto r : primes)
      if (poly_pow(L, g, order / r) == 1) {
        gen = false;
        break;
      }
    if (!gen) continue;
    bool compatible = true;
    for (const auto& c : constraints) {
      std::uint32_t h = poly_pow(L, g, c.exponent);
      std::uint32_t acc = 0;
      for (std::size_t j = c.minpoly.size(); j-- > 0;) acc = rep_add(poly_mul(L, acc, h), c.minpoly[j], L.n);
      if (acc != 0) {
        compatible = false;
        break;
      }
    }
    if (compatible) {
      L.generator = g;
      found = true;
    }
  }
  if (!found) throw TowerError("no norm-compatible generator for degree " + std::to_string(d));

  L.trace_basis.resize(L.n);
  for (unsigned i = 0; i < L.n; ++i) {
    std::uint32_t xi = poly_pow(L, L.n > 1 ? p_ : 0, i);
    if (L.n == 1) xi = 1;  // the only basis element is 1
    std::uint32_t acc = 0, conj = xi;
    for (unsigned j = 0; j < L.n; ++j) {
      acc = rep_add(acc, conj, L.n);
      conj = poly_pow(L, conj, p_);
    }
    if (acc >= p_) throw InvariantError("trace not in F_p");
    L.trace_basis[i] = acc;
  }
  build_tables(L, opts);
  levels_.emplace(d, std::move(L));
}

void FieldTower::build_tables(Level& L, const TowerOptions& opts) {
  const std::uint64_t order = L.size - 1;
  if (L.size <= opts.table_threshold) {
    std::string dir = opts.cache_dir;
    if (dir.empty()) {
      const char* env = std::getenv("CHARSUM_CACHE_DIR");
      if (env) dir = env;
    }
    if (dir == "-") dir.clear();
    std::string path;
    if (!dir.empty()) {
      std::ostringstream name;
      name << "dlog_p" << p_ << "_s" << s_ << "_d" << L.degree << "_m";
      for (auto c : L.modulus) name << c << '.';
      name << "bin";
      path = (std::filesystem::path(dir) / name.str()).string();
    }
    bool loaded = false;
    if (!path.empty()) {
      std::ifstream in(path, std::ios::binary);
      if (in) {
        char magic[4];
        std::uint32_t hdr[6];
        in.read(magic, 4);
        in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
        bool ok = in && std::memcmp(magic, kCacheMagic, 4) == 0 && hdr[0] == kCacheVersion && hdr[1] == p_ &&
                  hdr[2] == s_ && hdr[3] == static_cast<std::uint32_t>(L.degree) && hdr[4] == L.generator &&
                  hdr[5] == L.modulus.size();
        std::vector<std::uint32_t> mod(L.modulus.size());
        if (ok) {
          in.read(reinterpret_cast<char*>(mod.data()), mod.size() * 4);
          ok = in && mod == L.modulus;
        }
        if (ok) {
          L.log.resize(L.size);
          in.read(reinterpret_cast<char*>(L.log.data()), L.size * 4);
          ok = static_cast<bool>(in);
        }
        if (ok) {
          L.exp.assign(order, 0);
          for (std::uint64_t r = 1; r < L.size && ok; ++r) {
            if (L.log[r] >= order) ok = false;
            else L.exp[L.log[r]] = static_cast<std::uint32_t>(r);
          }
          // spot check that the table belongs to this generator
          ok = ok && L.exp[0] == 1 && (order < 2 || L.exp[1] == L.generator);
        }
        loaded = ok;
        if (!ok) {
          L.log.clear();
          L.exp.clear();
        }
      }
    }
    if (!loaded) {
      L.exp.resize(order);
      L.log.assign(L.size, 0);
      std::uint32_t x = 1;
      for (std::uint64_t k = 0; k < order; ++k) {
        L.exp[k] = x;
        L.log[x] = static_cast<std::uint32_t>(k);
        x = poly_mul(L, x, L.generator);
      }
      if (!path.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        std::string tmp = path + ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(&L));
        std::ofstream out(tmp, std::ios::binary);
        if (out) {
          std::uint32_t hdr[6] = {kCacheVersion, p_, s_, static_cast<std::uint32_t>(L.degree), L.generator,
                                  static_cast<std::uint32_t>(L.modulus.size())};
          out.write(kCacheMagic, 4);
          out.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
          out.write(reinterpret_cast<const char*>(L.modulus.data()), L.modulus.size() * 4);
          out.write(reinterpret_cast<const char*>(L.log.data()), L.size * 4);
          out.close();
          if (out) std::filesystem::rename(tmp, path, ec);
          else std::filesystem::remove(tmp, ec);
        }
      }
    }
    L.abs_trace.resize(L.size);
    for (std::uint64_t r = 0; r < L.size; ++r) {
      std::uint64_t v = r, acc = 0;
      for (unsigned i = 0; i < L.n; ++i) {
        acc += (v % p_) * L.trace_basis[i];
        v /= p_;
      }
      L.abs_trace[r] = static_cast<std::uint32_t>(acc % p_);
    }
    return;
  }
  std::uint64_t m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(order))));
  L.giant_step = m;
  std::uint32_t x = 1;
  for (std::uint64_t j = 0; j < m; ++j) {
    L.baby.emplace(x, static_cast<std::uint32_t>(j));
    x = poly_mul(L, x, L.generator);
  }
  L.giant_factor = poly_pow(L, L.generator, order - (m % order));
}

const FieldTower::Level& FieldTower::level(int d) const {
  auto it = levels_.find(d);
  if (it == levels_.end()) throw TowerError("degree " + std::to_string(d) + " not in tower");
  return it->second;
}

std::uint64_t FieldTower::field_size(int d) const { return level(d).size; }
std::uint64_t FieldTower::unit_order(int d) const { return level(d).size - 1; }
const std::vector<std::uint32_t>& FieldTower::modulus(int d) const { return level(d).modulus; }
bool FieldTower::uses_table(int d) const { return !level(d).log.empty(); }
FieldElement FieldTower::generator(int d) const { return {d, level(d).generator}; }

FieldElement FieldTower::element(int d, std::uint32_t rep) const {
  if (rep >= level(d).size) throw TowerError("element representation out of range");
  return {d, rep};
}

FieldElement FieldTower::from_integer(int d, std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  level(d);
  return {d, static_cast<std::uint32_t>(r)};
}

FieldElement FieldTower::add(FieldElement a, FieldElement b) const {
  if (a.degree != b.degree) throw TowerError("degree mismatch in add");
  return {a.degree, rep_add(a.rep, b.rep, level(a.degree).n)};
}

FieldElement FieldTower::neg(FieldElement a) const { return {a.degree, rep_neg(a.rep, level(a.degree).n)}; }

FieldElement FieldTower::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldTower::mul(FieldElement a, FieldElement b) const {
  if (a.degree != b.degree) throw TowerError("degree mismatch in mul");
  const Level& L = level(a.degree);
  if (a.rep == 0 || b.rep == 0) return {a.degree, 0};
  if (!L.log.empty()) {
    std::uint64_t k = std::uint64_t(L.log[a.rep]) + L.log[b.rep];
    std::uint64_t order = L.size - 1;
    if (k >= order) k -= order;
    return {a.degree, L.exp[k]};
  }
  return {a.degree, poly_mul(L, a.rep, b.rep)};
}

FieldElement FieldTower::inv(FieldElement a) const {
  if (a.rep == 0) throw TowerError("inverse of zero");
  const Level& L = level(a.degree);
  std::uint64_t order = L.size - 1;
  if (!L.log.empty()) return {a.degree, L.exp[(order - L.log[a.rep]) % order]};
  return {a.degree, poly_pow(L, a.rep, order - 1)};
}

FieldElement FieldTower::pow(FieldElement a, std::int64_t e) const {
  const Level& L = level(a.degree);
  if (a.rep == 0) {
    if (e < 0) throw TowerError("negative power of zero");
    return {a.degree, e == 0 ? 1u : 0u};
  }
  std::int64_t order = static_cast<std::int64_t>(L.size - 1);
  std::int64_t r = e % order;
  if (r < 0) r += order;
  if (!L.log.empty()) {
    unsigned __int128 k = static_cast<unsigned __int128>(L.log[a.rep]) * static_cast<std::uint64_t>(r);
    return {a.degree, L.exp[static_cast<std::uint64_t>(k % static_cast<std::uint64_t>(order))]};
  }
  return {a.degree, poly_pow(L, a.rep, static_cast<std::uint64_t>(r))};
}

FieldElement FieldTower::exp(int d, std::uint64_t k) const {
  const Level& L = level(d);
  std::uint64_t order = L.size - 1;
  k %= order;
  if (!L.exp.empty()) return {d, L.exp[k]};
  return {d, poly_pow(L, L.generator, k)};
}

std::uint64_t FieldTower::discrete_log(FieldElement x) const {
  if (x.rep == 0) throw TowerError("discrete log of zero");
  const Level& L = level(x.degree);
  if (!L.log.empty()) return L.log[x.rep];
  std::uint32_t y = x.rep;
  std::uint64_t order = L.size - 1;
  for (std::uint64_t i = 0; i <= L.giant_step; ++i) {
    auto it = L.baby.find(y);
    if (it != L.baby.end()) return (i * L.giant_step + it->second) % order;
    y = poly_mul(L, y, L.giant_factor);
  }
  throw InvariantError("discrete log not found");
}

FieldElement FieldTower::embed(FieldElement x, int to_degree) const {
  if (to_degree % x.degree) throw TowerError("embed: degree does not divide target");
  if (to_degree == x.degree) return x;
  if (x.rep == 0) return zero(to_degree);
  std::uint64_t k = discrete_log(x);
  std::uint64_t step = unit_order(to_degree) / unit_order(x.degree);
  unsigned __int128 e = static_cast<unsigned __int128>(k) * step;
  return exp(to_degree, static_cast<std::uint64_t>(e % unit_order(to_degree)));
}

FieldElement FieldTower::trace_to(FieldElement x, int to_degree) const {
  if (x.degree % to_degree) throw TowerError("trace: target degree does not divide source degree");
  level(to_degree);
  if (x.degree == to_degree) return x;
  const std::uint64_t order = unit_order(x.degree);
  const std::uint64_t qe = field_size(to_degree);
  FieldElement acc = zero(x.degree);
  if (x.rep != 0) {
    std::uint64_t e = 1;
    for (int i = 0; i < x.degree / to_degree; ++i) {
      acc = add(acc, pow(x, static_cast<std::int64_t>(e)));
      e = static_cast<std::uint64_t>((static_cast<unsigned __int128>(e) * qe) % order);
    }
  }
  if (acc.rep == 0) return zero(to_degree);
  std::uint64_t k = discrete_log(acc);
  std::uint64_t step = order / unit_order(to_degree);
  if (k % step) throw InvariantError("trace left the subfield");
  return exp(to_degree, k / step);
}

FieldElement FieldTower::norm_to(FieldElement x, int to_degree) const {
  if (x.degree % to_degree) throw TowerError("norm: target degree does not divide source degree");
  level(to_degree);
  if (x.rep == 0) return zero(to_degree);
  return exp(to_degree, discrete_log(x) % unit_order(to_degree));
}

std::uint32_t FieldTower::absolute_trace(FieldElement x) const {
  const Level& L = level(x.degree);
  if (!L.abs_trace.empty()) return L.abs_trace[x.rep];
  std::uint64_t v = x.rep, acc = 0;
  for (unsigned i = 0; i < L.n; ++i) {
    acc += (v % p_) * L.trace_basis[i];
    v /= p_;
  }
  return static_cast<std::uint32_t>(acc % p_);
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "p=" << p_ << " s=" << s_ << " q=" << q_ << " degrees={";
  bool first = true;
  for (int d : degrees_) {
    os << (first ? "" : ",") << d;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace charsum
