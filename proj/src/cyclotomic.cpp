#include "charsum/cyclotomic.hpp"
#include "charsum/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace charsum {

namespace {

using i128 = __int128;

struct Modulus {
  IntPoly poly;
  std::size_t degree = 0;
  // nonzero coefficients below the leading one
  std::vector<std::pair<std::size_t, std::int64_t>> sparse;
};

std::mutex g_mod_mutex;
std::map<std::uint64_t, std::unique_ptr<Modulus>> g_mods;

std::vector<std::uint64_t> divisors_of(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    out.push_back(d);
    if (d * d != m) out.push_back(m / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// exact division by a monic polynomial
IntPoly divide_exact(const IntPoly& num, const IntPoly& den) {
  std::size_t dn = den.size() - 1;
  IntPoly rem = num;
  IntPoly quo(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    Int c = rem[i];
    if (c == 0) continue;
    quo[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) rem[i - dn + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (rem[i] != 0) throw InvariantError("cyclotomic: inexact division");
  return quo;
}

const Modulus& modulus_data(std::uint64_t m);

std::unique_ptr<Modulus> build_modulus(std::uint64_t m) {
  IntPoly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (std::uint64_t d : divisors_of(m)) {
    if (d == m) break;
    p = divide_exact(p, modulus_data(d).poly);
  }
  auto out = std::make_unique<Modulus>();
  out->degree = p.size() - 1;
  for (std::size_t j = 0; j < out->degree; ++j) {
    if (p[j] == 0) continue;
    if (!p[j].fits_slong_p()) throw std::overflow_error("cyclotomic: modulus coefficient too large");
    out->sparse.emplace_back(j, p[j].get_si());
  }
  out->poly = std::move(p);
  return out;
}

const Modulus& modulus_data(std::uint64_t m) {
  if (m == 0) throw DomainError("cyclotomic: order must be positive");
  {
    std::lock_guard<std::mutex> lk(g_mod_mutex);
    auto it = g_mods.find(m);
    if (it != g_mods.end()) return *it->second;
  }
  // built outside the lock: construction recurses into smaller orders
  auto built = build_modulus(m);
  std::lock_guard<std::mutex> lk(g_mod_mutex);
  auto [it, inserted] = g_mods.emplace(m, std::move(built));
  return *it->second;
}

bool to_i128(const Int& v, i128& out) {
  if (!v.fits_slong_p()) return false;
  out = static_cast<i128>(v.get_si());
  return true;
}

Int from_i128(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Int hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  Int lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  Int r = (hi << 64) + lo;
  return neg ? Int(-r) : r;
}

// Reduce in place with 128-bit arithmetic; false on overflow.
bool reduce_i128(std::vector<i128>& a, const Modulus& mod) {
  const std::size_t deg = mod.degree;
  for (std::size_t i = a.size(); i-- > deg;) {
    i128 c = a[i];
    if (c == 0) continue;
    a[i] = 0;
    for (auto [j, v] : mod.sparse) {
      i128 prod;
      if (__builtin_mul_overflow(c, static_cast<i128>(v), &prod)) return false;
      if (__builtin_sub_overflow(a[i - deg + j], prod, &a[i - deg + j])) return false;
    }
  }
  return true;
}

std::vector<Int> reduce_big(std::vector<Int> a, const Modulus& mod) {
  const std::size_t deg = mod.degree;
  for (std::size_t i = a.size(); i-- > deg;) {
    if (a[i] == 0) continue;
    Int c = a[i];
    a[i] = 0;
    for (auto [j, v] : mod.sparse) {
      mpz_ptr t = a[i - deg + j].get_mpz_t();
      if (v > 0) mpz_submul_ui(t, c.get_mpz_t(), static_cast<unsigned long>(v));
      else mpz_addmul_ui(t, c.get_mpz_t(), static_cast<unsigned long>(-v));
    }
  }
  a.resize(deg);
  return a;
}

std::vector<Int> reduce(std::vector<Int> a, std::uint64_t m) {
  const Modulus& mod = modulus_data(m);
  if (a.size() <= mod.degree) {
    a.resize(mod.degree, 0);
    return a;
  }
  std::vector<i128> fast(a.size());
  bool ok = true;
  for (std::size_t i = 0; i < a.size() && ok; ++i) ok = to_i128(a[i], fast[i]);
  if (ok && reduce_i128(fast, mod)) {
    std::vector<Int> out(mod.degree);
    for (std::size_t i = 0; i < mod.degree; ++i) out[i] = from_i128(fast[i]);
    return out;
  }
  return reduce_big(std::move(a), mod);
}

std::uint64_t lcm_u(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

std::vector<Int> convolve(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Int> out(a.size() + b.size() - 1, 0);
  std::size_t bits_a = 0, bits_b = 0;
  bool small = true;
  for (auto& x : a) {
    if (!x.fits_slong_p()) small = false;
    bits_a = std::max(bits_a, mpz_sizeinbase(x.get_mpz_t(), 2));
  }
  for (auto& x : b) {
    if (!x.fits_slong_p()) small = false;
    bits_b = std::max(bits_b, mpz_sizeinbase(x.get_mpz_t(), 2));
  }
  std::size_t bits_n = 1;
  while ((std::size_t(1) << bits_n) < std::min(a.size(), b.size())) ++bits_n;
  if (small && bits_a + bits_b + bits_n <= 120) {
    std::vector<i128> acc(out.size(), 0);
    std::vector<std::int64_t> bs(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) bs[j] = b[j].get_si();
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::int64_t ai = a[i].get_si();
      if (ai == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<i128>(ai) * bs[j];
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = from_i128(acc[i]);
    return out;
  }
  // Kronecker substitution: pack into one integer per sign, multiply with GMP, unpack
  const std::size_t slot = (bits_a + bits_b + bits_n + 1 + 63) / 64;
  auto pack = [&](const std::vector<Int>& v, int sign) {
    std::vector<mp_limb_t> buf(v.size() * slot, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (sgn(v[i]) != sign) continue;
      std::size_t count = 0;
      mpz_export(buf.data() + i * slot, &count, -1, sizeof(mp_limb_t), 0, 0, v[i].get_mpz_t());
    }
    Int r;
    mpz_import(r.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0, buf.data());
    return r;
  };
  auto unpack_into = [&](const Int& x, int sign) {
    std::vector<mp_limb_t> buf(out.size() * slot + 1, 0);
    std::size_t count = 0;
    mpz_export(buf.data(), &count, -1, sizeof(mp_limb_t), 0, 0, x.get_mpz_t());
    Int c;
    for (std::size_t i = 0; i < out.size(); ++i) {
      mpz_import(c.get_mpz_t(), slot, -1, sizeof(mp_limb_t), 0, 0, buf.data() + i * slot);
      if (sign > 0) out[i] += c;
      else out[i] -= c;
    }
  };
  Int ap = pack(a, 1), an = pack(a, -1), bp = pack(b, 1), bn = pack(b, -1);
  unpack_into(ap * bp, 1);
  unpack_into(an * bn, 1);
  unpack_into(ap * bn, -1);
  unpack_into(an * bp, -1);
  return out;
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t r = m;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

const IntPoly& cyclotomic_modulus(std::uint64_t m) { return modulus_data(m).poly; }

CycloValue::CycloValue() : order_(1), coeffs_(1, 0) {}

CycloValue::CycloValue(long v) : order_(1), coeffs_(1, Int(v)) {}

CycloValue::CycloValue(std::uint64_t order, std::vector<Int> coeffs)
    : order_(order), coeffs_(reduce(std::move(coeffs), order)) {}

CycloValue CycloValue::integer(const Int& v, std::uint64_t order) {
  std::vector<Int> c(1, v);
  return CycloValue(order, std::move(c));
}

CycloValue CycloValue::root(std::uint64_t order, std::int64_t k) {
  std::int64_t m = static_cast<std::int64_t>(order);
  std::uint64_t e = static_cast<std::uint64_t>(((k % m) + m) % m);
  std::vector<Int> c(e + 1, 0);
  c[e] = 1;
  return CycloValue(order, std::move(c));
}

CycloValue CycloValue::from_group_ring(std::uint64_t order, const std::vector<std::int64_t>& counts) {
  if (counts.size() != order) throw DomainError("from_group_ring: length must equal order");
  const Modulus& mod = modulus_data(order);
  std::vector<i128> fast(counts.begin(), counts.end());
  if (fast.size() < mod.degree) fast.resize(mod.degree, 0);
  CycloValue out;
  out.order_ = order;
  if (reduce_i128(fast, mod)) {
    out.coeffs_.assign(mod.degree, 0);
    for (std::size_t i = 0; i < mod.degree; ++i) out.coeffs_[i] = from_i128(fast[i]);
    return out;
  }
  std::vector<Int> big(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) big[i] = static_cast<long>(counts[i]);
  out.coeffs_ = reduce_big(std::move(big), mod);
  return out;
}

bool CycloValue::is_zero() const {
  for (auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::optional<Int> CycloValue::as_integer() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return std::nullopt;
  return coeffs_.empty() ? Int(0) : coeffs_[0];
}

CycloValue CycloValue::lift_order(std::uint64_t target) const {
  if (target == order_) return *this;
  if (target == 0 || target % order_ != 0)
    throw DomainError("lift_order: target order must be a multiple of the current order");
  std::uint64_t step = target / order_;
  std::vector<Int> c((coeffs_.size() - 1) * step + 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * step] = coeffs_[i];
  return CycloValue(target, std::move(c));
}

CycloValue CycloValue::normalized() const {
  if (auto v = as_integer()) return integer(*v, 1);
  return *this;
}

CycloValue CycloValue::conjugate() const {
  std::vector<Int> c(order_, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[(order_ - i) % order_] += coeffs_[i];
  return CycloValue(order_, std::move(c));
}

CycloValue CycloValue::pow(unsigned e) const {
  CycloValue result = integer(1, order_);
  CycloValue base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

CycloValue CycloValue::operator-() const {
  CycloValue r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloValue operator+(const CycloValue& a, const CycloValue& b) {
  std::uint64_t m = lcm_u(a.order_, b.order_);
  CycloValue x = a.lift_order(m), y = b.lift_order(m);
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
  return x;
}

CycloValue operator-(const CycloValue& a, const CycloValue& b) { return a + (-b); }

CycloValue operator*(const CycloValue& a, const CycloValue& b) {
  std::uint64_t m = lcm_u(a.order_, b.order_);
  CycloValue x = a.lift_order(m), y = b.lift_order(m);
  return CycloValue(m, convolve(x.coeffs_, y.coeffs_));
}

CycloValue operator*(const Int& a, const CycloValue& b) {
  CycloValue r = b;
  for (auto& c : r.coeffs_) c *= a;
  return r;
}

bool operator==(const CycloValue& a, const CycloValue& b) {
  std::uint64_t m = lcm_u(a.order_, b.order_);
  return a.lift_order(m).coeffs_ == b.lift_order(m).coeffs_;
}

bool equals(const CycloValue& a, const CycloValue& b) { return a == b; }

std::string CycloValue::to_string() const {
  std::ostringstream os;
  os << order_ << ":[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i].get_str();
  os << "]";
  return os.str();
}

Int abs_squared(const CycloValue& v) {
  auto r = (v * v.conjugate()).as_integer();
  if (!r) throw InvariantError("abs_squared: product with conjugate is not rational");
  return *r;
}

std::optional<long> q_power_ratio(const CycloValue& v, const CycloValue& w, std::uint64_t q) {
  if (w.is_zero()) throw DomainError("q_power_ratio: w must be nonzero");
  if (v.is_zero() || q < 2) return std::nullopt;
  Int qq = static_cast<unsigned long>(q);

  auto rational = [](const CycloValue& x) -> std::optional<Int> {
    return (x * x.conjugate()).as_integer();
  };
  std::optional<long> m;
  auto av = rational(v), aw = rational(w);
  if (av && aw) {
    Int num = *av, den = *aw;
    bool invert = num < den;
    if (invert) std::swap(num, den);
    if (num % den != 0) return std::nullopt;
    Int t = num / den;
    Int q2 = qq * qq;
    long k = 0;
    while (t % q2 == 0) {
      t /= q2;
      ++k;
    }
    if (t != 1) return std::nullopt;
    m = invert ? -k : k;
  } else {
    // ratio of the first coefficient where w is nonzero
    std::uint64_t ord = lcm_u(v.order(), w.order());
    CycloValue x = v.lift_order(ord), y = w.lift_order(ord);
    std::size_t j = 0;
    while (y.coeffs()[j] == 0) ++j;
    Int num = x.coeffs()[j], den = y.coeffs()[j];
    if (num == 0) return std::nullopt;
    bool invert = abs(num) < abs(den);
    if (invert) std::swap(num, den);
    if (num % den != 0) return std::nullopt;
    Int t = num / den;
    long k = 0;
    while (t % qq == 0) {
      t /= qq;
      ++k;
    }
    if (t != 1) return std::nullopt;
    m = invert ? -k : k;
  }
  Int scale;
  mpz_pow_ui(scale.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(*m >= 0 ? *m : -*m));
  bool ok = *m >= 0 ? v == scale * w : scale * v == w;
  if (!ok) return std::nullopt;
  return m;
}

}  // namespace charsum
