#include "charsum/stalk.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace charsum {

namespace {

Int binom(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

QPolynomial q_minus_one_pow(int e) {
  QPolynomial base(std::vector<Int>{-1, 1}), r = QPolynomial::constant(1);
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

// g = ext_gcd(a, b) with x a + y b = g, g >= 0
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    std::int64_t qt = a / b;
    std::tie(a, b) = std::make_pair(b, a - qt * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - qt * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - qt * y1);
  }
  if (a < 0) a = -a, x0 = -x0, y0 = -y0;
  x = x0;
  y = y0;
  return a;
}

}  // namespace

std::optional<MultCharacter> common_root(const std::vector<std::int64_t>& exponents,
                                         const std::vector<MultCharacter>& chars) {
  if (exponents.empty() || exponents.size() != chars.size()) throw DomainError("common_root: bad input");
  std::int64_t d = 0;
  for (auto n : exponents) d = std::gcd(d, n < 0 ? -n : n);
  if (d == 0) throw DomainError("common_root: all exponents zero");
  std::vector<std::int64_t> red, u;
  for (auto n : exponents) red.push_back(n / d);
  std::int64_t g = red[0];
  u.push_back(1);
  if (g < 0) g = -g, u[0] = -1;
  for (std::size_t i = 1; i < red.size(); ++i) {
    std::int64_t x, y;
    g = ext_gcd(g, red[i], x, y);
    for (auto& v : u) v *= x;
    u.push_back(y);
  }
  MultCharacter eta{chars[0].degree, chars[0].modulus, 0};
  for (std::size_t i = 0; i < red.size(); ++i) eta = char_mul(eta, char_pow(chars[i], u[i]));
  for (std::size_t i = 0; i < red.size(); ++i)
    if (char_pow(eta, red[i]) != chars[i]) return std::nullopt;
  return eta;
}

QPolynomial::QPolynomial(std::vector<Int> c) : c_(std::move(c)) { trim(); }

QPolynomial QPolynomial::constant(const Int& v) { return QPolynomial(std::vector<Int>{v}); }

QPolynomial QPolynomial::q_power(unsigned e) {
  std::vector<Int> c(e + 1, 0);
  c[e] = 1;
  return QPolynomial(std::move(c));
}

void QPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int QPolynomial::eval(const Int& q) const {
  Int r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + *it;
  return r;
}

QPolynomial operator+(const QPolynomial& a, const QPolynomial& b) {
  std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return QPolynomial(std::move(c));
}

QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) {
  std::vector<Int> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return QPolynomial(std::move(c));
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Int> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return QPolynomial(std::move(c));
}

std::string QPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Int v = c_[i];
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    Int av = abs(v);
    if (i == 0 || av != 1) os << av;
    if (i >= 1) os << "q";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

QPolynomial a_poly(int n, int m) {
  if (n < 0 || m < 0) throw DomainError("a_poly: negative argument");
  if (m == 0) return QPolynomial::constant(1);
  QPolynomial r;
  for (int i = 0; i < m; ++i)
    r += QPolynomial::constant(binom(m - 1, i) * binom(n - 1, i + 1)) * QPolynomial::q_power(i + 1);
  return r;
}

QPolynomial b_poly(int n, int m) {
  if (n < 0 || m < 0) throw DomainError("b_poly: negative argument");
  QPolynomial r;
  for (int i = 0; i < m; ++i) r += QPolynomial::constant(binom(m - 1, i) * binom(n - 1, i)) * QPolynomial::q_power(i);
  return r;
}

void validate_datum(const FieldTower& t, const MonomialDatum& m) {
  if (!t.has_degree(m.degree)) throw DomainError("datum degree not in tower");
  if (m.chars.size() != m.exponents.size()) throw DomainError("datum: exponent and character counts differ");
  if (m.coeff.degree != m.degree || m.coeff.is_zero()) throw DomainError("datum: coefficient must be a unit of the datum field");
  for (std::size_t i = 0; i < m.k(); ++i) {
    if (m.exponents[i] == 0) throw DomainError("datum: zero exponent");
    if (m.exponents[i] % static_cast<std::int64_t>(t.p()) == 0) throw DomainError("datum: exponent divisible by p");
    if (m.chars[i].degree != m.degree) throw DomainError("datum: character degree mismatch");
  }
}

std::string rule_name(StalkRule r) {
  switch (r) {
    case StalkRule::torus: return "torus";
    case StalkRule::all_negative: return "all_negative";
    case StalkRule::no_common_root: return "no_common_root";
    case StalkRule::single: return "single";
    case StalkRule::all_positive: return "all_positive";
    case StalkRule::two_variable: return "two_variable";
    case StalkRule::recursion: return "recursion";
  }
  return "?";
}

CycloValue power_character_sum(const AddCharacter& psi, FieldElement a, std::uint64_t d, const MultCharacter& eta) {
  const FieldTower& t = psi.tower();
  const int deg = a.degree;
  if (eta.degree != deg) throw DomainError("power_character_sum: degree mismatch");
  const std::uint64_t n = t.unit_order(deg), p = t.p();
  RootAccumulator acc(p * n);
  const std::uint64_t dm = d % n;
  std::uint64_t e = 0, xk = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    FieldElement v = t.mul(a, t.exp(deg, xk));
    acc.add(e * p + std::uint64_t(psi.exponent(v)) * n);
    e += eta.index;
    if (e >= n) e -= n;
    xk += dm;
    if (xk >= n) xk -= n;
  }
  return acc.value();
}

CycloValue balanced_closed_form(int n, int m, std::uint64_t d, const MultCharacter& eta, FieldElement a,
                                const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  const std::uint64_t M = t.p() * t.unit_order(a.degree);
  const Int Q(static_cast<unsigned long>(t.field_size(a.degree)));
  CycloValue S = power_character_sum(psi, a, d, eta).lift_order(M);
  CycloValue bq = CycloValue::integer(b_poly(n, m).eval(Q), M);
  if (eta.is_trivial()) return CycloValue::integer(a_poly(n, m).eval(Q), M) + bq * (S + CycloValue::integer(1, M));
  return bq * S;
}

StalkValue stalk_trace_at_zero(const MonomialDatum& m, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  validate_datum(t, m);
  const std::uint64_t M = t.p() * t.unit_order(m.degree);
  const CycloValue zero = CycloValue::integer(0, M), one = CycloValue::integer(1, M);
  if (m.k() == 0) return {psi.eval(m.coeff).lift_order(M), StalkRule::torus};

  int np = 0, nn = 0;
  std::int64_t d = 0;
  for (auto n : m.exponents) {
    (n > 0 ? np : nn) += 1;
    d = std::gcd(d, n < 0 ? -n : n);
  }
  if (np == 0) return {zero, StalkRule::all_negative};
  auto eta = common_root(m.exponents, m.chars);
  if (!eta) return {zero, StalkRule::no_common_root};
  if (nn == 0) {
    bool trivial = true;
    for (auto& c : m.chars) trivial = trivial && c.is_trivial();
    return {trivial ? one : zero, m.k() == 1 ? StalkRule::single : StalkRule::all_positive};
  }
  const std::uint64_t du = static_cast<std::uint64_t>(d);
  CycloValue base = power_character_sum(psi, m.coeff, du, *eta).lift_order(M);
  if (eta->is_trivial()) base += one;
  if (m.k() == 2) return {base, StalkRule::two_variable};

  for (auto n : m.exponents)
    if (n != d && n != -d)
      throw UnsupportedError("stalk_trace_at_zero: mixed-sign data with k >= 3 needs all |n_i| equal");

  // Blow-up along x_1 = y_1 = 0: A(n,m) = (Q-1) A(n-1,m-1) + A(n,m-1) + A(n-1,m).
  const CycloValue qm1 = CycloValue::integer(Int(static_cast<unsigned long>(t.unit_order(m.degree))), M);
  std::map<std::pair<int, int>, CycloValue> memo;
  std::function<CycloValue(int, int)> A = [&](int a, int b) -> CycloValue {
    if (b == 0) return eta->is_trivial() ? one : zero;
    if (a == 0) return zero;
    if (a == 1 && b == 1) return base;
    auto key = std::make_pair(a, b);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    CycloValue v = qm1 * A(a - 1, b - 1) + A(a, b - 1) + A(a - 1, b);
    memo.emplace(key, v);
    return v;
  };
  CycloValue v = A(np, nn);
  CycloValue closed = balanced_closed_form(np, nn, du, *eta, m.coeff, psi);
  if (v != closed)
    throw InvariantError("stalk_trace_at_zero: recursion disagrees with the balanced closed form at (" +
                         std::to_string(np) + "," + std::to_string(nn) + ")");
  return {v, StalkRule::recursion};
}

GridFunction gm_trace_function(const MonomialDatum& m, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  validate_datum(t, m);
  const int k = static_cast<int>(m.k());
  const std::uint64_t n = t.unit_order(m.degree), p = t.p();
  const std::uint64_t M = p * n;
  GridFunction f = make_grid(t, m.degree, k, M);
  std::map<std::pair<std::uint64_t, std::uint32_t>, CycloValue> stalks;
  for (std::size_t pt = 0; pt < f.size(); ++pt) {
    auto coords = grid_unpack(f, pt);
    std::uint64_t mask = 0;
    MonomialDatum sub;
    sub.degree = m.degree;
    FieldElement coeff = m.coeff;
    std::uint64_t chi_e = 0;
    for (int i = 0; i < k; ++i) {
      auto c = coords[static_cast<std::size_t>(i)];
      if (c == 0) {
        mask |= std::uint64_t(1) << i;
        sub.exponents.push_back(m.exponents[static_cast<std::size_t>(i)]);
        sub.chars.push_back(m.chars[static_cast<std::size_t>(i)]);
        continue;
      }
      FieldElement x = t.exp(m.degree, c - 1);
      coeff = t.mul(coeff, t.pow(x, m.exponents[static_cast<std::size_t>(i)]));
      chi_e = (chi_e + static_cast<std::uint64_t>((static_cast<unsigned __int128>(m.chars[static_cast<std::size_t>(i)].index) * (c - 1)) % n)) % n;
    }
    sub.coeff = coeff;
    auto key = std::make_pair(mask, coeff.rep);
    auto it = stalks.find(key);
    if (it == stalks.end()) it = stalks.emplace(key, stalk_trace_at_zero(sub, psi).value).first;
    f.values[pt] = chi_e == 0 ? it->second : CycloValue::root(M, static_cast<std::int64_t>(chi_e * p)) * it->second;
  }
  return f;
}

BinomialReport verify_binomial_identities(int n, int r, int s) {
  if (n < 1 || r < 0 || s < 0 || r > n || s > n) throw DomainError("verify_binomial_identities: need 0 <= r,s <= n, n >= 1");
  BinomialReport rep;
  auto check = [&](const std::string& name, const QPolynomial& lhs, const QPolynomial& rhs) {
    ++rep.checked;
    if (lhs != rhs) {
      rep.pass = false;
      rep.failures.push_back(name + ": " + lhs.to_string() + " != " + rhs.to_string());
    }
  };
  const QPolynomial qn = QPolynomial::q_power(static_cast<unsigned>(n));
  if (r == 0 && s == 0) {
    QPolynomial sa, sb, qint;
    for (int i = 0; i < n; ++i) qint += QPolynomial::q_power(static_cast<unsigned>(i));
    for (int j = 0; j <= n; ++j)
      for (int l = 0; l <= n; ++l) {
        if (j == 0 && l == 0) continue;
        QPolynomial w = QPolynomial::constant(binom(n, j) * binom(n, l) * ((j + l) % 2 ? -1 : 1));
        sa += w * a_poly(j, l);
        sb += w * b_poly(j, l);
      }
    check("a-sum at origin", sa, QPolynomial() - qint);
    check("b-sum at origin", sb, qint);
    return rep;
  }
  // Boundary points of the 2n-dimensional grid whose zero pattern has i of the
  // s x-coordinates with zero dual weight, j of the others, k of the r
  // y-coordinates with zero dual weight and l of the others.
  auto strata_sum = [&](bool displayed, bool use_b) {
    QPolynomial total;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k)
          for (int l = 0; l <= n; ++l) {
            if (i == 0 && j == 0 && k == 0 && l == 0) continue;
            Int w = displayed ? binom(r, i) * binom(n - r, j) * binom(s, k) * binom(n - s, l)
                              : binom(s, i) * binom(n - s, j) * binom(r, k) * binom(n - r, l);
            if (w == 0) continue;
            if ((r + s + j + l) % 2) w = -w;
            QPolynomial term = QPolynomial::constant(w) * q_minus_one_pow(r + s - i - k);
            total += term * (use_b ? b_poly(i + j, k + l) : a_poly(i + j, k + l));
          }
    return total;
  };
  const int sgn = (r + s) % 2 ? -1 : 1;
  QPolynomial tail = QPolynomial::constant(sgn) * q_minus_one_pow(r + s - 1);
  QPolynomial rhs_a = qn * a_poly(r, s) + tail;
  QPolynomial rhs_b = qn * b_poly(r, s) - tail;
  check("a-strata", strata_sum(false, false), rhs_a);
  check("b-strata", strata_sum(false, true), rhs_b);
  rep.displayed_orientation_holds = strata_sum(true, false) == rhs_a && strata_sum(true, true) == rhs_b;
  return rep;
}

}  // namespace charsum
