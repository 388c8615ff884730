#include "charsum/norm_algebra.hpp"

#include <functional>
#include <numeric>

namespace charsum {

namespace {

std::uint64_t signed_mod(std::int64_t v, std::uint64_t m) {
  std::int64_t mm = static_cast<std::int64_t>(m);
  std::int64_t r = v % mm;
  return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

CycloValue power_of(std::int64_t base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), Int(static_cast<long>(base)).get_mpz_t(), e);
  return CycloValue::integer(r);
}

// Calls fn on every tuple (u_1..u_r) with 0 <= u_i < sizes_i, last index fastest.
void for_each_tuple(const std::vector<std::uint64_t>& sizes, const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
  std::vector<std::uint64_t> u(sizes.size(), 0);
  for (auto s : sizes)
    if (s == 0) return;
  while (true) {
    fn(u);
    std::size_t j = u.size();
    while (j > 0) {
      --j;
      if (++u[j] < sizes[j]) break;
      u[j] = 0;
      if (j == 0) return;
    }
    if (u.empty()) return;
  }
}

int relative(const EtaleAlgebra& k, std::size_t i) { return k.degrees[i] / k.base; }

}  // namespace

int EtaleAlgebra::dimension() const {
  int d = 0;
  for (int x : degrees) d += x / base;
  return d;
}

EtaleAlgebra make_algebra(TowerPtr tower, std::vector<int> degrees, int base) {
  if (!tower) throw DomainError("make_algebra: no tower");
  if (base < 1 || !tower->has_degree(base)) throw DomainError("make_algebra: base degree not in tower");
  for (int d : degrees) {
    if (d < 1 || d % base) throw DomainError("make_algebra: factor degree " + std::to_string(d) + " is not a multiple of the base");
    if (!tower->has_degree(d)) throw DomainError("make_algebra: factor degree " + std::to_string(d) + " not in tower");
  }
  return EtaleAlgebra{std::move(tower), std::move(degrees), base};
}

bool NormCharacter::non_degenerate() const {
  for (auto& c : chars)
    if (c.is_trivial()) return false;
  return true;
}

void validate_module(const EtaleAlgebra& k, const VirtualModule& V) {
  if (V.ranks.size() != k.factors()) throw DomainError("virtual module: need one rank per factor");
  const std::int64_t p = k.tower->p();
  for (auto n : V.ranks)
    if (n != 0 && n % p == 0) throw DomainError("virtual module: rank " + std::to_string(n) + " divisible by p");
}

void validate_character(const EtaleAlgebra& k, const NormCharacter& chi) {
  if (chi.chars.size() != k.factors()) throw DomainError("norm character: need one character per factor");
  for (std::size_t i = 0; i < k.factors(); ++i)
    if (chi.chars[i].degree != k.degrees[i]) throw DomainError("norm character: degree mismatch on factor " + std::to_string(i));
}

FieldElement det_V(const EtaleAlgebra& k, const VirtualModule& V, const AlgebraElement& x) {
  validate_module(k, V);
  if (x.size() != k.factors()) throw DomainError("det_V: need one coordinate per factor");
  const FieldTower& t = *k.tower;
  FieldElement r = t.one(k.base);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].degree != k.degrees[i]) throw DomainError("det_V: coordinate degree mismatch");
    if (x[i].is_zero()) throw DomainError("det_V: not a unit");
    r = t.mul(r, t.pow(t.norm_to(x[i], k.base), V.ranks[i]));
  }
  return r;
}

FieldElement p_of(const EtaleAlgebra& k, const VirtualModule& V) {
  validate_module(k, V);
  const FieldTower& t = *k.tower;
  FieldElement r = t.one(k.base);
  for (std::size_t i = 0; i < k.factors(); ++i) {
    std::int64_t n = V.ranks[i];
    if (n == 0) continue;
    r = t.mul(r, t.pow(t.from_integer(k.base, n), n * relative(k, i)));
  }
  return r;
}

std::int64_t d_of(const VirtualModule& V) {
  std::int64_t g = 0;
  for (auto n : V.ranks) g = std::gcd(g, n < 0 ? -n : n);
  return g;
}

std::int64_t rk(const EtaleAlgebra& k, const VirtualModule& V) {
  if (V.ranks.size() != k.factors()) throw DomainError("rk: need one rank per factor");
  std::int64_t r = 0;
  for (std::size_t i = 0; i < k.factors(); ++i) r += V.ranks[i] * relative(k, i);
  return r;
}

CycloValue gauss_sum_algebra(const EtaleAlgebra& k, const NormCharacter& chi, const AddCharacter& psi) {
  validate_character(k, chi);
  CycloValue r(1);
  for (auto& c : chi.chars) r *= psi.gauss(c);
  return r;
}

CycloValue gauss_sum_algebra_direct(const EtaleAlgebra& k, const NormCharacter& chi, const AddCharacter& psi,
                                    std::uint64_t max_terms) {
  validate_character(k, chi);
  const FieldTower& t = *k.tower;
  std::vector<std::uint64_t> sizes;
  std::uint64_t L = 1;
  long double total = 1;
  for (int d : k.degrees) {
    sizes.push_back(t.unit_order(d));
    L = std::lcm(L, t.unit_order(d));
    total *= static_cast<long double>(t.unit_order(d));
  }
  if (total > static_cast<long double>(max_terms))
    throw SizeBoundError("gauss_sum_algebra_direct: |k^*| exceeds " + std::to_string(max_terms));
  const std::uint64_t p = t.p(), M = p * L;
  std::vector<std::vector<std::uint32_t>> tr(k.factors());
  for (std::size_t i = 0; i < k.factors(); ++i)
    for (std::uint64_t u = 0; u < sizes[i]; ++u) tr[i].push_back(psi.exponent(t.exp(k.degrees[i], u)));
  RootAccumulator acc(M);
  for_each_tuple(sizes, [&](const std::vector<std::uint64_t>& u) {
    std::uint64_t e_psi = 0, e_chi = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      e_psi += tr[i][u[i]];
      e_chi += mulmod(chi.chars[i].index, u[i], sizes[i]) * (L / sizes[i]);
    }
    acc.add((e_psi % p) * L + (e_chi % L) * p);
  });
  return acc.value();
}

Divisor divisor_D_chi_V(const EtaleAlgebra& k, const NormCharacter& chi, const VirtualModule& V) {
  validate_module(k, V);
  validate_character(k, chi);
  Divisor D;
  for (std::size_t i = 0; i < k.factors(); ++i) {
    if (V.ranks[i] == 0) continue;
    D += static_cast<std::int64_t>(relative(k, i)) * divisor_of_char_power(*k.tower, chi.chars[i], V.ranks[i]);
  }
  return D;
}

NormCharacter compose_det(const EtaleAlgebra& k, const VirtualModule& V, const MultCharacter& lambda) {
  validate_module(k, V);
  if (lambda.degree != k.base) throw DomainError("compose_det: character must live on the base field");
  NormCharacter r;
  for (std::size_t i = 0; i < k.factors(); ++i)
    r.chars.push_back(char_lift(*k.tower, char_pow(lambda, V.ranks[i]), k.degrees[i]));
  return r;
}

NormCharacter norm_char_mul(const NormCharacter& a, const NormCharacter& b) {
  if (a.chars.size() != b.chars.size()) throw DomainError("norm_char_mul: factor count mismatch");
  NormCharacter r;
  for (std::size_t i = 0; i < a.chars.size(); ++i) r.chars.push_back(char_mul(a.chars[i], b.chars[i]));
  return r;
}

NormCharacter norm_char_inv(const NormCharacter& a) {
  NormCharacter r;
  for (auto& c : a.chars) r.chars.push_back(char_inv(c));
  return r;
}

NormGaussResult verify_norm_gauss_identity(const EtaleAlgebra& k, const VirtualModule& V, const NormCharacter& chi,
                                 const MultCharacter& lambda, const AddCharacter& psi) {
  Divisor D = divisor_D_chi_V(k, chi, V);
  if (!D.is_zero()) throw DomainError("verify_norm_gauss_identity: D_{chi,V} = " + D.to_string() + " is not zero");
  const FieldTower& t = *k.tower;
  NormCharacter shifted = norm_char_mul(compose_det(k, V, lambda), chi);
  NormGaussResult r;
  r.lhs = gauss_sum_algebra(k, shifted, psi);
  r.rhs = eval_mult(t, lambda, p_of(k, V)) * gauss_sum_algebra(k, chi, psi);
  auto m = q_power_ratio(r.lhs, r.rhs, t.field_size(k.base));
  if (!m) throw InvariantError("verify_norm_gauss_identity: ratio is not a power of q");
  r.m = *m;
  r.generic = shifted.non_degenerate();
  for (std::size_t i = 0; i < k.factors(); ++i)
    if (chi.chars[i].is_trivial()) {
      ++r.trivial_count;
      r.trivial_weight += relative(k, i);
    }
  r.parity_ok = !r.generic || 2 * r.m == r.trivial_weight;
  if (!r.parity_ok)
    throw InvariantError("verify_norm_gauss_identity: m = " + std::to_string(r.m) + " but trivial weight is " +
                         std::to_string(r.trivial_weight));
  return r;
}

CycloValue i_norm_direct(const EtaleAlgebra& k, const VirtualModule& V, const NormCharacter& lambda, FieldElement a,
                         const AddCharacter& psi) {
  validate_module(k, V);
  validate_character(k, lambda);
  const FieldTower& t = *k.tower;
  if (a.is_zero() || a.degree != k.base) throw DomainError("i_norm_direct: coefficient must be a unit of the base field");
  const std::uint64_t nb = t.unit_order(k.base), p = t.p();
  std::vector<std::uint64_t> sizes;
  std::uint64_t L = nb;
  for (int d : k.degrees) {
    sizes.push_back(t.unit_order(d));
    L = std::lcm(L, t.unit_order(d));
  }
  // Nm(g_d^u) = g_base^u with the tower's compatible generators
  std::vector<std::uint32_t> psi_at(nb);
  for (std::uint64_t v = 0; v < nb; ++v) psi_at[v] = psi.exponent(t.mul(a, t.exp(k.base, v)));
  std::vector<std::uint64_t> step;
  for (auto n : V.ranks) step.push_back(signed_mod(n, nb));
  RootAccumulator acc(p * L);
  for_each_tuple(sizes, [&](const std::vector<std::uint64_t>& u) {
    std::uint64_t det = 0, e = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      det = (det + mulmod(step[i], u[i] % nb, nb)) % nb;
      e += mulmod(lambda.chars[i].index, u[i], sizes[i]) * (L / sizes[i]);
    }
    acc.add(std::uint64_t(psi_at[det]) * L + (e % L) * p);
  });
  return acc.value();
}

std::optional<MultCharacter> det_root(const EtaleAlgebra& k, const VirtualModule& V, const NormCharacter& lambda) {
  validate_module(k, V);
  validate_character(k, lambda);
  const FieldTower& t = *k.tower;
  const std::uint64_t nb = t.unit_order(k.base);
  // lambda_i = mu^{n_i} o Nm  iff  index_i = n_i j (Q_i - 1)/(Q_b - 1) with mu of index j
  std::vector<std::uint64_t> target, step;
  for (std::size_t i = 0; i < k.factors(); ++i) {
    const std::uint64_t ratio = t.unit_order(k.degrees[i]) / nb;
    if (lambda.chars[i].index % ratio) return std::nullopt;
    target.push_back(lambda.chars[i].index / ratio);
    step.push_back(signed_mod(V.ranks[i], nb));
  }
  for (std::uint64_t j = 0; j < nb; ++j) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < target.size(); ++i) ok = mulmod(step[i], j, nb) == target[i];
    if (ok) return MultCharacter{k.base, nb, j};
  }
  return std::nullopt;
}

CycloValue i_norm_closed(const EtaleAlgebra& k, const VirtualModule& V, const NormCharacter& lambda, FieldElement a,
                         const AddCharacter& psi) {
  const FieldTower& t = *k.tower;
  if (a.is_zero() || a.degree != k.base) throw DomainError("i_norm_closed: coefficient must be a unit of the base field");
  auto mu = det_root(k, V, lambda);
  const std::uint64_t nb = t.unit_order(k.base);
  if (!mu) return CycloValue::integer(0, t.p() * nb);
  Int units = 1;
  for (int d : k.degrees) units *= static_cast<unsigned long>(t.unit_order(d));
  const Int factor = units / static_cast<unsigned long>(nb);
  const std::uint64_t dv = static_cast<std::uint64_t>(d_of(V));
  const FieldElement ainv = t.inv(a);
  CycloValue s = CycloValue::integer(0, t.p() * nb);
  for (std::uint64_t j = 0; j < nb; ++j) {
    if (mulmod(j, dv, nb) != 0) continue;
    MultCharacter mn = char_mul(*mu, MultCharacter{k.base, nb, j});
    s += psi.gauss(mn) * eval_mult(t, mn, ainv);
  }
  return factor * s;
}

void validate_norm_datum(const NormDatum& d) {
  validate_module(d.algebra, d.module);
  validate_character(d.algebra, d.chi);
  if (d.coeff.is_zero() || d.coeff.degree != d.algebra.base)
    throw DomainError("norm datum: coefficient must be a unit of the base field");
}

NormDatum extend_datum(const NormDatum& d, int e) {
  validate_norm_datum(d);
  if (e < 1) throw DomainError("extend_datum: extension degree must be positive");
  const FieldTower& t = *d.algebra.tower;
  const int b = d.algebra.base;
  const std::uint64_t Q = t.field_size(b);
  NormDatum r;
  std::vector<int> degrees;
  for (std::size_t i = 0; i < d.algebra.factors(); ++i) {
    const int rel = d.algebra.degrees[i] / b;
    const int g = std::gcd(rel, e);
    const int L = b * std::lcm(rel, e);
    for (int j = 0; j < g; ++j) {
      degrees.push_back(L);
      r.module.ranks.push_back(d.module.ranks[i]);
      // Q^{-j} modulo Q^{rel} - 1
      std::uint64_t twist = ipow(Q, static_cast<unsigned>((rel - j) % rel));
      r.chi.chars.push_back(char_lift(t, char_pow(d.chi.chars[i], static_cast<std::int64_t>(twist)), L));
    }
  }
  r.algebra = make_algebra(d.algebra.tower, std::move(degrees), b * e);
  r.coeff = t.embed(d.coeff, b * e);
  return r;
}

NormTransformSolution solve_norm_transform(const NormDatum& d, const AddCharacter& psi) {
  validate_norm_datum(d);
  const EtaleAlgebra& k = d.algebra;
  const FieldTower& t = *k.tower;
  const std::int64_t R = rk(k, d.module);
  if (R != 0 && R != 2) throw DomainError("solve_norm_transform: rank over the base must be 0 or 2, got " + std::to_string(R));
  const int kind = R == 2 ? 1 : 2;
  const FieldElement P = p_of(k, d.module);
  const std::uint64_t nb = t.unit_order(k.base);

  Divisor rhs = divisor_D_chi_V(k, norm_char_inv(d.chi), d.module);
  Divisor origin;
  origin.add(make_xpoint(0, 1), 1);
  Divisor rest = kind == 1 ? rhs - origin : origin - rhs;
  if (rest.points().size() != 1 || rest.points().begin()->second != 1)
    throw DomainError("solve_norm_transform: no character solves the divisor equation (" + rhs.to_string() + ")");
  XPoint r = rest.points().begin()->first;
  if (nb % r.den != 0)
    throw DomainError("solve_norm_transform: the solving character " + r.to_string() + " is not defined over the base field");
  MultCharacter nu = char_inv(MultCharacter{k.base, nb, r.num * (nb / r.den) % nb});

  const std::int64_t dv = d_of(d.module);
  if (kind == 1 && dv == 2) {
    if (t.p() == 2) throw DomainError("solve_norm_transform: d(V) = 2 needs odd q");
    if (nu != epsilon(t, k.base, 2))
      throw DomainError("solve_norm_transform: d(V) = 2 requires the order-2 character, divisor gives " + r.to_string());
  }
  if (kind == 2 && dv > 1 && !nu.is_trivial())
    throw DomainError("solve_norm_transform: d(V) > 1 requires nu = 1, divisor gives " + r.to_string());

  NormTransformSolution s;
  s.kind = kind;
  s.nu = nu;
  s.output.algebra = k;
  for (auto n : d.module.ranks) s.output.module.ranks.push_back(kind == 1 ? n : -n);
  s.output.chi = norm_char_mul(compose_det(k, d.module, nu), norm_char_inv(d.chi));
  // kind 1: a b = -p(V)^{-1};  kind 2: b = a p(V), matching the split monomial case
  s.output.coeff = kind == 1 ? t.neg(t.inv(t.mul(d.coeff, P))) : t.mul(d.coeff, P);

  CycloValue c = -psi.gauss(kind == 1 ? char_inv(nu) : nu);
  CycloValue gchi = gauss_sum_algebra(k, d.chi, psi);
  c *= (k.dimension() % 2 ? -gchi : gchi);
  c *= eval_mult(t, kind == 1 ? nu : char_inv(nu), t.neg(s.output.coeff));
  s.c_base = c;

  long weight = nu.is_trivial() ? 1 : 0;
  for (std::size_t i = 0; i < k.factors(); ++i)
    if (d.chi.chars[i].is_trivial()) weight += relative(k, i);
  s.twist_pattern = weight % 2 == 1;
  s.predicted_twist = (weight - 1) / 2;
  return s;
}

NormPairingReport verify_norm_pairing(const NormDatum& d, const NormTransformSolution& s, const AddCharacter& psi,
                                  const std::vector<int>& extensions, std::uint64_t direct_limit) {
  const FieldTower& t = *d.algebra.tower;
  NormPairingReport rep;
  auto fail = [&](const std::string& why) {
    if (rep.pass) rep.first_failure = why;
    rep.pass = false;
  };
  for (int e : extensions) {
    NormDatum de = extend_datum(d, e);
    NormDatum we = extend_datum(s.output, e);
    const EtaleAlgebra& k = de.algebra;
    const std::int64_t Qe = static_cast<std::int64_t>(t.field_size(k.base));
    const CycloValue sign_power = power_of(-Qe, static_cast<unsigned>(k.dimension()));
    const CycloValue c_e = s.c_base.pow(static_cast<unsigned>(e));

    std::vector<std::uint64_t> sizes;
    long double units = 1;
    for (int deg : k.degrees) {
      sizes.push_back(t.unit_order(deg) - 1);
      units *= static_cast<long double>(t.unit_order(deg));
    }
    const bool direct = units <= static_cast<long double>(direct_limit);
    auto isum = [&](const VirtualModule& V, const NormCharacter& l, FieldElement a) {
      if (!direct) return i_norm_closed(k, V, l, a, psi);
      CycloValue v = i_norm_direct(k, V, l, a, psi);
      if (v != i_norm_closed(k, V, l, a, psi)) fail("degree " + std::to_string(k.base) + ": direct and closed sums differ");
      return v;
    };

    for_each_tuple(sizes, [&](const std::vector<std::uint64_t>& u) {
      NormCharacter lam;
      for (std::size_t i = 0; i < u.size(); ++i)
        lam.chars.push_back(MultCharacter{k.degrees[i], t.unit_order(k.degrees[i]), u[i] + 1});
      ++rep.tuples;
      NormCharacter left = norm_char_mul(de.chi, norm_char_inv(lam)), right = norm_char_mul(we.chi, lam);
      if (!direct && !det_root(k, de.module, left) && !det_root(k, we.module, right)) return;
      if (direct) ++rep.direct, ++rep.cross_checked;
      CycloValue gbar(1);
      for (auto& l : lam.chars) gbar *= psi.gauss(l).conjugate();
      CycloValue lhs = sign_power * isum(de.module, left, de.coeff);
      CycloValue rhs = c_e * gbar * isum(we.module, right, we.coeff);
      std::string where = "degree " + std::to_string(k.base) + " lambda indices (";
      for (std::size_t i = 0; i < u.size(); ++i) where += (i ? "," : "") + std::to_string(u[i] + 1);
      where += ")";
      if (lhs.is_zero()) {
        if (!rhs.is_zero()) fail(where + ": left side vanishes, right side does not");
        return;
      }
      ++rep.nonzero;
      if (rhs.is_zero()) {
        fail(where + ": right side vanishes, left side does not");
        return;
      }
      if (!rep.twist) {
        auto m = q_power_ratio(lhs, rhs, static_cast<std::uint64_t>(Qe));
        if (!m) {
          fail(where + ": sides differ by more than a power of q");
          return;
        }
        rep.twist = *m;  // (q^e)^m, the same m over every extension
        return;
      }
      if (q_power_ratio(lhs, rhs, static_cast<std::uint64_t>(Qe)) != rep.twist)
        fail(where + ": mismatch with twist " + std::to_string(*rep.twist));
    });
  }
  if (rep.twist) {
    rep.twist_matches_prediction = s.twist_pattern && *rep.twist == s.predicted_twist;
    const std::int64_t q = static_cast<std::int64_t>(t.field_size(d.algebra.base));
    rep.c = *rep.twist >= 0 ? power_of(q, static_cast<unsigned>(*rep.twist)) * s.c_base : s.c_base;
  } else {
    fail("no non-degenerate lambda gives a nonzero pairing");
  }
  return rep;
}

}  // namespace charsum
