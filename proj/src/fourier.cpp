#include "charsum/fourier.hpp"

#include <numeric>

#include "charsum/divisor.hpp"

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

CycloValue power_of(std::int64_t base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), Int(static_cast<long>(base)).get_mpz_t(), e);
  return CycloValue::integer(r);
}

// prod_i n_i^{n_i} in the datum field
FieldElement exponent_product(const FieldTower& t, int degree, const std::vector<std::int64_t>& ns) {
  FieldElement r = t.one(degree);
  for (auto n : ns) r = t.mul(r, t.pow(t.from_integer(degree, n), n));
  return r;
}

}  // namespace

GridFunction fourier_transform(const GridFunction& f, const AddCharacter& psi, std::uint64_t max_terms) {
  const FieldTower& t = psi.tower();
  const std::uint64_t Q = f.side, p = t.p();
  long double terms = 1;
  for (int i = 0; i < 2 * f.k; ++i) terms *= static_cast<long double>(Q);
  if (terms > static_cast<long double>(max_terms))
    throw SizeBoundError("fourier_transform: q^{2dk} = " + std::to_string(static_cast<double>(terms)) +
                         " exceeds the bound " + std::to_string(max_terms));
  const std::uint64_t M = std::lcm(f.order, p);
  std::vector<CycloValue> vals;
  vals.reserve(f.size());
  for (auto& v : f.values) vals.push_back(v.lift_order(M));
  std::vector<FieldElement> coord(Q);
  for (std::uint64_t i = 0; i < Q; ++i) coord[i] = grid_coordinate(t, f.degree, i);
  std::vector<std::uint32_t> tr(Q * Q);
  for (std::uint64_t y = 0; y < Q; ++y)
    for (std::uint64_t x = 0; x < Q; ++x) tr[y * Q + x] = psi.exponent(t.mul(coord[y], coord[x]));
  std::vector<CycloValue> roots;
  for (std::uint64_t e = 0; e < p; ++e) roots.push_back(CycloValue::root(M, static_cast<std::int64_t>(e * (M / p))));
  const CycloValue zero = CycloValue::integer(0, M);

  // psi(<y, x>) factors over coordinates, so transform one axis at a time.
  std::size_t stride = f.size();
  for (int axis = 0; axis < f.k; ++axis) {
    stride /= Q;
    std::vector<CycloValue> next(vals.size(), zero);
    for (std::size_t base = 0; base < vals.size(); ++base) {
      if ((base / stride) % Q != 0) continue;
      for (std::uint64_t y = 0; y < Q; ++y) {
        std::vector<CycloValue> bucket(p, zero);
        std::vector<bool> used(p, false);
        for (std::uint64_t x = 0; x < Q; ++x) {
          const CycloValue& v = vals[base + x * stride];
          if (v.is_zero()) continue;
          auto e = tr[y * Q + x];
          bucket[e] += v;
          used[e] = true;
        }
        CycloValue out = zero;
        for (std::uint64_t e = 0; e < p; ++e) {
          if (!used[e]) continue;
          out += e == 0 ? bucket[e] : roots[e] * bucket[e];
        }
        next[base + y * stride] = out;
      }
    }
    vals = std::move(next);
  }
  GridFunction g = f;
  g.order = M;
  g.values = std::move(vals);
  return g;
}

CycloValue inner(const GridFunction& f, const GridFunction& g) {
  if (f.degree != g.degree || f.k != g.k || f.size() != g.size()) throw DomainError("inner: grid mismatch");
  const std::uint64_t M = std::lcm(f.order, g.order);
  CycloValue r = CycloValue::integer(0, M);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values[i].is_zero() || g.values[i].is_zero()) continue;
    r += f.values[i].lift_order(M) * g.values[i].lift_order(M).conjugate();
  }
  return r;
}

GridFunction character_grid(const FieldTower& t, const std::vector<MultCharacter>& lambdas) {
  if (lambdas.empty()) throw DomainError("character_grid: need at least one character");
  const int deg = lambdas[0].degree;
  const std::uint64_t n = t.unit_order(deg);
  GridFunction f = make_grid(t, deg, static_cast<int>(lambdas.size()), n);
  for (std::size_t pt = 0; pt < f.size(); ++pt) {
    auto c = grid_unpack(f, pt);
    std::uint64_t e = 0;
    bool zero = false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (lambdas[i].degree != deg) throw DomainError("character_grid: degree mismatch");
      if (c[i] == 0) zero = true;
      else e = (e + mulmod(lambdas[i].index, c[i] - 1, n)) % n;
    }
    if (!zero) f.values[pt] = CycloValue::root(n, static_cast<std::int64_t>(e));
  }
  return f;
}

CycloValue i_sum_direct(const MonomialDatum& m, const std::vector<MultCharacter>& lambdas, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  validate_datum(t, m);
  if (lambdas.size() != m.k()) throw DomainError("i_sum_direct: need one character per variable");
  const std::uint64_t n = t.unit_order(m.degree), p = t.p();
  std::vector<std::uint32_t> psi_at(n);
  for (std::uint64_t u = 0; u < n; ++u) psi_at[u] = psi.exponent(t.mul(m.coeff, t.exp(m.degree, u)));
  std::vector<std::uint64_t> step_u, step_e;
  for (std::size_t i = 0; i < m.k(); ++i) {
    if (lambdas[i].degree != m.degree) throw DomainError("i_sum_direct: character degree mismatch");
    step_u.push_back(signed_mod(m.exponents[i], n));
    step_e.push_back(lambdas[i].index);
  }
  RootAccumulator acc(p * n);
  std::vector<std::uint64_t> idx(m.k(), 0);
  std::uint64_t u = 0, e = 0;
  while (true) {
    acc.add(e * p + std::uint64_t(psi_at[u]) * n);
    std::size_t j = 0;
    for (; j < idx.size(); ++j) {
      u = (u + step_u[j]) % n;
      e = (e + step_e[j]) % n;
      if (++idx[j] < n) break;
      idx[j] = 0;  // wrapped: n steps brought u and e back to where they were
    }
    if (j == idx.size()) break;
  }
  return acc.value();
}

bool i_sum_vanishes(const MonomialDatum& m, const std::vector<MultCharacter>& lambdas) {
  auto eta = common_root(m.exponents, lambdas);
  if (!eta) return true;
  std::int64_t d = 0;
  for (auto v : m.exponents) d = std::gcd(d, v < 0 ? -v : v);
  return eta->index % std::gcd(static_cast<std::uint64_t>(d), eta->modulus) != 0;
}

CycloValue i_sum_closed(const MonomialDatum& m, const std::vector<MultCharacter>& lambdas, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  validate_datum(t, m);
  const std::uint64_t n = t.unit_order(m.degree), p = t.p();
  if (i_sum_vanishes(m, lambdas)) return CycloValue::integer(0, p * n);
  auto eta = *common_root(m.exponents, lambdas);
  std::int64_t d = 0;
  for (auto v : m.exponents) d = std::gcd(d, v < 0 ? -v : v);
  const std::uint64_t du = static_cast<std::uint64_t>(d), g = std::gcd(du, n);
  // lambda with lambda^d = eta
  std::uint64_t lam = 0;
  while (mulmod(lam, du, n) != eta.index) ++lam;
  const FieldElement ainv = t.inv(m.coeff);
  CycloValue s = CycloValue::integer(0, p * n);
  for (std::uint64_t j = 0; j < g; ++j) {
    MultCharacter lc{m.degree, n, (lam + j * (n / g)) % n};
    s += psi.gauss(lc).lift_order(p * n) * eval_mult(t, lc, ainv).lift_order(p * n);
  }
  Int f;
  mpz_pow_ui(f.get_mpz_t(), Int(static_cast<unsigned long>(n)).get_mpz_t(), static_cast<unsigned long>(m.k() - 1));
  return f * s;
}

std::vector<TransformSolution> solve_monomial_transform(const MonomialDatum& m, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  validate_datum(t, m);
  if (m.k() == 0) throw DomainError("solve_monomial_transform: empty datum");
  std::int64_t total = 0, g = 0;
  for (auto v : m.exponents) total += v, g = std::gcd(g, v < 0 ? -v : v);
  if (total != 0 && total != 2) throw DomainError("solve_monomial_transform: sum of exponents must be 0 or 2");
  const int kind = total == 2 ? 1 : 2;
  const int deg = m.degree;
  const std::uint64_t n = t.unit_order(deg);

  Divisor rhs;
  for (std::size_t i = 0; i < m.k(); ++i) rhs += divisor_of_char_power(t, char_inv(m.chars[i]), m.exponents[i]);
  Divisor origin;
  origin.add(make_xpoint(0, 1), 1);
  // kind 1: (0) + (x(chi^-1)) = rhs;  kind 2: (0) - (x(chi^-1)) = rhs
  Divisor rest = kind == 1 ? rhs - origin : origin - rhs;
  if (rest.points().size() != 1 || rest.points().begin()->second != 1)
    throw DomainError("solve_monomial_transform: no character solves the divisor equation (" + rhs.to_string() + ")");
  XPoint r = rest.points().begin()->first;
  if (n % r.den != 0)
    throw DomainError("solve_monomial_transform: the solving character " + r.to_string() + " is not defined over the datum field");
  MultCharacter chi = char_inv(MultCharacter{deg, n, r.num * (n / r.den) % n});

  if (kind == 1 && g == 2) {
    if (t.p() == 2) throw DomainError("solve_monomial_transform: even exponents need odd q");
    if (chi != epsilon(t, deg, 2))
      throw DomainError("solve_monomial_transform: gcd 2 requires the order-2 character, divisor gives " + r.to_string());
  }
  if (kind == 2 && g > 1 && !chi.is_trivial())
    throw DomainError("solve_monomial_transform: gcd > 1 requires chi = 1, divisor gives " + r.to_string());

  TransformSolution s;
  s.kind = kind;
  s.chi = chi;
  s.output.degree = deg;
  FieldElement P = t.inv(exponent_product(t, deg, m.exponents));  // prod n_i^{-n_i}
  s.output.coeff = kind == 1 ? t.neg(t.mul(P, t.inv(m.coeff))) : t.mul(m.coeff, t.inv(P));
  long trivial = chi.is_trivial() ? 1 : 0;
  for (std::size_t i = 0; i < m.k(); ++i) {
    s.output.exponents.push_back(kind == 1 ? m.exponents[i] : -m.exponents[i]);
    s.output.chars.push_back(char_mul(char_pow(chi, m.exponents[i]), char_inv(m.chars[i])));
    if (m.chars[i].is_trivial()) ++trivial;
  }
  if (trivial % 2 == 0)
    throw DomainError("solve_monomial_transform: even number of trivial characters among chi, chi_i");
  s.twist = (trivial - 1) / 2;

  const std::uint64_t Q = t.field_size(deg);
  CycloValue c = -psi.gauss(kind == 1 ? char_inv(chi) : chi);
  for (auto& ch : m.chars) c *= -psi.gauss(ch);
  FieldElement minus_b = t.neg(s.output.coeff);
  c *= eval_mult(t, kind == 1 ? chi : char_inv(chi), minus_b);
  c = power_of(static_cast<std::int64_t>(Q), static_cast<unsigned>(s.twist)).lift_order(c.order()) * c;
  s.c = c;
  return {s};
}

MonomialDatum lift_datum(const FieldTower& t, const MonomialDatum& m, int to_degree) {
  MonomialDatum r;
  r.degree = to_degree;
  r.exponents = m.exponents;
  for (auto& c : m.chars) r.chars.push_back(char_lift(t, c, to_degree));
  r.coeff = t.embed(m.coeff, to_degree);
  return r;
}

TransformSolution lift_solution(const FieldTower& t, const TransformSolution& s, int to_degree) {
  TransformSolution r = s;
  r.output = lift_datum(t, s.output, to_degree);
  r.chi = char_lift(t, s.chi, to_degree);
  if (to_degree % s.output.degree) throw DomainError("lift_solution: degree does not divide target");
  r.c = s.c.pow(static_cast<unsigned>(to_degree / s.output.degree));
  return r;
}

PairingCheck verify_pairing(const MonomialDatum& m, const TransformSolution& s, const std::vector<MultCharacter>& lambdas,
                        const AddCharacter& psi, ISumMethod method) {
  const FieldTower& t = psi.tower();
  if (lambdas.size() != m.k()) throw DomainError("verify_pairing: need one character per variable");
  std::vector<MultCharacter> left, right;
  CycloValue gbar(1);
  for (std::size_t i = 0; i < m.k(); ++i) {
    if (lambdas[i].is_trivial()) throw DomainError("verify_pairing: characters must be nontrivial");
    left.push_back(char_mul(m.chars[i], char_inv(lambdas[i])));
    right.push_back(char_mul(s.output.chars[i], lambdas[i]));
    gbar *= psi.gauss(lambdas[i]).conjugate();
  }
  auto isum = [&](const MonomialDatum& d, const std::vector<MultCharacter>& l) {
    return method == ISumMethod::direct ? i_sum_direct(d, l, psi) : i_sum_closed(d, l, psi);
  };
  PairingCheck r;
  const std::int64_t Q = static_cast<std::int64_t>(t.field_size(m.degree));
  r.lhs = power_of(-Q, static_cast<unsigned>(m.k())) * isum(m, left);
  r.rhs = s.c * gbar * isum(s.output, right);
  r.nonzero = !r.lhs.is_zero();
  r.pass = r.lhs == r.rhs;
  return r;
}

PairingSweep pairing_sweep(const MonomialDatum& m, const TransformSolution& s, const AddCharacter& psi,
                       const std::vector<int>& extensions, std::uint64_t direct_limit) {
  const FieldTower& t = psi.tower();
  PairingSweep rep;
  for (int e : extensions) {
    const int D = m.degree * e;
    if (!t.has_degree(D)) throw DomainError("pairing_sweep: degree " + std::to_string(D) + " not in tower");
    MonomialDatum md = lift_datum(t, m, D);
    TransformSolution sd = lift_solution(t, s, D);
    const std::uint64_t n = t.unit_order(D);
    if (n < 2) continue;  // F_2 has no nontrivial characters
    long double work = 1;
    for (std::size_t i = 0; i < m.k(); ++i) work *= static_cast<long double>(n);
    const bool direct = work <= static_cast<long double>(direct_limit);
    std::vector<std::uint64_t> idx(m.k(), 1);
    std::vector<MultCharacter> lam(m.k());
    while (true) {
      for (std::size_t i = 0; i < m.k(); ++i) lam[i] = MultCharacter{D, n, idx[i]};
      ++rep.tuples;
      bool ok;
      bool nonzero;
      std::vector<MultCharacter> left, right;
      for (std::size_t i = 0; i < m.k(); ++i) {
        left.push_back(char_mul(md.chars[i], char_inv(lam[i])));
        right.push_back(char_mul(sd.output.chars[i], lam[i]));
      }
      if (!direct && i_sum_vanishes(md, left) && i_sum_vanishes(sd.output, right)) {
        ok = true;
        nonzero = false;
      } else {
        auto r = verify_pairing(md, sd, lam, psi, direct ? ISumMethod::direct : ISumMethod::closed);
        ok = r.pass;
        nonzero = r.nonzero;
        if (direct) ++rep.direct;
      }
      if (nonzero) ++rep.nonzero;
      if (!ok && rep.pass) {
        rep.pass = false;
        std::string desc = "degree " + std::to_string(D) + " lambda indices (";
        for (std::size_t i = 0; i < idx.size(); ++i) desc += (i ? "," : "") + std::to_string(idx[i]);
        rep.first_failure = desc + ")";
      }
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == n) idx[j++] = 1;
      if (j == idx.size()) break;
    }
  }
  return rep;
}

namespace {

PointwiseCheck compare_grids(const GridFunction& lhs, const GridFunction& rhs, const CycloValue& factor,
                             const std::vector<std::size_t>& rhs_point) {
  PointwiseCheck r;
  const std::uint64_t M = std::lcm(std::lcm(lhs.order, rhs.order), factor.order());
  const CycloValue f = factor.lift_order(M);
  for (std::size_t pt = 0; pt < lhs.size(); ++pt) {
    ++r.points;
    CycloValue want = f * rhs.values[rhs_point[pt]].lift_order(M);
    if (lhs.values[pt].lift_order(M) != want) {
      ++r.mismatches;
      if (r.pass) {
        std::string c;
        for (auto v : grid_unpack(lhs, pt)) c += (c.empty() ? "" : ",") + std::to_string(v);
        r.first_mismatch = "point (" + c + "): " + lhs.values[pt].normalized().to_string() + " vs " +
                           want.normalized().to_string();
      }
      r.pass = false;
    }
  }
  return r;
}

}  // namespace

PointwiseCheck verify_transform_pointwise(const MonomialDatum& m, const TransformSolution& s, const AddCharacter& psi) {
  GridFunction f = gm_trace_function(m, psi);
  GridFunction fh = fourier_transform(f, psi);
  GridFunction fp = gm_trace_function(s.output, psi);
  CycloValue factor = m.k() % 2 ? -s.c : s.c;
  std::vector<std::size_t> id(fh.size());
  std::iota(id.begin(), id.end(), std::size_t(0));
  return compare_grids(fh, fp, factor, id);
}

PointwiseCheck verify_scaled_transform(const MonomialDatum& m, const CycloValue& factor,
                                       const std::vector<FieldElement>& scales, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  if (scales.size() != m.k()) throw DomainError("verify_scaled_transform: one scale per coordinate");
  GridFunction f = gm_trace_function(m, psi);
  GridFunction fh = fourier_transform(f, psi);
  std::vector<std::size_t> target(f.size());
  for (std::size_t pt = 0; pt < f.size(); ++pt) {
    auto x = grid_point(t, f, pt);
    std::vector<std::uint64_t> c;
    for (std::size_t i = 0; i < x.size(); ++i) c.push_back(grid_index(t, t.mul(scales[i], x[i])));
    target[pt] = grid_pack(f, c);
  }
  return compare_grids(fh, f, factor, target);
}

bool verify_psi_ax_over_y(FieldElement a, FieldElement xh, FieldElement yh, const MultCharacter& chi, const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  const int deg = a.degree;
  if (a.is_zero() || xh.is_zero() || yh.is_zero()) throw DomainError("verify_psi_ax_over_y: parameters must be nonzero");
  const std::uint64_t n = t.unit_order(deg), p = t.p();
  RootAccumulator acc(p * n);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) {
      FieldElement x = t.exp(deg, i), y = t.exp(deg, j);
      std::uint64_t ratio = (i + n - j) % n;
      FieldElement arg = t.add(t.add(t.mul(a, t.exp(deg, ratio)), t.mul(x, xh)), t.mul(y, yh));
      acc.add(mulmod(chi.index, ratio, n) * p + std::uint64_t(psi.exponent(arg)) * n);
    }
  CycloValue lhs = acc.value();
  FieldElement w = t.neg(t.mul(yh, t.inv(xh)));
  CycloValue rhs = CycloValue::integer(Int(static_cast<unsigned long>(t.field_size(deg)))) * psi.eval(t.mul(a, w)) *
                       eval_mult(t, chi, w) -
                   psi.gauss(chi) * eval_mult(t, char_inv(chi), a);
  return lhs == rhs;
}

bool verify_psi_product(const MultCharacter& chi, const std::vector<FieldElement>& xh, const std::vector<FieldElement>& yh,
               const AddCharacter& psi) {
  const FieldTower& t = psi.tower();
  if (xh.empty() || xh.size() != yh.size()) throw DomainError("verify_psi_product: need matching nonempty parameter lists");
  const int deg = chi.degree;
  const std::size_t nv = xh.size();
  for (std::size_t i = 0; i < nv; ++i)
    if (xh[i].is_zero() || yh[i].is_zero()) throw DomainError("verify_psi_product: parameters must be nonzero");
  const std::uint64_t n = t.unit_order(deg), p = t.p();
  RootAccumulator acc(p * n);
  std::vector<std::uint64_t> idx(2 * nv, 0);  // x_1..x_n, y_1..y_n as dlogs
  while (true) {
    std::uint64_t ratio = 0;
    FieldElement lin = t.zero(deg);
    for (std::size_t i = 0; i < nv; ++i) {
      ratio = (ratio + idx[i] + n - idx[nv + i]) % n;
      lin = t.add(lin, t.mul(t.exp(deg, idx[i]), xh[i]));
      lin = t.add(lin, t.mul(t.exp(deg, idx[nv + i]), yh[i]));
    }
    FieldElement arg = t.add(t.exp(deg, ratio), lin);
    acc.add(mulmod(chi.index, ratio, n) * p + std::uint64_t(psi.exponent(arg)) * n);
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == n) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  FieldElement w = t.one(deg);
  for (std::size_t i = 0; i < nv; ++i) w = t.mul(w, t.mul(yh[i], t.inv(xh[i])));
  if (nv % 2) w = t.neg(w);
  const std::int64_t Q = static_cast<std::int64_t>(t.field_size(deg));
  Int qn, qint = 0;
  mpz_pow_ui(qn.get_mpz_t(), Int(static_cast<long>(Q)).get_mpz_t(), nv);
  for (std::size_t i = 0; i < nv; ++i) {
    Int qi;
    mpz_pow_ui(qi.get_mpz_t(), Int(static_cast<long>(Q)).get_mpz_t(), i);
    qint += qi;
  }
  CycloValue rhs = qn * (psi.eval(w) * eval_mult(t, chi, w)) - qint * psi.gauss(chi);
  return acc.value() == rhs;
}

}  // namespace charsum
