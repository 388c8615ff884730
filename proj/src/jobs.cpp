#include "charsum/jobs.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "charsum/acceptance.hpp"
#include "charsum/characters.hpp"
#include "charsum/divisor.hpp"
#include "charsum/fourier.hpp"
#include "charsum/identity.hpp"
#include "charsum/norm_algebra.hpp"
#include "charsum/stalk.hpp"

namespace charsum {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw SchemaError(msg); }

std::int64_t get_int(const json& j, const char* key) {
  if (!j.contains(key)) schema(std::string("missing field '") + key + "'");
  if (!j[key].is_number_integer()) schema(std::string("field '") + key + "' must be an integer");
  return j[key].get<std::int64_t>();
}

std::int64_t get_int(const json& j, const char* key, std::int64_t def) {
  return j.contains(key) ? get_int(j, key) : def;
}

std::int64_t positive(const json& j, const char* key, std::int64_t def) {
  std::int64_t v = get_int(j, key, def);
  if (v < 1) schema(std::string("field '") + key + "' must be positive");
  return v;
}

const json& get_array(const json& j, const char* key) {
  if (!j.contains(key)) schema(std::string("missing field '") + key + "'");
  if (!j[key].is_array()) schema(std::string("field '") + key + "' must be an array");
  return j[key];
}

std::vector<std::int64_t> int_array(const json& j, const char* key) {
  std::vector<std::int64_t> out;
  for (const json& v : get_array(j, key)) {
    if (!v.is_number_integer()) schema(std::string("field '") + key + "' must hold integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

// Every degree in `need` together with all of its divisors.
std::set<int> divisor_closure(const std::set<int>& need) {
  std::set<int> out;
  for (int d : need)
    for (int e = 1; e <= d; ++e)
      if (d % e == 0) out.insert(e);
  return out;
}

TowerPtr tower_for(const json& j, std::set<int> need) {
  std::int64_t p = get_int(j, "p");
  std::int64_t s = get_int(j, "s", 1);
  if (p < 2 || p > 65521 || !is_prime(static_cast<std::uint64_t>(p))) schema("field 'p' must be a prime");
  if (s < 1 || s > 32) schema("field 's' out of range");
  need.insert(1);
  return FieldTower::build(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(s), divisor_closure(need));
}

// Characters: an index, [degree, index], {degree, index}, "trivial", or
// "eps_n" / "eps<n>" / "ε_n" optionally followed by "^k".
MultCharacter parse_char(const FieldTower& t, const json& v, int degree) {
  if (v.is_number_integer()) return make_char(t, degree, v.get<std::int64_t>());
  if (v.is_array()) {
    if (v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
      schema("a character array must be [degree, index]");
    int d = v[0].get<int>();
    if (d != degree) schema("character degree " + std::to_string(d) + " where " + std::to_string(degree) + " is expected");
    return make_char(t, d, v[1].get<std::int64_t>());
  }
  if (v.is_object()) {
    int d = static_cast<int>(get_int(v, "degree", degree));
    if (d != degree) schema("character degree " + std::to_string(d) + " where " + std::to_string(degree) + " is expected");
    return make_char(t, d, get_int(v, "index"));
  }
  if (!v.is_string()) schema("unrecognised character " + v.dump());
  std::string str = v.get<std::string>();
  if (str == "trivial" || str == "1") return trivial_char(t, degree);
  std::string rest;
  for (const char* prefix : {"eps_", "eps", "\xCE\xB5_", "\xCE\xB5"}) {
    if (str.rfind(prefix, 0) == 0) {
      rest = str.substr(std::string(prefix).size());
      break;
    }
  }
  if (rest.empty()) schema("unrecognised character '" + str + "'");
  std::int64_t n = 0, k = 1;
  std::size_t caret = rest.find('^');
  try {
    std::size_t used = 0;
    n = std::stoll(rest.substr(0, caret), &used);
    if (used != rest.substr(0, caret).size()) throw std::invalid_argument(str);
    if (caret != std::string::npos) {
      k = std::stoll(rest.substr(caret + 1), &used);
      if (used != rest.size() - caret - 1) throw std::invalid_argument(str);
    }
  } catch (const std::logic_error&) {
    schema("unrecognised character '" + str + "'");
  }
  if (n < 1) schema("eps_n needs n >= 1");
  return char_pow(epsilon(t, degree, static_cast<std::uint64_t>(n)), k);
}

std::vector<MultCharacter> parse_lambdas(const FieldTower& t, const json& j, int degree) {
  if (!j.contains("lambda") || (j["lambda"].is_string() && j["lambda"] == "all")) return all_chars(t, degree);
  if (!j["lambda"].is_array()) schema("field 'lambda' must be \"all\" or an array of characters");
  std::vector<MultCharacter> out;
  for (const json& v : j["lambda"]) out.push_back(parse_char(t, v, degree));
  return out;
}

// Integer value, {"log": k} for g^k or {"rep": r}.  Zero is rejected.
FieldElement parse_element(const FieldTower& t, const json& j, const char* key, int degree) {
  FieldElement x = t.one(degree);
  if (j.contains(key)) {
    const json& v = j[key];
    if (v.is_number_integer()) {
      x = t.from_integer(degree, v.get<std::int64_t>());
    } else if (v.is_object() && v.contains("log")) {
      x = t.exp(degree, static_cast<std::uint64_t>(get_int(v, "log")));
    } else if (v.is_object() && v.contains("rep")) {
      std::int64_t r = get_int(v, "rep");
      if (r < 0 || static_cast<std::uint64_t>(r) >= t.field_size(degree)) schema("field element rep out of range");
      x = t.element(degree, static_cast<std::uint32_t>(r));
    } else {
      schema(std::string("field '") + key + "' must be an integer, {log} or {rep}");
    }
  }
  if (x.is_zero()) schema(std::string("field '") + key + "' must be nonzero");
  return x;
}

json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json cyclo_json(const CycloValue& v, bool floats) {
  CycloValue n = v.normalized();
  json coeffs = json::array();
  for (const Int& c : n.coeffs()) coeffs.push_back(int_json(c));
  json out = {{"M", n.order()}, {"coeffs", coeffs}};
  if (floats) {
    const double pi = std::acos(-1.0);
    double re = 0, im = 0;
    for (std::size_t j = 0; j < n.coeffs().size(); ++j) {
      double c = n.coeffs()[j].get_d();
      double ang = 2 * pi * static_cast<double>(j) / static_cast<double>(n.order());
      re += c * std::cos(ang);
      im += c * std::sin(ang);
    }
    out["advisory"] = {{"re", re}, {"im", im}};
  }
  return out;
}

json char_json(const MultCharacter& c) { return {{"degree", c.degree}, {"index", c.index}}; }

json chars_json(const std::vector<MultCharacter>& cs) {
  json out = json::array();
  for (const MultCharacter& c : cs) out.push_back(char_json(c));
  return out;
}

json divisor_json(const Divisor& d) {
  json out = json::array();
  for (const auto& [x, mult] : d.points()) out.push_back({{"num", x.num}, {"den", x.den}, {"mult", mult}});
  return out;
}

// In a prime field the representation index is the integer value.
json element_json(const FieldTower& t, FieldElement x) {
  return {{"degree", x.degree}, {"rep", x.rep}, {"log", t.discrete_log(x)}};
}

json element_value(const FieldTower& t, FieldElement x) {
  if (t.s() == 1 && x.degree == 1) return x.rep;
  return element_json(t, x);
}

struct Cases {
  json list = json::array();
  void add(json c, bool pass) {
    c["pass"] = pass;
    list.push_back(std::move(c));
  }
};

GammaMonomial parse_monomial(const FieldTower& t, const json& arr) {
  GammaMonomial m;
  for (const json& term : arr) {
    if (!term.is_object()) schema("monomial terms must be objects {degree, index, n}");
    int d = static_cast<int>(positive(term, "degree", 1));
    if (!t.has_degree(d)) schema("monomial degree " + std::to_string(d) + " not available");
    json c = term.contains("index") ? term["index"] : (term.contains("character") ? term["character"] : json("trivial"));
    m.push_back({parse_char(t, c, d), get_int(term, "n")});
  }
  if (m.empty()) schema("empty monomial");
  return m;
}

const json& monomial_field(const json& j) {
  if (j.contains("monomial")) return get_array(j, "monomial");
  return get_array(j, "terms");
}

std::set<int> monomial_degrees(const json& arr) {
  std::set<int> out;
  for (const json& term : arr)
    if (term.is_object()) out.insert(static_cast<int>(positive(term, "degree", 1)));
  return out;
}

// ---- kinds -------------------------------------------------------------

void run_gauss(const json& j, const JobOptions& o, Cases& cs) {
  int degree = static_cast<int>(positive(j, "degree", 1));
  TowerPtr t = tower_for(j, {degree});
  AddCharacter psi(t);
  const Int Q(static_cast<unsigned long>(t->field_size(degree)));
  for (const MultCharacter& l : parse_lambdas(*t, j, degree)) {
    CycloValue g = gauss_sum(l, psi);
    bool ok;
    if (l.is_trivial()) {
      ok = g == CycloValue(-1);
    } else {
      CycloValue sign = eval_mult(*t, l, t->from_integer(degree, -1));
      CycloValue gi = gauss_sum(char_inv(l), psi);
      ok = g * gi == Q * sign && g.conjugate() == sign * gi && abs_squared(g) == Q;
    }
    cs.add({{"lambda", char_json(l)}, {"g", cyclo_json(g, o.emit_floats)}}, ok);
  }
}

void run_hd(const json& j, const JobOptions&, Cases& cs) {
  int degree = static_cast<int>(positive(j, "degree", 1));
  std::vector<int> lifts;
  if (j.contains("lift")) {
    if (j["lift"].is_array()) {
      for (const json& v : j["lift"]) {
        if (!v.is_number_integer() || v.get<int>() < 1) schema("field 'lift' must hold positive integers");
        lifts.push_back(v.get<int>());
      }
    } else {
      lifts.push_back(static_cast<int>(positive(j, "lift", 1)));
    }
  }
  if (!j.contains("n") && lifts.empty()) schema("hd job needs 'n' or 'lift'");
  std::set<int> need{degree};
  for (int d : lifts) need.insert(degree * d);
  TowerPtr t = tower_for(j, need);
  AddCharacter psi(t);
  std::int64_t n = j.contains("n") ? positive(j, "n", 1) : 0;
  if (n && t->unit_order(degree) % static_cast<std::uint64_t>(n)) schema("field 'n' must divide q^degree - 1");
  for (const MultCharacter& l : parse_lambdas(*t, j, degree)) {
    if (n) {
      IdentityCheck r = check_hd_product(l, static_cast<std::uint64_t>(n), psi);
      cs.add({{"lambda", char_json(l)}, {"identity", "product"}, {"n", n}}, r.pass);
    }
    for (int d : lifts) {
      IdentityCheck r = check_hd_lift(l, d, psi);
      cs.add({{"lambda", char_json(l)}, {"identity", "lift"}, {"d", d}}, r.pass);
    }
  }
}

void run_divisor(const json& j, const JobOptions& o, Cases& cs) {
  if (!j.contains("terms") && !j.contains("monomial") && !j.contains("N")) schema("divisor job needs 'terms' or 'N'");
  if (j.contains("terms") || j.contains("monomial")) {
    const json& arr = monomial_field(j);
    TowerPtr t = tower_for(j, monomial_degrees(arr));
    Divisor d = predicted_divisor(*t, parse_monomial(*t, arr));
    bool ok = true;
    json c = {{"case", "divisor"}, {"divisor", divisor_json(d)}, {"zero", d.is_zero()}};
    if (j.contains("expect_zero")) {
      if (!j["expect_zero"].is_boolean()) schema("field 'expect_zero' must be boolean");
      ok = j["expect_zero"].get<bool>() == d.is_zero();
    }
    cs.add(c, ok);
  }
  if (j.contains("N")) {
    std::int64_t N = positive(j, "N", 1);
    std::int64_t max_n = positive(j, "max_n", 4);
    std::int64_t trials = get_int(j, "trials", 200);
    std::uint64_t seed = static_cast<std::uint64_t>(get_int(j, "seed", static_cast<std::int64_t>(o.seed)));
    ProbeReport ex = exhaustive_probe(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(max_n));
    cs.add({{"case", "exhaustive_probe"}, {"N", N}, {"checked", ex.checked}, {"detail", ex.detail}}, ex.pass);
    if (trials > 0) {
      ProbeReport rnd = injectivity_probe(static_cast<std::uint64_t>(N), static_cast<std::size_t>(trials), seed);
      cs.add({{"case", "injectivity_probe"}, {"N", N}, {"checked", rnd.checked}, {"detail", rnd.detail}}, rnd.pass);
    }
  }
}

void run_identity(const json& j, const JobOptions& o, Cases& cs) {
  int depth = static_cast<int>(positive(j, "depth", o.depth));
  const json& arr = monomial_field(j);
  std::set<int> need = monomial_degrees(arr);
  for (int d = 1; d <= depth; ++d) need.insert(d);
  TowerPtr t = tower_for(j, need);
  AddCharacter psi(t);
  GammaMonomial m = parse_monomial(*t, arr);
  Divisor div = predicted_divisor(*t, m);
  if (!div.is_zero()) {
    ViolationResult v = find_violation(m, depth, psi);
    json c = {{"case", "find_violation"}, {"divisor", divisor_json(div)}, {"status", status_name(v.status)},
              {"characters_checked", v.characters_checked}, {"reason", v.reason}};
    if (v.status == ViolationResult::Status::witness) {
      c["degree"] = v.degree;
      c["lambda"] = char_json(v.lambda);
    }
    cs.add(c, v.status == ViolationResult::Status::witness);
    return;
  }
  for (int d = 1; d <= depth; ++d) {
    bool fits = true;
    for (const MonomialTerm& term : m) fits = fits && d % term.chi.degree == 0;
    if (!fits) continue;
    for (const MultCharacter& l : all_chars(*t, d)) {
      MonomialPowerResult r = verify_monomial_q_power(m, l, psi);
      cs.add({{"lambda", char_json(l)}, {"m", r.m}, {"generic", r.generic}, {"trivial_count", r.trivial_count}},
             r.parity_ok);
    }
  }
}

MonomialDatum parse_datum(const FieldTower& t, const json& j, int degree) {
  MonomialDatum m;
  m.degree = degree;
  m.exponents = int_array(j, "exponents");
  const json& chars = get_array(j, "characters");
  if (chars.size() != m.exponents.size()) schema("'characters' and 'exponents' differ in length");
  for (const json& c : chars) m.chars.push_back(parse_char(t, c, degree));
  m.coeff = parse_element(t, j, "a", degree);
  validate_datum(t, m);
  return m;
}

json solution_json(const FieldTower& t, const TransformSolution& s, bool floats) {
  return {{"case", "solution"},
          {"kind", s.kind},
          {"chi", char_json(s.chi)},
          {"exponents", s.output.exponents},
          {"characters", chars_json(s.output.chars)},
          {"b", element_value(t, s.output.coeff)},
          {"m", s.twist},
          {"c", cyclo_json(s.c, floats)}};
}

void check_grid(const char* what, std::uint64_t Q, std::size_t k, const JobOptions& o) {
  double points = std::pow(static_cast<double>(Q), static_cast<double>(k));
  if (points > static_cast<double>(o.max_grid))
    throw SizeBoundError(std::string(what) + ": grid of " + std::to_string(static_cast<std::uint64_t>(points)) +
                         " points exceeds --max-grid " + std::to_string(o.max_grid));
}

void run_monom(const json& j, const JobOptions& o, Cases& cs) {
  int degree = static_cast<int>(positive(j, "degree", 1));
  int depth = static_cast<int>(positive(j, "depth", o.depth));
  std::set<int> need;
  for (int e = 1; e <= depth; ++e) need.insert(degree * e);
  TowerPtr t = tower_for(j, need);
  AddCharacter psi(t);
  MonomialDatum m = parse_datum(*t, j, degree);
  std::vector<int> ext;
  for (int e = 1; e <= depth; ++e) ext.push_back(e);
  for (const TransformSolution& s : solve_monomial_transform(m, psi)) {
    cs.add(solution_json(*t, s, o.emit_floats), true);
    check_grid("monom pointwise check", t->field_size(degree), m.k(), o);
    PointwiseCheck pw = verify_transform_pointwise(m, s, psi);
    cs.add({{"case", "pointwise"}, {"points", pw.points}, {"mismatches", pw.mismatches},
            {"first_mismatch", pw.first_mismatch}},
           pw.pass);
    PairingSweep sw = pairing_sweep(m, s, psi, ext);
    cs.add({{"case", "pairing"}, {"extensions", ext}, {"tuples", sw.tuples}, {"nonzero", sw.nonzero},
            {"direct", sw.direct}, {"first_failure", sw.first_failure}},
           sw.pass);
  }
}

void run_stalk(const json& j, const JobOptions& o, Cases& cs) {
  int degree = static_cast<int>(positive(j, "degree", 1));
  TowerPtr t = tower_for(j, {degree});
  AddCharacter psi(t);
  MonomialDatum m = parse_datum(*t, j, degree);
  StalkValue v = stalk_trace_at_zero(m, psi);
  cs.add({{"case", "stalk"}, {"value", cyclo_json(v.value, o.emit_floats)}, {"rule", rule_name(v.rule)}}, true);
  if (j.value("grid", false)) {
    check_grid("stalk trace function", t->field_size(degree), m.k(), o);
    GridFunction f = gm_trace_function(m, psi);
    json vals = json::array();
    for (const CycloValue& x : f.values) vals.push_back(cyclo_json(x, o.emit_floats));
    cs.add({{"case", "trace_function"}, {"k", f.k}, {"values", vals}}, true);
  }
}

void run_binom(const json& j, const JobOptions&, Cases& cs) {
  int n = static_cast<int>(get_int(j, "n"));
  if (n < 0 || n > 40) schema("field 'n' out of range");
  std::vector<std::pair<int, int>> rs;
  if (j.contains("r") || j.contains("s")) {
    rs.emplace_back(static_cast<int>(get_int(j, "r")), static_cast<int>(get_int(j, "s")));
  } else {
    for (int r = 0; r <= n; ++r)
      for (int s = 0; s <= n; ++s) rs.emplace_back(r, s);
  }
  for (auto [r, s] : rs) {
    if (r < 0 || s < 0 || r > n || s > n) schema("need 0 <= r, s <= n");
    BinomialReport b = verify_binomial_identities(n, r, s);
    json c = {{"r", r}, {"s", s}, {"checked", b.checked}, {"displayed_orientation_holds", b.displayed_orientation_holds}};
    if (!b.failures.empty()) c["failures"] = b.failures;
    cs.add(c, b.pass);
  }
}

void run_norm(const json& j, const JobOptions& o, Cases& cs) {
  int depth = static_cast<int>(positive(j, "depth", o.depth));
  std::vector<std::int64_t> fd = int_array(j, "factor_degrees");
  std::vector<std::int64_t> ranks = int_array(j, "ranks");
  const json& chars = get_array(j, "characters");
  if (fd.empty()) schema("'factor_degrees' is empty");
  if (ranks.size() != fd.size() || chars.size() != fd.size())
    schema("'factor_degrees', 'ranks' and 'characters' differ in length");
  std::set<int> need;
  for (std::int64_t d : fd) {
    if (d < 1 || d > 64) schema("factor degree out of range");
    for (int e = 1; e <= depth; ++e) need.insert(std::lcm(static_cast<int>(d), e)), need.insert(e);
  }
  TowerPtr t = tower_for(j, need);
  AddCharacter psi(t);
  NormDatum nd;
  nd.algebra = make_algebra(t, std::vector<int>(fd.begin(), fd.end()));
  nd.module.ranks = ranks;
  for (std::size_t i = 0; i < fd.size(); ++i) nd.chi.chars.push_back(parse_char(*t, chars[i], static_cast<int>(fd[i])));
  nd.coeff = parse_element(*t, j, "a", 1);
  validate_norm_datum(nd);

  const std::int64_t R = rk(nd.algebra, nd.module);
  Divisor D = divisor_D_chi_V(nd.algebra, nd.chi, nd.module);
  cs.add({{"case", "module"},
          {"rank", R},
          {"d", d_of(nd.module)},
          {"p", element_value(*t, p_of(nd.algebra, nd.module))},
          {"divisor", divisor_json(D)}},
         true);
  bool ran = false;
  if (D.is_zero()) {
    ran = true;
    for (const MultCharacter& l : all_chars(*t, 1)) {
      NormGaussResult r = verify_norm_gauss_identity(nd.algebra, nd.module, nd.chi, l, psi);
      cs.add({{"case", "norm_gauss"}, {"lambda", char_json(l)}, {"m", r.m}, {"generic", r.generic},
              {"trivial_weight", r.trivial_weight}, {"trivial_count", r.trivial_count}},
             r.parity_ok);
    }
  }
  if (R == 0 || R == 2) {
    ran = true;
    NormTransformSolution s = solve_norm_transform(nd, psi);
    cs.add({{"case", "solution"},
            {"kind", s.kind},
            {"nu", char_json(s.nu)},
            {"ranks", s.output.module.ranks},
            {"characters", chars_json(s.output.chi.chars)},
            {"b", element_value(*t, s.output.coeff)},
            {"c_base", cyclo_json(s.c_base, o.emit_floats)},
            {"predicted_m_count", s.predicted_twist},
            {"twist_pattern", s.twist_pattern}},
           true);
    std::vector<int> ext;
    for (int e = 1; e <= depth; ++e) ext.push_back(e);
    NormPairingReport r = verify_norm_pairing(nd, s, psi, ext);
    json c = {{"case", "pairing"}, {"extensions", ext}, {"tuples", r.tuples}, {"nonzero", r.nonzero},
              {"direct", r.direct}, {"cross_checked", r.cross_checked},
              {"m_matches_prediction", r.twist_matches_prediction}, {"first_failure", r.first_failure}};
    if (r.twist) {
      c["m"] = *r.twist;
      c["c"] = cyclo_json(r.c, o.emit_floats);
    }
    cs.add(c, r.pass);
  }
  if (!ran) schema("norm job needs D_{chi,V} = 0 or a module of rank 0 or 2");
}

json acceptance_cases(const JobOptions& o, json& timing) {
  AcceptanceOptions ao;
  ao.seed = o.seed;
  json out = json::array();
  for (const CriterionResult& r : run_acceptance(ao)) {
    out.push_back({{"id", r.id}, {"name", r.name}, {"correct", r.correct}, {"within_budget", r.within_budget},
                   {"budget_seconds", r.budget}, {"detail", r.detail}, {"pass", r.pass()}});
    timing.push_back({{"id", r.id}, {"seconds", r.seconds}});
  }
  return out;
}

// Jobs run by suite(full) ahead of the criteria.
json full_suite_jobs() {
  return json::parse(R"([
    {"name": "hd-q7", "kind": "hd", "p": 7, "n": 3, "lambda": "all"},
    {"name": "hd-q13", "kind": "hd", "p": 13, "n": 12, "lift": [2]},
    {"name": "gauss-q9", "kind": "gauss", "p": 3, "s": 2},
    {"name": "gauss-q16", "kind": "gauss", "p": 2, "s": 4},
    {"name": "divisor-N12", "kind": "divisor", "N": 12},
    {"name": "identity-hd3", "kind": "identity", "p": 7,
     "monomial": [{"degree": 1, "index": 0, "n": 3}, {"degree": 1, "index": 0, "n": -1},
                  {"degree": 1, "index": 2, "n": -1}, {"degree": 1, "index": 4, "n": -1}]},
    {"name": "identity-broken", "kind": "identity", "p": 7,
     "monomial": [{"degree": 1, "index": 0, "n": 2}, {"degree": 1, "index": 0, "n": -1}]},
    {"name": "monom-3-1", "kind": "monom", "p": 7, "exponents": [3, -1], "characters": ["trivial", "eps_3"], "a": 1},
    {"name": "monom-4-2", "kind": "monom", "p": 5, "exponents": [4, -2], "characters": ["trivial", "eps_2"], "a": 2},
    {"name": "monom-q13", "kind": "monom", "p": 13, "exponents": [3, -1], "characters": ["trivial", "eps_3"], "a": 5},
    {"name": "stalk-balanced", "kind": "stalk", "p": 5, "exponents": [2, 2, -2], "characters": [0, 0, 0], "a": 1},
    {"name": "binom-5", "kind": "binom", "n": 5},
    {"name": "norm-f9-f3", "kind": "norm", "p": 3, "factor_degrees": [2, 1], "ranks": [1, -2],
     "characters": ["trivial", "trivial"], "a": 1},
    {"name": "norm-f9", "kind": "norm", "p": 3, "factor_degrees": [2], "ranks": [1],
     "characters": ["trivial"], "a": 2}
  ])");
}

JobOutcome finish(json report, const Cases& cs) {
  std::size_t passed = 0;
  for (const json& c : cs.list) passed += c["pass"].get<bool>() ? 1 : 0;
  report["cases"] = cs.list;
  report["summary"] = {{"cases", cs.list.size()}, {"passed", passed}, {"failed", cs.list.size() - passed}};
  bool ok = passed == cs.list.size();
  report["pass"] = ok;
  return {std::move(report), ok ? kExitPass : kExitFail};
}

JobOutcome failure(json report, int code, const char* type, const std::string& msg) {
  report["error"] = {{"type", type}, {"message", msg}};
  report["pass"] = false;
  return {std::move(report), code};
}

}  // namespace

ErrorClass classify_exception(std::exception_ptr e) {
  try {
    std::rethrow_exception(e);
  } catch (const SchemaError&) {
    return {kExitSchema, "schema"};
  } catch (const DomainError&) {
    return {kExitSchema, "domain"};
  } catch (const UnsupportedError&) {
    return {kExitSchema, "unsupported"};
  } catch (const json::exception&) {
    return {kExitSchema, "schema"};
  } catch (const SizeBoundError&) {
    return {kExitSize, "size_bound"};
  } catch (const InvariantError&) {
    return {kExitInvariant, "invariant"};
  } catch (...) {
    return {kExitInvariant, "internal"};
  }
}

JobOutcome run_suite(const std::string& name, const JobOptions& opts) {
  json report = {{"kind", "suite"}, {"suite", name}, {"seed", opts.seed}};
  if (name != "acceptance" && name != "full") return failure(report, kExitSchema, "schema", "unknown suite '" + name + "'");
  Cases cs;
  if (name == "full") {
    for (json job : full_suite_jobs()) {
      JobOutcome r = run_job(job, opts);
      if (r.exit_code >= kExitSchema) {
        report["failed_job"] = job["name"];
        report["job_report"] = r.report;
        return failure(report, r.exit_code, r.report["error"]["type"].get<std::string>().c_str(),
                       "job '" + job["name"].get<std::string>() + "': " + r.report["error"]["message"].get<std::string>());
      }
      cs.add({{"job", job["name"]}, {"summary", r.report["summary"]}}, r.exit_code == kExitPass);
    }
  }
  json timing = json::array();
  for (json c : acceptance_cases(opts, timing)) {
    bool ok = c["pass"].get<bool>();
    c.erase("pass");
    cs.add(c, ok);
  }
  JobOutcome out = finish(report, cs);
  out.report["timing"] = timing;  // stripped by the CLI unless asked for
  return out;
}

JobOutcome run_job(const json& job, const JobOptions& opts) {
  json report = {{"job", job}};
  try {
    if (!job.is_object()) schema("a job must be a JSON object");
    if (!job.contains("kind") || !job["kind"].is_string()) schema("missing string field 'kind'");
    const std::string kind = job["kind"].get<std::string>();
    report["kind"] = kind;
    JobOptions o = opts;
    if (job.contains("seed")) o.seed = static_cast<std::uint64_t>(get_int(job, "seed"));
    if (job.contains("max_grid")) o.max_grid = static_cast<std::uint64_t>(positive(job, "max_grid", 1));
    if (kind == "suite") {
      if (!job.contains("name") || !job["name"].is_string()) schema("suite job needs a string 'name'");
      JobOutcome r = run_suite(job["name"].get<std::string>(), o);
      r.report["job"] = job;
      return r;
    }
    Cases cs;
    if (kind == "gauss") run_gauss(job, o, cs);
    else if (kind == "hd") run_hd(job, o, cs);
    else if (kind == "divisor") run_divisor(job, o, cs);
    else if (kind == "identity") run_identity(job, o, cs);
    else if (kind == "monom") run_monom(job, o, cs);
    else if (kind == "stalk") run_stalk(job, o, cs);
    else if (kind == "binom") run_binom(job, o, cs);
    else if (kind == "norm") run_norm(job, o, cs);
    else schema("unknown kind '" + kind + "'");
    return finish(report, cs);
  } catch (const std::exception& e) {
    ErrorClass c = classify_exception(std::current_exception());
    return failure(report, c.exit_code, c.type, e.what());
  }
}

}  // namespace charsum
