#include "fermatseq/conditions.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "fermatseq/errors.hpp"

namespace fermatseq::conditions {

namespace {

using arith::fermat_mod;
using arith::pow_mod;
using arith::tower2_mod;

constexpr std::array<std::pair<ConditionId, std::string_view>, 16> kNames{{
    {ConditionId::ZeroGen, "zero-gen"},
    {ConditionId::FirstGen, "first-gen"},
    {ConditionId::Particularizacion, "particularizacion"},
    {ConditionId::SecondGen, "second-gen"},
    {ConditionId::CommonPart, "common-part"},
    {ConditionId::Particularizacion2, "particularizacion2"},
    {ConditionId::PropBaaz, "prop-baaz"},
    {ConditionId::BaazTheorem, "baaz"},
    {ConditionId::ThirdGen, "third-gen"},
    {ConditionId::CommonPart2, "common-part2"},
    {ConditionId::Particularizacion3, "particularizacion3"},
    {ConditionId::FourthGen, "fourth-gen"},
    {ConditionId::Particularizacion4, "particularizacion4"},
    {ConditionId::Broda, "broda"},
    {ConditionId::Particularizacion5, "particularizacion5"},
    {ConditionId::ProductVersion, "product-version"},
}};

std::string s(const Integer& v) { return v.get_str(); }
std::string s(std::uint64_t v) { return std::to_string(v); }

std::string fermat_label(std::uint64_t n) { return "F_" + std::to_string(n) + " = 2^(2^" + s(n) + ") + 1"; }

Integer as_int(const Natural& v) { return v.value(); }
Integer as_int(std::uint64_t v) { return Natural(v).value(); }

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

void require_positive(const Natural& v, const char* name, const char* who) {
  require(!v.is_zero(), std::string(who) + ": " + name + " must be positive");
}

void require_positive(std::uint64_t v, const char* name, const char* who) {
  require(v != 0, std::string(who) + ": " + name + " must be positive");
}

bool divisible(const Integer& v, const Integer& d) {
  if (sgn(d) == 0) return sgn(v) == 0;
  return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0;
}

std::uint64_t bits(const Integer& v) { return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

// Exact power with a size guard.
Integer exact_pow(const Integer& base, const Integer& exp, const ArithConfig& cfg) {
  if (sgn(exp) < 0) throw DomainError("negative exponent");
  if (sgn(base) == 0) return sgn(exp) == 0 ? Integer(1) : Integer(0);
  if (cmp(abs(base), 1) == 0) return mpz_odd_p(exp.get_mpz_t()) ? base : Integer(1);
  const Integer estimate = exp * bits(base);
  if (cmp(estimate, Integer(std::to_string(cfg.exact_bit_limit()))) > 0) {
    throw MaterializationError("exact power " + s(base) + "^" + s(exp) + " exceeds the configured size bound");
  }
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp.get_ui());
  return out;
}

// Arithmetic modulo |divisor|; divisor 0 switches to exact integers so that
// "0 | x" reads as x == 0.
class Residues {
 public:
  Residues(const Integer& divisor, const ArithConfig& cfg) : mod_(abs(divisor)), cfg_(cfg) {}

  [[nodiscard]] Integer reduce(const Integer& v) const {
    if (sgn(mod_) == 0) return v;
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mod_.get_mpz_t());
    return r;
  }

  [[nodiscard]] Integer pow(const Integer& base, const Integer& exp) const {
    if (sgn(mod_) == 0) return exact_pow(base, exp, cfg_);
    if (cmp(mod_, 1) == 0) return 0;
    return pow_mod(Natural(reduce(base)), Natural(exp), Natural(mod_)).value();
  }

  [[nodiscard]] bool is_zero(const Integer& v) const { return sgn(reduce(v)) == 0; }

 private:
  Integer mod_;
  ArithConfig cfg_;
};

ConditionReport make_report(ConditionId id, std::vector<Binding> inputs) {
  ConditionReport r;
  r.id = id;
  r.inputs = std::move(inputs);
  return r;
}

void conclude(ConditionReport& r, bool holds, const Integer& divisor, std::string dividend) {
  r.conclusion_checked = true;
  r.conclusion_holds = holds;
  if (holds) r.witness = Witness{divisor, std::move(dividend)};
}

// 2^(2^n - e) mod p for odd p, using 2^(2^n) * (2^e)^-1.
Natural pow2_tower_shifted(std::uint64_t n, const Integer& e, const Natural& p) {
  const Natural top = tower2_mod(n, p);
  const Natural low = pow_mod(Natural(2), Natural(e), p);
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), low.value().get_mpz_t(), p.value().get_mpz_t()) == 0) {
    throw DomainError("2 is not invertible modulo " + p.str());
  }
  return Natural(Integer(top.value() * inv % p.value()));
}

// True when v == 2^e for some e, reporting e.
bool is_power_of_two(const Integer& v, std::uint64_t& exponent) {
  if (sgn(v) <= 0 || mpz_popcount(v.get_mpz_t()) != 1) return false;
  exponent = mpz_scan1(v.get_mpz_t(), 0);
  return true;
}

// 2^n as u64 if n < 64.
std::optional<std::uint64_t> pow2_u64(std::uint64_t n) {
  if (n >= 64) return std::nullopt;
  return std::uint64_t{1} << n;
}

ConditionReport third_gen_impl(ConditionId id, const Integer& a, const Integer& f, const Integer& h,
                               const Integer& i, const ArithConfig& cfg) {
  const char* who = id == ConditionId::ThirdGen ? "third_gen" : "common_part2";
  require(sgn(f) > 0, std::string(who) + ": f must be > 0");
  require(sgn(h) > 0, std::string(who) + ": h must be > 0");
  if (id == ConditionId::CommonPart2) require(sgn(i) != 0, "common_part2: i must be nonzero");
  const Integer a_h = exact_pow(a, h, cfg);
  const Integer i4 = i * i * i * i;
  const Integer divisor = a_h + i4;
  require(sgn(divisor) != 0, std::string(who) + ": a^h + i^4 must be nonzero");

  ConditionReport r = make_report(id, {{"a", a}, {"f", f}, {"h", h}, {"i", i}});
  r.hypothesis_holds = true;
  const Residues z(divisor, cfg);
  const Integer inner = z.reduce(a_h - i * z.pow(a, f) + i4);
  const Integer dividend = z.reduce(z.pow(a, h + 4 * f) + z.pow(inner, 4));
  conclude(r, z.is_zero(dividend), divisor,
           s(a) + "^(" + s(h) + " + 4*" + s(f) + ") + (" + s(a) + "^" + s(h) + " - " + s(i) + "*" + s(a) + "^" +
               s(f) + " + " + s(i) + "^4)^4");
  return r;
}

}  // namespace

std::string_view to_string(ConditionId id) {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "unknown";
}

std::optional<ConditionId> parse_condition_id(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<ConditionId>& all_condition_ids() {
  static const std::vector<ConditionId> ids = [] {
    std::vector<ConditionId> v;
    for (const auto& kn : kNames) v.push_back(kn.first);
    return v;
  }();
  return ids;
}

Natural proth_candidate(const Natural& m, std::uint64_t n) { return (m << (n + 2)) + Natural(1); }

ConditionReport zero_gen(const Integer& A, const Integer& B, const Integer& C, const Integer& D,
                         const Integer& E) {
  ConditionReport r = make_report(ConditionId::ZeroGen, {{"A", A}, {"B", B}, {"C", C}, {"D", D}, {"E", E}});
  r.hypothesis_holds = sgn(A) != 0 && divisible(D + B, A) && divisible(D * C - E, A);
  if (r.hypothesis_holds) conclude(r, divisible(B * C + E, A), A, s(B) + "*" + s(C) + " + " + s(E));
  return r;
}

ConditionReport first_gen(const Integer& k, const Integer& l, const Integer& m, const Integer& q,
                          const Integer& r_exp, const ArithConfig& cfg) {
  require(sgn(r_exp) > 0, "first_gen: r must be > 0");
  ConditionReport r = make_report(ConditionId::FirstGen, {{"k", k}, {"l", l}, {"m", m}, {"q", q}, {"r", r_exp}});
  const Integer divisor = k * l + m;
  const Integer two_r = 2 * r_exp;
  const Residues z(divisor, cfg);
  r.hypothesis_holds = z.is_zero(z.pow(k, two_r) + q);
  if (r.hypothesis_holds) {
    const Integer dividend = z.reduce(q) * z.pow(l, two_r) + z.pow(m, two_r);
    conclude(r, z.is_zero(dividend), divisor,
             s(q) + "*" + s(l) + "^" + s(two_r) + " + " + s(m) + "^" + s(two_r));
  }
  return r;
}

ConditionReport second_gen(const Integer& b, const Integer& c, const Integer& d, const Integer& g,
                           const ArithConfig& cfg) {
  require(sgn(d) > 0, "second_gen: d must be > 0");
  const Integer diff = b - c;
  require(sgn(diff) != 0, "second_gen: b - c must be nonzero");
  require(cmp(diff, g) != 0, "second_gen: b - c must differ from g");
  const Integer denom = diff - g;
  const Integer numer = g * exact_pow(b, d, cfg);
  if (!divisible(numer, denom)) {
    throw DomainError("second_gen: g*b^d / (b - c - g) = " + s(numer) + " / " + s(denom) + " is not an integer");
  }
  Integer quotient;
  mpz_divexact(quotient.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());

  ConditionReport r = make_report(ConditionId::SecondGen, {{"b", b}, {"c", c}, {"d", d}, {"g", g}});
  r.hypothesis_holds = true;
  const Residues z(diff, cfg);
  conclude(r, z.is_zero(quotient + z.pow(c, d)), diff,
           s(g) + "*" + s(b) + "^" + s(d) + "/(" + s(denom) + ") + " + s(c) + "^" + s(d));
  return r;
}

ConditionReport common_part(const Integer& k, const Integer& l, const Integer& m, const Integer& r_exp,
                            const ArithConfig& cfg) {
  require(sgn(r_exp) > 0, "common_part: r must be > 0");
  require(sgn(k) != 0, "common_part: k must be nonzero");
  ConditionReport r = make_report(ConditionId::CommonPart, {{"k", k}, {"l", l}, {"m", m}, {"r", r_exp}});
  r.hypothesis_holds = true;
  const Integer divisor = k * l + m;
  const Integer two_r = 2 * r_exp;
  const Residues z(divisor, cfg);
  const Integer dividend = z.reduce(divisor - z.pow(k, two_r)) * z.pow(l, two_r) + z.pow(m, two_r);
  conclude(r, z.is_zero(dividend), divisor,
           "(" + s(divisor) + " - " + s(k) + "^" + s(two_r) + ")*" + s(l) + "^" + s(two_r) + " + " + s(m) + "^" +
               s(two_r));
  return r;
}

ConditionReport third_gen(const Integer& a, const Integer& f, const Integer& h, const Integer& i,
                          const ArithConfig& cfg) {
  return third_gen_impl(ConditionId::ThirdGen, a, f, h, i, cfg);
}

ConditionReport common_part2(const Integer& a, const Integer& f, const Integer& h, const Integer& i,
                             const ArithConfig& cfg) {
  return third_gen_impl(ConditionId::CommonPart2, a, f, h, i, cfg);
}

ConditionReport fourth_gen(const Integer& a, const Integer& b, const Integer& c, const Integer& d,
                           const Integer& g, const Integer& h, const Integer& i, const Integer& k) {
  require(sgn(d) > 0, "fourth_gen: d must be > 0");
  require(sgn(i) != 0, "fourth_gen: i must be nonzero");
  ConditionReport r = make_report(
      ConditionId::FourthGen,
      {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"g", g}, {"h", h}, {"i", i}, {"k", k}});
  r.hypothesis_holds = divisible(k - b, i) && divisible(g, i);
  if (r.hypothesis_holds) {
    const Residues z(i, ArithConfig{});
    const Integer dividend = z.pow(a + k * c, d) - z.pow(a + b * c, d) + g * h;
    conclude(r, z.is_zero(dividend), i,
             "(" + s(a) + " + " + s(k) + "*" + s(c) + ")^" + s(d) + " - (" + s(a) + " + " + s(b) + "*" + s(c) +
                 ")^" + s(d) + " + " + s(g) + "*" + s(h));
  }
  return r;
}

bool particularizacion_hypothesis(const Natural& k, std::uint64_t n, std::uint64_t r, std::uint64_t s_exp) {
  const Natural p = (k << s_exp) + Natural(1);
  const Integer two_rs = 2 * as_int(r) * as_int(s_exp);
  const Natural lhs = pow_mod(k, Natural(2 * as_int(r)), p) + pow2_tower_shifted(n, two_rs, p);
  return (lhs % p).is_zero();
}

ConditionReport thm_particularizacion(const Natural& k, std::uint64_t n, std::uint64_t r_exp, std::uint64_t s_exp) {
  constexpr const char* who = "thm_particularizacion";
  require_positive(k, "k", who);
  require_positive(n, "n", who);
  require_positive(r_exp, "r", who);
  require_positive(s_exp, "s", who);
  Integer bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 2, n - 1);
  require(cmp(as_int(r_exp) * as_int(s_exp), bound) <= 0, "thm_particularizacion: r*s must be <= 2^(n-1)");

  ConditionReport rep = make_report(ConditionId::Particularizacion,
                                    {{"k", as_int(k)}, {"n", as_int(n)}, {"r", as_int(r_exp)}, {"s", as_int(s_exp)}});
  rep.hypothesis_holds = particularizacion_hypothesis(k, n, r_exp, s_exp);
  if (rep.hypothesis_holds) {
    const Natural p = (k << s_exp) + Natural(1);
    conclude(rep, fermat_mod(FermatIndex(n), p).is_zero(), p.value(), fermat_label(n));
  }
  return rep;
}

ConditionReport thm_particularizacion2(const Natural& l, std::uint64_t n, std::uint64_t r_exp, const Natural& s_mul,
                                       std::uint64_t t, const ArithConfig& cfg) {
  constexpr const char* who = "thm_particularizacion2";
  require_positive(l, "l", who);
  require_positive(n, "n", who);
  require_positive(r_exp, "r", who);
  require_positive(s_mul, "s", who);
  require_positive(t, "t", who);

  ConditionReport rep = make_report(
      ConditionId::Particularizacion2,
      {{"l", as_int(l)}, {"n", as_int(n)}, {"r", as_int(r_exp)}, {"s", as_int(s_mul)}, {"t", as_int(t)}});
  const Natural a = s_mul << t;
  const Natural divisor = a + Natural(1);
  const bool l_divides = (a % l).is_zero();

  // term1 = (a+1)*l^(2r), term2 = a^(2r); identity <=> term1 - term2 = 2^(2^n).
  const Integer two_r = 2 * as_int(r_exp);
  const Integer upper1 = bits(divisor.value()) + two_r * bits(l.value());
  const Integer lower2 = two_r * (bits(a.value()) - 1) + 1;
  const auto target_exp = pow2_u64(n);

  bool identity = false;
  if (!target_exp || cmp(upper1, Integer(std::to_string(*target_exp))) <= 0 || cmp(lower2, upper1) > 0) {
    identity = false;  // term1 < 2^(2^n), or term2 > term1
  } else {
    const Integer term1 = divisor.value() * exact_pow(l.value(), two_r, cfg);
    const Integer term2 = exact_pow(a.value(), two_r, cfg);
    std::uint64_t e = 0;
    identity = is_power_of_two(term1 - term2, e) && e == *target_exp;
  }
  rep.hypothesis_holds = identity && l_divides;
  if (rep.hypothesis_holds) conclude(rep, fermat_mod(FermatIndex(n), divisor).is_zero(), divisor.value(), fermat_label(n));
  return rep;
}

ConditionReport prop_baaz(std::uint64_t u, const Natural& v, std::uint64_t x) {
  constexpr const char* who = "prop_baaz";
  require_positive(u, "u", who);
  require_positive(v, "v", who);
  require_positive(x, "x", who);
  ConditionReport rep = make_report(ConditionId::PropBaaz, {{"u", as_int(u)}, {"v", as_int(v)}, {"x", as_int(x)}});
  rep.hypothesis_holds = true;
  const Natural d = (v << u) + Natural(1);
  const Integer two_x = 2 * as_int(x);
  const Natural shift = pow_mod(Natural(2), Natural(2 * as_int(u) * as_int(x)), d);
  const Natural vpow = pow_mod(v, Natural(two_x), d);
  // (d - v^(2x)) mod d == (d - vpow) mod d
  const Natural middle = (d - vpow) % d;
  const Natural dividend = (shift * middle + Natural(1)) % d;
  conclude(rep, dividend.is_zero(), d.value(),
           "2^(2*" + s(u) + "*" + s(x) + ")*(" + d.str() + " - " + v.str() + "^" + s(two_x) + ") + 1");
  return rep;
}

ConditionReport thm_baaz(std::uint64_t n, std::uint64_t u, const Natural& v, std::uint64_t x, const ArithConfig& cfg) {
  constexpr const char* who = "thm_baaz";
  require_positive(n, "n", who);
  require_positive(u, "u", who);
  require_positive(v, "v", who);
  require_positive(x, "x", who);
  ConditionReport rep =
      make_report(ConditionId::BaazTheorem, {{"n", as_int(n)}, {"u", as_int(u)}, {"v", as_int(v)}, {"x", as_int(x)}});
  const Natural d = (v << u) + Natural(1);
  const Integer two_x = 2 * as_int(x);
  // identity <=> d - v^(2x) = 2^(2^n - 2ux)
  bool identity = false;
  const Integer vpow_lower = two_x * (bits(v.value()) - 1) + 1;
  if (const auto target = pow2_u64(n); target && cmp(vpow_lower, bits(d.value())) <= 0) {
    const Integer q = d.value() - exact_pow(v.value(), two_x, cfg);
    std::uint64_t e = 0;
    if (is_power_of_two(q, e)) identity = cmp(Integer(std::to_string(e)) + 2 * as_int(u) * as_int(x),
                                              Integer(std::to_string(*target))) == 0;
  }
  rep.hypothesis_holds = identity;
  if (identity) conclude(rep, fermat_mod(FermatIndex(n), d).is_zero(), d.value(), fermat_label(n));
  return rep;
}

ConditionReport thm_particularizacion3(const Natural& i, std::uint64_t n) {
  require_positive(i, "i", "thm_particularizacion3");
  require(n > 4, "thm_particularizacion3: n must be > 4");
  ConditionReport rep = make_report(ConditionId::Particularizacion3, {{"i", as_int(i)}, {"n", as_int(n)}});
  const Natural lhs = (i << (n + 2)) + Natural(1);
  // h = 2^n - 4(n+2) > 0 for n > 4
  bool identity = false;
  if (n < 63) {
    const std::uint64_t h = (std::uint64_t{1} << n) - 4 * (n + 2);
    if (h < lhs.bit_length()) {
      const Natural rhs = Natural::pow2(h) + i * i * i * i;
      identity = rhs == lhs;
    }
  }
  rep.hypothesis_holds = identity;
  if (identity) conclude(rep, fermat_mod(FermatIndex(n), lhs).is_zero(), lhs.value(), fermat_label(n));
  return rep;
}

bool particularizacion4_hypothesis(const Natural& c, const Natural& i, std::uint64_t n) {
  if (i == Natural(1)) return true;
  const Natural half = tower2_mod(n - 1, i);
  const Natural ic = i * c % i;
  const Natural base = (half + i - ic) % i;
  return ((base * base + Natural(1)) % i).is_zero();
}

ConditionReport thm_particularizacion4(const Natural& c, const Natural& i, std::uint64_t n) {
  constexpr const char* who = "thm_particularizacion4";
  require_positive(c, "c", who);
  require_positive(i, "i", who);
  require_positive(n, "n", who);
  ConditionReport rep =
      make_report(ConditionId::Particularizacion4, {{"c", as_int(c)}, {"i", as_int(i)}, {"n", as_int(n)}});
  rep.hypothesis_holds = particularizacion4_hypothesis(c, i, n);
  if (rep.hypothesis_holds) {
    const bool holds = i == Natural(1) || fermat_mod(FermatIndex(n), i).is_zero();
    conclude(rep, holds, i.value(), fermat_label(n));
  }
  return rep;
}

ConditionReport prop_broda(const Natural& A, const Natural& B, const Natural& C, const Natural& D,
                           const ArithConfig& cfg) {
  require(B > Natural(1), "prop_broda: B must be > 1");
  ConditionReport rep = make_report(ConditionId::Broda, {{"A", A.value()}, {"B", B.value()}, {"C", C.value()}, {"D", D.value()}});
  const Natural p = (C + Natural(1)) * A + Natural(1);

  const bool d_divides = !D.is_zero() && (D == Natural(1) || pow_mod(B, A, D) == Natural(1));
  bool hyp = d_divides && arith::is_prime(p, cfg);
  if (hyp) {
    // (B^A - 1) mod (p*D) = D * ((B^A - 1)/D mod p)
    const Natural pd = p * D;
    const Natural numer = (pow_mod(B, A, pd) + pd - Natural(1)) % pd;
    const Natural quotient_mod_p = numer / D;
    const Natural series = arith::geom_sum_mod(pow_mod(B, A, p), C + Natural(1), p);
    hyp = !(B * quotient_mod_p % p * series % p).is_zero();
  }
  rep.hypothesis_holds = hyp;
  if (hyp) conclude(rep, (D % p).is_zero(), p.value(), D.str());
  return rep;
}

bool predicate_A(const Natural& m, std::uint64_t n, const ArithConfig& cfg) {
  const Natural p = proth_candidate(m, n);
  if (!arith::is_prime(p, cfg)) return false;
  // (2^(m*2^(n+2)) - 1)/(2^(2^(n+2)) - 1) = sum_{k<m} x^k, x = 2^(2^(n+2))
  const Natural x = tower2_mod(n + 2, p);
  return !arith::geom_sum_mod(x, m, p).is_zero();
}

bool predicate_B(const Natural& m, std::uint64_t n, const ArithConfig& cfg) {
  const Natural p = proth_candidate(m, n);
  if (!arith::is_prime(p, cfg)) return false;
  // With x = 2^(2^n): (x^(4m) - 1)/(x + 1) = (x - 1) * sum_{k<2m} x^(2k)
  const Natural x = tower2_mod(n, p);
  const Natural series = arith::geom_sum_mod(x * x % p, Natural(2) * m, p);
  const Natural x_minus_1 = (x + p - Natural(1)) % p;
  return !(x_minus_1 * series % p).is_zero();
}

ConditionReport thm_particularizacion5(const Natural& m, std::uint64_t n, const ArithConfig& cfg) {
  require_positive(m, "m", "thm_particularizacion5");
  require_positive(n, "n", "thm_particularizacion5");
  ConditionReport rep = make_report(ConditionId::Particularizacion5, {{"m", m.value()}, {"n", as_int(n)}});
  rep.hypothesis_holds = predicate_B(m, n, cfg);
  if (rep.hypothesis_holds) {
    const Natural p = proth_candidate(m, n);
    conclude(rep, fermat_mod(FermatIndex(n), p).is_zero(), p.value(), fermat_label(n));
  }
  return rep;
}

ConditionReport thm_product_version(const Natural& m, std::uint64_t n, const ArithConfig& cfg) {
  require_positive(m, "m", "thm_product_version");
  require_positive(n, "n", "thm_product_version");
  ConditionReport rep = make_report(ConditionId::ProductVersion, {{"m", m.value()}, {"n", as_int(n)}});
  rep.hypothesis_holds = predicate_A(m, n, cfg);
  if (rep.hypothesis_holds) {
    const Natural p = proth_candidate(m, n);
    conclude(rep, arith::fermat_product_mod(FermatIndex(n + 1), p).is_zero(), p.value(),
             "F_0*F_1*...*F_" + s(n + 1) + " = 2^(2^" + s(n + 2) + ") - 1");
  }
  return rep;
}

}  // namespace fermatseq::conditions
