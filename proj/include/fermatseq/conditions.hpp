#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fermatseq/arith.hpp"
#include "fermatseq/natural.hpp"

/// Executable divisibility conditions.
///
/// Each function evaluates the hypothesis of one implication and, when it
/// holds, independently evaluates the conclusion. A report whose hypothesis
/// holds but whose conclusion fails is a soundness violation: it means a bug,
/// never a legitimate data state.
namespace fermatseq::conditions {

enum class ConditionId {
  ZeroGen,
  FirstGen,
  Particularizacion,
  SecondGen,
  CommonPart,
  Particularizacion2,
  PropBaaz,
  BaazTheorem,
  ThirdGen,
  CommonPart2,
  Particularizacion3,
  FourthGen,
  Particularizacion4,
  Broda,
  Particularizacion5,
  ProductVersion,
};

/// CLI spelling, e.g. "first-gen".
std::string_view to_string(ConditionId id);
std::optional<ConditionId> parse_condition_id(std::string_view name);
const std::vector<ConditionId>& all_condition_ids();

struct Binding {
  std::string name;
  Integer value;
};

/// divisor | dividend, with the dividend described symbolically.
struct Witness {
  Integer divisor;
  std::string dividend;
};

struct ConditionReport {
  ConditionId id{};
  std::vector<Binding> inputs;
  bool hypothesis_holds = false;
  bool conclusion_checked = false;
  bool conclusion_holds = false;
  std::optional<Witness> witness;

  /// hypothesis => conclusion
  [[nodiscard]] bool sound() const { return !hypothesis_holds || (conclusion_checked && conclusion_holds); }
};

using arith::ArithConfig;

// Propositions over Z. Divisibility by zero means the dividend is zero.

/// A != 0, A | D + B, A | D*C - E  =>  A | B*C + E
ConditionReport zero_gen(const Integer& A, const Integer& B, const Integer& C, const Integer& D,
                         const Integer& E);

/// r > 0, k*l + m | k^(2r) + q  =>  k*l + m | q*l^(2r) + m^(2r)
ConditionReport first_gen(const Integer& k, const Integer& l, const Integer& m, const Integer& q,
                          const Integer& r, const ArithConfig& cfg = {});

/// d > 0, b - c != 0, b - c != g, (b - c - g) | g*b^d  =>  b - c | g*b^d/(b-c-g) + c^d.
/// Throws DomainError when the quotient is not an integer.
ConditionReport second_gen(const Integer& b, const Integer& c, const Integer& d, const Integer& g,
                           const ArithConfig& cfg = {});

/// r > 0 != k  =>  k*l + m | (k*l + m - k^(2r))*l^(2r) + m^(2r)
ConditionReport common_part(const Integer& k, const Integer& l, const Integer& m, const Integer& r,
                            const ArithConfig& cfg = {});

/// f, h > 0, a^h + i^4 != 0  =>  a^h + i^4 | a^(h+4f) + (a^h - i*a^f + i^4)^4
ConditionReport third_gen(const Integer& a, const Integer& f, const Integer& h, const Integer& i,
                          const ArithConfig& cfg = {});

/// third_gen with the extra requirement i != 0.
ConditionReport common_part2(const Integer& a, const Integer& f, const Integer& h, const Integer& i,
                             const ArithConfig& cfg = {});

/// d > 0, i != 0; i | k - b and i | g  =>  i | (a + k*c)^d - (a + b*c)^d + g*h
ConditionReport fourth_gen(const Integer& a, const Integer& b, const Integer& c, const Integer& d,
                           const Integer& g, const Integer& h, const Integer& i, const Integer& k);

// Theorems over N+. Non-positive inputs raise PreconditionError.

/// r*s <= 2^(n-1); k*2^s + 1 | k^(2r) + 2^(2^n - 2rs)  =>  k*2^s + 1 | F_n
ConditionReport thm_particularizacion(const Natural& k, std::uint64_t n, std::uint64_t r, std::uint64_t s);

/// Hypothesis of thm_particularizacion alone (no report, no conclusion).
bool particularizacion_hypothesis(const Natural& k, std::uint64_t n, std::uint64_t r, std::uint64_t s);

/// (s*2^t + 1)*l^(2r) - (s*2^t)^(2r) + 1 = F_n and l | s*2^t  =>  s*2^t + 1 | F_n
ConditionReport thm_particularizacion2(const Natural& l, std::uint64_t n, std::uint64_t r, const Natural& s,
                                       std::uint64_t t, const ArithConfig& cfg = {});

/// Unconditional: v*2^u + 1 | 2^(2ux) * (v*2^u + 1 - v^(2x)) + 1
ConditionReport prop_baaz(std::uint64_t u, const Natural& v, std::uint64_t x);

/// 2^(2ux) * (v*2^u + 1 - v^(2x)) + 1 = F_n  =>  v*2^u + 1 | F_n
ConditionReport thm_baaz(std::uint64_t n, std::uint64_t u, const Natural& v, std::uint64_t x,
                         const ArithConfig& cfg = {});

/// n > 4; i*2^(n+2) + 1 = 2^(2^n - 4(n+2)) + i^4  =>  2^(2^n - 4(n+2)) + i^4 | F_n
ConditionReport thm_particularizacion3(const Natural& i, std::uint64_t n);

/// i | (2^(2^(n-1)) - i*c)^2 + 1  =>  i | F_n
ConditionReport thm_particularizacion4(const Natural& c, const Natural& i, std::uint64_t n);

/// Hypothesis of thm_particularizacion4 alone.
bool particularizacion4_hypothesis(const Natural& c, const Natural& i, std::uint64_t n);

/// B > 1; D | B^A - 1; p = (C+1)*A + 1 prime; p does not divide
/// B * ((B^A - 1)/D) * sum_{k=0}^{C} (B^A)^k  =>  p | D
ConditionReport prop_broda(const Natural& A, const Natural& B, const Natural& C, const Natural& D,
                           const ArithConfig& cfg = {});

/// p = m*2^(n+2) + 1 is prime and p does not divide (2^(m*2^(n+2)) - 1) / (2^(2^(n+2)) - 1).
bool predicate_A(const Natural& m, std::uint64_t n, const ArithConfig& cfg = {});

/// p = m*2^(n+2) + 1 is prime and p does not divide (2^(m*2^(n+2)) - 1) / (2^(2^n) + 1).
bool predicate_B(const Natural& m, std::uint64_t n, const ArithConfig& cfg = {});

/// predicate_B(m, n)  =>  m*2^(n+2) + 1 | F_n
ConditionReport thm_particularizacion5(const Natural& m, std::uint64_t n, const ArithConfig& cfg = {});

/// predicate_A(m, n)  =>  m*2^(n+2) + 1 | F_0 * ... * F_(n+1)
ConditionReport thm_product_version(const Natural& m, std::uint64_t n, const ArithConfig& cfg = {});

/// m*2^(n+2) + 1
Natural proth_candidate(const Natural& m, std::uint64_t n);

}  // namespace fermatseq::conditions
