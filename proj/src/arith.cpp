#include "fermatseq/arith.hpp"

#include <array>
#include <string>

#include "fermatseq/errors.hpp"

namespace fermatseq::arith {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void require_modulus(const Natural& m, const char* who) {
  if (m < Natural(2)) throw DomainError(std::string(who) + ": modulus must be >= 2, got " + m.str());
}

u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod64(u64 base, const Natural& exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  for (std::size_t i = exp.bit_length(); i-- > 0;) {
    result = mulmod64(result, result, m);
    if (exp.test_bit(i)) result = mulmod64(result, base, m);
  }
  return result;
}

Integer pow_mod_big(const Integer& base, const Natural& exp, const Integer& m) {
  Integer b = base % m;
  Integer result = 1;
  for (std::size_t i = exp.bit_length(); i-- > 0;) {
    result *= result;
    result %= m;
    if (exp.test_bit(i)) {
      result *= b;
      result %= m;
    }
  }
  return result;
}

// One strong-probable-prime round: n - 1 = d * 2^s with d odd.
bool strong_probable_prime(const Natural& n, const Natural& d, std::uint64_t s, const Natural& base) {
  const Natural n_minus_1 = n - Natural(1);
  Natural x = pow_mod(base % n, d, n);
  if (x == Natural(1) || x == n_minus_1) return true;
  for (std::uint64_t r = 1; r < s; ++r) {
    x = Natural(x.value() * x.value() % n.value());
    if (x == n_minus_1) return true;
    if (x == Natural(1)) return false;
  }
  return false;
}

constexpr std::array<unsigned, 13> kPrimeBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
constexpr std::array<unsigned, 25> kSmallPrimes{2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                                43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

}  // namespace

Natural pow_mod(const Natural& base, const Natural& exp, const Natural& modulus) {
  require_modulus(modulus, "pow_mod");
  if (modulus.fits_u64()) {
    const u64 m = modulus.to_u64();
    const u64 b = (base % modulus).to_u64();
    return Natural(pow_mod64(b, exp, m));
  }
  return Natural(pow_mod_big(base.value(), exp, modulus.value()));
}

Natural tower2_mod(std::uint64_t n, const Natural& m) {
  require_modulus(m, "tower2_mod");
  if (m.fits_u64()) {
    const u64 mod = m.to_u64();
    u64 x = 2 % mod;
    for (std::uint64_t i = 0; i < n; ++i) x = mulmod64(x, x, mod);
    return Natural(x);
  }
  Integer x = 2;
  for (std::uint64_t i = 0; i < n; ++i) {
    x *= x;
    x %= m.value();
  }
  return Natural(std::move(x));
}

Natural fermat_mod(FermatIndex n, const Natural& m) {
  require_modulus(m, "fermat_mod");
  return (tower2_mod(n.n, m) + Natural(1)) % m;
}

Natural fermat_number(FermatIndex n, const ArithConfig& cfg) {
  if (n.n > cfg.materialization_bound) {
    throw MaterializationError("F_" + std::to_string(n.n) + " exceeds materialization bound n <= " +
                               std::to_string(cfg.materialization_bound));
  }
  return Natural::pow2(std::uint64_t{1} << n.n) + Natural(1);
}

Natural fermat_product_mod(FermatIndex n, const Natural& m) {
  require_modulus(m, "fermat_product_mod");
  // prod_{k<=n} F_k = F_{n+1} - 2 = 2^(2^(n+1)) - 1
  return (tower2_mod(n.n + 1, m) + m - Natural(1)) % m;
}

Natural geom_sum_mod(const Natural& x, const Natural& count, const Natural& m) {
  require_modulus(m, "geom_sum_mod");
  const Natural xr = x % m;
  Natural sum(0);    // S(c)
  Natural power(1);  // x^c
  for (std::size_t i = count.bit_length(); i-- > 0;) {
    sum = sum * (Natural(1) + power) % m;
    power = power * power % m;
    if (count.test_bit(i)) {
      sum = (sum + power) % m;
      power = power * xr % m;
    }
  }
  return sum;
}

bool is_prime(const Natural& p, const ArithConfig& cfg) {
  if (p < Natural(2)) return false;
  for (unsigned q : kSmallPrimes) {
    if (p == Natural(q)) return true;
    if ((p % Natural(q)).is_zero()) return false;
  }
  if (p < Natural(97 * 97)) return true;

  const Natural p_minus_1 = p - Natural(1);
  Natural d = p_minus_1;
  std::uint64_t s = 0;
  while (!d.is_odd()) {
    d /= Natural(2);
    ++s;
  }

  static const Natural kDeterministic = Natural::parse(kDeterministicPrimalityLimit);
  if (p < kDeterministic) {
    // {2,3,5,7} already suffices below 3215031751.
    const std::size_t bases = p < Natural(3215031751ULL) ? 4 : kPrimeBases.size();
    for (std::size_t i = 0; i < bases; ++i) {
      if (!strong_probable_prime(p, d, s, Natural(kPrimeBases[i]))) return false;
    }
    return true;
  }

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(Integer(std::to_string(cfg.seed)));
  const Integer span = p.value() - 3;  // bases in [2, p-2]
  for (unsigned w = 0; w < cfg.witnesses; ++w) {
    const Natural base(Integer(rng.get_z_range(span) + 2));
    if (!strong_probable_prime(p, d, s, base)) return false;
  }
  return true;
}

}  // namespace fermatseq::arith
