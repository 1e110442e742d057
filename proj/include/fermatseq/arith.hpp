#pragma once

#include <cstdint>

#include "fermatseq/natural.hpp"

namespace fermatseq::arith {

inline constexpr std::uint64_t kDefaultSeed = 271828;
inline constexpr unsigned kDefaultWitnesses = 40;
inline constexpr std::uint64_t kDefaultMaterializationBound = 20;

/// Miller-Rabin with the first 13 prime bases is exact below this value
/// (Sorenson & Webster, psi_13).
inline constexpr const char* kDeterministicPrimalityLimit = "3317044064679887385961981";

/// Knobs shared by every arithmetic routine. Plain configuration; no state.
struct ArithConfig {
  std::uint64_t seed = kDefaultSeed;
  unsigned witnesses = kDefaultWitnesses;
  /// F_n is materialized only for n <= this bound. Exact intermediate values
  /// are likewise capped at 2^bound + 64 bits.
  std::uint64_t materialization_bound = kDefaultMaterializationBound;

  [[nodiscard]] std::uint64_t exact_bit_limit() const {
    return materialization_bound >= 62 ? UINT64_MAX : (std::uint64_t{1} << materialization_bound) + 64;
  }
};

/// base^exp mod modulus by left-to-right square-and-multiply.
/// Throws DomainError when modulus < 2.
Natural pow_mod(const Natural& base, const Natural& exp, const Natural& modulus);

/// 2^(2^n) mod m via n successive squarings of 2. Throws DomainError when m < 2.
Natural tower2_mod(std::uint64_t n, const Natural& m);

/// F_n mod m, never materializing F_n. Throws DomainError when m < 2.
Natural fermat_mod(FermatIndex n, const Natural& m);

/// The full value of F_n. Throws MaterializationError above the configured bound.
Natural fermat_number(FermatIndex n, const ArithConfig& cfg = {});

/// (F_0 * F_1 * ... * F_n) mod m, evaluated as 2^(2^(n+1)) - 1 mod m.
Natural fermat_product_mod(FermatIndex n, const Natural& m);

/// (1 + x + ... + x^(count-1)) mod m without dividing by x - 1.
///
/// Walks the bits of count from the top, maintaining S(c) and x^c:
///   S(2c)   = S(c) * (1 + x^c)
///   S(c+1)  = S(c) + x^c
/// so the result is exact for every x, including x = 1 (mod m) and
/// gcd(x - 1, m) > 1. Throws DomainError when m < 2.
Natural geom_sum_mod(const Natural& x, const Natural& count, const Natural& m);

/// Primality. Exact below kDeterministicPrimalityLimit; above it a Miller-Rabin
/// run with cfg.witnesses pseudo-random bases drawn from cfg.seed, so a
/// composite is reported prime with probability at most 4^-witnesses and the
/// verdict is a pure function of (p, cfg).
bool is_prime(const Natural& p, const ArithConfig& cfg = {});

}  // namespace fermatseq::arith
