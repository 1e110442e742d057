#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace fermatseq {

/// Signed arbitrary-precision integer, used by the propositions stated over Z.
using Integer = mpz_class;

/// Arbitrary-precision non-negative integer.
///
/// Subtraction requires a >= b and throws DomainError otherwise; every other
/// arithmetic operation is closed. Values are immutable from the outside and
/// safe to share across threads.
class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v);  // NOLINT(google-explicit-constructor)
  explicit Natural(const Integer& v);
  explicit Natural(Integer&& v);

  static Natural parse(std::string_view digits);
  static Natural pow2(std::uint64_t exponent);

  [[nodiscard]] const Integer& value() const noexcept { return v_; }
  [[nodiscard]] std::string str() const { return v_.get_str(); }

  [[nodiscard]] bool is_zero() const noexcept { return sgn(v_) == 0; }
  [[nodiscard]] bool is_odd() const noexcept { return mpz_odd_p(v_.get_mpz_t()) != 0; }
  [[nodiscard]] bool fits_u64() const noexcept;
  [[nodiscard]] std::uint64_t to_u64() const;
  [[nodiscard]] std::size_t bit_length() const noexcept;
  [[nodiscard]] bool test_bit(std::size_t i) const noexcept {
    return mpz_tstbit(v_.get_mpz_t(), i) != 0;
  }

  Natural& operator+=(const Natural& o);
  Natural& operator-=(const Natural& o);
  Natural& operator*=(const Natural& o);
  Natural& operator/=(const Natural& o);
  Natural& operator%=(const Natural& o);
  Natural& operator<<=(std::size_t bits);

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
  friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
  friend Natural operator%(Natural a, const Natural& b) { return a %= b; }
  friend Natural operator<<(Natural a, std::size_t bits) { return a <<= bits; }

  friend bool operator==(const Natural& a, const Natural& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Natural& n) { return os << n.v_; }

 private:
  Integer v_;
};

/// Exponent index n of F_n = 2^(2^n) + 1. Never implies materialization.
struct FermatIndex {
  std::uint64_t n = 0;
  constexpr explicit FermatIndex(std::uint64_t idx) : n(idx) {}
};

}  // namespace fermatseq
