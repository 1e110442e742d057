#include "fermatseq/natural.hpp"

#include <limits>

#include "fermatseq/errors.hpp"

namespace fermatseq {

namespace {

void require_non_negative(const Integer& v) {
  if (sgn(v) < 0) throw DomainError("Natural: negative value " + v.get_str());
}

}  // namespace

Natural::Natural(std::uint64_t v) {
  mpz_import(v_.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
}

Natural::Natural(const Integer& v) : v_(v) { require_non_negative(v_); }

Natural::Natural(Integer&& v) : v_(std::move(v)) { require_non_negative(v_); }

Natural Natural::parse(std::string_view digits) {
  if (digits.empty()) throw DomainError("Natural: empty literal");
  for (char c : digits) {
    if (c < '0' || c > '9') throw DomainError("Natural: not a decimal literal: " + std::string(digits));
  }
  return Natural(Integer(std::string(digits), 10));
}

Natural Natural::pow2(std::uint64_t exponent) {
  Natural r;
  mpz_setbit(r.v_.get_mpz_t(), exponent);
  return r;
}

bool Natural::fits_u64() const noexcept { return bit_length() <= 64; }

std::uint64_t Natural::to_u64() const {
  if (!fits_u64()) throw DomainError("Natural: value does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof out, 0, 0, v_.get_mpz_t());
  return out;
}

std::size_t Natural::bit_length() const noexcept {
  return is_zero() ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
}

Natural& Natural::operator+=(const Natural& o) {
  v_ += o.v_;
  return *this;
}

Natural& Natural::operator-=(const Natural& o) {
  if (cmp(v_, o.v_) < 0) throw DomainError("Natural: subtraction would be negative");
  v_ -= o.v_;
  return *this;
}

Natural& Natural::operator*=(const Natural& o) {
  v_ *= o.v_;
  return *this;
}

Natural& Natural::operator/=(const Natural& o) {
  if (o.is_zero()) throw DomainError("Natural: division by zero");
  mpz_fdiv_q(v_.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
  return *this;
}

Natural& Natural::operator%=(const Natural& o) {
  if (o.is_zero()) throw DomainError("Natural: modulo by zero");
  mpz_fdiv_r(v_.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
  return *this;
}

Natural& Natural::operator<<=(std::size_t bits) {
  mpz_mul_2exp(v_.get_mpz_t(), v_.get_mpz_t(), bits);
  return *this;
}

}  // namespace fermatseq
