#pragma once

#include <stdexcept>
#include <string>

namespace fermatseq {

/// Argument outside the mathematical domain of an operation (e.g. modulus < 2,
/// non-integral quotient).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A stated hypothesis-independent precondition was violated (e.g. r <= 0).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value would have to be materialized beyond the configured size bound.
class MaterializationError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Sequence term outside T (s_n >= 2^(n+1)).
class MembershipError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Generator family has no closed form.
class UnsupportedFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fermatseq
