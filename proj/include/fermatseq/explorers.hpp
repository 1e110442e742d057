#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fermatseq/arith.hpp"
#include "fermatseq/natural.hpp"

/// Search harnesses over the Fermat-divisor predicates. All results are
/// sorted, duplicate-free and independent of the worker count.
namespace fermatseq::explore {

struct SearchResult {
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Natural> hits;
  std::chrono::milliseconds runtime{0};
  bool bound_reached = false;
};

struct ExploreConfig {
  arith::ArithConfig arith;
  unsigned workers = 1;
};

/// r = round(2^(n-1) / (n+3)), half away from zero.
std::uint64_t candidate_exponent_r(std::uint64_t n);

/// { k in [lo, hi] : k*2^(n+2) + 1 | k^(2r) + 2^(2^n - 2r(n+2)) } with r from
/// candidate_exponent_r. DomainError when 2^n - 2r(n+2) < 0 or n > 62.
SearchResult search_divisor_candidates(std::uint64_t n, const Natural& lo, const Natural& hi,
                                       const ExploreConfig& cfg = {});

enum class Predicate { A, B };

/// { n in [1, r] : exists k in [0, n-1] with pred(k+1, n-k) }.
SearchResult antidiagonal_scan(Predicate pred, std::uint64_t r, const ExploreConfig& cfg = {});

struct MinMOptions {
  std::size_t count_ceiling = 14;
  std::uint64_t search_cap = 10'000;
};

/// Term n = least m <= cap with predicate_A(m, n+1); nullopt marks "unknown
/// beyond cap". PreconditionError when count exceeds the ceiling.
std::vector<std::optional<Natural>> min_m_sequence(std::size_t count, const MinMOptions& opts = {},
                                                   const ExploreConfig& cfg = {});

enum class StreakKind { Diagonal, Doubling };

/// Longest s <= max_len with A(m0 + j, n0 - j) = 1 (diagonal) or
/// A(2^j * m0, n0 - j) = 1 (doubling) for all j <= s. Second arguments below
/// 1 end the streak. nullopt when A(m0, n0) = 0 already.
std::optional<std::uint64_t> streak_probe(const Natural& m0, std::uint64_t n0, std::uint64_t max_len,
                                          StreakKind kind = StreakKind::Diagonal, const ExploreConfig& cfg = {});

}  // namespace fermatseq::explore
