#include "fermatseq/explorers.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "fermatseq/conditions.hpp"
#include "fermatseq/errors.hpp"

namespace fermatseq::explore {

namespace {

using Clock = std::chrono::steady_clock;

// Runs keep(i) for i in [0, count) split into contiguous chunks, one per worker,
// and returns the kept indices in ascending order.
template <typename Keep>
std::vector<std::uint64_t> partitioned_filter(std::uint64_t count, unsigned workers, Keep keep) {
  workers = std::max(1U, workers);
  if (count < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(1, count));
  std::vector<std::vector<std::uint64_t>> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run = [&](unsigned w) {
    const auto begin = static_cast<std::uint64_t>(static_cast<unsigned __int128>(count) * w / workers);
    const auto end = static_cast<std::uint64_t>(static_cast<unsigned __int128>(count) * (w + 1) / workers);
    try {
      for (std::uint64_t i = begin; i < end; ++i) {
        if (keep(i)) parts[w].push_back(i);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<std::uint64_t> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

bool evaluate(Predicate pred, const Natural& m, std::uint64_t n, const arith::ArithConfig& cfg) {
  return pred == Predicate::A ? conditions::predicate_A(m, n, cfg) : conditions::predicate_B(m, n, cfg);
}

std::chrono::milliseconds elapsed_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0);
}

}  // namespace

std::uint64_t candidate_exponent_r(std::uint64_t n) {
  if (n == 0 || n > 62) throw DomainError("candidate_exponent_r: n must be in [1, 62]");
  // round(2^(n-1)/(n+3)) = floor((2^n + n + 3) / (2n + 6))
  return ((std::uint64_t{1} << n) + n + 3) / (2 * n + 6);
}

SearchResult search_divisor_candidates(std::uint64_t n, const Natural& lo, const Natural& hi,
                                       const ExploreConfig& cfg) {
  const auto t0 = Clock::now();
  if (lo.is_zero()) throw PreconditionError("search_divisor_candidates: lo must be positive");
  if (hi < lo) throw PreconditionError("search_divisor_candidates: lo must be <= hi");
  const std::uint64_t r = candidate_exponent_r(n);
  const std::uint64_t b = std::uint64_t{1} << n;
  if (2 * r * (n + 2) > b) {
    throw DomainError("search_divisor_candidates: 2^n - 2r(n+2) is negative for n = " + std::to_string(n));
  }
  const Natural q_exp(b - 2 * r * (n + 2));
  const Natural two_r(2 * r);
  const Natural span = hi - lo + Natural(1);
  if (!span.fits_u64()) throw DomainError("search_divisor_candidates: range too large");

  const auto kept = partitioned_filter(span.to_u64(), cfg.workers, [&](std::uint64_t i) {
    const Natural k = lo + Natural(i);
    const Natural p = (k << (n + 2)) + Natural(1);
    return ((arith::pow_mod(k, two_r, p) + arith::pow_mod(Natural(2), q_exp, p)) % p).is_zero();
  });

  SearchResult res;
  res.parameters = {{"n", std::to_string(n)}, {"lo", lo.str()}, {"hi", hi.str()}, {"r", std::to_string(r)}};
  for (auto i : kept) res.hits.push_back(lo + Natural(i));
  res.runtime = elapsed_since(t0);
  return res;
}

SearchResult antidiagonal_scan(Predicate pred, std::uint64_t r, const ExploreConfig& cfg) {
  const auto t0 = Clock::now();
  const auto kept = partitioned_filter(r, cfg.workers, [&](std::uint64_t i) {
    const std::uint64_t n = i + 1;
    for (std::uint64_t k = 0; k < n; ++k) {
      if (evaluate(pred, Natural(k + 1), n - k, cfg.arith)) return true;
    }
    return false;
  });
  SearchResult res;
  res.parameters = {{"pred", pred == Predicate::A ? "A" : "B"}, {"r", std::to_string(r)}};
  for (auto i : kept) res.hits.emplace_back(i + 1);
  res.runtime = elapsed_since(t0);
  return res;
}

std::vector<std::optional<Natural>> min_m_sequence(std::size_t count, const MinMOptions& opts,
                                                   const ExploreConfig& cfg) {
  if (count > opts.count_ceiling) {
    throw PreconditionError("min_m_sequence: count " + std::to_string(count) + " exceeds ceiling " +
                            std::to_string(opts.count_ceiling));
  }
  std::vector<std::optional<Natural>> terms(count);
  std::vector<std::exception_ptr> errors(count);
  auto compute = [&](std::size_t idx) {
    try {
      for (std::uint64_t m = 1; m <= opts.search_cap; ++m) {
        if (conditions::predicate_A(Natural(m), idx + 1, cfg.arith)) {
          terms[idx] = Natural(m);
          return;
        }
      }
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  };
  const unsigned workers = std::max(1U, cfg.workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) compute(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += workers) compute(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return terms;
}

std::optional<std::uint64_t> streak_probe(const Natural& m0, std::uint64_t n0, std::uint64_t max_len,
                                          StreakKind kind, const ExploreConfig& cfg) {
  auto point = [&](std::uint64_t j) {
    const Natural m = kind == StreakKind::Diagonal ? m0 + Natural(j) : m0 << j;
    return conditions::predicate_A(m, n0 - j, cfg.arith);
  };
  if (n0 < 1 || !point(0)) return std::nullopt;
  std::uint64_t s = 0;
  while (s < max_len && s + 1 < n0 && point(s + 1)) ++s;
  return s;
}

}  // namespace fermatseq::explore
