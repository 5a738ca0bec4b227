#include "ps4/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ps4/error.hpp"
#include "ps4/parallel.hpp"

namespace ps4 {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

std::vector<std::uint32_t> small_primes(std::uint64_t bound) {
  std::vector<char> composite(bound + 1, 0);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = 1;
  }
  return out;
}

std::uint64_t estimate_bytes(std::uint64_t limit, bool with_spf,
                             std::uint64_t segment_length) {
  double l = static_cast<double>(std::max<std::uint64_t>(limit, 3));
  double prime_count = 1.26 * l / std::log(l);  // Rosser-Schoenfeld upper bound
  double bytes = prime_count * (sizeof(std::uint32_t) + sizeof(double));
  if (with_spf) bytes += static_cast<double>(limit + 1) * sizeof(std::uint32_t);
  bytes += static_cast<double>(segment_length);
  return static_cast<std::uint64_t>(bytes);
}

void check_limit(std::uint64_t limit, const SieveOptions& options) {
  if (limit < 2) throw DomainError("sieve limit must be at least 2");
  if (limit > kMaxSieveLimit)
    throw DomainError("sieve limit exceeds 2^32");
  if (options.segment_length == 0)
    throw DomainError("segment length must be positive");
  bool with_spf = limit <= kMaxSpfLimit;
  if (estimate_bytes(limit, with_spf, options.segment_length) >
      options.memory_budget_bytes)
    throw DomainError("sieve limit " + std::to_string(limit) +
                      " exceeds the memory budget");
}

// Marks spf for [lo, hi) using base primes in ascending order; returns the
// primes found in the segment (cells left unmarked).
std::vector<std::uint32_t> spf_segment(std::vector<std::uint32_t>& spf,
                                       std::uint64_t lo, std::uint64_t hi,
                                       std::span<const std::uint32_t> base) {
  for (std::uint32_t p : base) {
    std::uint64_t pp = std::uint64_t{p} * p;
    if (pp >= hi) break;
    std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
    for (std::uint64_t m = start; m < hi; m += p)
      if (spf[m] == 0) spf[m] = p;
  }
  std::vector<std::uint32_t> found;
  for (std::uint64_t m = std::max<std::uint64_t>(lo, 2); m < hi; ++m) {
    if (spf[m] == 0) {
      spf[m] = static_cast<std::uint32_t>(m);
      found.push_back(static_cast<std::uint32_t>(m));
    }
  }
  return found;
}

std::vector<std::uint32_t> plain_segment(std::uint64_t lo, std::uint64_t hi,
                                         std::span<const std::uint32_t> base) {
  std::vector<char> composite(hi - lo, 0);
  for (std::uint32_t p : base) {
    std::uint64_t pp = std::uint64_t{p} * p;
    if (pp >= hi) break;
    std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
    for (std::uint64_t m = start; m < hi; m += p) composite[m - lo] = 1;
  }
  std::vector<std::uint32_t> found;
  for (std::uint64_t m = std::max<std::uint64_t>(lo, 2); m < hi; ++m)
    if (!composite[m - lo]) found.push_back(static_cast<std::uint32_t>(m));
  return found;
}

}  // namespace

PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options) {
  check_limit(limit, options);
  PrimeTable t;
  t.limit_ = limit;
  const bool with_spf = limit <= kMaxSpfLimit;
  const auto base = small_primes(isqrt(limit));
  if (with_spf) t.spf_.assign(limit + 1, 0);

  const std::uint64_t seg = options.segment_length;
  const std::uint64_t n_segments = (limit + 1 + seg - 1) / seg;
  std::vector<std::vector<std::uint32_t>> found(n_segments);
  parallel_for_blocks(n_segments, [&](std::size_t s) {
    std::uint64_t lo = s * seg;
    std::uint64_t hi = std::min(limit + 1, lo + seg);
    found[s] = with_spf ? spf_segment(t.spf_, lo, hi, base)
                        : plain_segment(lo, hi, base);
  });
  std::size_t total = 0;
  for (const auto& f : found) total += f.size();
  t.primes_.reserve(total);
  for (auto& f : found) t.primes_.insert(t.primes_.end(), f.begin(), f.end());
  t.logp_.resize(t.primes_.size());
  for (std::size_t i = 0; i < t.primes_.size(); ++i)
    t.logp_[i] = std::log(static_cast<double>(t.primes_[i]));
  return t;
}

PrimeTable PrimeTable::from_primes(std::uint64_t limit,
                                   std::vector<std::uint32_t> primes,
                                   const SieveOptions& options) {
  check_limit(limit, options);
  if (!std::is_sorted(primes.begin(), primes.end()) ||
      (!primes.empty() && primes.back() > limit))
    throw DomainError("prime list is not an ascending list within the limit");
  PrimeTable t;
  t.limit_ = limit;
  t.primes_ = std::move(primes);
  t.logp_.resize(t.primes_.size());
  for (std::size_t i = 0; i < t.primes_.size(); ++i)
    t.logp_[i] = std::log(static_cast<double>(t.primes_[i]));
  if (limit <= kMaxSpfLimit) {
    t.spf_.assign(limit + 1, 0);
    auto root = isqrt(limit);
    auto end = std::upper_bound(t.primes_.begin(), t.primes_.end(), root);
    std::span<const std::uint32_t> base(t.primes_.data(),
                                        static_cast<std::size_t>(end - t.primes_.begin()));
    const std::uint64_t seg = options.segment_length;
    const std::uint64_t n_segments = (limit + 1 + seg - 1) / seg;
    parallel_for_blocks(n_segments, [&](std::size_t s) {
      std::uint64_t lo = s * seg;
      spf_segment(t.spf_, lo, std::min(limit + 1, lo + seg), base);
    });
  }
  return t;
}

std::uint32_t PrimeTable::spf(std::uint64_t n) const {
  if (!has_spf()) throw DomainError("table has no smallest-prime-factor index");
  if (n < 2 || n > limit_) throw DomainError("spf argument out of range");
  return spf_[n];
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw DomainError("primality query beyond table limit");
  if (n < 2) return false;
  if (has_spf()) return spf_[n] == n;
  return std::binary_search(primes_.begin(), primes_.end(),
                            static_cast<std::uint32_t>(n));
}

std::size_t PrimeTable::upper_index(double x) const {
  if (x < 2) return 0;
  if (x >= static_cast<double>(limit_)) return primes_.size();
  auto k = static_cast<std::uint32_t>(std::floor(x));
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), k) - primes_.begin());
}

std::span<const std::uint32_t> PrimeTable::primes_in(double lo, double hi) const {
  std::size_t a = upper_index(lo), b = upper_index(hi);
  if (b < a) b = a;
  return std::span<const std::uint32_t>(primes_).subspan(a, b - a);
}

std::span<const double> PrimeTable::logp_in(double lo, double hi) const {
  std::size_t a = upper_index(lo), b = upper_index(hi);
  if (b < a) b = a;
  return std::span<const double>(logp_).subspan(a, b - a);
}

Factorization factorize(std::uint64_t n, const PrimeTable& table) {
  const std::uint64_t lim = table.limit();
  if (n < 1 || (n > lim && n / lim >= lim))
    throw DomainError("factorize: " + std::to_string(n) + " out of range");
  Factorization f;
  f.n = n;
  auto push = [&f](std::uint64_t p) {
    if (!f.pairs.empty() && f.pairs.back().first == p)
      ++f.pairs.back().second;
    else
      f.pairs.emplace_back(p, 1u);
  };
  if (table.has_spf() && n <= lim) {
    while (n > 1) {
      std::uint64_t p = table.spf(n);
      push(p);
      n /= p;
    }
    return f;
  }
  for (std::uint32_t p : table.primes()) {
    if (std::uint64_t{p} * p > n) break;
    while (n % p == 0) {
      push(p);
      n /= p;
    }
  }
  if (n > 1) push(n);
  return f;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : f.pairs) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t n, const PrimeTable& table) {
  auto f = factorize(n, table);
  std::uint64_t phi = n;
  for (auto [p, e] : f.pairs) phi = phi / p * (p - 1);
  return phi;
}

double von_mangoldt(std::uint64_t n, const PrimeTable& table) {
  auto f = factorize(n, table);
  if (f.pairs.size() != 1) return 0.0;
  return std::log(static_cast<double>(f.pairs.front().first));
}

std::int64_t r2_divisor_sum(const Factorization& f) {
  std::int64_t s = 0;
  for (auto d : divisors(f)) s += chi4(static_cast<std::int64_t>(d));
  return 4 * s;
}

std::int64_t r2_from_factorization(const Factorization& f) {
  std::int64_t r = 4;
  for (auto [p, e] : f.pairs) {
    if (p % 4 == 1)
      r *= static_cast<std::int64_t>(e) + 1;
    else if (p % 4 == 3 && e % 2 == 1)
      return 0;
  }
  return r;
}

std::int64_t r2(std::uint64_t k, const PrimeTable& table) {
  auto f = factorize(k, table);
  auto via_identity = r2_divisor_sum(f);
  if (via_identity != r2_from_factorization(f))
    throw std::logic_error("r2: divisor identity disagrees with factorization");
  return via_identity;
}

bool is_linnik(std::uint64_t p, const PrimeTable& table) {
  if (!table.is_prime(p))
    throw DomainError("is_linnik: " + std::to_string(p) + " is not prime");
  return r2(p - 1, table) > 0;
}

std::optional<std::pair<std::int64_t, std::int64_t>> linnik_witness(
    std::uint64_t p) {
  if (p < 2) return std::nullopt;
  std::uint64_t k = p - 1;
  for (std::uint64_t y = 0; 2 * y * y <= k; ++y) {
    std::uint64_t rest = k - y * y;
    std::uint64_t x = isqrt(rest);
    if (x * x == rest)
      return std::pair{static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)};
  }
  return std::nullopt;
}

}  // namespace ps4
