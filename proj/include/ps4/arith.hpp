#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ps4 {

struct SieveOptions {
  /// Integers per sieve segment.
  std::uint64_t segment_length = std::uint64_t{1} << 20;
  /// Upper bound on resident bytes for the table (primes, logs, spf).
  std::uint64_t memory_budget_bytes = std::uint64_t{3} << 30;
};

inline constexpr std::uint64_t kMaxSieveLimit = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kMaxSpfLimit = std::uint64_t{1} << 31;

/// Primes up to `limit` with their natural logs and, when limit <= 2^31,
/// a smallest-prime-factor index. Immutable after construction.
class PrimeTable {
 public:
  PrimeTable() = default;

  /// Rebuilds logs and the spf index from an already known prime list
  /// (used by the on-disk cache).
  static PrimeTable from_primes(std::uint64_t limit,
                                std::vector<std::uint32_t> primes,
                                const SieveOptions& options = {});

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::span<const double> logp() const { return logp_; }
  std::size_t size() const { return primes_.size(); }

  bool has_spf() const { return !spf_.empty(); }
  /// Smallest prime factor of n, 2 <= n <= limit. Requires has_spf().
  std::uint32_t spf(std::uint64_t n) const;

  bool is_prime(std::uint64_t n) const;

  /// Index of the first prime strictly greater than x.
  std::size_t upper_index(double x) const;
  /// Primes p with lo < p <= hi (hi clipped to the table).
  std::span<const std::uint32_t> primes_in(double lo, double hi) const;
  std::span<const double> logp_in(double lo, double hi) const;

 private:
  friend PrimeTable sieve_primes(std::uint64_t, const SieveOptions&);

  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
  std::vector<double> logp_;
  std::vector<std::uint32_t> spf_;
};

/// Segmented sieve of Eratosthenes over [2, limit].
PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& options = {});

struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, unsigned>> pairs;
};

/// Uses the spf index for n <= limit, trial division up to limit^2.
Factorization factorize(std::uint64_t n, const PrimeTable& table);

/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(const Factorization& f);

/// Non-principal character modulo 4.
constexpr int chi4(std::int64_t n) {
  std::int64_t r = ((n % 4) + 4) % 4;
  return r == 1 ? 1 : (r == 3 ? -1 : 0);
}

std::uint64_t euler_phi(std::uint64_t n, const PrimeTable& table);
double von_mangoldt(std::uint64_t n, const PrimeTable& table);

/// Number of ordered signed pairs (x, y) with x^2 + y^2 = k.
std::int64_t r2(std::uint64_t k, const PrimeTable& table);
/// 4 * sum_{d | k} chi4(d).
std::int64_t r2_divisor_sum(const Factorization& f);
/// Product formula over the factorization.
std::int64_t r2_from_factorization(const Factorization& f);

/// True iff p - 1 is a sum of two squares (zero coordinates allowed).
bool is_linnik(std::uint64_t p, const PrimeTable& table);
/// (x, y) with x >= y >= 0 and x^2 + y^2 = p - 1, if any.
std::optional<std::pair<std::int64_t, std::int64_t>> linnik_witness(
    std::uint64_t p);

std::uint64_t isqrt(std::uint64_t n);

// On-disk cache: magic "PS4P", version u32, limit u64, then the primes as
// LEB128 varint gaps starting from 0.
inline constexpr std::uint32_t kPrimeCacheVersion = 1;

std::filesystem::path prime_cache_path(const std::filesystem::path& dir,
                                       std::uint64_t limit);
void save_prime_cache(const PrimeTable& table, const std::filesystem::path& file);
/// Empty when the file is missing or its header does not match `limit`.
std::optional<PrimeTable> load_prime_cache(const std::filesystem::path& file,
                                           std::uint64_t limit,
                                           const SieveOptions& options = {});

}  // namespace ps4
