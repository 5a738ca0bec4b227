#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "ps4/arith.hpp"
#include "ps4/params.hpp"

namespace ps4 {

/// Default cap on pair-table entries (each costs 32 bytes).
inline constexpr std::size_t kPairTableBudget = 50'000'000;

/// All ordered pairs (p, q) of primes in (lo, hi], sorted by s = p^c + q^c,
/// with prefix sums of ln p ln q.
class PairSumTable {
 public:
  struct Entry {
    double s;
    std::uint32_t i, j;  ///< indices into primes()
  };

  std::span<const std::uint32_t> primes() const { return primes_; }
  std::span<const double> powers() const { return powers_; }  ///< p^c
  std::span<const double> logs() const { return logs_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double c() const { return c_; }

  /// Entry index range with lo < s < hi.
  std::pair<std::size_t, std::size_t> open_window(double lo, double hi) const;
  /// Entry index range with lo <= s <= hi.
  std::pair<std::size_t, std::size_t> closed_window(double lo, double hi) const;
  /// Sum of ln p ln q over entries [first, last).
  long double weight(std::size_t first, std::size_t last) const {
    return prefix_[last] - prefix_[first];
  }
  long double total_weight() const { return prefix_.back(); }

 private:
  friend PairSumTable build_pair_table(double, double, double, const PrimeTable&,
                                       std::size_t);
  double c_ = 0.0;
  std::vector<std::uint32_t> primes_;
  std::vector<double> powers_, logs_;
  std::vector<Entry> entries_;
  std::vector<long double> prefix_;
};

/// Pairs over primes in (lo, hi]. Throws DomainError when the table does
/// not reach hi or the pair count exceeds `budget`.
PairSumTable build_pair_table(double lo, double hi, double c,
                              const PrimeTable& table,
                              std::size_t budget = kPairTableBudget);

/// Pairs over (X/2, X].
PairSumTable build_pair_table(double X, double c, const PrimeTable& table,
                              std::size_t budget = kPairTableBudget);

/// Throws DomainError("window below precision floor") unless
/// epsilon >= 1e3 * N * 1e-16.
void check_precision(double N, double epsilon);

struct RawCount {
  double gamma;          ///< sum of r(p1-1) ln p1 ln p2 ln p3 ln p4
  std::int64_t count;    ///< quadruples with r(p1-1) > 0
};

/// Quadruples in (X/2, X]^4 with |p1^c + ... + p4^c - N| < epsilon.
RawCount gamma_raw(const RunParams& params, const PrimeTable& table);
RawCount gamma_raw(const RunParams& params, const PrimeTable& table,
                   const PairSumTable& pairs);

/// Same sum with the indicator replaced by theta(p1^c + ... + p4^c - N).
double gamma0(const RunParams& params, const PrimeTable& table);
double gamma0(const RunParams& params, const PrimeTable& table,
              const PairSumTable& pairs);

struct GammaReport {
  double gamma_raw;
  std::int64_t raw_count;
  double gamma0;
  double g1, g2, g3;  ///< divisor ranges d <= D, D < d < X/D, d >= X/D
  RunParams params;
};

/// Requires 1 < D < X/D.
GammaReport gamma_parts(const RunParams& params, const PrimeTable& table);
GammaReport gamma_parts(const RunParams& params, const PrimeTable& table,
                        const PairSumTable& pairs);

/// Weights of p1 in the three divisor ranges: sums of chi4(d) over
/// d | p1 - 1 with d <= D, D < d < X/D, d >= X/D.
std::array<std::int64_t, 3> divisor_range_weights(std::uint64_t p1, double D,
                                                  double X,
                                                  const PrimeTable& table);

enum class SearchRange { Theorem, Full };

struct Solution {
  std::array<std::uint64_t, 4> primes;
  std::int64_t x, y;  ///< p1 = x^2 + y^2 + 1
  double residual;    ///< |sum p_i^c - N|
};

struct SearchResult {
  std::optional<Solution> solution;
  /// False when the full range [2, N^(1/c)] was clipped to the table.
  bool complete = true;
  double lo, hi;  ///< searched primes lie in (lo, hi]
};

/// Exhaustive search for a quadruple with Linnik p1. Theorem range is
/// (X/2, X] with X = (N/3)^(1/c); Full range is [2, N^(1/c)].
SearchResult find_solution(double N, double c, double epsilon, SearchRange range,
                           const PrimeTable& table);

struct TernaryReport {
  double B;            ///< sum of ln p1 ln p2 ln p3
  std::int64_t count;
  double X0;           ///< (N0/2)^(1/c)
};

/// Triples in (X0/2, X0]^3 with |p1^c + p2^c + p3^c - N0| < epsilon.
/// Requires 1 < c < 3, c != 2.
TernaryReport ternary_count(double N0, double c, double epsilon,
                            const PrimeTable& table);

/// Splits S1^3 S2 into the main term I1^3 I2 and four error terms, each
/// carrying one factor S - I.
std::array<std::complex<double>, 5> five_term_split(std::complex<double> S1,
                                                    std::complex<double> S2,
                                                    std::complex<double> I1,
                                                    std::complex<double> I2);

/// Smoothed density (1/phi(d)) integral of theta(y1^c + y2^c + y3^c + y4^c - N)
/// over y1..y3 in (X/2, X] and y4 in J (default (X/2, X]).
struct PhiResult {
  double value;
  double error;  ///< achieved absolute error estimate
};
PhiResult phi_integral(const RunParams& params, std::int64_t d = 1,
                       std::optional<std::pair<double, double>> J = std::nullopt,
                       double rel_tol = 1e-6);

}  // namespace ps4
