#pragma once

#include <cstdint>

#include "ps4/arith.hpp"

namespace ps4 {

struct LinnikPartial {
  double sum;    ///< sum over p <= X of r(p - 1)
  double main;   ///< singular product times X / ln X
  double ratio;  ///< sum / main
};

LinnikPartial linnik_partial(double X, const PrimeTable& table);

struct SingularProduct {
  double value;       ///< pi prod_{2 < p <= plimit} (1 + chi4(p)/(p(p-1)))
  double tail_bound;  ///< value * (exp(1/plimit) - 1)
};

SingularProduct singular_product(std::uint64_t plimit, const PrimeTable& table);

struct Chi4PhiSum {
  double sum;    ///< sum over d <= Dcut of chi4(d)/phi(d)
  double limit;  ///< (pi/4) prod over the table's primes
  double gap;
};

Chi4PhiSum chi4_phi_sum(double Dcut, const PrimeTable& table);

/// Divisors d of p - 1 with lo < d < hi, for primes p <= X.
struct HooleyRange {
  double X;
  double omega;
  double lo;
  double hi;
  bool empty;
};

/// lo = sqrt(X) (ln X)^-omega, hi = sqrt(X) (ln X)^omega; empty unless
/// 1 < lo < hi.
HooleyRange hooley_range(double X, double omega);
/// Explicit bounds; empty iff lo >= hi.
HooleyRange hooley_range(double X, double lo, double hi);

/// sum over p <= X of |sum_{d | p-1, lo < d < hi} chi4(d)|^2.
double hooley_variance(const HooleyRange& range, const PrimeTable& table);
/// Number of primes p <= X with a divisor of p - 1 in (lo, hi).
std::int64_t hooley_count(const HooleyRange& range, const PrimeTable& table);

/// X (ln ln X)^7 / ln X.
double hooley_variance_scale(double X);
/// X (ln ln X)^3 / (ln X)^(1 + 2 theta0).
double hooley_count_scale(double X);

}  // namespace ps4
