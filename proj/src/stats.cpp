#include "ps4/stats.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ps4/bounds.hpp"
#include "ps4/error.hpp"
#include "ps4/parallel.hpp"

namespace ps4 {

namespace {

void require_cover(double x, const PrimeTable& table, const char* what) {
  if (x > static_cast<double>(table.limit()))
    throw DomainError(std::string(what) + " exceeds the prime table limit " +
                      std::to_string(table.limit()));
}

// sum of log(1 + chi4(p)/(p(p-1))) over odd primes p <= plimit.
double log_euler_product(std::uint64_t plimit, const PrimeTable& table) {
  auto ps = table.primes_in(2.0, static_cast<double>(plimit));
  return deterministic_sum<double>(ps.size(), [&](std::size_t i) {
    const double p = ps[i];
    return std::log1p(chi4(ps[i]) / (p * (p - 1.0)));
  });
}

}  // namespace

SingularProduct singular_product(std::uint64_t plimit, const PrimeTable& table) {
  require_cover(static_cast<double>(plimit), table, "plimit");
  if (plimit < 2) throw DomainError("plimit must be at least 2");
  const double value = std::numbers::pi * std::exp(log_euler_product(plimit, table));
  return {value, value * std::expm1(1.0 / static_cast<double>(plimit))};
}

LinnikPartial linnik_partial(double X, const PrimeTable& table) {
  require_cover(X, table, "X");
  if (!(X > 2.0)) throw DomainError("linnik_partial requires X > 2");
  auto ps = table.primes_in(0.0, X);
  const auto total = deterministic_sum<std::int64_t>(
      ps.size(), [&](std::size_t i) { return r2(ps[i] - 1, table); });
  const double main = singular_product(table.limit(), table).value * X / std::log(X);
  const double sum = static_cast<double>(total);
  return {sum, main, sum / main};
}

Chi4PhiSum chi4_phi_sum(double Dcut, const PrimeTable& table) {
  require_cover(Dcut, table, "Dcut");
  if (!(Dcut >= 1.0)) throw DomainError("Dcut must be at least 1");
  const auto n = static_cast<std::uint64_t>(std::floor(Dcut));
  // Odd d only: chi4 vanishes on evens.
  const double sum = deterministic_sum<double>((n + 1) / 2, [&](std::size_t i) {
    const std::uint64_t d = 2 * i + 1;
    return chi4(static_cast<std::int64_t>(d)) / static_cast<double>(euler_phi(d, table));
  });
  const double limit = std::numbers::pi / 4.0 *
                       std::exp(log_euler_product(table.limit(), table));
  return {sum, limit, std::abs(sum - limit)};
}

HooleyRange hooley_range(double X, double omega) {
  if (!(X > std::exp(1.0))) throw DomainError("Hooley range requires X > e");
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  const double spread = std::pow(std::log(X), omega), root = std::sqrt(X);
  HooleyRange r{X, omega, root / spread, root * spread, false};
  r.empty = !(r.lo > 1.0 && r.lo < r.hi);
  return r;
}

HooleyRange hooley_range(double X, double lo, double hi) {
  return {X, 0.0, lo, hi, !(lo < hi)};
}

namespace {

template <typename T, typename F>
T over_primes(const HooleyRange& range, const PrimeTable& table, F&& per_prime) {
  require_cover(range.X, table, "X");
  if (range.empty) return T{};
  auto ps = table.primes_in(0.0, range.X);
  return deterministic_sum<T>(ps.size(), [&](std::size_t i) -> T {
    std::int64_t s = 0;
    bool hit = false;
    for (std::uint64_t d : divisors(factorize(ps[i] - 1, table))) {
      const double dd = static_cast<double>(d);
      if (dd <= range.lo || dd >= range.hi) continue;
      hit = true;
      s += chi4(static_cast<std::int64_t>(d));
    }
    return per_prime(s, hit);
  });
}

}  // namespace

double hooley_variance(const HooleyRange& range, const PrimeTable& table) {
  return static_cast<double>(over_primes<std::int64_t>(
      range, table, [](std::int64_t s, bool) { return s * s; }));
}

std::int64_t hooley_count(const HooleyRange& range, const PrimeTable& table) {
  return over_primes<std::int64_t>(
      range, table, [](std::int64_t, bool hit) { return std::int64_t{hit}; });
}

double hooley_variance_scale(double X) {
  return X * std::pow(std::log(std::log(X)), 7) / std::log(X);
}

double hooley_count_scale(double X) {
  return X * std::pow(std::log(std::log(X)), 3) /
         std::pow(std::log(X), 1.0 + 2.0 * theta0_value());
}

}  // namespace ps4
