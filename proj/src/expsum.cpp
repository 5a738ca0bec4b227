#include "ps4/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ps4/error.hpp"
#include "ps4/parallel.hpp"
#include "ps4/quadrature.hpp"

namespace ps4 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPhaseBudgetLimit = 1e-6;
constexpr std::size_t kGridChunk = 256;

// Reduction by round() is odd in x, so e(-x) is the exact conjugate of e(x).
std::complex<double> unit_phase(double x) {
  const double frac = x - std::round(x);
  return std::polar(1.0, kTwoPi * frac);
}

std::int64_t normalize_residue(std::int64_t l, std::int64_t d) {
  return ((l % d) + d) % d;
}

std::uint64_t phi_trial(std::uint64_t n) {
  std::uint64_t phi = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    phi = phi / p * (p - 1);
  }
  if (n > 1) phi = phi / n * (n - 1);
  return phi;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void check_phase(double t, double hi, double c) {
  const double budget = phase_error_budget(t, hi, c);
  if (budget > kPhaseBudgetLimit)
    throw DomainError("phase error budget " + std::to_string(budget) +
                      " exceeds 1e-6 (|t| * hi^c too large for double)");
}

}  // namespace

PhaseSum::PhaseSum(std::vector<double> freqs, std::vector<double> weights)
    : freqs_(std::move(freqs)), weights_(std::move(weights)) {
  if (freqs_.size() != weights_.size())
    throw std::invalid_argument("PhaseSum: frequency/weight size mismatch");
}

double PhaseSum::max_freq() const {
  double m = 0.0;
  for (double u : freqs_) m = std::max(m, std::abs(u));
  return m;
}

ComplexAmp PhaseSum::at(double t) const {
  return deterministic_sum<std::complex<double>>(
      freqs_.size(),
      [&](std::size_t i) { return weights_[i] * unit_phase(t * freqs_[i]); });
}

std::vector<std::complex<double>> PhaseSum::on_grid(double t0, double step,
                                                    std::size_t count) const {
  std::vector<std::complex<double>> out(count);
  const std::size_t n_chunks = (count + kGridChunk - 1) / kGridChunk;
  parallel_for_blocks(n_chunks, [&](std::size_t chunk) {
    const std::size_t begin = chunk * kGridChunk;
    const std::size_t end = std::min(count, begin + kGridChunk);
    const double t_begin = t0 + step * static_cast<double>(begin);
    for (std::size_t j = 0; j < freqs_.size(); ++j) {
      std::complex<double> z = weights_[j] * unit_phase(t_begin * freqs_[j]);
      const std::complex<double> rot = unit_phase(step * freqs_[j]);
      for (std::size_t i = begin; i < end; ++i) {
        out[i] += z;
        z *= rot;
      }
    }
  });
  return out;
}

double phase_error_budget(double t, double hi, double c) {
  return std::abs(t) * std::pow(hi, c) * 1e-16;
}

namespace {

// (n, weight) summands of the spec in ascending n.
std::vector<std::pair<std::uint64_t, double>> collect_terms(
    const ExpSumSpec& spec, const PrimeTable& table) {
  const auto [lo, hi] = spec.interval;
  if (!(lo < hi)) throw DomainError("interval requires lo < hi");
  if (hi > static_cast<double>(table.limit()))
    throw DomainError("prime table too small for interval upper end " +
                      std::to_string(hi));
  if (spec.d < 1) throw DomainError("modulus d must be positive");
  const std::int64_t l = normalize_residue(spec.l, spec.d);
  if (std::gcd(l, spec.d) != 1) throw DomainError("residue l not coprime to d");

  std::vector<std::pair<std::uint64_t, double>> terms;
  if (spec.weight == Weight::LogPrime) {
    auto primes = table.primes_in(lo, hi);
    auto logs = table.logp_in(lo, hi);
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (static_cast<std::int64_t>(primes[i] % spec.d) == l)
        terms.emplace_back(primes[i], logs[i]);
    return terms;
  }
  auto primes = table.primes_in(0.0, hi);
  auto logs = table.logp_in(0.0, hi);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::uint64_t pk = primes[i]; static_cast<double>(pk) <= hi;
         pk *= primes[i]) {
      if (static_cast<double>(pk) > lo &&
          static_cast<std::int64_t>(pk % spec.d) == l)
        terms.emplace_back(pk, logs[i]);
    }
  }
  std::sort(terms.begin(), terms.end());
  return terms;
}

}  // namespace

PhaseSum build_prime_sum(const ExpSumSpec& spec, const PrimeTable& table) {
  std::vector<double> freqs, weights;
  for (auto [n, w] : collect_terms(spec, table)) {
    freqs.push_back(std::exp(spec.c * std::log(static_cast<double>(n))));
    weights.push_back(w);
  }
  return PhaseSum(std::move(freqs), std::move(weights));
}

ComplexAmp eval_S(const ExpSumSpec& spec, double t, const PrimeTable& table) {
  check_phase(t, spec.interval.hi, spec.c);
  return build_prime_sum(spec, table).at(t);
}

ComplexAmp eval_I(double c, Interval interval, double t) {
  const auto [lo, hi] = interval;
  if (!(lo > 0.0) || !(lo < hi)) throw DomainError("eval_I requires 0 < lo < hi");
  if (!(c > 1.0)) throw DomainError("eval_I requires c > 1");
  if (t == 0.0) return {hi - lo, 0.0};
  const double max_rate = std::abs(t) * c * std::pow(hi, c - 1.0);
  const double n = std::ceil((hi - lo) * 8.0 * max_rate);
  if (n > 1e9) throw DomainError("eval_I: oscillation too fast for quadrature");
  const auto panels = static_cast<std::size_t>(std::max(1.0, n));
  const double width = (hi - lo) / static_cast<double>(panels);
  const auto& rule = gauss_legendre(16);
  auto integrand = [&](double y) {
    return unit_phase(t * std::exp(c * std::log(y)));
  };
  return deterministic_sum<std::complex<double>>(panels, [&](std::size_t i) {
    const double a = lo + width * static_cast<double>(i);
    const double b = i + 1 == panels ? hi : a + width;
    return integrate_panels<std::complex<double>>(integrand, a, b, 1, rule);
  });
}

ComplexAmp eval_E(double y, double t, std::int64_t d, std::int64_t a, double mu,
                  double c, const PrimeTable& table) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("eval_E requires 0 < mu < 1");
  if (d < 1) throw DomainError("modulus d must be positive");
  if (std::gcd(normalize_residue(a, d), d) != 1)
    throw DomainError("eval_E requires gcd(a, d) = 1");
  ExpSumSpec spec{c, {mu * y, y}, a, d, Weight::VonMangoldt};
  std::complex<double> sum = eval_S(spec, t, table);
  std::complex<double> integral = eval_I(c, {mu * y, y}, t);
  return sum - integral / static_cast<double>(phi_trial(static_cast<std::uint64_t>(d)));
}

BvReport bv_statistic(double X, double t, std::int64_t Dmax, double c,
                      double mu, const PrimeTable& table, BvGrid grid,
                      double A) {
  if (Dmax < 1) throw DomainError("bv_statistic requires Dmax >= 1");
  if (static_cast<double>(Dmax) > std::sqrt(X))
    throw DomainError("bv_statistic requires Dmax <= sqrt(X)");
  if (grid.points < 16) throw DomainError("bv grid needs at least 16 points");
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("bv_statistic requires 0 < mu < 1");
  if (X > static_cast<double>(table.limit()))
    throw DomainError("prime table too small for X");
  check_phase(t, X, c);

  const double y0 = std::max(2.0, std::sqrt(X));
  std::vector<double> max_e(static_cast<std::size_t>(Dmax) + 1, 0.0);
  std::vector<double> phis(max_e.size(), 1.0);
  for (std::int64_t d = 1; d <= Dmax; ++d)
    phis[d] = static_cast<double>(phi_trial(static_cast<std::uint64_t>(d)));

  for (std::size_t j = 0; j < grid.points; ++j) {
    const double y =
        y0 * std::pow(X / y0, static_cast<double>(j) / (grid.points - 1));
    auto terms = collect_terms({c, {mu * y, y}, 1, 1, Weight::VonMangoldt}, table);
    std::vector<std::complex<double>> z(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const double u = std::exp(c * std::log(static_cast<double>(terms[i].first)));
      z[i] = terms[i].second * unit_phase(t * u);
    }
    const std::complex<double> integral = eval_I(c, {mu * y, y}, t);
    for (std::int64_t d = 1; d <= Dmax; ++d) {
      std::vector<std::complex<double>> bins(static_cast<std::size_t>(d));
      for (std::size_t i = 0; i < terms.size(); ++i) bins[terms[i].first % d] += z[i];
      const std::complex<double> expected = integral / phis[d];
      for (std::int64_t a = 0; a < d; ++a) {
        if (std::gcd(a, d) != 1) continue;
        max_e[d] = std::max(max_e[d], std::abs(bins[a] - expected));
      }
    }
  }
  double value = 0.0;
  for (std::int64_t d = 1; d <= Dmax; ++d) value += max_e[d];
  const double norm = X / std::pow(std::log(X), A);
  return {value, value / norm, std::abs(t) < std::pow(X, 0.25 - c), grid.points};
}

PhaseSum build_K_sum(const RunParams& params, const PrimeTable& table) {
  const double X = params.X, D = params.D;
  if (D < 2.0) return {};
  if (X > static_cast<double>(table.limit()))
    throw DomainError("prime table too small for X");
  std::vector<double> freqs, weights;
  auto primes = table.primes_in(X / 2.0, X);
  auto logs = table.logp_in(X / 2.0, X);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t p = primes[i];
    std::int64_t w = 0;
    for (std::uint64_t m : divisors(factorize(p - 1, table))) {
      if (m % 2 != 0 || static_cast<double>(m) >= D) continue;
      if (!(static_cast<double>(p) > 1.0 + static_cast<double>(m) * X / D)) continue;
      w += chi4(static_cast<std::int64_t>((p - 1) / m));
    }
    if (w == 0) continue;
    freqs.push_back(std::exp(params.c * logs[i]));
    weights.push_back(static_cast<double>(w) * logs[i]);
  }
  return PhaseSum(std::move(freqs), std::move(weights));
}

ComplexAmp eval_K(double t, const RunParams& params, const PrimeTable& table) {
  check_phase(t, params.X, params.c);
  return build_K_sum(params, table).at(t);
}

GapReport sl_gap(double X, double c, double t, const PrimeTable& table) {
  if (!(c > 1.0 && c < 3.0) || c == 2.0)
    throw DomainError("sl_gap requires 1 < c < 3, c != 2");
  if (std::abs(t) > std::pow(X, 0.25 - c))
    throw DomainError("sl_gap requires |t| <= X^(1/4 - c)");
  const Interval J{X / 2.0, X};
  std::complex<double> s = eval_S({c, J}, t, table);
  std::complex<double> i = eval_I(c, J, t);
  const double gap = std::abs(s - i);
  return {gap, gap / (X / std::exp(std::pow(std::log(X), 0.2)))};
}

double l2_norm_exact(const PhaseSum& sum, double t0, double t1) {
  const auto u = sum.freqs();
  const auto w = sum.weights();
  const double len = t1 - t0;
  return deterministic_sum<double>(u.size(), [&](std::size_t j) {
    double acc = w[j] * w[j] * len;
    for (std::size_t k = j + 1; k < u.size(); ++k) {
      const double d = kTwoPi * (u[j] - u[k]);
      acc += 2.0 * w[j] * w[k] * (t1 * sinc(t1 * d) - t0 * sinc(t0 * d));
    }
    return acc;
  });
}

double l2_norm_I(double c, Interval interval, double T) {
  if (!(T > 0.0)) return 0.0;
  const double spread = std::pow(interval.hi, c) - std::pow(interval.lo, c);
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * T * spread)) + 1;
  const double width = T / static_cast<double>(panels);
  const auto& rule = gauss_legendre(16);
  double half = deterministic_sum<double>(panels, [&](std::size_t i) {
    const double a = width * static_cast<double>(i);
    return integrate_panels<double>(
        [&](double t) { return std::norm(std::complex<double>(eval_I(c, interval, t))); },
        a, a + width, 1, rule);
  });
  return 2.0 * half;
}

double theta_weighted_l2(const PhaseSum& sum, const SmoothingKernel& kernel,
                         double t0, double t1, int samples_per_period) {
  if (sum.size() == 0 || !(t1 > t0)) return 0.0;
  if (samples_per_period < 4) throw DomainError("samples_per_period must be >= 4");
  const auto u = sum.freqs();
  const auto [umin, umax] = std::minmax_element(u.begin(), u.end());
  const double fastest = std::max({*umax - *umin, 2.0 * kernel.support(), 1.0 / (t1 - t0)});
  auto intervals = static_cast<std::size_t>(
      std::ceil((t1 - t0) * fastest * samples_per_period));
  if (intervals % 2) ++intervals;  // Simpson needs an even count
  const double h = (t1 - t0) / static_cast<double>(intervals);

  constexpr std::size_t kChunk = std::size_t{1} << 18;
  double total = 0.0;
  for (std::size_t start = 0; start <= intervals; start += kChunk) {
    const std::size_t count = std::min(kChunk, intervals + 1 - start);
    auto values = sum.on_grid(t0 + h * static_cast<double>(start), h, count);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t idx = start + i;
      const double t = t0 + h * static_cast<double>(idx);
      const double f = std::norm(values[i]) * std::abs(theta_fourier(kernel, t));
      const double coef = (idx == 0 || idx == intervals) ? 1.0 : (idx % 2 ? 4.0 : 2.0);
      total += coef * f;
    }
  }
  return total * h / 3.0;
}

MomentReport moment_integrals(const RunParams& params, const PrimeTable& table,
                              double n) {
  const double X = params.X, c = params.c;
  const Interval J{X / 2.0, X};
  PhaseSum s = build_prime_sum({c, J}, table);
  check_phase(std::max(params.Delta, n + 1.0), X, c);
  MomentReport r{};
  r.L2_S = l2_norm_exact(s, -params.Delta, params.Delta);
  r.L2_I = l2_norm_I(c, J, params.Delta);
  r.unit_L2_S = l2_norm_exact(s, n, n + 1.0);
  const double lx = std::log(X);
  r.ratio_S = r.L2_S / (std::pow(X, 2.0 - c) * lx * lx * lx);
  r.ratio_I = r.L2_I / (std::pow(X, 2.0 - c) * lx);
  r.ratio_unit = r.unit_L2_S / (X * lx * lx * lx);
  return r;
}

KMomentReport k_moment(const RunParams& params, const PrimeTable& table,
                       int samples_per_period) {
  check_phase(params.H, params.X, params.c);
  PhaseSum k = build_K_sum(params, table);
  const double value =
      theta_weighted_l2(k, params.kernel, params.Delta, params.H, samples_per_period);
  return {value, value / (params.X * std::pow(std::log(params.X), 7))};
}

GallagherSides gallagher_sides(std::span<const std::complex<double>> a,
                               std::int64_t Q) {
  if (Q < 1) throw DomainError("Q must be a positive integer");
  const auto N = static_cast<std::int64_t>(a.size());
  std::complex<double> total = std::accumulate(a.begin(), a.end(), std::complex<double>{});
  std::complex<double> rhs{};
  for (std::int64_t q = -Q; q <= Q; ++q) {
    const double taper = 1.0 - static_cast<double>(std::abs(q)) / static_cast<double>(Q);
    std::complex<double> corr{};
    for (std::int64_t n = std::max<std::int64_t>(0, -q); n < N && n + q < N; ++n)
      corr += a[n + q] * std::conj(a[n]);
    rhs += taper * corr;
  }
  rhs *= 1.0 + static_cast<double>(N) / static_cast<double>(Q);
  return {std::norm(total), rhs.real()};
}

}  // namespace ps4
