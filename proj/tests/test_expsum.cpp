#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "ps4/error.hpp"
#include "ps4/expsum.hpp"
#include "ps4/parallel.hpp"

using namespace ps4;
using cd = std::complex<double>;

namespace {
const PrimeTable& table() {
  static const PrimeTable t = sieve_primes(1'000'000);
  return t;
}

double chebyshev_theta(double lo, double hi) {
  double s = 0;
  for (auto p : oracle::primes_in(lo, hi)) s += std::log(double(p));
  return s;
}

double psi(double y) {
  double s = 0;
  for (auto p : oracle::primes_in(0, y))
    for (double pk = double(p); pk <= y; pk *= double(p)) s += std::log(double(p));
  return s;
}

// sum of |terms|, the scale for floating-point identities between sums
double abs_mass(const ExpSumSpec& spec) {
  ExpSumSpec s = spec;
  s.l = 1;
  s.d = 1;
  return std::abs(cd(eval_S(s, 0.0, table())));
}
}  // namespace

TEST_CASE("eval_S: examples") {
  auto v = eval_S({1.3, {50, 100}}, 0.0, table());
  CHECK(v.re == doctest::Approx(chebyshev_theta(50, 100)).epsilon(1e-14));
  CHECK(v.im == 0.0);
  auto w = eval_S({1.3, {2, 20}, 3, 4}, 0.0, table());
  CHECK(w.re == doctest::Approx(std::log(3.0) + std::log(7.0) + std::log(11.0) + std::log(19.0))
                    .epsilon(1e-14));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ut(-1.0, 1.0);
  for (int i = 0; i < 50; ++i)
    REQUIRE(eval_S({1.3, {50, 100}}, ut(rng), table()).abs() <= v.re * (1 + 1e-14));
}

TEST_CASE("eval_S: direct summation oracle") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uc(1.01, 2.9), ut(-0.05, 0.05);
  for (int i = 0; i < 30; ++i) {
    const double c = uc(rng), t = ut(rng);
    const std::int64_t d = 1 + i % 7;
    std::int64_t l = 1 + i % d;
    while (std::gcd(l, d) != 1) ++l;
    const cd got = eval_S({c, {1000, 5000}, l, d}, t, table());
    const cd want = oracle::prime_sum(c, 1000, 5000, t, l, d);
    // both sides round t p^c in double; the phase budget bounds that per term
    const double scale = chebyshev_theta(1000, 5000);
    REQUIRE(std::abs(got - want) <= scale * (1e-12 + 32 * phase_error_budget(t, 5000, c)));
  }
}

TEST_CASE("eval_S: errors") {
  CHECK_THROWS_AS(eval_S({1.5, {10, 2e6}}, 0.1, table()), DomainError);
  CHECK_THROWS_AS(eval_S({1.5, {10, 100}, 2, 4}, 0.1, table()), DomainError);
  CHECK_THROWS_AS(eval_S({1.5, {10, 1e6}}, 1e4, table()), DomainError);  // phase budget
}

TEST_CASE("eval_S: conjugation is exact") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ut(0.0, 0.5);
  for (int i = 0; i < 20; ++i) {
    const double t = ut(rng);
    const ExpSumSpec spec{1.17, {1000, 200000}, 1, 3};
    const cd a = eval_S(spec, t, table()), b = eval_S(spec, -t, table());
    REQUIRE(a.real() == b.real());
    REQUIRE(a.imag() == -b.imag());
  }
}

TEST_CASE("eval_S: additivity over splits and residue partition") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(-0.3, 0.3), um(2000, 90000);
  for (int i = 0; i < 20; ++i) {
    const double t = ut(rng), m = um(rng), c = 1.2;
    const ExpSumSpec whole{c, {1000, 100000}};
    const cd full = eval_S(whole, t, table());
    const cd parts = cd(eval_S({c, {1000, m}}, t, table())) + cd(eval_S({c, {m, 100000}}, t, table()));
    const double scale = abs_mass(whole);
    REQUIRE(std::abs(full - parts) <= 1e-12 * scale);

    const std::int64_t d = 1 + i;
    cd classes = 0;
    for (std::int64_t l = 0; l < d; ++l) {
      if (std::gcd(l, d) == 1) {
        classes += cd(eval_S({c, {1000, 100000}, l, d}, t, table()));
      } else {
        // non-coprime classes hold at most the primes dividing d
        for (auto p : table().primes_in(1000, 100000))
          if (static_cast<std::int64_t>(p) % d == l)
            classes += std::polar(std::log(double(p)),
                                  2 * std::numbers::pi * t * std::pow(double(p), c));
      }
    }
    REQUIRE(std::abs(full - classes) <= 1e-12 * scale);
  }
}

TEST_CASE("eval_S: identical across thread counts") {
  const ExpSumSpec spec{1.1, {10, 900000}};
  set_thread_count(1);
  const cd a = eval_S(spec, 0.0123, table());
  set_thread_count(3);
  const cd b = eval_S(spec, 0.0123, table());
  set_thread_count(0);
  CHECK(a == b);
}

TEST_CASE("eval_I: examples, envelope and trapezoid oracle") {
  auto z = eval_I(1.5, {10, 30}, 0.0);
  CHECK(z.re == 20.0);
  CHECK(z.im == 0.0);
  const cd fres = eval_I(2.0, {0.5, 1.0}, 1.0);
  const cd want = oracle::trapezoid_I(2.0, 0.5, 1.0, 1.0, 1'000'000);
  CHECK(std::abs(fres - want) < 1e-8);

  for (double c : {1.05, 1.2, 1.5, 2.5})
    for (double t : {1e-4, 1e-3, 1e-2, 0.1, -0.05}) {
      const double hi = c > 2 ? 200 : 2000, lo = hi / 2;
      const double bound = 2.0 * std::min(hi - lo, std::pow(hi, 1 - c) /
                                                       (c * std::abs(t) * std::pow(2.0, c - 1)));
      const double meas = eval_I(c, {lo, hi}, t).abs();
      INFO("c=" << c << " t=" << t);
      CHECK(meas <= bound);
      CHECK(meas <= 2.0 * std::min(hi - lo, std::pow(hi, 1 - c) / std::abs(t)));
      const cd conj = eval_I(c, {lo, hi}, -t);
      CHECK(std::abs(cd(eval_I(c, {lo, hi}, t)) - std::conj(conj)) < 1e-9 * (hi - lo));
    }
  const cd osc = eval_I(1.3, {100, 300}, 0.01);
  CHECK(std::abs(osc - oracle::trapezoid_I(1.3, 100, 300, 0.01, 2'000'000)) < 1e-9 * 200);
  CHECK_THROWS_AS(eval_I(1.3, {0, 1}, 0.1), DomainError);
}

TEST_CASE("eval_E") {
  const cd e = eval_E(1e5, 0.0, 1, 1, 0.5, 1.3, table());
  CHECK(e.real() == doctest::Approx(psi(1e5) - psi(5e4) - 5e4).epsilon(1e-9));
  const double r5 = std::abs(e) / 1e5;
  const double r6 = std::abs(cd(eval_E(1e6, 0.0, 1, 1, 0.5, 1.3, table()))) / 1e6;
  CHECK(r6 < r5);

  // class 1 mod 101 has no member in (50, 100]
  const cd empty = eval_E(100, 0.01, 101, 1, 0.5, 1.3, table());
  const cd integral = eval_I(1.3, {50, 100}, 0.01);
  CHECK(std::abs(empty + integral / 100.0) < 1e-12);
  CHECK_THROWS_AS(eval_E(100, 0.0, 4, 2, 0.5, 1.3, table()), DomainError);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ut(-0.01, 0.01);
  for (int i = 0; i < 10; ++i) {
    const std::int64_t d = 3 + i;
    const double y = 20000;
    const double mass = eval_S({1.3, {y / 2, y}, 1, d, Weight::VonMangoldt}, 0.0, table()).re;
    CHECK(std::abs(cd(eval_E(y, ut(rng), d, 1, 0.5, 1.3, table()))) <=
          mass + (y / 2) / std::max<double>(1.0, oracle::phi(d)) + 1e-9);
  }
}

TEST_CASE("bv_statistic") {
  const double X = 1e5, mu = 0.5, c = 1.2;
  auto one = bv_statistic(X, 0.0, 1, c, mu, table());
  double want = 0.0;
  const double y0 = std::sqrt(X);
  for (int j = 0; j < 16; ++j) {
    const double y = y0 * std::pow(X / y0, j / 15.0);
    want = std::max(want, std::abs(psi(y) - psi(mu * y) - (1 - mu) * y));
  }
  CHECK(one.value == doctest::Approx(want).epsilon(1e-9));
  CHECK(one.t_in_range);

  auto ten = bv_statistic(X, 0.0, 10, c, mu, table());
  double trivial = 0;
  for (int d = 1; d <= 10; ++d) trivial += 2 * X / oracle::phi(d);
  CHECK(ten.value > 0.0);
  CHECK(ten.value < trivial);

  auto small = bv_statistic(1e4, 0.0, 10, c, mu, table(), {}, 3.0);
  CHECK(ten.ratio <= 2.0 * small.ratio);
  CHECK_FALSE(bv_statistic(1e4, 1.0, 2, c, mu, table()).t_in_range);
  CHECK_THROWS_AS(bv_statistic(1e4, 0.0, 101, c, mu, table()), DomainError);
}

TEST_CASE("eval_K: empty range and direct enumeration") {
  auto p = params_for_X(2000, 1.1, 1.0, 1.0, 1.5);
  CHECK(eval_K(0.01, p, table()).abs() == 0.0);

  auto q = params_for_X(5000, 1.1, 1.0, 1.0, 30.0);
  double want = 0.0;
  const double X = q.X, D = q.D;
  for (std::int64_t m = 2; m < D; m += 2)
    for (int j : {1, -1}) {
      const double lo = std::max(1 + m * X / D, X / 2);
      for (auto pr : oracle::primes_in(lo, X))
        if (((static_cast<std::int64_t>(pr) - (1 + j * m)) % (4 * m) + 4 * m) % (4 * m) == 0)
          want += oracle::chi4(j) * std::log(double(pr));
    }
  CHECK(eval_K(0.0, q, table()).re == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("sl_gap") {
  CHECK_THROWS_AS(sl_gap(1e4, 2.0, 0.0, table()), DomainError);
  CHECK_THROWS_AS(sl_gap(1e4, 1.2, 1.0, table()), DomainError);
  auto g6 = sl_gap(1e6, 1.2, 0.0, table());
  CHECK(g6.gap == doctest::Approx(std::abs(chebyshev_theta(5e5, 1e6) - 5e5)).epsilon(1e-9));
  CHECK(g6.ratio < 10.0);
  auto g4 = sl_gap(1e4, 1.2, 0.0, table());
  CHECK(g6.ratio <= 4.0 * g4.ratio);
}

TEST_CASE("l2 norms: pair expansion vs grid quadrature") {
  auto s = build_prime_sum({1.15, {500, 1000}}, table());
  const double T = 0.01;
  const std::size_t n = 200000;
  const double h = 2 * T / n;
  double simpson = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    simpson += w * std::norm(cd(s.at(-T + h * i)));
  }
  simpson *= h / 3;
  CHECK(l2_norm_exact(s, -T, T) == doctest::Approx(simpson).epsilon(1e-8));

  // |I|^2 integrated by the module vs a dense grid of eval_I values
  const double TI = 0.002;
  double grid = 0.0;
  const std::size_t m = 4000;
  for (std::size_t i = 0; i <= m; ++i) {
    const double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
    grid += w * std::norm(cd(eval_I(1.15, {500, 1000}, -TI + 2 * TI * i / m)));
  }
  grid *= (2 * TI / m) / 3;
  CHECK(l2_norm_I(1.15, {500, 1000}, TI) == doctest::Approx(grid).epsilon(1e-6));
}

TEST_CASE("moment normalizations stay bounded") {
  for (double X : {1e4, 1e5}) {
    auto p = params_for_X(X, 1.1, shrinking_epsilon(X));
    auto m = moment_integrals(p, table());
    INFO("X=" << X << " ratio_S=" << m.ratio_S << " ratio_I=" << m.ratio_I);
    CHECK(m.ratio_S > 0.0);
    CHECK(m.ratio_S <= 4.0);
    CHECK(m.ratio_I > 0.0);
    CHECK(m.ratio_I <= 4.0);
    CHECK(m.ratio_unit > 0.0);
    CHECK(m.ratio_unit <= 4.0);
  }
}

TEST_CASE("Gallagher shift inequality on random sequences") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> un(1, 200);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<cd> a(static_cast<std::size_t>(un(rng)));
    for (auto& z : a) z = {g(rng), g(rng)};
    for (std::int64_t Q = 1; Q <= static_cast<std::int64_t>(a.size()); ++Q) {
      auto s = gallagher_sides(a, Q);
      REQUIRE(s.lhs <= s.rhs * (1 + 1e-12) + 1e-12);
    }
  }
}
