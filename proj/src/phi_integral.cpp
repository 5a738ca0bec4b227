#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "ps4/error.hpp"
#include "ps4/gamma.hpp"
#include "ps4/quadrature.hpp"
#include "ps4/smoothing.hpp"

namespace ps4 {

namespace {

// Density of u = y^c for y uniform-measure on (lo, hi]: (1/c) u^(1/c - 1)
// on (lo^c, hi^c].
struct PowerDensity {
  double c, a, b;
  double operator()(double u) const {
    if (u <= a || u > b) return 0.0;
    return std::pow(u, 1.0 / c - 1.0) / c;
  }
};

// Density of the sum of two independent PowerDensity variables.
struct SumDensity {
  PowerDensity f, g;
  const GaussRule* rule;

  double operator()(double s) const {
    const double lo = std::max(f.a, s - g.b), hi = std::min(f.b, s - g.a);
    if (!(hi > lo)) return 0.0;
    return integrate_panels<double>(
        [&](double u) { return f(u) * g(s - u); }, lo, hi, 2, *rule);
  }
  double lo() const { return f.a + g.a; }
  double hi() const { return f.b + g.b; }
  std::vector<double> kinks() const {
    std::vector<double> k{f.a + g.a, f.a + g.b, f.b + g.a, f.b + g.b};
    std::sort(k.begin(), k.end());
    return k;
  }
};

std::uint64_t phi_of(std::int64_t d) {
  if (d < 1) throw DomainError("modulus d must be positive");
  std::uint64_t n = static_cast<std::uint64_t>(d), r = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

std::vector<double> clipped(std::vector<double> pts, double lo, double hi) {
  pts.push_back(lo);
  pts.push_back(hi);
  std::vector<double> out;
  for (double p : pts)
    if (p >= lo && p <= hi) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PhiResult phi_integral(const RunParams& params, std::int64_t d,
                       std::optional<std::pair<double, double>> J, double rel_tol) {
  const double c = params.c, X = params.X;
  const auto [jlo, jhi] = J.value_or(std::pair{X / 2.0, X});
  if (!(jlo >= 0.0 && jhi > jlo)) throw DomainError("interval J must satisfy 0 <= lo < hi");
  const double phi_d = static_cast<double>(phi_of(d));

  const GaussRule& rule = gauss_legendre(20);
  const PowerDensity g{c, std::pow(X / 2.0, c), std::pow(X, c)};
  const PowerDensity gj{c, std::pow(jlo, c), std::pow(jhi, c)};
  const SumDensity G2{g, g, &rule}, G2J{g, gj, &rule};

  const SmoothingKernel& ker = params.kernel;
  std::vector<double> knots = ker.band_knots();  // plateau .. support
  std::vector<double> signed_knots;
  for (double k : knots) {
    signed_knots.push_back(k);
    signed_knots.push_back(-k);
  }

  // M(v) = integral of G2(s) theta(s - v) ds; pieces at theta's knots and
  // G2's kinks.
  auto M = [&](double v) {
    std::vector<double> pts;
    for (double k : signed_knots) pts.push_back(v + k);
    for (double k : G2.kinks()) pts.push_back(k);
    auto br = clipped(std::move(pts), std::max(G2.lo(), v - ker.support()),
                      std::min(G2.hi(), v + ker.support()));
    if (br.size() < 2) return 0.0;
    return integrate_pieces<double>(
        [&](double s) { return G2(s) * theta(ker, s - v); }, br, rule);
  };

  const double N = params.N;
  const double tlo = std::max(G2J.lo(), N - G2.hi() - ker.support());
  const double thi = std::min(G2J.hi(), N - G2.lo() + ker.support());
  if (!(thi > tlo)) return {0.0, 0.0};

  std::vector<double> pts = G2J.kinks();
  for (double k : G2.kinks())
    for (double s : signed_knots) pts.push_back(N - k - s);
  const auto br = clipped(std::move(pts), tlo, thi);

  using boost::math::quadrature::gauss_kronrod;
  auto outer = [&](double t) { return G2J(t) * M(N - t); };
  double total = 0.0, err_total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i) {
    double err = 0.0;
    total += gauss_kronrod<double, 31>::integrate(outer, br[i], br[i + 1], 12,
                                                  rel_tol * 1e-2, &err);
    err_total += err;
  }
  if (err_total > rel_tol * std::abs(total) && total != 0.0)
    throw DomainError("phi integral did not converge: error " + std::to_string(err_total) +
                      " on value " + std::to_string(total));
  return {total / phi_d, err_total / phi_d};
}

}  // namespace ps4
