#include "ps4/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ps4/error.hpp"
#include "ps4/parallel.hpp"
#include "ps4/quadrature.hpp"

namespace ps4 {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double u) {
  if (std::abs(u) < 1e-4) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

}  // namespace

SmoothingKernel::SmoothingKernel(double a, double delta, int k)
    : a_(a), delta_(delta), k_(k) {
  if (!(delta > 0.0) || !(delta < a / 4.0))
    throw DomainError("kernel requires 0 < delta < a/4");
  if (k < 1) throw DomainError("kernel requires k >= 1");
}

std::vector<double> SmoothingKernel::band_knots() const {
  std::vector<double> knots(static_cast<std::size_t>(k_) + 1);
  for (int j = 0; j <= k_; ++j)
    knots[j] = plateau() + 2.0 * delta_ * j / k_;
  knots.back() = support();
  return knots;
}

SmoothingKernel make_kernel(double a, double delta, int k) {
  return SmoothingKernel(a, delta, k);
}

SmoothingKernel kernel_for_run(double epsilon, double X) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(X >= 3.0)) throw DomainError("kernel_for_run requires X >= 3");
  return SmoothingKernel(0.9 * epsilon, 0.1 * epsilon,
                         static_cast<int>(std::floor(std::log(X))));
}

SmoothingKernel ternary_kernel(double epsilon, double X0) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(X0 >= 3.0)) throw DomainError("ternary_kernel requires X0 >= 3");
  return SmoothingKernel(1.25 * epsilon, 0.25 * epsilon,
                         static_cast<int>(std::floor(std::log(X0))));
}

double irwin_hall_cdf(int k, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= k) return 1.0;
  if (x > 0.5 * k) return 1.0 - irwin_hall_cdf(k, k - x);
  const double m = std::floor(x);
  const double u = x - m;
  // vals[i] = N_r(u + i) for the cardinal B-spline of order r.
  std::vector<double> vals{1.0}, next;
  for (int r = 2; r <= k + 1; ++r) {
    next.assign(static_cast<std::size_t>(r), 0.0);
    for (int i = 0; i < r; ++i) {
      double left = i <= r - 2 ? vals[i] : 0.0;
      double right = i >= 1 ? vals[i - 1] : 0.0;
      next[i] = ((u + i) * left + (r - u - i) * right) / (r - 1);
    }
    vals.swap(next);
  }
  double cdf = 0.0;
  const int top = std::min(static_cast<int>(m), k);
  for (int i = 0; i <= top; ++i) cdf += vals[i];
  return cdf;
}

double theta(const SmoothingKernel& kernel, double y) {
  const double ay = std::abs(y);
  if (ay <= kernel.plateau()) return 1.0;
  if (ay >= kernel.support()) return 0.0;
  // theta(y) = P(S >= |y| - a) where S is the sum of the k uniforms.
  const double s = ay - kernel.a();
  const double x = kernel.k() * (kernel.delta() - s) / (2.0 * kernel.delta());
  return irwin_hall_cdf(kernel.k(), x);
}

double theta_fourier(const SmoothingKernel& kernel, double x) {
  const double head = 2.0 * kernel.a() * sinc(2.0 * kPi * kernel.a() * x);
  const double v = 2.0 * kPi * kernel.delta() * x / kernel.k();
  return head * std::pow(sinc(v), kernel.k());
}

double envelope(const SmoothingKernel& kernel, double x) {
  const double ax = std::abs(x);
  const double flat = 2.0 * kernel.a();
  if (ax == 0.0) return flat;
  const double decay = 1.0 / (kPi * ax);
  const double smooth =
      decay * std::pow(kernel.k() / (2.0 * kPi * ax * kernel.delta()), kernel.k());
  return std::min({flat, decay, smooth});
}

double theta_via_fourier(const SmoothingKernel& kernel, double y, double tol) {
  const double k = kernel.k();
  const double knee = k / (2.0 * kPi * kernel.delta());
  // Tail of the third envelope branch: (1/(pi k)) knee^k T^-k <= tol/4.
  const double cut =
      std::max(knee, knee * std::pow(4.0 / (kPi * k * tol), 1.0 / k));
  const double freq = kernel.support() + std::abs(y);
  const double n_panels = std::ceil(2.0 * freq * cut);
  if (n_panels > 5e7)
    throw DomainError("inverse-Fourier truncation at x=" + std::to_string(cut) +
                      " is too long for k=" + std::to_string(kernel.k()));
  const auto panels = static_cast<std::size_t>(n_panels);
  const double width = cut / n_panels;
  const auto& rule = gauss_legendre(16);
  double half = deterministic_sum<double>(panels, [&](std::size_t i) {
    const double lo = width * static_cast<double>(i);
    return integrate_panels<double>(
        [&](double x) {
          return theta_fourier(kernel, x) * std::cos(2.0 * kPi * x * y);
        },
        lo, lo + width, 1, rule);
  });
  return 2.0 * half;
}

}  // namespace ps4
