#pragma once

#include <vector>

namespace ps4 {

/// Smooth bump theta(y): the indicator of [-a, a] convolved with k uniform
/// densities on [-delta/k, delta/k]. It equals 1 on |y| <= a - delta,
/// vanishes on |y| >= a + delta, and is (k-1) times continuously
/// differentiable. Its Fourier transform has the closed form
///   Theta(x) = sin(2 pi a x)/(pi x) * [sin(2 pi delta x/k)/(2 pi delta x/k)]^k.
class SmoothingKernel {
 public:
  /// Requires 0 < delta < a/4 and k >= 1.
  SmoothingKernel(double a, double delta, int k);

  double a() const { return a_; }
  double delta() const { return delta_; }
  int k() const { return k_; }
  /// Half-width of the support, a + delta.
  double support() const { return a_ + delta_; }
  /// Half-width of the region where theta == 1, a - delta.
  double plateau() const { return a_ - delta_; }

  /// Spline knots of theta on [plateau, support] (k + 1 points).
  std::vector<double> band_knots() const;

 private:
  double a_, delta_;
  int k_;
};

SmoothingKernel make_kernel(double a, double delta, int k);

/// a = 0.9 eps, delta = 0.1 eps, k = floor(ln X).
SmoothingKernel kernel_for_run(double epsilon, double X);

/// a = 5 eps/4, delta = eps/4, k = floor(ln X0); the ternary-count kernel.
SmoothingKernel ternary_kernel(double epsilon, double X0);

double theta(const SmoothingKernel& kernel, double y);
double theta_fourier(const SmoothingKernel& kernel, double x);

/// min(2a, 1/(pi|x|), (1/(pi|x|)) (k/(2 pi |x| delta))^k); 2a at x = 0.
double envelope(const SmoothingKernel& kernel, double x);

/// theta(y) recomputed as the inverse Fourier integral of Theta, truncated
/// where the envelope tail drops below tol/4. Independent of theta().
/// Throws DomainError when the truncation point needs too many panels
/// (small k decays too slowly).
double theta_via_fourier(const SmoothingKernel& kernel, double y,
                         double tol = 1e-10);

/// CDF of the Irwin-Hall distribution (sum of k uniforms on [0, 1]),
/// evaluated through the cardinal B-spline recurrence.
double irwin_hall_cdf(int k, double x);

}  // namespace ps4
