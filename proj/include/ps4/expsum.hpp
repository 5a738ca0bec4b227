#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ps4/arith.hpp"
#include "ps4/params.hpp"
#include "ps4/smoothing.hpp"

namespace ps4 {

/// Value of an exponential sum or oscillatory integral at one t.
struct ComplexAmp {
  double re = 0.0;
  double im = 0.0;

  ComplexAmp() = default;
  ComplexAmp(double r, double i) : re(r), im(i) {}
  ComplexAmp(std::complex<double> z) : re(z.real()), im(z.imag()) {}
  operator std::complex<double>() const { return {re, im}; }

  double abs() const { return std::hypot(re, im); }
  ComplexAmp conj() const { return {re, -im}; }
  friend ComplexAmp operator+(ComplexAmp a, ComplexAmp b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexAmp operator-(ComplexAmp a, ComplexAmp b) {
    return {a.re - b.re, a.im - b.im};
  }
};

/// Half-open interval (lo, hi].
struct Interval {
  double lo;
  double hi;
};

enum class Weight { LogPrime, VonMangoldt };

/// S_{l,d;J}(t) = sum over p in J, p = l (mod d) of e(t p^c) log p
/// (or Lambda(n) over all integers n for Weight::VonMangoldt).
struct ExpSumSpec {
  double c;
  Interval interval;
  std::int64_t l = 1;
  std::int64_t d = 1;
  Weight weight = Weight::LogPrime;
};

/// sum_j w_j e(t u_j) for fixed frequencies u_j; the evaluation engine behind
/// every prime sum here. Reductions use the fixed block tree.
class PhaseSum {
 public:
  PhaseSum() = default;
  PhaseSum(std::vector<double> freqs, std::vector<double> weights);

  std::size_t size() const { return freqs_.size(); }
  std::span<const double> freqs() const { return freqs_; }
  std::span<const double> weights() const { return weights_; }
  double max_freq() const;

  ComplexAmp at(double t) const;
  /// Values at t0 + i*step, i < count, by phase rotation (re-seeded
  /// every 256 steps).
  std::vector<std::complex<double>> on_grid(double t0, double step,
                                            std::size_t count) const;

 private:
  std::vector<double> freqs_, weights_;
};

/// |t| * hi^c * 1e-16: absolute phase error carried by e(t p^c).
double phase_error_budget(double t, double hi, double c);

/// Frequencies p^c and weights for the spec's summands.
PhaseSum build_prime_sum(const ExpSumSpec& spec, const PrimeTable& table);

/// Throws DomainError if the interval exceeds the table, gcd(l, d) != 1,
/// or the phase budget exceeds 1e-6.
ComplexAmp eval_S(const ExpSumSpec& spec, double t, const PrimeTable& table);

/// I_J(t) = integral over J of e(t y^c) dy. Panels at most 1/8 of the local
/// wavelength, 16-point Gauss-Legendre on each.
ComplexAmp eval_I(double c, Interval interval, double t);

/// Lambda-weighted sum over (mu y, y] in class a mod d minus the integral
/// over (mu y, y] divided by phi(d).
ComplexAmp eval_E(double y, double t, std::int64_t d, std::int64_t a,
                  double mu, double c, const PrimeTable& table);

struct BvGrid {
  /// Points of the geometric y-grid on [sqrt X, X]; at least 16.
  std::size_t points = 16;
};

struct BvReport {
  double value;       ///< sum_d max_y max_a |E|
  double ratio;       ///< value / (X / ln^A X)
  bool t_in_range;    ///< |t| < X^(1/4 - c)
  std::size_t grid_points;
};

BvReport bv_statistic(double X, double t, std::int64_t Dmax, double c,
                      double mu, const PrimeTable& table, BvGrid grid = {},
                      double A = 3.0);

/// Per-prime weights of K(t): for p in (X/2, X], sum of chi4((p-1)/m) over
/// even m < D with m | p-1 and p > 1 + mX/D, times log p.
PhaseSum build_K_sum(const RunParams& params, const PrimeTable& table);
ComplexAmp eval_K(double t, const RunParams& params, const PrimeTable& table);

struct GapReport {
  double gap;    ///< |S(t) - I(t)| over (X/2, X]
  double ratio;  ///< gap / (X / exp((ln X)^(1/5)))
};

/// Requires 1 < c < 3, c != 2, |t| <= X^(1/4 - c).
GapReport sl_gap(double X, double c, double t, const PrimeTable& table);

/// Exact integral of |sum|^2 over [t0, t1] through the pair expansion
/// sum_{j,k} w_j w_k integral e(t (u_j - u_k)) dt.
double l2_norm_exact(const PhaseSum& sum, double t0, double t1);

/// Integral of |I(t)|^2 over [-T, T] for the interval J.
double l2_norm_I(double c, Interval interval, double T);

/// Integral of |sum(t)|^2 |Theta(t)| over [t0, t1] on a uniform grid with
/// `samples_per_period` points per period of the fastest frequency.
double theta_weighted_l2(const PhaseSum& sum, const SmoothingKernel& kernel,
                         double t0, double t1, int samples_per_period = 16);

struct MomentReport {
  double L2_S;       ///< integral_{-Delta}^{Delta} |S|^2
  double L2_I;       ///< integral_{-Delta}^{Delta} |I|^2
  double unit_L2_S;  ///< integral_n^{n+1} |S|^2
  double ratio_S;    ///< L2_S / (X^(2-c) ln^3 X)
  double ratio_I;    ///< L2_I / (X^(2-c) ln X)
  double ratio_unit; ///< unit_L2_S / (X ln^3 X)
};

MomentReport moment_integrals(const RunParams& params, const PrimeTable& table,
                              double n = 1.0);

struct KMomentReport {
  double value;  ///< integral_Delta^H |K|^2 |Theta|
  double ratio;  ///< value / (X ln^7 X)
};

KMomentReport k_moment(const RunParams& params, const PrimeTable& table,
                       int samples_per_period = 16);

/// Both sides of the shift inequality
///   |sum a(n)|^2 <= (1 + N/Q) sum_{|q|<=Q} (1 - |q|/Q) sum_n a(n+q) conj(a(n))
/// for a sequence of length N. The right side is returned as its real part.
struct GallagherSides {
  double lhs;
  double rhs;
};
GallagherSides gallagher_sides(std::span<const std::complex<double>> a,
                               std::int64_t Q);

}  // namespace ps4
