#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ps4 {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, computed once per n and cached (thread-safe).
const GaussRule& gauss_legendre(std::size_t n);

/// Integrates f over [a, b] split into n_panels equal panels, each with the
/// given rule. Works for any value type supporting + and scalar *.
template <typename T, typename F>
T integrate_panels(F&& f, double a, double b, std::size_t n_panels,
                   const GaussRule& rule) {
  T total{};
  if (n_panels == 0 || b == a) return total;
  const double width = (b - a) / static_cast<double>(n_panels);
  for (std::size_t i = 0; i < n_panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double mid = lo + 0.5 * width, half = 0.5 * width;
    T panel{};
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      panel += f(mid + half * rule.nodes[j]) * rule.weights[j];
    total += panel * half;
  }
  return total;
}

/// Integrates f over consecutive breakpoints b[0] < b[1] < ... with one
/// application of the rule per piece.
template <typename T, typename F>
T integrate_pieces(F&& f, const std::vector<double>& breaks,
                   const GaussRule& rule) {
  T total{};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    total += integrate_panels<T>(f, breaks[i], breaks[i + 1], 1, rule);
  return total;
}

}  // namespace ps4
