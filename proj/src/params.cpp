#include <cmath>

#include "ps4/bounds.hpp"
#include "ps4/error.hpp"
#include "ps4/params.hpp"

namespace ps4 {

double paper_D(double X, double A) {
  return std::sqrt(X) / std::pow(std::log(X), A);
}

double shrinking_epsilon(double X) {
  if (!(X > std::exp(1.0))) throw DomainError("shrinking_epsilon requires X > e");
  return std::pow(std::log(std::log(X)), 6) /
         std::pow(std::log(X), theta0_value());
}

RunParams make_params(double N, double c, double epsilon, double A,
                      std::optional<double> D) {
  if (!(c > 1.0)) throw DomainError("exponent c must exceed 1");
  if (!(N > 0.0)) throw DomainError("N must be positive");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(A > 0.0)) throw DomainError("A must be positive");
  const double X = std::pow(N / 3.0, 1.0 / c);
  if (!(X >= 3.0)) throw DomainError("X = (N/3)^(1/c) must be at least 3");
  const double lx = std::log(X);
  return RunParams{N,
                   c,
                   epsilon,
                   X,
                   A,
                   D.value_or(paper_D(X, A)),
                   std::pow(X, 0.25 - c),
                   lx * lx / epsilon,
                   kernel_for_run(epsilon, X)};
}

RunParams params_for_X(double X, double c, double epsilon, double A,
                       std::optional<double> D) {
  if (!(c > 1.0)) throw DomainError("exponent c must exceed 1");
  auto p = make_params(3.0 * std::pow(X, c), c, epsilon, A, D);
  p.X = X;  // avoid the round trip through pow
  p.Delta = std::pow(X, 0.25 - c);
  p.H = std::log(X) * std::log(X) / epsilon;
  if (!D) p.D = paper_D(X, A);
  return p;
}

}  // namespace ps4
