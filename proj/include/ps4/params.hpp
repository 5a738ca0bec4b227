#pragma once

#include <optional>

#include "ps4/smoothing.hpp"

namespace ps4 {

/// One coherent parameter set for a counting run:
///   X = (N/3)^(1/c), Delta = X^(1/4 - c), H = ln^2 X / epsilon,
///   D free (defaults to sqrt(X)/(ln X)^A), kernel = kernel_for_run(eps, X).
struct RunParams {
  double N;
  double c;
  double epsilon;
  double X;
  double A;
  double D;
  double Delta;
  double H;
  SmoothingKernel kernel;
};

/// sqrt(X) / (ln X)^A.
double paper_D(double X, double A);

/// (ln ln X)^6 / (ln X)^theta0, the window that shrinks with X.
double shrinking_epsilon(double X);

/// Builds the bundle from the target N. D defaults to paper_D(X, A).
RunParams make_params(double N, double c, double epsilon, double A = 1.0,
                      std::optional<double> D = std::nullopt);

/// Same with N = 3 X^c.
RunParams params_for_X(double X, double c, double epsilon, double A = 1.0,
                       std::optional<double> D = std::nullopt);

}  // namespace ps4
