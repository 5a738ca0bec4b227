#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ps4/rational.hpp"

namespace ps4 {

struct ExponentPair {
  Rational kappa;
  Rational lambda;

  /// 0 <= kappa <= 1/2 <= lambda <= 1.
  bool admissible() const;
  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

ExponentPair ep_A(const ExponentPair& p);
ExponentPair ep_B(const ExponentPair& p);

/// Applies a word over {A, B} right to left: "AAB" means A(A(B(start))).
ExponentPair apply_word(std::string_view word, ExponentPair start = {0, 1});

/// Y^kappa Xlen^lambda + 1/Y.
double ep_bound(const ExponentPair& p, double Y, double Xlen);

/// Terms of the Type I estimate, without the (ML)^eta factor.
std::array<double, 6> type1_terms(double F, double M, double L);
double type1_bound(double F, double M, double L);
/// Terms of the Type II estimate.
std::array<double, 11> type2_terms(double F, double M, double L);
double type2_bound(double F, double M, double L);

/// X-exponent u + v c, with an optional "+ eta" slot that never takes a value.
struct AffineExponent {
  Rational u;
  Rational v;
  bool eta = false;

  Rational at(const Rational& c) const { return u + v * c; }
  std::string str() const;

  friend AffineExponent operator+(const AffineExponent& a, const AffineExponent& b) {
    return {a.u + b.u, a.v + b.v, a.eta || b.eta};
  }
  friend AffineExponent operator-(const AffineExponent& a, const AffineExponent& b) {
    return {a.u - b.u, a.v - b.v, a.eta || b.eta};
  }
  friend AffineExponent operator*(const Rational& s, const AffineExponent& a) {
    return {s * a.u, s * a.v, a.eta};
  }
  friend bool operator==(const AffineExponent&, const AffineExponent&) = default;
};

/// Larger of a and b at c. Ties go to the smaller c-coefficient so that the
/// result stays valid on an interval to the left of c.
AffineExponent max_at(const AffineExponent& a, const AffineExponent& b,
                      const Rational& c);

/// One Type I/II exponent expression evaluated at a regime boundary.
struct RegimeTerm {
  std::string label;
  Rational regime_point;  ///< log_X of M (Type I) or L (Type II)
  AffineExponent exponent;
};

struct SupExponent {
  AffineExponent exponent;
  std::string label;  ///< which term attains the maximum
  std::vector<RegimeTerm> candidates;
};

/// X-exponent of sup |S(t)| over Delta <= |t| <= H. Requires 1 < c < 3/2.
SupExponent sup_S_exponent(const Rational& c);

/// Exponent chain of the moment bounds for |S|^2, |S|^3, |S|^4 against
/// |Theta|; psi1 and psi2 are the intermediate exponents of the third and
/// fourth moment arguments.
struct MomentChain {
  AffineExponent sup, e2, psi1, e3, psi2, e4;
};
MomentChain l_moment_chain(const Rational& c);

/// Exponent of max|S| (int |S|^4 |Theta|)^(1/2) (int |K|^2 |Theta|)^(1/2),
/// to be compared with 4 - c.
AffineExponent assembled_exponent(const Rational& c);

/// Solves assembled_exponent(c) = 4 - c exactly.
Rational c_threshold();

/// 1/2 - e ln 2 / 4.
double theta0_value();

}  // namespace ps4
