#include "ps4/bounds.hpp"

#include <cmath>
#include <numbers>

#include "ps4/error.hpp"

namespace ps4 {

bool ExponentPair::admissible() const {
  const Rational half(1, 2);
  return Rational(0) <= kappa && kappa <= half && half <= lambda &&
         lambda <= Rational(1);
}

ExponentPair ep_A(const ExponentPair& p) {
  const Rational d = 2 * p.kappa + 2;
  return {p.kappa / d, Rational(1, 2) + p.lambda / d};
}

ExponentPair ep_B(const ExponentPair& p) {
  return {p.lambda - Rational(1, 2), p.kappa + Rational(1, 2)};
}

ExponentPair apply_word(std::string_view word, ExponentPair start) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it == 'A' || *it == 'a')
      start = ep_A(start);
    else if (*it == 'B' || *it == 'b')
      start = ep_B(start);
    else
      throw DomainError("exponent-pair word may only contain A and B");
  }
  return start;
}

double ep_bound(const ExponentPair& p, double Y, double Xlen) {
  return std::pow(Y, p.kappa.to_double()) * std::pow(Xlen, p.lambda.to_double()) +
         1.0 / Y;
}

std::array<double, 6> type1_terms(double F, double M, double L) {
  using std::pow;
  return {pow(F, 3.0 / 14) * pow(M, 41.0 / 56) * pow(L, 29.0 / 56),
          pow(F, 1.0 / 5) * pow(M, 3.0 / 4) * pow(L, 11.0 / 20),
          pow(F, 1.0 / 8) * pow(M, 13.0 / 16) * pow(L, 11.0 / 16),
          pow(M, 3.0 / 4) * L,
          M * pow(L, 3.0 / 4),
          M * L / F};
}

double type1_bound(double F, double M, double L) {
  double s = 0.0;
  for (double t : type1_terms(F, M, L)) s += t;
  return s;
}

std::array<double, 11> type2_terms(double F, double M, double L) {
  using std::pow;
  auto root = [&](double f, double m, double l, double den) {
    return pow(F, f / den) * pow(M, m / den) * pow(L, l / den);
  };
  return {root(4, 31, 34, 42), root(6, 53, 51, 66), root(6, 46, 41, 56),
          root(2, 38, 29, 40), root(3, 43, 32, 46), root(1, 9, 6, 10),
          root(2, 7, 6, 10),   root(1, 6, 6, 8),    std::sqrt(M) * L,
          M * std::sqrt(L),    M * L / std::sqrt(F)};
}

double type2_bound(double F, double M, double L) {
  double s = 0.0;
  for (double t : type2_terms(F, M, L)) s += t;
  return s;
}

std::string AffineExponent::str() const {
  std::string out = u.str();
  if (v != Rational(0)) {
    if (v < Rational(0))
      out += " - " + (-v).str() + "*c";
    else
      out += " + " + v.str() + "*c";
  }
  if (eta) out += " + eta";
  return out;
}

AffineExponent max_at(const AffineExponent& a, const AffineExponent& b,
                      const Rational& c) {
  const Rational va = a.at(c), vb = b.at(c);
  if (va != vb) return va > vb ? a : b;
  return b.v < a.v ? b : a;
}

namespace {

// Exponent of one bound term with m = log_X M, l = log_X L, f = log_X F:
//   scale * (k + fc * c + mc * m + lc * l).
// Positive powers of F are taken at |t| = H = X^o(1), so F = X^c; negative
// powers at |t| = Delta, where F = X^(1/4) and the term is a constant.
struct Shape {
  std::string label;
  Rational k, fc, mc, lc;
  Rational scale = 1;
};

enum class Var { M, L };

struct Regime {
  std::string name;
  Var var;
  Rational lo, hi;
  std::vector<Shape> shapes;
};

AffineExponent evaluate(const Shape& s, Var var, const Rational& r) {
  const Rational m = var == Var::M ? r : Rational(1) - r;
  const Rational l = Rational(1) - m;
  return {s.scale * (s.k + s.mc * m + s.lc * l), s.scale * s.fc, true};
}

Shape from_root(std::string label, long f, long m, long l, long den) {
  return {std::move(label), 0, Rational(f, den), Rational(m, den), Rational(l, den)};
}

std::vector<Regime> regimes() {
  const Rational quarter(1, 4);
  // Heath-Brown decomposition with U = X^(1/5), V = X^(1/3), Z ~ X^(2/5):
  // Type I sums have M <= X^(3/5), Type II sums have X^(1/5) <= L <= X^(1/3).
  const Rational m_split(6177, 12880), l_split(261, 805);

  const ExponentPair p1 = apply_word("AAB");
  Regime small_m{"typeI.small_M", Var::M, 0, m_split, {}};
  // Sum over l of (|t| X^c / L)^kappa L^lambda, then over m.
  small_m.shapes.push_back({"pair" , 0, p1.kappa, 1, p1.lambda - p1.kappa});
  small_m.shapes.push_back({"pair.tail", -quarter, 0, 1, 1});

  Regime large_m{"typeI.large_M", Var::M, m_split, Rational(3, 5), {}};
  large_m.shapes = {from_root("bw1", 12, 41, 29, 56),
                    from_root("bw2", 4, 15, 11, 20),
                    from_root("bw3", 2, 13, 11, 16),
                    {"bw4", 0, 0, Rational(3, 4), 1},
                    {"bw5", 0, 0, 1, Rational(3, 4)},
                    {"bw6", -quarter, 0, 1, 1}};

  const ExponentPair p2 = apply_word("AB");
  const Rational half(1, 2), q(1, 5);
  Regime small_l{"typeII.small_L", Var::L, q, l_split, {}};
  // Weyl shift with Q = X^(1/5): X^2/Q plus (X/Q) sum_q |sum_m e(...)| L.
  small_l.shapes.push_back({"shift.diagonal", 2 - q, 0, 0, 0, half});
  small_l.shapes.push_back({"shift.pair", 1 + q * p2.kappa - p2.kappa, p2.kappa,
                            p2.lambda, 1, half});
  small_l.shapes.push_back({"shift.tail", 1 - q - quarter + 1, 0, 0, 1, half});

  Regime large_l{"typeII.large_L", Var::L, l_split, Rational(1, 3), {}};
  large_l.shapes = {from_root("sw1", 4, 31, 34, 42),
                    from_root("sw2", 6, 53, 51, 66),
                    from_root("sw3", 6, 46, 41, 56),
                    from_root("sw4", 2, 38, 29, 40),
                    from_root("sw5", 3, 43, 32, 46),
                    from_root("sw6", 1, 9, 6, 10),
                    from_root("sw7", 2, 7, 6, 10),
                    from_root("sw8", 1, 6, 6, 8),
                    {"sw9", 0, 0, half, 1},
                    {"sw10", 0, 0, 1, half},
                    {"sw11", -quarter / 2, 0, 1, 1}};

  return {small_m, large_m, small_l, large_l};
}

}  // namespace

SupExponent sup_S_exponent(const Rational& c) {
  if (!(Rational(1) < c && c < Rational(3, 2)))
    throw DomainError("sup exponent requires 1 < c < 3/2");
  SupExponent out;
  bool first = true;
  for (const auto& reg : regimes()) {
    for (const auto& shape : reg.shapes) {
      for (const Rational& r : {reg.lo, reg.hi}) {
        RegimeTerm term{reg.name + "." + shape.label, r, evaluate(shape, reg.var, r)};
        if (first) {
          out.exponent = term.exponent;
          out.label = term.label;
          first = false;
        } else if (max_at(out.exponent, term.exponent, c) != out.exponent) {
          out.exponent = term.exponent;
          out.label = term.label;
        }
        out.candidates.push_back(std::move(term));
      }
    }
  }
  return out;
}

MomentChain l_moment_chain(const Rational& c) {
  MomentChain ch;
  ch.sup = sup_S_exponent(c).exponent;
  const Rational half(1, 2);
  const AffineExponent two_minus_c{2, -1, false};
  const AffineExponent diag{half, Rational(1, 4), false};  // (c + 2)/4
  ch.e2 = {1, 0, false};
  ch.psi1 = half * (two_minus_c + 2 * ch.sup);
  ch.e3 = max_at(ch.psi1 + half * ch.e2, diag + ch.e2, c);
  ch.psi2 = half * (two_minus_c + 3 * ch.sup);
  ch.e4 = max_at(ch.psi2 + half * ch.e3, diag + ch.e3, c);
  return ch;
}

AffineExponent assembled_exponent(const Rational& c) {
  const MomentChain ch = l_moment_chain(c);
  const Rational half(1, 2);
  const AffineExponent k_moment{1, 0, false};
  return ch.sup + half * ch.e4 + half * k_moment;
}

Rational c_threshold() {
  Rational c(11, 10);
  for (int iter = 0; iter < 16; ++iter) {
    const AffineExponent lhs = assembled_exponent(c);
    // u + v c = 4 - c.
    const Rational next = (Rational(4) - lhs.u) / (lhs.v + 1);
    if (!(Rational(1) < next && next < Rational(3, 2)))
      throw DomainError("threshold equation has no root in (1, 3/2)");
    if (assembled_exponent(next) == lhs) return next;
    c = next;
  }
  throw DomainError("threshold iteration did not settle on one branch");
}

double theta0_value() {
  return 0.5 - std::numbers::e * std::numbers::ln2 / 4.0;
}

}  // namespace ps4
