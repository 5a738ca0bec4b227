#include "ps4/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ps4/error.hpp"
#include "ps4/parallel.hpp"
#include "ps4/smoothing.hpp"

namespace ps4 {

std::pair<std::size_t, std::size_t> PairSumTable::open_window(double lo,
                                                              double hi) const {
  auto by_s = [](const Entry& e, double v) { return e.s < v; };
  auto v_by = [](double v, const Entry& e) { return v < e.s; };
  auto first = std::upper_bound(entries_.begin(), entries_.end(), lo, v_by);
  auto last = std::lower_bound(first, entries_.end(), hi, by_s);
  if (last < first) last = first;
  return {static_cast<std::size_t>(first - entries_.begin()),
          static_cast<std::size_t>(last - entries_.begin())};
}

std::pair<std::size_t, std::size_t> PairSumTable::closed_window(double lo,
                                                                double hi) const {
  auto by_s = [](const Entry& e, double v) { return e.s < v; };
  auto v_by = [](double v, const Entry& e) { return v < e.s; };
  auto first = std::lower_bound(entries_.begin(), entries_.end(), lo, by_s);
  auto last = std::upper_bound(first, entries_.end(), hi, v_by);
  return {static_cast<std::size_t>(first - entries_.begin()),
          static_cast<std::size_t>(last - entries_.begin())};
}

PairSumTable build_pair_table(double lo, double hi, double c,
                              const PrimeTable& table, std::size_t budget) {
  if (hi > static_cast<double>(table.limit()))
    throw DomainError("prime table limit " + std::to_string(table.limit()) +
                      " does not cover " + std::to_string(hi));
  PairSumTable t;
  t.c_ = c;
  auto ps = table.primes_in(lo, hi);
  auto ls = table.logp_in(lo, hi);
  const std::size_t n = ps.size();
  if (n > 0 && n > budget / n)
    throw DomainError("pair table needs " + std::to_string(n) + "^2 entries, over the budget of " +
                      std::to_string(budget));
  t.primes_.assign(ps.begin(), ps.end());
  t.logs_.assign(ls.begin(), ls.end());
  t.powers_.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.powers_[i] = std::exp(c * t.logs_[i]);

  t.entries_.resize(n * n);
  parallel_for_blocks(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j)
      t.entries_[i * n + j] = {t.powers_[i] + t.powers_[j],
                               static_cast<std::uint32_t>(i),
                               static_cast<std::uint32_t>(j)};
  });
  std::sort(t.entries_.begin(), t.entries_.end(), [](const auto& a, const auto& b) {
    return a.s < b.s || (a.s == b.s && (a.i < b.i || (a.i == b.i && a.j < b.j)));
  });
  t.prefix_.resize(t.entries_.size() + 1);
  t.prefix_[0] = 0.0L;
  for (std::size_t k = 0; k < t.entries_.size(); ++k) {
    const auto& e = t.entries_[k];
    t.prefix_[k + 1] = t.prefix_[k] + static_cast<long double>(t.logs_[e.i]) *
                                          static_cast<long double>(t.logs_[e.j]);
  }
  return t;
}

PairSumTable build_pair_table(double X, double c, const PrimeTable& table,
                              std::size_t budget) {
  return build_pair_table(X / 2.0, X, c, table, budget);
}

void check_precision(double N, double epsilon) {
  if (!(epsilon >= 1e3 * N * 1e-16))
    throw DomainError("window below precision floor: epsilon " + std::to_string(epsilon) +
                      " < 1e3 * N * 1e-16");
}

namespace {

void check_pairs(const RunParams& params, const PrimeTable& table,
                 const PairSumTable& pairs) {
  check_precision(params.N, params.epsilon);
  if (params.X > static_cast<double>(table.limit()))
    throw DomainError("prime table limit " + std::to_string(table.limit()) +
                      " does not cover X = " + std::to_string(params.X));
  if (pairs.c() != params.c)
    throw DomainError("pair table was built for a different exponent");
}

// Per-p1 inner sums over (p2, p3, p4), indexed like pairs.primes().
struct Inner {
  std::vector<long double> raw;
  std::vector<std::int64_t> count;
  std::vector<long double> smooth;
};

Inner inner_sums(const RunParams& params, const PairSumTable& pairs, bool smooth) {
  const std::size_t n = pairs.primes().size();
  const auto pw = pairs.powers();
  const auto lg = pairs.logs();
  const auto entries = pairs.entries();
  const double eps = params.epsilon;
  const double plateau = params.kernel.plateau(), support = params.kernel.support();
  Inner out{std::vector<long double>(n), std::vector<std::int64_t>(n),
            std::vector<long double>(smooth ? n : 0)};
  parallel_for_blocks(n, [&](std::size_t a) {
    long double raw = 0.0L, sm = 0.0L;
    std::int64_t count = 0;
    for (std::size_t b = 0; b < n; ++b) {
      const double head = pw[a] + pw[b];
      const double target = params.N - head;
      auto [lo, hi] = pairs.open_window(target - eps, target + eps);
      raw += lg[b] * pairs.weight(lo, hi);
      count += static_cast<std::int64_t>(hi - lo);
      if (!smooth) continue;
      auto [flo, fhi] = pairs.closed_window(target - plateau, target + plateau);
      auto [slo, shi] = pairs.open_window(target - support, target + support);
      long double s = pairs.weight(flo, fhi);
      auto band = [&](std::size_t from, std::size_t to) {
        for (std::size_t k = from; k < to; ++k) {
          const auto& e = entries[k];
          const double y = (head + e.s) - params.N;
          s += static_cast<long double>(theta(params.kernel, y)) * lg[e.i] * lg[e.j];
        }
      };
      // The plateau window sits inside the support window.
      band(slo, std::max(slo, flo));
      band(std::min(fhi, shi), shi);
      sm += lg[b] * s;
    }
    out.raw[a] = raw;
    out.count[a] = count;
    if (smooth) out.smooth[a] = sm;
  });
  return out;
}

std::vector<std::int64_t> r_values(const PairSumTable& pairs, const PrimeTable& table) {
  std::vector<std::int64_t> r(pairs.primes().size());
  for (std::size_t a = 0; a < r.size(); ++a) r[a] = r2(pairs.primes()[a] - 1, table);
  return r;
}

template <typename F>
double ordered_sum(std::size_t n, F&& term) {
  std::vector<long double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = term(i);
  return static_cast<double>(pairwise_reduce(std::move(v)));
}

}  // namespace

RawCount gamma_raw(const RunParams& params, const PrimeTable& table) {
  return gamma_raw(params, table, build_pair_table(params.X, params.c, table));
}

RawCount gamma_raw(const RunParams& params, const PrimeTable& table,
                   const PairSumTable& pairs) {
  check_pairs(params, table, pairs);
  const Inner in = inner_sums(params, pairs, false);
  const auto r = r_values(pairs, table);
  const auto lg = pairs.logs();
  RawCount out{};
  out.gamma = ordered_sum(r.size(), [&](std::size_t a) {
    return static_cast<long double>(r[a]) * lg[a] * in.raw[a];
  });
  for (std::size_t a = 0; a < r.size(); ++a)
    if (r[a] > 0) out.count += in.count[a];
  return out;
}

double gamma0(const RunParams& params, const PrimeTable& table) {
  return gamma0(params, table, build_pair_table(params.X, params.c, table));
}

double gamma0(const RunParams& params, const PrimeTable& table,
              const PairSumTable& pairs) {
  check_pairs(params, table, pairs);
  const Inner in = inner_sums(params, pairs, true);
  const auto r = r_values(pairs, table);
  const auto lg = pairs.logs();
  return ordered_sum(r.size(), [&](std::size_t a) {
    return static_cast<long double>(r[a]) * lg[a] * in.smooth[a];
  });
}

std::array<std::int64_t, 3> divisor_range_weights(std::uint64_t p1, double D,
                                                  double X,
                                                  const PrimeTable& table) {
  std::array<std::int64_t, 3> w{0, 0, 0};
  const double upper = X / D;
  for (std::uint64_t d : divisors(factorize(p1 - 1, table))) {
    const double dd = static_cast<double>(d);
    const int slot = dd <= D ? 0 : (dd < upper ? 1 : 2);
    w[slot] += chi4(static_cast<std::int64_t>(d));
  }
  return w;
}

GammaReport gamma_parts(const RunParams& params, const PrimeTable& table) {
  return gamma_parts(params, table, build_pair_table(params.X, params.c, table));
}

GammaReport gamma_parts(const RunParams& params, const PrimeTable& table,
                        const PairSumTable& pairs) {
  if (!(params.D > 1.0) || !(params.D < params.X / params.D))
    throw DomainError("divisor ranges not ordered: need 1 < D < X/D");
  check_pairs(params, table, pairs);
  const Inner in = inner_sums(params, pairs, true);
  const auto r = r_values(pairs, table);
  const auto lg = pairs.logs();
  const std::size_t n = r.size();
  std::vector<std::array<std::int64_t, 3>> w(n);
  for (std::size_t a = 0; a < n; ++a)
    w[a] = divisor_range_weights(pairs.primes()[a], params.D, params.X, table);

  GammaReport rep{0.0, 0, 0.0, 0.0, 0.0, 0.0, params};
  rep.gamma_raw = ordered_sum(n, [&](std::size_t a) {
    return static_cast<long double>(r[a]) * lg[a] * in.raw[a];
  });
  for (std::size_t a = 0; a < n; ++a)
    if (r[a] > 0) rep.raw_count += in.count[a];
  rep.gamma0 = ordered_sum(n, [&](std::size_t a) {
    return static_cast<long double>(r[a]) * lg[a] * in.smooth[a];
  });
  double* parts[3] = {&rep.g1, &rep.g2, &rep.g3};
  for (int s = 0; s < 3; ++s)
    *parts[s] = ordered_sum(n, [&](std::size_t a) {
      return static_cast<long double>(w[a][s]) * lg[a] * in.smooth[a];
    });
  return rep;
}

SearchResult find_solution(double N, double c, double epsilon, SearchRange range,
                           const PrimeTable& table) {
  if (!(c > 1.0)) throw DomainError("exponent c must exceed 1");
  if (!(N > 0.0)) throw DomainError("N must be positive");
  check_precision(N, epsilon);
  SearchResult res;
  if (range == SearchRange::Theorem) {
    const double X = std::pow(N / 3.0, 1.0 / c);
    res.lo = X / 2.0;
    res.hi = X;
    if (X > static_cast<double>(table.limit()))
      throw DomainError("prime table limit " + std::to_string(table.limit()) +
                        " does not cover X = " + std::to_string(X));
  } else {
    res.lo = 1.5;
    res.hi = std::pow(N, 1.0 / c);
    if (res.hi > static_cast<double>(table.limit())) {
      res.hi = static_cast<double>(table.limit());
      res.complete = false;
    }
  }
  const PairSumTable pairs = build_pair_table(res.lo, res.hi, c, table);
  const auto ps = pairs.primes();
  const auto pw = pairs.powers();
  if (ps.empty()) throw DomainError("search range contains no primes");
  for (std::size_t a = 0; a < ps.size(); ++a) {
    auto witness = linnik_witness(ps[a]);
    if (!witness) continue;
    for (std::size_t b = 0; b < ps.size(); ++b) {
      const double target = N - (pw[a] + pw[b]);
      auto [lo, hi] = pairs.open_window(target - epsilon, target + epsilon);
      for (std::size_t k = lo; k < hi; ++k) {
        const auto& e = pairs.entries()[k];
        const double residual = std::abs(pw[a] + pw[b] + pw[e.i] + pw[e.j] - N);
        if (!(residual < epsilon)) continue;
        res.solution = Solution{{ps[a], ps[b], ps[e.i], ps[e.j]},
                                witness->first, witness->second, residual};
        return res;
      }
    }
  }
  return res;
}

TernaryReport ternary_count(double N0, double c, double epsilon,
                            const PrimeTable& table) {
  if (!(c > 1.0 && c < 3.0) || c == 2.0)
    throw DomainError("ternary count requires 1 < c < 3, c != 2");
  if (!(N0 > 0.0)) throw DomainError("N0 must be positive");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  check_precision(N0, epsilon);
  TernaryReport rep{0.0, 0, std::pow(N0 / 2.0, 1.0 / c)};
  const PairSumTable pairs = build_pair_table(rep.X0, c, table);
  const auto pw = pairs.powers();
  const auto lg = pairs.logs();
  const std::size_t n = pw.size();
  std::vector<long double> weight(n);
  std::vector<std::int64_t> count(n);
  parallel_for_blocks(n, [&](std::size_t a) {
    const double target = N0 - pw[a];
    auto [lo, hi] = pairs.open_window(target - epsilon, target + epsilon);
    weight[a] = lg[a] * pairs.weight(lo, hi);
    count[a] = static_cast<std::int64_t>(hi - lo);
  });
  rep.B = static_cast<double>(pairwise_reduce(std::move(weight)));
  for (auto k : count) rep.count += k;
  return rep;
}

std::array<std::complex<double>, 5> five_term_split(std::complex<double> S1,
                                                    std::complex<double> S2,
                                                    std::complex<double> I1,
                                                    std::complex<double> I2) {
  const auto d1 = S1 - I1, d2 = S2 - I2;
  return {I1 * I1 * I1 * I2, d2 * I1 * I1 * I1, S2 * d1 * I1 * I1, S1 * S2 * d1 * I1,
          S1 * S1 * S2 * d1};
}

}  // namespace ps4
