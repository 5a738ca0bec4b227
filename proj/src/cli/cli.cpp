#include "ps4/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "ps4/error.hpp"
#include "ps4/parallel.hpp"
#include "ps4/report.hpp"

namespace ps4::cli {

namespace {

enum class Kind { Real, Int, Exact, Text };

struct FlagSpec {
  const char* name;
  Kind kind;
  bool required;
  const char* help;
  std::vector<std::string> choices = {};
};

struct CommandSpec {
  Command command;
  const char* name;
  const char* help;
  std::vector<FlagSpec> flags;
  std::vector<CommandSpec> subs = {};
};

std::optional<double> parse_real(const std::string& s) {
  if (s.find('/') != std::string::npos) {
    try {
      return Rational::parse(s).to_double();
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::int64_t> parse_int(const std::string& s) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) return std::nullopt;
  return v;
}

CLI::Validator validator(Kind kind) {
  switch (kind) {
    case Kind::Real:
      return CLI::Validator(
          [](std::string& s) -> std::string {
            return parse_real(s) ? "" : "Value " + s + " is not a number";
          },
          "NUMBER");
    case Kind::Int:
      return CLI::Validator(
          [](std::string& s) -> std::string {
            return parse_int(s) ? "" : "Value " + s + " is not an integer";
          },
          "INT");
    case Kind::Exact:
      return CLI::Validator(
          [](std::string& s) -> std::string {
            try {
              Rational::parse(s);
              return "";
            } catch (const std::exception& e) {
              return e.what();
            }
          },
          "P/Q");
    case Kind::Text:
      break;
  }
  return CLI::Validator([](std::string&) { return std::string(); }, "TEXT");
}

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> specs = {
      {Command::Sieve, "sieve", "Sieve primes up to --limit (cached when a cache dir is set)",
       {{"limit", Kind::Int, true, "sieve limit"}}},
      {Command::Solve, "solve", "Search for p1^c+p2^c+p3^c+p4^c within eps of N, p1 = x^2+y^2+1",
       {{"N", Kind::Real, true, "target"},
        {"c", Kind::Real, true, "exponent"},
        {"eps", Kind::Real, true, "window half-width"},
        {"range", Kind::Text, false, "theorem: (X/2, X]; full: [2, N^(1/c)]", {"theorem", "full"}},
        {"limit", Kind::Int, false, "prime table limit (clips the full range)"}}},
      {Command::Gamma, "gamma", "Exact and smoothed solution counts",
       {{"N", Kind::Real, false, "target (or give --X)"},
        {"X", Kind::Real, false, "scale, N = 3 X^c"},
        {"c", Kind::Real, true, "exponent"},
        {"eps", Kind::Real, false, "window half-width (default: the shrinking window at X)"},
        {"A", Kind::Real, false, "divisor cutoff exponent, D = sqrt(X)/(ln X)^A"},
        {"D", Kind::Real, false, "divisor cutoff"},
        {"sweep", Kind::Text, false, "X=a:b:steps, geometric"}}},
      {Command::Ternary, "ternary", "Ternary counts over (X0/2, X0]^3",
       {{"N0", Kind::Real, true, "target"},
        {"c", Kind::Real, true, "exponent"},
        {"eps", Kind::Real, true, "window half-width"}}},
      {Command::Expsum, "expsum", "Exponential sum over primes in (lo, hi]",
       {{"c", Kind::Real, true, "exponent"},
        {"t", Kind::Real, true, "frequency"},
        {"lo", Kind::Real, true, "lower end (exclusive)"},
        {"hi", Kind::Real, true, "upper end"},
        {"l", Kind::Int, false, "residue"},
        {"d", Kind::Int, false, "modulus"},
        {"weight", Kind::Text, false, "summand weight", {"logp", "vonmangoldt"}}}},
      {Command::Kernel, "kernel", "Smoothing kernel samples",
       {{"a", Kind::Real, false, "half-width"},
        {"delta", Kind::Real, false, "transition half-width"},
        {"k", Kind::Int, false, "smoothness order"},
        {"eps", Kind::Real, false, "derive a, delta from eps (with --X)"},
        {"X", Kind::Real, false, "derive k = floor(ln X)"},
        {"grid", Kind::Text, false, "theta: y,theta; fourier: x,Theta,envelope", {"theta", "fourier"}},
        {"from", Kind::Real, false, "first grid point"},
        {"to", Kind::Real, false, "last grid point"},
        {"points", Kind::Int, false, "grid size"}}},
      {Command::Bounds, "bounds", "Exact exponent calculus",
       {},
       {{Command::Bounds, "pairs", "Exponent pair from an A/B word applied to (0,1)",
         {{"word", Kind::Text, true, "word over {A,B}, applied right to left"}}},
        {Command::Bounds, "threshold", "Largest admissible c", {}},
        {Command::Bounds, "chain", "Sup and moment exponents at c",
         {{"c", Kind::Exact, true, "exponent as p/q"}}}}},
      {Command::Stats, "stats", "Arithmetic statistics",
       {},
       {{Command::Stats, "linnik", "sum of r(p-1) against its main term",
         {{"X", Kind::Real, false, "upper end"}, {"sweep", Kind::Text, false, "X=a:b:steps"}}},
        {Command::Stats, "singular", "singular product",
         {{"plimit", Kind::Int, true, "largest prime"}}},
        {Command::Stats, "chi4phi", "sum of chi4(d)/phi(d)",
         {{"D", Kind::Real, true, "cutoff"}}},
        {Command::Stats, "hooley", "mid-range divisor statistics",
         {{"omega", Kind::Real, true, "range exponent"},
          {"X", Kind::Real, false, "upper end"},
          {"sweep", Kind::Text, false, "X=a:b:steps"}}}}},
  };
  return specs;
}

using Storage = std::map<std::string, std::string>;

void add_flags(CLI::App& app, const std::vector<FlagSpec>& flags, Storage& store) {
  for (const auto& f : flags) {
    auto* opt = app.add_option(std::string("--") + f.name, store[f.name], f.help);
    if (f.required) opt->required();
    if (!f.choices.empty())
      opt->check(CLI::IsMember(f.choices));
    else
      opt->check(validator(f.kind));
  }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Piatetski-Shapiro-type inequality experiments with Linnik primes", "ps4"};
  app.require_subcommand(1, 1);
  std::string format = "json", cache_dir;
  unsigned threads = 0;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cache-dir", cache_dir, "prime table cache directory (or PS4_CACHE_DIR)");
  app.add_option("--threads", threads, "worker threads (0: all cores)");

  std::map<const CLI::App*, Storage> stores;
  std::map<const CLI::App*, const CommandSpec*> specs;
  for (const auto& cmd : commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    specs[sub] = &cmd;
    add_flags(*sub, cmd.flags, stores[sub]);
    if (!cmd.subs.empty()) sub->require_subcommand(1, 1);
    for (const auto& nested : cmd.subs) {
      auto* s2 = sub->add_subcommand(nested.name, nested.help);
      s2->fallthrough();
      specs[s2] = &nested;
      add_flags(*s2, nested.flags, stores[s2]);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    RunConfig help;
    help.help = app.help();
    return help;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  const CLI::App* chosen = app.get_subcommands().front();
  cfg.command = specs.at(chosen)->command;
  auto collect = [&](const CLI::App* a) {
    for (const auto& [name, value] : stores.at(a))
      if (a->count("--" + name) > 0) cfg.flags[name] = value;
  };
  collect(chosen);
  if (!chosen->get_subcommands().empty()) {
    const CLI::App* nested = chosen->get_subcommands().front();
    cfg.sub = nested->get_name();
    collect(nested);
  }
  cfg.output = format == "csv" ? Format::Csv : Format::Json;
  if (cache_dir.empty())
    if (const char* env = std::getenv("PS4_CACHE_DIR")) cache_dir = env;
  cfg.cache_dir = cache_dir;
  cfg.threads = threads;

  auto has = [&](const char* n) { return cfg.flags.count(n) > 0; };
  if (cfg.command == Command::Gamma && has("sweep") == (has("N") || has("X"))) {
    if (!has("sweep")) throw UsageError("gamma needs one of --N, --X or --sweep");
    throw UsageError("--sweep cannot be combined with --N or --X");
  }
  if (cfg.command == Command::Gamma && has("N") && has("X"))
    throw UsageError("--N and --X are mutually exclusive");
  if (cfg.command == Command::Kernel) {
    const bool explicit_kernel = has("a") && has("delta") && has("k");
    const bool derived = has("eps") && has("X");
    if (explicit_kernel == derived)
      throw UsageError("kernel needs either --a --delta --k or --eps --X");
  }
  if (cfg.command == Command::Stats && (cfg.sub == "linnik" || cfg.sub == "hooley") &&
      has("X") == has("sweep"))
    throw UsageError("stats " + cfg.sub + " needs exactly one of --X or --sweep");
  return cfg;
}

namespace {

struct Flags {
  const std::map<std::string, std::string>& m;

  bool has(const std::string& n) const { return m.count(n) > 0; }
  double real(const std::string& n) const { return *parse_real(m.at(n)); }
  double real(const std::string& n, double fallback) const {
    return has(n) ? real(n) : fallback;
  }
  std::int64_t integer(const std::string& n, std::int64_t fallback) const {
    return has(n) ? *parse_int(m.at(n)) : fallback;
  }
  std::string text(const std::string& n, const std::string& fallback) const {
    return has(n) ? m.at(n) : fallback;
  }
};

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  if (text.rfind("X=", 0) != 0) throw UsageError("--sweep: expected X=a:b:steps");
  std::stringstream ss(text.substr(2));
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--sweep: expected X=a:b:steps");
  auto a = parse_real(parts[0]), b = parse_real(parts[1]);
  auto n = parse_int(parts[2]);
  if (!a || !b || !n || *n < 1 || !(*a > 0.0) || *b < *a)
    throw UsageError("--sweep: need 0 < a <= b and steps >= 1");
  std::vector<double> xs;
  for (std::int64_t i = 0; i < *n; ++i)
    xs.push_back(*n == 1 ? *a : *a * std::pow(*b / *a, static_cast<double>(i) / (*n - 1)));
  return xs;
}

struct TableSource {
  std::filesystem::path dir;
  std::string cache_state = "off";

  PrimeTable get(double reach) {
    if (!(reach >= 2.0) || reach > static_cast<double>(kMaxSieveLimit))
      throw DomainError("prime table limit out of range: " + std::to_string(reach));
    const auto limit = static_cast<std::uint64_t>(std::ceil(reach));
    if (dir.empty()) return sieve_primes(limit);
    const auto file = prime_cache_path(dir, limit);
    if (auto t = load_prime_cache(file, limit)) {
      cache_state = "hit";
      return std::move(*t);
    }
    cache_state = "miss";
    PrimeTable t = sieve_primes(limit);
    save_prime_cache(t, file);
    return t;
  }
};

void emit(std::ostream& out, Format fmt, const Json& j) {
  if (fmt == Format::Csv)
    out << emit_csv({flatten(j)});
  else
    out << emit_json(j) << '\n';
}

void emit_rows(std::ostream& out, Format fmt, const std::vector<Json>& rows) {
  if (fmt == Format::Csv) {
    std::vector<Json> flat;
    for (const auto& r : rows) flat.push_back(flatten(r));
    out << emit_csv(flat);
  } else {
    out << emit_json(Json(rows)) << '\n';
  }
}

RunParams gamma_params(const Flags& f, std::optional<double> X_override) {
  const double c = f.real("c"), A = f.real("A", 1.0);
  std::optional<double> D;
  if (f.has("D")) D = f.real("D");
  if (X_override || f.has("X")) {
    const double X = X_override.value_or(f.has("X") ? f.real("X") : 0.0);
    const double eps = f.has("eps") ? f.real("eps") : shrinking_epsilon(X);
    return params_for_X(X, c, eps, A, D);
  }
  const double N = f.real("N");
  if (!(c > 1.0)) throw DomainError("exponent c must exceed 1");
  const double eps = f.has("eps") ? f.real("eps") : shrinking_epsilon(std::pow(N / 3.0, 1.0 / c));
  return make_params(N, c, eps, A, D);
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  const Flags f{cfg.flags};
  TableSource tables{cfg.cache_dir};
  const Format fmt = cfg.output;

  switch (cfg.command) {
    case Command::Sieve: {
      const auto limit = f.integer("limit", 0);
      if (limit < 2) throw DomainError("--limit must be at least 2");
      PrimeTable t = tables.get(static_cast<double>(limit));
      emit(out, fmt,
           Json{{"limit", t.limit()},
                {"count", t.size()},
                {"largest", t.size() ? t.primes().back() : 0u},
                {"cache", tables.cache_state}});
      return 0;
    }
    case Command::Solve: {
      const double N = f.real("N"), c = f.real("c"), eps = f.real("eps");
      if (!(c > 1.0)) throw DomainError("exponent c must exceed 1");
      if (!(N > 0.0)) throw DomainError("N must be positive");
      const bool full = f.text("range", "theorem") == "full";
      double reach = full ? std::pow(N, 1.0 / c) : std::pow(N / 3.0, 1.0 / c);
      if (f.has("limit")) reach = std::min(reach, static_cast<double>(f.integer("limit", 0)));
      check_precision(N, eps);
      PrimeTable t = tables.get(std::max(reach, 2.0));
      auto res = find_solution(N, c, eps, full ? SearchRange::Full : SearchRange::Theorem, t);
      emit(out, fmt, to_json(res, N, c, eps));
      return 0;
    }
    case Command::Gamma: {
      if (f.has("sweep")) {
        std::vector<Json> rows;
        const auto xs = parse_sweep(f.m.at("sweep"));
        PrimeTable t = tables.get(xs.back() + 1.0);
        for (double X : xs) rows.push_back(to_json(gamma_parts(gamma_params(f, X), t)));
        emit_rows(out, fmt, rows);
        return 0;
      }
      const RunParams p = gamma_params(f, std::nullopt);
      PrimeTable t = tables.get(p.X + 1.0);
      emit(out, fmt, to_json(gamma_parts(p, t)));
      return 0;
    }
    case Command::Ternary: {
      const double N0 = f.real("N0"), c = f.real("c"), eps = f.real("eps");
      if (!(c > 1.0 && c < 3.0) || c == 2.0)
        throw DomainError("ternary count requires 1 < c < 3, c != 2");
      if (!(N0 > 0.0)) throw DomainError("N0 must be positive");
      PrimeTable t = tables.get(std::pow(N0 / 2.0, 1.0 / c) + 1.0);
      emit(out, fmt, to_json(ternary_count(N0, c, eps, t), N0, c, eps));
      return 0;
    }
    case Command::Expsum: {
      ExpSumSpec spec{f.real("c"), {f.real("lo"), f.real("hi")}, f.integer("l", 1),
                      f.integer("d", 1),
                      f.text("weight", "logp") == "vonmangoldt" ? Weight::VonMangoldt
                                                               : Weight::LogPrime};
      const double t = f.real("t");
      PrimeTable table = tables.get(std::max(spec.interval.hi, 2.0));
      const ComplexAmp v = eval_S(spec, t, table);
      emit(out, fmt,
           Json{{"re", v.re}, {"im", v.im}, {"abs", v.abs()},
                {"phase_error_budget", phase_error_budget(t, spec.interval.hi, spec.c)}});
      return 0;
    }
    case Command::Kernel: {
      const SmoothingKernel k =
          f.has("eps") ? kernel_for_run(f.real("eps"), f.real("X"))
                       : make_kernel(f.real("a"), f.real("delta"),
                                     static_cast<int>(f.integer("k", 1)));
      const bool fourier = f.text("grid", "theta") == "fourier";
      const double from = f.real("from", fourier ? 0.0 : -1.1 * k.support());
      const double to = f.real("to", fourier ? 10.0 / k.delta() : 1.1 * k.support());
      const auto points = f.integer("points", 101);
      if (points < 2) throw DomainError("--points must be at least 2");
      std::vector<Json> rows;
      for (std::int64_t i = 0; i < points; ++i) {
        const double x = from + (to - from) * static_cast<double>(i) / (points - 1);
        if (fourier)
          rows.push_back(Json{{"x", x}, {"Theta", theta_fourier(k, x)}, {"envelope", envelope(k, x)}});
        else
          rows.push_back(Json{{"y", x}, {"theta", theta(k, x)}});
      }
      if (fmt == Format::Csv)
        out << emit_csv(rows);
      else
        out << emit_json(Json{{"kernel", to_json(k)}, {"points", rows}}) << '\n';
      return 0;
    }
    case Command::Bounds: {
      if (cfg.sub == "pairs") {
        const std::string word = f.text("word", "");
        Json j = to_json(apply_word(word));
        j["word"] = word;
        emit(out, fmt, j);
      } else if (cfg.sub == "threshold") {
        emit(out, fmt, to_json(c_threshold()));
      } else {
        const Rational c = Rational::parse(f.m.at("c"));
        Json j = to_json(l_moment_chain(c), c);
        const SupExponent s = sup_S_exponent(c);
        j["sup_term"] = s.label;
        const Rational margin = (Rational(4) - c) - assembled_exponent(c).at(c);
        j["assembly_margin"] = to_json(margin);
        emit(out, fmt, j);
      }
      return 0;
    }
    case Command::Stats: {
      if (cfg.sub == "singular") {
        const auto plimit = f.integer("plimit", 0);
        if (plimit < 2) throw DomainError("--plimit must be at least 2");
        PrimeTable t = tables.get(static_cast<double>(plimit));
        const auto sp = singular_product(static_cast<std::uint64_t>(plimit), t);
        emit(out, fmt, Json{{"plimit", plimit}, {"value", sp.value}, {"tail_bound", sp.tail_bound}});
        return 0;
      }
      if (cfg.sub == "chi4phi") {
        const double D = f.real("D");
        PrimeTable t = tables.get(std::max(D, 2.0));
        const auto r = chi4_phi_sum(D, t);
        emit(out, fmt, Json{{"D", D}, {"sum", r.sum}, {"limit", r.limit}, {"gap", r.gap}});
        return 0;
      }
      const std::vector<double> xs =
          f.has("sweep") ? parse_sweep(f.m.at("sweep")) : std::vector<double>{f.real("X")};
      PrimeTable t = tables.get(std::max(xs.back(), 2.0));
      std::vector<Json> rows;
      for (double X : xs) {
        if (cfg.sub == "linnik") {
          const auto r = linnik_partial(X, t);
          rows.push_back(Json{{"X", X}, {"sum", r.sum}, {"main", r.main}, {"ratio", r.ratio}});
        } else {
          const HooleyRange hr = hooley_range(X, f.real("omega"));
          const double var = hooley_variance(hr, t);
          const auto cnt = hooley_count(hr, t);
          rows.push_back(Json{{"X", X},
                              {"omega", hr.omega},
                              {"lo", hr.lo},
                              {"hi", hr.hi},
                              {"empty", hr.empty},
                              {"variance", var},
                              {"count", cnt},
                              {"variance_ratio", var / hooley_variance_scale(X)},
                              {"count_ratio", static_cast<double>(cnt) / hooley_count_scale(X)}});
        }
      }
      if (f.has("sweep"))
        emit_rows(out, fmt, rows);
      else
        emit(out, fmt, rows.front());
      return 0;
    }
  }
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.help) {
    out << *config.help;
    return 0;
  }
  set_thread_count(config.threads);
  try {
    return dispatch(config, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    out << emit_json(Json{{"error", "domain"}, {"message", e.what()}}) << '\n';
    return 2;
  } catch (const std::exception& e) {
    out << emit_json(Json{{"error", "internal"}, {"message", e.what()}}) << '\n';
    return 2;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  }
  return run(cfg, out, err);
}

}  // namespace ps4::cli
