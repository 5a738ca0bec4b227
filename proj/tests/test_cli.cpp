#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "ps4/cli.hpp"

using namespace ps4::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ps4");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json parsed(const Outcome& o) {
  REQUIRE(o.code == 0);
  return Json::parse(o.out);
}

}  // namespace

TEST_CASE("parse_args") {
  auto cfg = parse_args({"--format", "csv", "--threads", "3", "gamma", "--X", "300", "--c", "1.1"});
  CHECK(cfg.command == Command::Gamma);
  CHECK(cfg.output == Format::Csv);
  CHECK(cfg.threads == 3);
  CHECK(cfg.flags.at("X") == "300");
  CHECK(cfg.flags.count("eps") == 0);

  cfg = parse_args({"bounds", "chain", "--c", "967/805"});
  CHECK(cfg.command == Command::Bounds);
  CHECK(cfg.sub == "chain");

  CHECK(parse_args({"--help"}).help.has_value());
  CHECK_THROWS_AS(parse_args({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse_args({"gamma", "--c", "abc"}), UsageError);
  CHECK_THROWS_AS(parse_args({"gamma", "--X", "100"}), UsageError);
  CHECK_THROWS_AS(parse_args({"gamma", "--X", "100", "--N", "5", "--c", "1.1"}), UsageError);
  CHECK_THROWS_AS(parse_args({"bounds", "chain", "--c", "1.2"}), UsageError);
  CHECK_THROWS_AS(parse_args({"--format", "xml", "sieve", "--limit", "10"}), UsageError);
}

TEST_CASE("usage errors exit 1 with a message naming the flag") {
  auto o = invoke({"gamma", "--c", "abc"});
  CHECK(o.code == 1);
  CHECK(o.err.find("--c") != std::string::npos);
  CHECK(o.out.empty());
  o = invoke({"bounds", "chain", "--c", "1.2"});
  CHECK(o.code == 1);
  o = invoke({"stats", "hooley", "--omega", "1", "--X", "100", "--sweep", "X=10:100:2"});
  CHECK(o.code == 1);
}

TEST_CASE("domain errors exit 2 with a JSON object") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"gamma", "--X", "300", "--c", "1.1", "--D", "20"},
           {"solve", "--N", "1e6", "--c", "1.1", "--eps", "1e-300"},
           {"ternary", "--N0", "100", "--c", "2", "--eps", "0.1"},
           {"sieve", "--limit", "1"}}) {
    auto o = invoke(args);
    CHECK(o.code == 2);
    auto j = Json::parse(o.out);
    CHECK(j.at("error") == "domain");
    CHECK(j.at("message").get<std::string>().size() > 0);
  }
}

TEST_CASE("bounds commands") {
  auto j = parsed(invoke({"bounds", "threshold"}));
  CHECK(j.at("num") == 967);
  CHECK(j.at("den") == 805);
  j = parsed(invoke({"bounds", "pairs", "--word", "AAB"}));
  CHECK(j.at("kappa").at("num") == 1);
  CHECK(j.at("kappa").at("den") == 14);
  CHECK(j.at("lambda").at("num") == 11);
  j = parsed(invoke({"bounds", "chain", "--c", "967/805"}));
  CHECK(j.at("sup").at("at_c").at("num") == 1207);
  CHECK(j.at("sup").at("at_c").at("den") == 1288);
  CHECK(j.at("e4").at("u").at("num") == 1167);
  CHECK(invoke({"bounds", "pairs", "--word", "AXB"}).code == 2);
}

TEST_CASE("sieve and stats") {
  auto j = parsed(invoke({"sieve", "--limit", "100"}));
  CHECK(j.at("count") == 25);
  CHECK(j.at("largest") == 97);
  j = parsed(invoke({"stats", "linnik", "--X", "10"}));
  CHECK(j.at("sum").get<double>() == 12.0);
  j = parsed(invoke({"stats", "singular", "--plimit", "3"}));
  CHECK(j.at("value").get<double>() == doctest::Approx(std::acos(-1.0) * 5 / 6));
  j = parsed(invoke({"stats", "linnik", "--sweep", "X=100:10000:3"}));
  REQUIRE(j.is_array());
  CHECK(j.size() == 3);
  CHECK(j[2].at("X").get<double>() == doctest::Approx(10000));
}

TEST_CASE("gamma and solve") {
  auto j = parsed(invoke({"gamma", "--X", "300", "--c", "1.1", "--eps", "0.05"}));
  for (const char* key : {"gamma_raw", "raw_count", "gamma0", "g1", "g2", "g3", "params"})
    CHECK(j.contains(key));
  CHECK(j.at("gamma0").get<double>() <= j.at("gamma_raw").get<double>());

  j = parsed(invoke({"solve", "--N", "2000", "--c", "1.1", "--eps", "0.5", "--range", "full"}));
  CHECK(j.contains("complete"));
  if (j.at("found").get<bool>()) {
    double lhs = 0;
    for (const auto& p : j.at("quadruple")) lhs += std::pow(p.get<double>(), 1.1);
    CHECK(std::abs(lhs - 2000) < 0.5);
  }
}

TEST_CASE("kernel output formats") {
  auto o = invoke({"--format", "csv", "kernel", "--a", "1", "--delta", "0.2", "--k", "4",
                   "--points", "5"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("y,theta\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : o.out) lines += ch == '\n';
  CHECK(lines == 6);
  auto j = parsed(invoke({"kernel", "--a", "1", "--delta", "0.2", "--k", "4", "--grid", "fourier",
                          "--points", "3"}));
  CHECK(j.at("points").size() == 3);
  CHECK(j.at("points")[0].at("Theta").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("output is deterministic and independent of thread count") {
  const std::vector<std::string> args{"gamma", "--X", "2000", "--c", "1.15"};
  auto a = invoke(args);
  auto one = args;
  one.insert(one.begin(), {"--threads", "1"});
  auto b = invoke(one);
  auto again = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == again.out);
}

TEST_CASE("prime cache round trip through the CLI") {
  const auto dir = std::filesystem::temp_directory_path() / "ps4_cli_cache_test";
  std::filesystem::remove_all(dir);
  auto j = parsed(invoke({"--cache-dir", dir.string(), "sieve", "--limit", "5000"}));
  CHECK(j.at("cache") == "miss");
  j = parsed(invoke({"--cache-dir", dir.string(), "sieve", "--limit", "5000"}));
  CHECK(j.at("cache") == "hit");
  CHECK(j.at("count") == 669);
  std::filesystem::remove_all(dir);
}

TEST_CASE("emitters") {
  Json j{{"a", 1.0}, {"b", std::numeric_limits<double>::infinity()}, {"c", 0.1}};
  const std::string s = emit_json(j);
  CHECK(s.find("\"a\":1.0") != std::string::npos);
  CHECK(s.find("\"b\":null") != std::string::npos);
  CHECK(Json::parse(s).at("c").get<double>() == 0.1);
  CHECK(emit_csv({Json{{"x", 1}, {"y", 2}}, Json{{"x", 3}, {"y", 4}}}) == "x,y\n1,2\n3,4\n");
}
