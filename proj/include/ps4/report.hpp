#pragma once

#include "ps4/bounds.hpp"
#include "ps4/cli.hpp"
#include "ps4/expsum.hpp"
#include "ps4/gamma.hpp"
#include "ps4/stats.hpp"

namespace ps4::cli {

Json to_json(const Rational& r);
Json to_json(const ExponentPair& p);
Json to_json(const AffineExponent& e);
Json to_json(const SmoothingKernel& k);
Json to_json(const RunParams& p);
Json to_json(const GammaReport& r);
Json to_json(const SearchResult& r, double N, double c, double epsilon);
Json to_json(const TernaryReport& r, double N0, double c, double epsilon);
Json to_json(const MomentChain& m, const Rational& c);

/// Top-level scalar fields only, for CSV rows.
Json flatten(const Json& obj, const std::string& prefix = "");

}  // namespace ps4::cli
