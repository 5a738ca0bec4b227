#include "ps4/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace ps4::cli {

namespace {

std::string number_text(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        write(item, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        write(v[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += number_text(v.get<double>());
      break;
    default:
      out += v.dump();
  }
}

std::string csv_cell(const Json& v) {
  switch (v.type()) {
    case Json::value_t::null:
      return "";
    case Json::value_t::number_float:
      return number_text(v.get<double>());
    case Json::value_t::string: {
      const auto& s = v.get_ref<const std::string&>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
    default:
      return v.dump();
  }
}

}  // namespace

std::string emit_json(const Json& value) {
  std::string out;
  write(value, out);
  return out;
}

std::string emit_csv(const std::vector<Json>& rows) {
  std::string out;
  if (rows.empty()) return out;
  std::vector<std::string> keys;
  for (const auto& [key, item] : rows.front().items()) keys.push_back(key);
  for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) out += ',';
      out += row.contains(keys[i]) ? csv_cell(row.at(keys[i])) : "";
    }
    out += '\n';
  }
  return out;
}

Json flatten(const Json& obj, const std::string& prefix) {
  Json flat = Json::object();
  for (const auto& [key, item] : obj.items()) {
    const std::string name = prefix.empty() ? key : prefix + "_" + key;
    if (item.is_object()) {
      for (const auto& [k2, v2] : flatten(item, name).items()) flat[k2] = v2;
    } else if (item.is_array()) {
      std::string joined;
      for (std::size_t i = 0; i < item.size(); ++i)
        joined += (i ? ";" : "") + csv_cell(item[i]);
      flat[name] = joined;
    } else {
      flat[name] = item;
    }
  }
  return flat;
}

Json to_json(const Rational& r) {
  Json j = Json::object();
  auto put = [&](const char* key, const Rational::Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max())
      j[key] = static_cast<std::int64_t>(v);
    else
      j[key] = v.str();
  };
  put("num", r.num());
  put("den", r.den());
  j["decimal"] = r.to_double();
  return j;
}

Json to_json(const ExponentPair& p) {
  return Json{{"kappa", to_json(p.kappa)}, {"lambda", to_json(p.lambda)}};
}

Json to_json(const AffineExponent& e) {
  return Json{{"u", to_json(e.u)}, {"v", to_json(e.v)}, {"eta", e.eta}, {"text", e.str()}};
}

Json to_json(const SmoothingKernel& k) {
  return Json{{"a", k.a()}, {"delta", k.delta()}, {"k", k.k()}};
}

Json to_json(const RunParams& p) {
  return Json{{"N", p.N},         {"c", p.c},         {"epsilon", p.epsilon},
              {"X", p.X},         {"A", p.A},         {"D", p.D},
              {"Delta", p.Delta}, {"H", p.H},         {"kernel", to_json(p.kernel)}};
}

Json to_json(const GammaReport& r) {
  return Json{{"gamma_raw", r.gamma_raw}, {"raw_count", r.raw_count},
              {"gamma0", r.gamma0},       {"g1", r.g1},
              {"g2", r.g2},               {"g3", r.g3},
              {"params", to_json(r.params)}};
}

Json to_json(const SearchResult& r, double N, double c, double epsilon) {
  Json j{{"N", N}, {"c", c}, {"epsilon", epsilon},
         {"range", Json{{"lo", r.lo}, {"hi", r.hi}}}, {"complete", r.complete},
         {"found", r.solution.has_value()}};
  if (r.solution) {
    const auto& s = *r.solution;
    j["quadruple"] = Json::array({s.primes[0], s.primes[1], s.primes[2], s.primes[3]});
    j["witness"] = Json{{"x", s.x}, {"y", s.y}};
    j["residual"] = s.residual;
  } else {
    j["result"] = "NotFound";
  }
  return j;
}

Json to_json(const TernaryReport& r, double N0, double c, double epsilon) {
  const double l = std::log(N0);
  const double base = epsilon * std::pow(N0, 3.0 / c - 1.0);
  return Json{{"B", r.B},
              {"count", r.count},
              {"X0", r.X0},
              {"N0", N0},
              {"c", c},
              {"epsilon", epsilon},
              {"ratio_eps_X0", r.B / (epsilon * std::pow(r.X0, 3.0 - c))},
              {"ratio_log3", r.B / (base / (l * l * l))},
              {"ratio_log2", r.B / (base / (l * l))}};
}

Json to_json(const MomentChain& m, const Rational& c) {
  Json j{{"c", to_json(c)}};
  const std::pair<const char*, const AffineExponent*> items[] = {
      {"sup", &m.sup}, {"e2", &m.e2},     {"psi1", &m.psi1},
      {"e3", &m.e3},   {"psi2", &m.psi2}, {"e4", &m.e4}};
  for (auto [name, e] : items) {
    Json item = to_json(*e);
    item["at_c"] = to_json(e->at(c));
    j[name] = item;
  }
  return j;
}

}  // namespace ps4::cli
