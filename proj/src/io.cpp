#include "reglab/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "reglab/errors.hpp"

namespace reglab {

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError("expected a number, got " + j.dump());
}

namespace {

Json numbers(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

}  // namespace

Json to_json(const FieldSpec& field) {
  Json params = Json::object();
  for (const auto& [k, v] : field.params()) params[k] = number(v);
  return Json{{"family", to_string(field.family())},
              {"n", field.n()},
              {"components", field.K()},
              {"radial", field.is_radial()},
              {"domain", {{"r_min", number(field.domain().r_min)},
                          {"r_max", number(field.domain().r_max)}}},
              {"params", params}};
}

Json to_json(const ResidualReport& r) {
  Json flagged = Json::array();
  for (bool f : r.flagged) flagged.push_back(f);
  return Json{{"family", r.family},
              {"system", r.system},
              {"n", r.n},
              {"radii", numbers(r.radii)},
              {"residual_abs", numbers(r.residual_abs)},
              {"residual_rel", numbers(r.residual_rel)},
              {"flagged", flagged},
              {"max_rel", number(r.max_rel)}};
}

Json to_json(const GrowthReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"C", number(r.C)},
              {"decade_max", numbers(r.decade_max)},
              {"radii", numbers(r.radii)},
              {"ratios", numbers(r.ratios)}};
}

Json to_json(const WeakResidual& w) {
  return Json{{"lhs", number(w.lhs)},
              {"rhs", number(w.rhs)},
              {"residual", number(w.residual)},
              {"relative", number(w.relative)},
              {"bound", number(w.bound)},
              {"lhs_components", {number(w.lhs_components[0]), number(w.lhs_components[1])}},
              {"rhs_components", {number(w.rhs_components[0]), number(w.rhs_components[1])}}};
}

Json to_json(const DyadicIncrement& inc) {
  return Json{{"k", inc.k},
              {"inner", number(inc.inner)},
              {"outer", number(inc.outer)},
              {"increment", number(inc.increment)},
              {"partial_sum", number(inc.partial_sum)}};
}

Json to_json(const ScanReport& r) {
  Json out{{"quantity", r.quantity},
           {"center", numbers(r.center)},
           {"radii", numbers(r.radii)},
           {"values", numbers(r.values)},
           {"errors", numbers(r.errors)}};
  if (!r.series.empty()) {
    Json s = Json::object();
    for (const auto& [k, v] : r.series) s[k] = numbers(v);
    out["series"] = s;
  }
  if (!r.scalars.empty()) {
    Json s = Json::object();
    for (const auto& [k, v] : r.scalars) s[k] = number(v);
    out["scalars"] = s;
  }
  if (r.fit) {
    out["fit"] = Json{{"slope", number(r.fit->slope)},
                      {"intercept", number(r.fit->intercept)},
                      {"residual", number(r.fit->residual)},
                      {"label", r.fit->clean ? "Clean" : "NoCleanExponent"}};
  } else {
    out["fit"] = nullptr;
  }
  return out;
}

Json to_json(const LorentzNormResult& r) {
  Json inc = Json::array();
  for (const auto& d : r.increments) inc.push_back(to_json(d));
  return Json{{"p", number(r.p)},
              {"q", number(r.q)},
              {"value", number(r.value)},
              {"error_bound", number(r.error_bound)},
              {"method", r.method},
              {"verdict", to_string(r.verdict)},
              {"increments", inc}};
}

Json to_json(const MembershipVerdict& v) {
  Json comps = Json::array();
  for (const auto& c : v.components) {
    comps.push_back(Json{{"name", c.name},
                         {"value", number(c.value)},
                         {"verdict", to_string(c.verdict)}});
  }
  Json inc = Json::array();
  for (const auto& d : v.increments) inc.push_back(to_json(d));
  return Json{{"k", v.k},
              {"p", number(v.p)},
              {"verdict", to_string(v.verdict)},
              {"components", comps},
              {"increments", inc}};
}

Json to_json(const DecayConstantReport& r) {
  Json centers = Json::array();
  for (const auto& c : r.centers) centers.push_back(numbers(c));
  Json ratios = Json::array();
  for (const auto& field : r.ratios) {
    Json f = Json::array();
    for (const auto& row : field) f.push_back(numbers(row));
    ratios.push_back(f);
  }
  return Json{{"max_ratio", number(r.max_ratio)},
              {"refined_max_ratio", number(r.refined_max_ratio)},
              {"relative_change", number(r.relative_change)},
              {"stable", r.stable},
              {"skipped", r.skipped},
              {"thetas", numbers(r.thetas)},
              {"centers", centers},
              {"ratios", ratios}};
}

void write_csv(std::ostream& os, const ResidualReport& r) {
  const auto old = os.precision(17);
  os << "radius,residual_abs,residual_rel,flagged\n";
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    os << r.radii[i] << ',' << r.residual_abs[i] << ',' << r.residual_rel[i] << ','
       << (r.flagged[i] ? 1 : 0) << '\n';
  }
  os.precision(old);
}

void write_csv(std::ostream& os, const ScanReport& r) {
  const auto old = os.precision(17);
  os << "radius,value,error";
  for (const auto& [k, v] : r.series) os << ',' << k;
  os << '\n';
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    os << r.radii[i] << ',' << r.values[i] << ',' << (i < r.errors.size() ? r.errors[i] : 0.0);
    for (const auto& [k, v] : r.series) os << ',' << v[i];
    os << '\n';
  }
  os.precision(old);
}

double SpecString::get(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

SpecString parse_spec(const std::string& text) {
  SpecString out;
  const auto colon = text.find(':');
  out.name = text.substr(0, colon);
  if (out.name.empty()) throw ConfigError("empty specification");
  if (colon == std::string::npos) return out;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("expected key=value in '" + text + "'");
    }
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw ConfigError("bad number '" + value + "' in '" + text + "'");
    }
    out.params[item.substr(0, eq)] = v;
  }
  return out;
}

FieldSpec field_from_spec(const std::string& text, int n) {
  const SpecString spec = parse_spec(text);
  const auto need = [&](bool ok, const std::string& why) {
    if (!ok) throw ConfigError(spec.name + ": " + why);
  };
  if (spec.name == "loglog4") {
    need(n == 4, "the family is fixed to n = 4");
    return catalog::loglog4d();
  }
  if (spec.name == "sinlog2nd") {
    need(n >= 3, "needs n >= 3");
    return catalog::sinlog_second_order(n);
  }
  if (spec.name == "sinlog4th") {
    need(n >= 5, "needs n >= 5");
    return catalog::sinlog_fourth_order(n);
  }
  if (spec.name == "powerlaw") {
    need(n >= 1, "needs n >= 1");
    need(spec.params.count("alpha") == 1, "needs alpha=...");
    return catalog::power_law(n, spec.get("alpha", 1.0), spec.get("c", 1.0));
  }
  if (spec.name == "linear") {
    need(n >= 1, "needs n >= 1");
    Polynomial p(n);
    MultiIndex e(n, 0);
    e[0] = 1;
    p.add_term(e, 1.0);
    return catalog::polynomial(p, Family::HarmonicPoly);
  }
  throw ConfigError("unknown field family '" + spec.name + "'");
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
  if (!out) throw ConfigError("failed writing " + path);
}

}  // namespace reglab
