#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "reglab/field.hpp"
#include "reglab/pde_residual.hpp"
#include "reglab/rearrange.hpp"
#include "reglab/regularity.hpp"

namespace reglab {

using Json = nlohmann::ordered_json;

/// Finite numbers as JSON numbers; inf, -inf and nan as strings.
Json number(double v);
double number_from_json(const Json& j);

Json to_json(const FieldSpec& field);
Json to_json(const ResidualReport& report);
Json to_json(const GrowthReport& report);
Json to_json(const WeakResidual& residual);
Json to_json(const ScanReport& report);
Json to_json(const LorentzNormResult& result);
Json to_json(const MembershipVerdict& verdict);
Json to_json(const DecayConstantReport& report);
Json to_json(const DyadicIncrement& inc);

void write_csv(std::ostream& os, const ResidualReport& report);
void write_csv(std::ostream& os, const ScanReport& report);

/// "name:key=value,key=value" as used on the command line.
struct SpecString {
  std::string name;
  std::map<std::string, double> params;

  double get(const std::string& key, double fallback) const;
};
SpecString parse_spec(const std::string& text);

/// Catalog field from a family name ("loglog4", "sinlog2nd", "sinlog4th",
/// "powerlaw:alpha=..", "linear") and a dimension. Throws ConfigError when
/// the dimension does not fit the family.
FieldSpec field_from_spec(const std::string& text, int n);

/// Writes `text` to `path`, creating parent directories.
void write_text(const std::string& path, const std::string& text);

}  // namespace reglab
