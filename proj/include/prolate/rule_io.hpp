#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prolate/config.hpp"
#include "prolate/rule.hpp"

namespace prolate {

enum class RuleFormat { json, csv, text };

/// Parses "json", "csv" or "text"; throws std::invalid_argument otherwise.
RuleFormat parse_rule_format(const std::string& name);

/// What a rule file carries: the rule itself plus enough metadata to tell
/// which settings produced it.
struct RuleFile {
  double c = 0.0;
  int n = 0;
  double chi = 0.0;
  double lambda_abs = 0.0;
  std::string generator;  // "<name> <version>"
  ToleranceConfig config;
  std::uint64_t config_digest = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

RuleFile make_rule_file(const QuadratureRule& rule, const ToleranceConfig& cfg);

/// JSON uses shortest round-trip doubles, CSV and text 17 significant digits.
void write_rule(std::ostream& os, const RuleFile& file, RuleFormat format);

/// Reads JSON or CSV (detected from the first non-blank character). Throws
/// std::runtime_error on malformed input.
RuleFile read_rule(std::istream& is);
RuleFile read_rule_file(const std::string& path);

std::string digest_hex(std::uint64_t digest);

/// Inverse of ToleranceConfig::canonical(). Unknown keys are an error.
ToleranceConfig parse_canonical_config(const std::string& canonical);

}  // namespace prolate
