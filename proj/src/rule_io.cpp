#include "prolate/rule_io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "prolate/version.hpp"

namespace prolate {

namespace {

using nlohmann::json;

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw std::runtime_error("bad number for " + what + ": '" + s + "'");
  return v;
}

long long parse_integer(const std::string& s, const std::string& what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0') throw std::runtime_error("bad integer for " + what + ": '" + s + "'");
  return v;
}

std::uint64_t parse_unsigned(const std::string& s, int base, const std::string& what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(begin, &end, base);
  if (end == begin || *end != '\0' || s[0] == '-') {
    throw std::runtime_error("bad value for " + what + ": '" + s + "'");
  }
  return v;
}

std::uint64_t parse_digest(const std::string& s) { return parse_unsigned(s, 16, "config digest"); }

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

json config_to_json(const ToleranceConfig& cfg) {
  return json{{"bisection_stop", cfg.bisection_stop},
              {"newton_tol", cfg.newton_tol},
              {"taylor_order", cfg.taylor_order},
              {"rk2_steps", cfg.rk2_steps},
              {"rqi_eig_tol", cfg.rqi_eig_tol},
              {"rqi_vec_tol", cfg.rqi_vec_tol},
              {"rqi_max_iters", cfg.rqi_max_iters},
              {"newton_max_iters", cfg.newton_max_iters},
              {"rng_seed", cfg.rng_seed}};
}

ToleranceConfig config_from_json(const json& j) {
  ToleranceConfig cfg;
  cfg.bisection_stop = j.at("bisection_stop").get<double>();
  cfg.newton_tol = j.at("newton_tol").get<double>();
  cfg.taylor_order = j.at("taylor_order").get<int>();
  cfg.rk2_steps = j.at("rk2_steps").get<int>();
  cfg.rqi_eig_tol = j.at("rqi_eig_tol").get<double>();
  cfg.rqi_vec_tol = j.at("rqi_vec_tol").get<double>();
  cfg.rqi_max_iters = j.at("rqi_max_iters").get<int>();
  cfg.newton_max_iters = j.at("newton_max_iters").get<int>();
  cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  return cfg;
}

void check_consistent(const RuleFile& file) {
  if (file.n < 1) throw std::runtime_error("rule file has n < 1");
  if (file.nodes.size() != static_cast<std::size_t>(file.n) ||
      file.weights.size() != static_cast<std::size_t>(file.n)) {
    throw std::runtime_error("rule file row count does not match n=" + std::to_string(file.n));
  }
  if (file.config_digest != file.config.digest()) {
    throw std::runtime_error("config digest does not match the recorded settings");
  }
}

RuleFile read_json(std::istream& is) {
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON rule file: ") + e.what());
  }
  RuleFile file;
  try {
    file.c = j.at("c").get<double>();
    file.n = j.at("n").get<int>();
    file.chi = j.at("chi").get<double>();
    file.lambda_abs = j.at("lambda_abs").get<double>();
    file.generator = j.value("generator", "");
    file.nodes = j.at("nodes").get<std::vector<double>>();
    file.weights = j.at("weights").get<std::vector<double>>();
    const auto& cfg = j.at("config");
    file.config = config_from_json(cfg);
    file.config_digest = parse_digest(cfg.at("digest").get<std::string>());
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("incomplete JSON rule file: ") + e.what());
  }
  check_consistent(file);
  return file;
}

RuleFile read_csv(std::istream& is) {
  RuleFile file;
  bool have_c = false, have_n = false, have_config = false, have_digest = false;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(line.substr(1, eq - 1));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "c") {
        file.c = parse_double(value, key);
        have_c = true;
      } else if (key == "n") {
        file.n = static_cast<int>(parse_integer(value, key));
        have_n = true;
      } else if (key == "chi") {
        file.chi = parse_double(value, key);
      } else if (key == "lambda_abs") {
        file.lambda_abs = parse_double(value, key);
      } else if (key == "generator") {
        file.generator = value;
      } else if (key == "config") {
        file.config = parse_canonical_config(value);
        have_config = true;
      } else if (key == "config_digest") {
        file.config_digest = parse_digest(value);
        have_digest = true;
      }
      continue;
    }
    if (line == "node,weight") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected node,weight");
    }
    file.nodes.push_back(parse_double(trim(line.substr(0, comma)), "node"));
    file.weights.push_back(parse_double(trim(line.substr(comma + 1)), "weight"));
  }
  if (!have_c || !have_n) throw std::runtime_error("CSV rule file is missing #c or #n");
  if (!have_config || !have_digest) {
    throw std::runtime_error("CSV rule file is missing #config or #config_digest");
  }
  check_consistent(file);
  return file;
}

}  // namespace

RuleFormat parse_rule_format(const std::string& name) {
  if (name == "json") return RuleFormat::json;
  if (name == "csv") return RuleFormat::csv;
  if (name == "text") return RuleFormat::text;
  throw std::invalid_argument("unknown format '" + name + "' (expected json, csv or text)");
}

RuleFile make_rule_file(const QuadratureRule& rule, const ToleranceConfig& cfg) {
  RuleFile file;
  file.c = rule.c;
  file.n = rule.n;
  file.chi = rule.chi;
  file.lambda_abs = rule.lambda_abs;
  file.generator = std::string(kGenerator) + " " + kVersion;
  file.config = cfg;
  file.config_digest = cfg.digest();
  file.nodes = rule.nodes;
  file.weights = rule.weights;
  return file;
}

std::string digest_hex(std::uint64_t digest) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, digest);
  return buf;
}

void write_rule(std::ostream& os, const RuleFile& file, RuleFormat format) {
  switch (format) {
    case RuleFormat::json: {
      json cfg = config_to_json(file.config);
      cfg["digest"] = digest_hex(file.config_digest);
      json j{{"c", file.c},
             {"n", file.n},
             {"chi", file.chi},
             {"lambda_abs", file.lambda_abs},
             {"generator", file.generator},
             {"nodes", file.nodes},
             {"weights", file.weights},
             {"config", cfg}};
      os << j.dump() << '\n';
      break;
    }
    case RuleFormat::csv:
      os << "#generator=" << file.generator << '\n'
         << "#c=" << g17(file.c) << '\n'
         << "#n=" << file.n << '\n'
         << "#chi=" << g17(file.chi) << '\n'
         << "#lambda_abs=" << g17(file.lambda_abs) << '\n'
         << "#config=" << file.config.canonical() << '\n'
         << "#config_digest=" << digest_hex(file.config_digest) << '\n'
         << "node,weight\n";
      for (std::size_t j = 0; j < file.nodes.size(); ++j) {
        os << g17(file.nodes[j]) << ',' << g17(file.weights[j]) << '\n';
      }
      break;
    case RuleFormat::text: {
      os << file.generator << '\n'
         << "c          " << g17(file.c) << '\n'
         << "n          " << file.n << '\n'
         << "chi        " << g17(file.chi) << '\n'
         << "|lambda|   " << g17(file.lambda_abs) << '\n'
         << "config     " << file.config.canonical() << '\n'
         << "digest     " << digest_hex(file.config_digest) << "\n\n";
      char buf[96];
      std::snprintf(buf, sizeof buf, "%8s  %24s  %24s\n", "j", "node", "weight");
      os << buf;
      for (std::size_t j = 0; j < file.nodes.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%8zu  %24.17g  %24.17g\n", j + 1, file.nodes[j],
                      file.weights[j]);
        os << buf;
      }
      break;
    }
  }
}

RuleFile read_rule(std::istream& is) {
  char first = 0;
  while (is.get(first) && std::isspace(static_cast<unsigned char>(first))) {
  }
  if (!is) throw std::runtime_error("empty rule file");
  is.unget();
  return first == '{' ? read_json(is) : read_csv(is);
}

RuleFile read_rule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rule file '" + path + "'");
  return read_rule(in);
}

ToleranceConfig parse_canonical_config(const std::string& canonical) {
  ToleranceConfig cfg;
  std::stringstream ss(canonical);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad config entry '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "bisection_stop") cfg.bisection_stop = parse_double(value, key);
    else if (key == "newton_tol") cfg.newton_tol = parse_double(value, key);
    else if (key == "taylor_order") cfg.taylor_order = static_cast<int>(parse_integer(value, key));
    else if (key == "rk2_steps") cfg.rk2_steps = static_cast<int>(parse_integer(value, key));
    else if (key == "rqi_eig_tol") cfg.rqi_eig_tol = parse_double(value, key);
    else if (key == "rqi_vec_tol") cfg.rqi_vec_tol = parse_double(value, key);
    else if (key == "rqi_max_iters") cfg.rqi_max_iters = static_cast<int>(parse_integer(value, key));
    else if (key == "newton_max_iters") cfg.newton_max_iters = static_cast<int>(parse_integer(value, key));
    else if (key == "rng_seed") cfg.rng_seed = parse_unsigned(value, 10, key);
    else throw std::runtime_error("unknown config key '" + key + "'");
  }
  return cfg;
}

}  // namespace prolate
