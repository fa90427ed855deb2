#include "prolate/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "prolate/errors.hpp"
#include "prolate/pswf.hpp"
#include "prolate/rule.hpp"
#include "prolate/rule_io.hpp"
#include "prolate/version.hpp"

namespace prolate::cli {

namespace {

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fixed6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

// Thrown by command bodies for bad flag combinations CLI11 cannot express.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

double to_double(const std::string& text, const std::string& what) {
  const std::string s = strip(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(v)) {
    throw std::invalid_argument("invalid " + what + " '" + text + "'");
  }
  return v;
}

int to_int(const std::string& text, const std::string& what) {
  const std::string s = strip(text);
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || v < INT32_MIN || v > INT32_MAX) {
    throw std::invalid_argument("invalid " + what + " '" + text + "'");
  }
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

void add_config_options(CLI::App* app, ToleranceConfig& cfg) {
  const char* group = "Tolerances";
  app->add_option("--bisection-stop", cfg.bisection_stop, "relative width of the final chi bracket")
      ->group(group);
  app->add_option("--newton-tol", cfg.newton_tol, "Newton step tolerance relative to node spacing")
      ->group(group);
  app->add_option("--taylor-order", cfg.taylor_order, "order of the local Taylor jets")->group(group);
  app->add_option("--rk2-steps", cfg.rk2_steps, "RK2 steps per Pruefer prediction")->group(group);
  app->add_option("--rqi-eig-tol", cfg.rqi_eig_tol,
                  "relative eigenvalue change for RQI convergence")
      ->group(group);
  app->add_option("--rqi-vec-tol", cfg.rqi_vec_tol,
                  "relative change of tracked eigenvector entries")
      ->group(group);
  app->add_option("--rqi-max-iters", cfg.rqi_max_iters, "RQI iteration cap")->group(group);
  app->add_option("--newton-max-iters", cfg.newton_max_iters, "Newton iteration cap per root")
      ->group(group);
  app->add_option("--seed", cfg.rng_seed, "seed of the RQI start vector")->group(group);
}

void require_bandlimit(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw UsageError("--c must be a positive number");
}

void require_rule_size(int n) {
  if (n < 1) throw UsageError("--n must be at least 1");
}

struct GenerateArgs {
  double c = 0.0;
  std::optional<int> n;
  std::optional<std::string> eps;
  std::string format = "json";
  std::string output;
};

int cmd_generate(const GenerateArgs& a, const ToleranceConfig& cfg, std::ostream& out,
                 std::ostream& err) {
  require_bandlimit(a.c);
  const RuleFormat format = parse_rule_format(a.format);
  int n = 0;
  if (a.n) {
    require_rule_size(*a.n);
    n = *a.n;
  } else {
    n = min_nodes_for_accuracy(a.c, parse_eps(*a.eps), cfg);
  }
  const auto rule = build_rule(a.c, n, cfg);
  if (rule.below_transition) {
    err << "warning: n=" << n << " is below 2c/pi; the rule is not expected to be accurate\n";
  }
  if (!rule.theory_applies) {
    err << "note: c <= 60, the weight accuracy bound is not established here\n";
  }
  const auto file = make_rule_file(rule, cfg);
  if (a.output.empty() || a.output == "-") {
    write_rule(out, file, format);
  } else {
    std::ofstream f(a.output);
    if (!f) throw std::runtime_error("cannot write '" + a.output + "'");
    write_rule(f, file, format);
    if (!f) throw std::runtime_error("write to '" + a.output + "' failed");
  }
  return kSuccess;
}

struct CheckArgs {
  std::optional<double> c;
  std::optional<int> n;
  std::string rule_file;
  int num_freqs = kDefaultNumFrequencies;
  std::optional<double> tol;
};

int cmd_check(const CheckArgs& a, const ToleranceConfig& cfg, std::ostream& out) {
  if (a.num_freqs < 1) throw UsageError("--num-freqs must be positive");
  double c = 0.0;
  std::vector<double> nodes, weights;
  if (!a.rule_file.empty()) {
    auto file = read_rule_file(a.rule_file);
    c = file.c;
    nodes = std::move(file.nodes);
    weights = std::move(file.weights);
  } else {
    if (!a.c || !a.n) throw UsageError("check needs --c and --n, or --rule-file");
    require_bandlimit(*a.c);
    require_rule_size(*a.n);
    c = *a.c;
    auto rule = build_rule(c, *a.n, cfg);
    nodes = std::move(rule.nodes);
    weights = std::move(rule.weights);
  }
  const auto report = audit(c, nodes, weights, a.num_freqs);
  out << "c=" << g17(c) << '\n'
      << "n=" << nodes.size() << '\n'
      << "error=" << g17(report.error) << '\n'
      << "sum_weights_minus_2=" << g17(report.sum_weights_minus_two) << '\n'
      << "worst_frequency=" << g17(report.worst_frequency) << '\n';
  if (a.tol) {
    const bool met = report.error <= *a.tol;
    out << "tol=" << g17(*a.tol) << '\n' << "accuracy=" << (met ? "met" : "unmet") << '\n';
    if (!met) return kAccuracyUnmet;
  }
  return kSuccess;
}

struct RangeArgs {
  double c = 0.0;
  std::string range;
  int num_freqs = kDefaultNumFrequencies;
};

int cmd_compare_gl(const RangeArgs& a, const ToleranceConfig& cfg, std::ostream& out) {
  require_bandlimit(a.c);
  if (a.num_freqs < 1) throw UsageError("--num-freqs must be positive");
  const auto ns = parse_index_range(a.range).values();
  std::vector<double> e_pswf(ns.size()), e_gl(ns.size());
  parallel_for(static_cast<int>(ns.size()), [&](int i) {
    const auto rule = build_rule(a.c, ns[i], cfg);
    e_pswf[i] = audit(a.c, rule.nodes, rule.weights, a.num_freqs).error;
    const auto gl = gauss_legendre_rule(ns[i]);
    e_gl[i] = audit(a.c, gl.nodes, gl.weights, a.num_freqs).error;
  });
  out << "n,E_pswf,E_gl\n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    out << ns[i] << ',' << g17(e_pswf[i]) << ',' << g17(e_gl[i]) << '\n';
  }
  return kSuccess;
}

int cmd_spectrum(const RangeArgs& a, const ToleranceConfig& cfg, std::ostream& out) {
  require_bandlimit(a.c);
  const auto ns = parse_index_range(a.range).values();
  if (ns.front() < 0) throw UsageError("spectrum indices must be non-negative");
  std::vector<double> chi(ns.size()), lam(ns.size());
  parallel_for(static_cast<int>(ns.size()), [&](int i) {
    const auto exp = compute_expansion(a.c, ns[i], cfg);
    chi[i] = exp.chi;
    lam[i] = compute_lambda(exp).magnitude;
  });
  out << "n,chi,lambda_abs\n";
  for (std::size_t i = 0; i < ns.size(); ++i) {
    out << ns[i] << ',' << g17(chi[i]) << ',' << g17(lam[i]) << '\n';
  }
  return kSuccess;
}

struct BenchArgs {
  std::string c;
  std::string n;
  std::string eps;
  int repeat = 1;
};

// Fastest of `repeat` builds; timings are only meaningful one at a time, so
// this stays sequential.
QuadratureRule timed_build(double c, int n, int repeat, const ToleranceConfig& cfg) {
  QuadratureRule best = build_rule(c, n, cfg);
  for (int r = 1; r < repeat; ++r) {
    auto again = build_rule(c, n, cfg);
    if (again.timings.total < best.timings.total) best = std::move(again);
  }
  return best;
}

std::string timing_columns(const StageTimings& t) {
  return fixed6(t.prol) + ',' + fixed6(t.roots) + ',' + fixed6(t.weights) + ',' + fixed6(t.total);
}

int cmd_bench(const BenchArgs& a, const ToleranceConfig& cfg, std::ostream& out) {
  if (a.repeat < 1) throw UsageError("--repeat must be positive");
  const auto cs = parse_real_list(a.c);
  if (!a.eps.empty()) {
    if (!a.n.empty()) throw UsageError("bench takes either --n or --eps, not both");
    const double eps = parse_eps(a.eps);
    out << "c,n,t_prol,t_roots,t_weights,t_total\n";
    for (double c : cs) {
      const int n = min_nodes_for_accuracy(c, eps, cfg);
      const auto rule = timed_build(c, n, a.repeat, cfg);
      out << g17(c) << ',' << n << ',' << timing_columns(rule.timings) << '\n';
    }
    return kSuccess;
  }
  if (a.n.empty()) throw UsageError("bench needs --n <list> or --eps");
  if (cs.size() != 1) throw UsageError("bench with --n takes a single --c");
  const auto ns = parse_int_list(a.n);
  out << "n,t_prol,t_roots,t_weights,t_total\n";
  for (int n : ns) {
    const auto rule = timed_build(cs.front(), n, a.repeat, cfg);
    out << n << ',' << timing_columns(rule.timings) << '\n';
  }
  return kSuccess;
}

}  // namespace

std::vector<int> IndexRange::values() const {
  std::vector<int> v;
  for (long long n = start; n <= stop; n += step) v.push_back(static_cast<int>(n));
  return v;
}

IndexRange parse_index_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw std::invalid_argument("range must look like start:stop[:step], got '" + text + "'");
  }
  IndexRange r;
  r.start = to_int(parts[0], "range start");
  r.stop = to_int(parts[1], "range stop");
  r.step = parts.size() == 3 ? to_int(parts[2], "range step") : 1;
  if (r.start < 0) throw std::invalid_argument("range start must be non-negative");
  if (r.stop < r.start) throw std::invalid_argument("range stop is below its start");
  if (r.step < 1) throw std::invalid_argument("range step must be positive");
  return r;
}

double parse_eps(const std::string& text) {
  const std::string s = strip(text);
  if (!s.empty() && (s[0] == 'e' || s[0] == 'E')) {
    return std::exp(to_double(s.substr(1), "eps exponent"));
  }
  return to_double(s, "eps");
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    const double v = to_double(part, "list entry");
    if (!(v > 0.0)) throw std::invalid_argument("list entries must be positive");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const int v = to_int(part, "list entry");
    if (v < 1) throw std::invalid_argument("list entries must be positive");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

int worker_count() {
  if (const char* env = std::getenv("THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1024L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)>& task) {
  if (count <= 0) return;
  const int workers = std::min(worker_count(), count);
  std::vector<std::exception_ptr> errors(count);
  auto guarded = [&](int i) {
    try {
      task(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers == 1) {
    for (int i = 0; i < count; ++i) guarded(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i; (i = next.fetch_add(1)) < count;) guarded(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadrature rules for bandlimited functions on [-1, 1]", kGenerator};
  app.set_version_flag("--version", std::string(kGenerator) + " " + kVersion);
  app.require_subcommand(1);

  ToleranceConfig cfg;

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "build a rule and write it out");
  generate->add_option("--c", gen.c, "bandlimit")->required();
  auto* gen_n = generate->add_option("--n", gen.n, "number of nodes");
  auto* gen_eps = generate->add_option("--eps", gen.eps, "target |lambda_n|; 'e-50' means exp(-50)");
  gen_n->excludes(gen_eps);
  generate->add_option("--format", gen.format, "json, csv or text")->capture_default_str();
  generate->add_option("--output", gen.output, "output path (default stdout)");
  add_config_options(generate, cfg);

  CheckArgs chk;
  auto* check = app.add_subcommand("check", "audit a rule on the cosine frequency grid");
  auto* chk_c = check->add_option("--c", chk.c, "bandlimit");
  auto* chk_n = check->add_option("--n", chk.n, "number of nodes");
  auto* chk_file = check->add_option("--rule-file", chk.rule_file, "JSON or CSV rule file");
  chk_file->excludes(chk_c)->excludes(chk_n);
  check->add_option("--num-freqs", chk.num_freqs, "frequencies in the audit grid")->capture_default_str();
  check->add_option("--tol", chk.tol, "exit 3 if the error exceeds this");
  add_config_options(check, cfg);

  RangeArgs cmp;
  auto* compare = app.add_subcommand("compare-gl", "PSWF vs Gauss-Legendre error, CSV");
  compare->add_option("--c", cmp.c, "bandlimit")->required();
  compare->add_option("--n-range", cmp.range, "start:stop[:step], stop inclusive")->required();
  compare->add_option("--num-freqs", cmp.num_freqs, "frequencies in the audit grid")->capture_default_str();
  add_config_options(compare, cfg);

  RangeArgs spec;
  auto* spectrum = app.add_subcommand("spectrum", "chi_n and |lambda_n| over a range of n, CSV");
  spectrum->add_option("--c", spec.c, "bandlimit")->required();
  spectrum->add_option("--n-range", spec.range, "start:stop[:step], stop inclusive")->required();
  add_config_options(spectrum, cfg);

  BenchArgs bch;
  auto* bench = app.add_subcommand("bench", "stage timings, CSV");
  bench->add_option("--c", bch.c, "bandlimit, or a comma list with --eps")->required();
  auto* bch_n = bench->add_option("--n", bch.n, "comma list of rule sizes");
  auto* bch_eps = bench->add_option("--eps", bch.eps, "pick n from |lambda_n| < eps per c");
  bch_n->excludes(bch_eps);
  bench->add_option("--repeat", bch.repeat, "report the fastest of this many runs")->capture_default_str();
  add_config_options(bench, cfg);

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    cfg.validate();
    if (generate->parsed()) {
      if (!gen.n && !gen.eps) throw UsageError("generate needs exactly one of --n or --eps");
      return cmd_generate(gen, cfg, out, err);
    }
    if (check->parsed()) return cmd_check(chk, cfg, out);
    if (compare->parsed()) return cmd_compare_gl(cmp, cfg, out);
    if (spectrum->parsed()) return cmd_spectrum(spec, cfg, out);
    if (bench->parsed()) return cmd_bench(bch, cfg, out);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace prolate::cli
