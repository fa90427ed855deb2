#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "oracles/oracles.hpp"
#include "prolate/cli.hpp"
#include "prolate/rule.hpp"
#include "prolate/rule_io.hpp"

using namespace prolate;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "prolate-quad");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("prolate_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("generate validates its flags") {
  CHECK(run({"generate", "--c", "100", "--n", "0"}).code == 2);
  CHECK(run({"generate", "--c", "100"}).code == 2);
  CHECK(run({"generate", "--c", "100", "--n", "5", "--eps", "1e-3"}).code == 2);
  CHECK(run({"generate", "--n", "5"}).code == 2);
  CHECK(run({"generate", "--c", "100", "--n", "5", "--format", "xml"}).code == 2);
  CHECK(run({"generate", "--c", "-3", "--n", "5"}).code == 2);
  CHECK(run({"generate", "--c", "100", "--n", "5", "--taylor-order", "1"}).code == 2);
  const auto r = run({"generate", "--c", "100", "--n", "0"});
  CHECK(r.err.find("--n") != std::string::npos);
}

TEST_CASE("eps below the computable floor is rejected") {
  const auto r = run({"generate", "--c", "100", "--eps", "1e-200"});
  CHECK(r.code == 2);
  CHECK(r.err.find("1e-150") != std::string::npos);
}

TEST_CASE("generate --eps picks n and writes JSON") {
  const auto r = run({"generate", "--c", "100", "--eps", "1e-10"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("n").get<int>() == 86);
  CHECK(j.at("nodes").size() == 86);
  CHECK(j.at("weights").size() == 86);
  CHECK(j.at("lambda_abs").get<double>() == doctest::Approx(0.59988e-10).epsilon(1e-4));
  CHECK(j.at("config").contains("digest"));
  CHECK(j.at("generator").get<std::string>().find("prolate-quad") == 0);
}

TEST_CASE("generate csv at tiny c gives Gauss-Legendre") {
  const auto r = run({"generate", "--c", "1e-4", "--n", "5", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto file = read_rule(in);
  const auto gl = oracle::golub_welsch(5);
  REQUIRE(file.nodes.size() == 5);
  for (int j = 0; j < 5; ++j) {
    CHECK(std::abs(file.nodes[j] - gl.nodes[j]) <= 1e-8);
    CHECK(std::abs(file.weights[j] - gl.weights[j]) <= 1e-8);
  }
  int rows = 0;
  for (const auto& l : lines(r.out)) rows += (!l.empty() && l[0] != '#' && l != "node,weight");
  CHECK(rows == 5);
}

TEST_CASE("text format lists every node") {
  const auto r = run({"generate", "--c", "10", "--n", "12", "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("prolate-quad") == 0);
  CHECK(lines(r.out).size() == 9 + 12);  // 7 metadata lines, blank, column header
}

TEST_CASE("JSON and CSV round-trip losslessly and audit identically") {
  const auto rule = build_rule(1000.0, 708);
  const auto json_path = temp_path("rule.json");
  const auto csv_path = temp_path("rule.csv");
  REQUIRE(run({"generate", "--c", "1000", "--n", "708", "--output", json_path.string()}).code == 0);
  REQUIRE(run({"generate", "--c", "1000", "--n", "708", "--format", "csv", "--output",
               csv_path.string()})
              .code == 0);
  for (const auto& p : {json_path, csv_path}) {
    const auto f = read_rule_file(p.string());
    CHECK(f.nodes == rule.nodes);
    CHECK(f.weights == rule.weights);
    CHECK(f.chi == rule.chi);
    CHECK(f.lambda_abs == rule.lambda_abs);
    CHECK(f.config_digest == ToleranceConfig{}.digest());
  }
  const auto a = run({"check", "--rule-file", json_path.string()});
  const auto b = run({"check", "--rule-file", csv_path.string()});
  const auto direct = run({"check", "--c", "1000", "--n", "708"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == direct.out);
  fs::remove(json_path);
  fs::remove(csv_path);
}

TEST_CASE("check exit codes follow accuracy") {
  const auto ok = run({"check", "--c", "100", "--n", "86", "--tol", "1e-10"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("accuracy=met") != std::string::npos);
  const auto bad = run({"check", "--c", "100", "--n", "40", "--tol", "1e-10"});
  CHECK(bad.code == 3);
  CHECK(bad.out.find("accuracy=unmet") != std::string::npos);
  CHECK(run({"check", "--c", "100", "--n", "40"}).code == 0);  // no --tol, report only
  CHECK(run({"check", "--c", "100"}).code == 2);
  CHECK(run({"check", "--c", "100", "--n", "86", "--num-freqs", "0"}).code == 2);
  const auto one = run({"check", "--c", "1e-4", "--n", "5", "--num-freqs", "1"});
  CHECK(one.code == 0);
  CHECK(one.out.find("worst_frequency=0.0002") != std::string::npos);
}

TEST_CASE("unreadable or corrupt rule files are numerical-stage failures") {
  CHECK(run({"check", "--rule-file", "/nonexistent/rule.json"}).code == 1);
  const auto path = temp_path("bad.csv");
  {
    std::ofstream f(path);
    f << "#c=1\n#n=2\n#config=" << ToleranceConfig{}.canonical() << "\n#config_digest=0\n0.5,1\n-0.5,1\n";
  }
  const auto r = run({"check", "--rule-file", path.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("digest") != std::string::npos);
  {
    std::ofstream f(path);
    f << "#c=1\n#n=3\n#config=" << ToleranceConfig{}.canonical()
      << "\n#config_digest=" << digest_hex(ToleranceConfig{}.digest()) << "\n0.5,1\n-0.5,1\n";
  }
  CHECK(run({"check", "--rule-file", path.string()}).code == 1);
  {
    std::ofstream f(path);
    f << "{\"c\": 1, \"n\": ";
  }
  CHECK(run({"check", "--rule-file", path.string()}).code == 1);
  fs::remove(path);
}

TEST_CASE("tolerance overrides reach the config digest") {
  const auto a = nlohmann::json::parse(run({"generate", "--c", "50", "--n", "40"}).out);
  const auto b = nlohmann::json::parse(
      run({"generate", "--c", "50", "--n", "40", "--taylor-order", "36", "--seed", "9"}).out);
  CHECK(b.at("config").at("taylor_order").get<int>() == 36);
  CHECK(b.at("config").at("rng_seed").get<int>() == 9);
  CHECK(a.at("config").at("digest") != b.at("config").at("digest"));
}

TEST_CASE("numerical failures exit 1 with the stage") {
  const auto r = run({"generate", "--c", "100", "--n", "86", "--newton-max-iters", "1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("roots") != std::string::npos);
}

TEST_CASE("compare-gl rows") {
  const auto r = run({"compare-gl", "--c", "1000", "--n-range", "700:1100:400"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "n,E_pswf,E_gl");
  double n, ep, eg;
  REQUIRE(std::sscanf(ls[1].c_str(), "%lf,%lf,%lf", &n, &ep, &eg) == 3);
  CHECK(n == 700);
  CHECK(ep <= 1e-10);
  CHECK(eg >= 1e-2);
  REQUIRE(std::sscanf(ls[2].c_str(), "%lf,%lf,%lf", &n, &ep, &eg) == 3);
  CHECK(n == 1100);
  CHECK(ep <= 1e-9);
  CHECK(eg <= 1e-9);
  for (const char* bad : {"7", "x:9", "9:3", "1:5:0", "1:5:2:3", "-1:5"}) {
    CHECK(run({"compare-gl", "--c", "10", "--n-range", bad}).code == 2);
  }
}

TEST_CASE("spectrum rows, ordering and thread independence") {
  ::setenv("THREADS", "1", 1);
  const auto one = run({"spectrum", "--c", "100", "--n-range", "80:92"});
  ::setenv("THREADS", "4", 1);
  const auto four = run({"spectrum", "--c", "100", "--n-range", "80:92"});
  ::unsetenv("THREADS");
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  const auto ls = lines(one.out);
  REQUIRE(ls.size() == 14);
  CHECK(ls[0] == "n,chi,lambda_abs");
  double prev_chi = 0.0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    int n;
    double chi, lam;
    REQUIRE(std::sscanf(ls[i].c_str(), "%d,%lf,%lf", &n, &chi, &lam) == 3);
    CHECK(n == 79 + static_cast<int>(i));
    CHECK(chi > prev_chi);
    prev_chi = chi;
    if (n == 86) CHECK(lam == doctest::Approx(0.59988e-10).epsilon(1e-4));
  }
}

TEST_CASE("bench columns") {
  const auto r = run({"bench", "--c", "1000", "--n", "700,800"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "n,t_prol,t_roots,t_weights,t_total");
  CHECK(std::count(ls[1].begin(), ls[1].end(), ',') == 4);

  const auto e = run({"bench", "--eps", "e-50", "--c", "100,1000"});
  REQUIRE(e.code == 0);
  const auto el = lines(e.out);
  REQUIRE(el.size() == 3);
  CHECK(el[0] == "c,n,t_prol,t_roots,t_weights,t_total");
  CHECK(el[1].rfind("100,107,", 0) == 0);
  CHECK(el[2].rfind("1000,700,", 0) == 0);

  CHECK(run({"bench", "--c", "100,200", "--n", "80"}).code == 2);
  CHECK(run({"bench", "--c", "100"}).code == 2);
  CHECK(run({"bench", "--c", "100", "--n", "80,x"}).code == 2);
}

TEST_CASE("top level") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("prolate-quad") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("helper parsers") {
  CHECK(cli::parse_eps("e-50") == std::exp(-50.0));
  CHECK(cli::parse_eps("1e-10") == 1e-10);
  CHECK_THROWS_AS(cli::parse_eps("abc"), std::invalid_argument);
  const auto r = cli::parse_index_range("10:20:5");
  CHECK(r.values() == std::vector<int>{10, 15, 20});
  CHECK(cli::parse_index_range("3:3").values() == std::vector<int>{3});
  CHECK_THROWS_AS(cli::parse_index_range("3:2"), std::invalid_argument);
  CHECK(cli::parse_real_list("100, 1e3") == std::vector<double>{100.0, 1000.0});
  CHECK_THROWS_AS(cli::parse_int_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_int_list(""), std::invalid_argument);
}

TEST_CASE("THREADS parsing and parallel_for ordering") {
  ::setenv("THREADS", "3", 1);
  CHECK(cli::worker_count() == 3);
  ::setenv("THREADS", "zero", 1);
  CHECK(cli::worker_count() >= 1);
  ::setenv("THREADS", "3", 1);
  std::vector<int> out(50, -1);
  cli::parallel_for(50, [&](int i) { out[i] = i * i; });
  for (int i = 0; i < 50; ++i) CHECK(out[i] == i * i);
  CHECK_THROWS_AS(cli::parallel_for(10, [](int i) { if (i == 7) throw std::runtime_error("x"); }),
                  std::runtime_error);
  ::unsetenv("THREADS");
}

TEST_CASE("canonical config parses back") {
  ToleranceConfig cfg;
  cfg.newton_tol = 3e-13;
  cfg.rk2_steps = 14;
  cfg.rng_seed = 123456789012345ULL;
  const auto back = parse_canonical_config(cfg.canonical());
  CHECK(back.canonical() == cfg.canonical());
  CHECK(back.digest() == cfg.digest());
  CHECK_THROWS_AS(parse_canonical_config("nonsense=1"), std::runtime_error);
}
