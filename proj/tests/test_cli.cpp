#include "doctest.h"

#include <cstdio>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pottssos/cli.hpp"

using pottssos::cli::dispatch;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const auto r = run(args);
  REQUIRE(r.code == 0);
  return Json::parse(r.out);
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("theta-d") {
  const auto r = run({"theta-d"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.3235") != std::string::npos);
  const auto j = run_json({"theta-d"});
  CHECK(j["command"] == "theta-d");
  CHECK(std::abs(j["results"]["theta_D"].get<double>() - 0.32359) <= 5e-5);
}

TEST_CASE("two-cycles") {
  const auto j = run_json({"two-cycles", "--k", "2", "--theta", "0.3", "--r", "0.09"});
  REQUIRE(j["results"]["cycles"].size() == 1);
  const auto& c = j["results"]["cycles"][0];
  CHECK(c["residual"].get<double>() <= 1e-10);
  CHECK(j["results"]["quadratic"]["classification"] == "two_periodic");

  const auto potts = run_json({"two-cycles", "--k", "2", "--theta", "1", "--r", "0.5"});
  CHECK(potts["results"]["cycles"].empty());
  CHECK(potts["results"]["degenerate_theta"] == true);

  const auto byJ = run_json({"two-cycles", "--k", "2", "--J", "-1", "--Jp", "-2", "--beta", "1"});
  CHECK(byJ["parameters"]["theta"].get<double>() == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("phase-scan csv") {
  const auto r = run({"phase-scan", "--theta", "0.05:0.6:56", "--r-rule", "theta-squared", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 57);
  CHECK(r.out.rfind("theta,r,D,b,classification\n", 0) == 0);
  CHECK(r.out.find("two_periodic") != std::string::npos);
  CHECK(r.out.find("none") != std::string::npos);

  const auto grid = run_json({"phase-scan", "--theta", "0.1:1.5:8", "--r", "0.1:1.5:8", "--cross-check", "1"});
  CHECK(grid["results"]["points"].size() == 64);
  CHECK(grid["results"]["cross_check"]["mismatches"].empty());
}

TEST_CASE("other subcommands succeed") {
  CHECK(run({"ti-solve", "--k", "2", "--m", "2", "--theta", "0.3", "--r", "0.09"}).code == 0);
  CHECK(run({"bipartite-solve", "--k", "2", "--theta", "0.3", "--r", "0.09", "--seeds", "3"}).code == 0);
  CHECK(run({"injectivity-probe", "--theta", "2", "--r", "3", "--samples", "200"}).code == 0);
  CHECK(run({"quadratic", "--theta", "0.3", "--r", "0.09"}).code == 0);
  CHECK(run({"classify", "--theta", "0.3", "--r", "0.09"}).code == 0);
}

TEST_CASE("verify-quadratic") {
  const auto exact = run_json({"verify-quadratic", "--theta", "1/2", "--r", "1/4"});
  CHECK(exact["results"]["all_verified"] == true);
  const auto sampled = run_json({"verify-quadratic", "--samples", "20", "--rng-seed", "3"});
  CHECK(sampled["results"]["all_verified"] == true);
  CHECK(sampled["results"]["points"].size() == 20);
}

TEST_CASE("oracle-check") {
  const auto j = run_json({"oracle-check", "--k", "2", "--m", "2", "--theta", "0.5", "--r", "0.25", "--n", "2",
                           "--draws", "3"});
  CHECK(j["results"]["max_residual_recursion"].get<double>() <= 1e-12);
  CHECK(j["results"]["min_residual_perturbed"].get<double>() > 1e-6);
}

TEST_CASE("invalid input exits with 2") {
  CHECK(run({"two-cycles", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"two-cycles", "--theta", "-1", "--r", "1"}).code == 2);
  CHECK(run({"two-cycles", "--theta", "abc", "--r", "1"}).code == 2);
  CHECK(run({"two-cycles", "--theta", "0.3", "--r", "0.09", "--format", "csv"}).code == 2);
  CHECK(run({"two-cycles", "--theta", "0.3", "--r", "0.09", "--format", "yaml"}).code == 2);
  CHECK(run({"phase-scan", "--theta", "0.1:0.2", "--r-rule", "theta-squared"}).code == 2);
  CHECK(run({"classify", "--k", "3", "--theta", "0.3", "--r", "0.09"}).code == 2);
  CHECK(run({"oracle-check", "--k", "4", "--m", "3", "--theta", "0.5", "--r", "0.5", "--n", "3"}).code == 2);
  const auto bad = run({"two-cycles", "--k", "0", "--theta", "1", "--r", "1"});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
}

TEST_CASE("output is deterministic and can go to a file") {
  const std::vector<std::string> args{"injectivity-probe", "--theta", "2", "--r", "3", "--samples", "300",
                                      "--rng-seed", "5", "--format", "json"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const auto path = std::filesystem::temp_directory_path() / "pottssos_cli_test.json";
  auto with_out = args;
  with_out.push_back("--out");
  with_out.push_back(path.string());
  const auto c = run(with_out);
  CHECK(c.code == 0);
  CHECK(c.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == a.out);
  std::filesystem::remove(path);

  const auto timed = run_json({"theta-d", "--timing"});
  CHECK(timed.contains("wall_time_s"));
  CHECK_FALSE(run_json({"theta-d"}).contains("wall_time_s"));
}
