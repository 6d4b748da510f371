#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hilbert_cli/cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = hilbert::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(HILBERT_TEST_DATA) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hilbert_cli_test_" + name)).string();
}

}  // namespace

TEST(Series, Families) {
  EXPECT_EQ(run({"series", "--family", "froberg", "--n", "3", "--degrees", "2,2,2,2"}).out, "1 + 3z + 2z²\n");
  EXPECT_EQ(run({"series", "--family", "max2", "--degrees", "3,2"}).out, "1 + 2z + 2z² + z³ + …\n");
  EXPECT_EQ(run({"series", "--family", "paths", "--n", "5"}).out, "1 + 5z + 8z² + z³\n");
  const auto j = nlohmann::json::parse(run({"--format", "json", "series", "--family", "exterior", "--n", "5", "--degrees", "2x2"}).out);
  EXPECT_EQ(j["series"], (std::vector<int>{1, 5, 8, 0, 0, 0}));
  EXPECT_EQ(j["tool"]["name"], "hilbert");
}

TEST(Series, UsageErrors) {
  EXPECT_EQ(run({"series", "--family", "nope", "--n", "3"}).code, hilbert::cli::kExitUsage);
  EXPECT_EQ(run({"series"}).code, hilbert::cli::kExitUsage);
  EXPECT_EQ(run({}).code, hilbert::cli::kExitUsage);
  EXPECT_EQ(run({"--format", "xml", "series", "--family", "paths", "--n", "3"}).code, hilbert::cli::kExitUsage);
}

TEST(Compute, Examples) {
  auto j = nlohmann::json::parse(run({"--format", "json", "compute", "--algebra", "comm", "--n", "3", "--gens", "generic:2x4"}).out);
  EXPECT_EQ(j["series"], (std::vector<int>{1, 3, 2}));
  EXPECT_EQ(j["prime"], 32003);
  EXPECT_EQ(j["seed"], 0);
  j = nlohmann::json::parse(run({"--format", "json", "compute", "--algebra", "ext", "--n", "5", "--gens", "generic:2x2"}).out);
  EXPECT_EQ(j["series"], (std::vector<int>{1, 5, 8, 1}));
  j = nlohmann::json::parse(
      run({"--format", "json", "compute", "--algebra", "tensor", "--n", "4", "--gens", "fl-family:q=2", "--max-deg", "8"}).out);
  // (1 - 4z + 3z^2 - z^5)^{-1}
  EXPECT_EQ(j["series"], (std::vector<long>{1, 4, 13, 40, 121, 365, 1101, 3322, 10025}));
  EXPECT_TRUE(j.contains("profile"));
}

TEST(Compute, Errors) {
  EXPECT_EQ(run({"compute", "--n", "3", "--gens", "bogus:2"}).code, hilbert::cli::kExitUsage);
  EXPECT_EQ(run({"compute", "--n", "3", "--gens", "generic:2", "--field", "32002"}).code, hilbert::cli::kExitUsage);
}

TEST(Verify, ExitCodes) {
  EXPECT_EQ(run({"verify", "--check", "froberg", "--n", "3", "--degrees", "3,3,3,3"}).code, 0);
  const auto odd = run({"verify", "--check", "odd-sums", "--n", "7", "--d", "3"});
  EXPECT_EQ(odd.code, 0);
  EXPECT_NE(odd.out.find("verdict      mismatch"), std::string::npos) << odd.out;
  const auto open = run({"verify", "--check", "froberg", "--n", "9", "--degrees", "2x12", "--expect", "match"});
  EXPECT_EQ(open.code, 0);
  EXPECT_NE(open.out.find("expectation  report"), std::string::npos);
  EXPECT_EQ(run({"verify", "--check", "nope"}).code, hilbert::cli::kExitUsage);
}

TEST(Verify, CsvColumns) {
  const auto r = run({"--format", "csv", "verify", "--check", "exterior-generic", "--n", "5", "--degrees", "2,2", "--seed", "4"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "check_id,params,verdict,first_divergence,seed,prime");
  EXPECT_NE(r.out.find("exterior-generic,\"n=5 degrees=2,2\",mismatch,3,4,32003;65521"), std::string::npos) << r.out;
}

TEST(Verify, RecheckRoundTrip) {
  const auto path = temp_path("report.json");
  const auto r = run({"--format", "json", "--output", path, "verify", "--check", "bigraded", "--m", "1", "--n", "2",
                      "--multidegrees", "(2,1);(2,1);(2,1)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run({"verify", "--recheck", path}).code, 0);
  std::ifstream in(path);
  auto j = nlohmann::json::parse(in);
  j["verdict"] = "match";
  std::ofstream(path) << j.dump() << "\n";
  EXPECT_EQ(run({"verify", "--recheck", path}).code, hilbert::cli::kExitViolated);
  std::remove(path.c_str());
}

TEST(Grid, JsonLinesAreByteIdentical) {
  const auto a = run({"--format", "json", "--no-timing", "grid", data("smoke.grid"), "--threads", "1"});
  const auto b = run({"--format", "json", "--no-timing", "grid", data("smoke.grid"), "--threads", "2"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("summary")) {
      EXPECT_EQ(j["summary"]["cells"], 9);
    } else {
      EXPECT_EQ(j["cell"], count++);
      EXPECT_EQ(j["schema"], 1);
    }
  }
  EXPECT_EQ(count, 9);
}

TEST(Grid, ErrorCodes) {
  EXPECT_EQ(run({"grid", data("mixed.grid")}).code, hilbert::cli::kExitUsage);
  EXPECT_EQ(run({"grid", data("bad.grid")}).code, hilbert::cli::kExitUsage);
  EXPECT_EQ(run({"grid", data("missing.grid")}).code, hilbert::cli::kExitUsage);
}

TEST(SearchMax, Examples) {
  auto r = run({"search-max", "--n", "2", "--degrees", "3,2"});
  EXPECT_NE(r.out.find("unique maximum    yes"), std::string::npos);
  EXPECT_NE(r.out.find("lex maximum       (x^3, x*y)"), std::string::npos);
  r = run({"search-max", "--n", "3", "--degrees", "5,4,3,2"});
  EXPECT_NE(r.out.find("(x^5, x^3*y, x*y^2, x*z)"), std::string::npos);
  const auto j = nlohmann::json::parse(run({"--format", "json", "search-max", "--n", "2", "--degrees", "9"}).out);
  EXPECT_EQ(j["unique_maximum"], true);
  EXPECT_EQ(run({"search-max", "--n", "3", "--degrees", "6,5,4,3", "--cap", "50"}).code, hilbert::cli::kExitResource);
}

TEST(Version, Flag) {
  const auto r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, hilbert::cli::version() + "\n");
}
