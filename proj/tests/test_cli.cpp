#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qres/cli.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qres");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = qres::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, DivergenceCsvWithHeader) {
  Result r = run({"divergence", "--p", "0.5,0.5", "--q", "0.25,0.75", "--alpha", "0.5,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0].rfind("# qres ", 0), 0u);
  EXPECT_NE(l[0].find("subcommand=divergence"), std::string::npos);
  EXPECT_NE(l[0].find("seed=0"), std::string::npos);
  EXPECT_EQ(l[1], "kind,alpha,bits");
}

TEST(Cli, JsonFormat) {
  Result r = run({"--format", "json", "divergence", "--p", "1,0", "--q", "0.5,0.5", "--alpha", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["meta"]["subcommand"], "divergence");
  EXPECT_NEAR(j["rows"][0]["bits"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, qres::cli::kExitUsage);
  EXPECT_EQ(run({"nonsense"}).code, qres::cli::kExitUsage);
  EXPECT_EQ(run({"divergence", "--p", "a,b", "--q", "0.5,0.5"}).code, qres::cli::kExitUsage);
  EXPECT_EQ(run({"regions", "--p", "0.5,0.5", "--gamma", "1/2,1/2"}).code, qres::cli::kExitUsage);
}

TEST(Cli, NumericalErrorsExitThree) {
  Result r = run({"monotone", "--theory", "athermality", "--p", "0.5,0.5", "--gibbs", "1,0"});
  EXPECT_EQ(r.code, qres::cli::kExitNumerical);
  EXPECT_NE(r.err.find("InvalidGibbs"), std::string::npos);
}

TEST(Cli, PairsAndSweep) {
  Result r = run({"pairs", "--kind", "entanglement"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("entanglement,"), std::string::npos);
  Result s = run({"sweep", "--grid", "40", "--level-only"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("pure_max"), std::string::npos);
}

TEST(Cli, RegionsAcceptRationalsAndRationalize) {
  Result r = run({"regions", "--grid", "10", "--alpha-points", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 2u + 66u);
  Result q = run({"regions", "--grid", "10", "--gamma", "0.7,0.2,0.1", "--rationalize", "100", "--alpha-points", "8"});
  EXPECT_EQ(q.code, 0) << q.err;
}

TEST(Cli, CatalystDefaultsToJson) {
  Result r = run({"catalyst", "-n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"][0]["free_energy_ok"], 1);
}

TEST(Cli, VerifySuite) {
  Result r = run({"verify", "--suite", "divergences"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("divergences,"), std::string::npos);
  EXPECT_EQ(run({"verify", "--suite", "nope"}).code, qres::cli::kExitUsage);
}

TEST(Cli, ExponentAndBound) {
  Result r = run({"exponent"});
  ASSERT_EQ(r.code, 0) << r.err;
  Result b = run({"bound", "--eps-list", "1e-2,1e-4"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(lines(b.out).size(), 4u);
}

TEST(Cli, VersionFlag) {
  Result r = run({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind(qres::cli::version_string(), 0), 0u);
}
