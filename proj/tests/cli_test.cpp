#include "hypgeo/cli.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace hypgeo {
namespace {

using json = nlohmann::json;

struct CliRun {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "hypgeo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

TEST(Cli, EvalRecord) {
  const CliRun r = run({"eval", "--a", "1", "--b", "1", "--c", "2", "--z-re", "-1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json d = r.doc();
  EXPECT_EQ(d["schema_version"], "1");
  EXPECT_EQ(d["command"], "eval");
  EXPECT_NEAR(d["results"]["value"]["re"].get<double>(), std::log(2.0), 1e-15);
  EXPECT_EQ(d["results"]["value"]["im"].get<double>(), 0.0);
  EXPECT_EQ(d["results"]["method"], "euler_transform");  // |z| = 1 sits outside the Maclaurin disc
  EXPECT_EQ(d["inputs"]["z"]["re"].get<double>(), -1.0);
}

TEST(Cli, EvalOutsideDiscOnNegativeAxis) {
  const CliRun r = run({"eval", "--a", "1", "--b", "1", "--c", "2", "--z-re", "-100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.doc()["results"]["value"]["re"].get<double>(), std::log(101.0) / 100, 1e-15);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "1", "--b", "1", "--z-re", "0.5"}).code, 2);  // no --c
  EXPECT_EQ(run({"eval", "--a", "1", "--b", "1", "--c", "x", "--z-re", "0.5"}).code, 2);
  const CliRun bad_c = run({"eval", "--a", "1", "--b", "1", "--c", "-2", "--z-re", "0.5"});
  EXPECT_EQ(bad_c.code, 2);
  EXPECT_NE(bad_c.err.find("error:"), std::string::npos);
  EXPECT_EQ(run({"verify", "nonsense"}).code, 2);
  EXPECT_EQ(run({"verify", "strip", "--a", "1"}).code, 2);
  EXPECT_EQ(run({"scan", "--mode", "thm13", "--a-range", "1:2", "--b-range", "1:2:0.5"}).code, 2);
  EXPECT_EQ(run({"scan", "--mode", "other", "--a-range", "1:2:1", "--b-range", "1:2:1"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, OrderOfLogarithm) {
  const CliRun r = run({"order", "--a", "1", "--b", "1", "--c", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json res = r.doc()["results"];
  EXPECT_NEAR(res["kappa_closed"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(res["kappa_numeric"]["estimate"].get<double>(), 0.5, 1e-3);
  EXPECT_EQ(res["kappa_numeric"]["per_radius"].size(), 3u);
  EXPECT_NEAR(res["sigma_closed"].get<double>(), 1 - (std::log(2.0) - 0.5) / std::log(2.0), 1e-9);
  EXPECT_TRUE(res["kappa_limit_case"].get<bool>());

  const CliRun quick = run({"order", "--a", "2", "--b", "2", "--c", "4", "--no-numeric"});
  ASSERT_EQ(quick.code, 0);
  EXPECT_TRUE(quick.doc()["results"]["kappa_numeric"].is_null());

  const CliRun radii = run({"order", "--a", "1", "--b", "1", "--c", "2", "--radii", "0.5,0.8", "--angles", "64"});
  ASSERT_EQ(radii.code, 0) << radii.err;
  EXPECT_EQ(radii.doc()["inputs"]["radii"], json({0.5, 0.8}));
}

TEST(Cli, OrderWithholdsImpossibleClosedForm) {
  const CliRun r = run({"order", "--a", "2.25", "--b", "2.25", "--c", "2.25", "--angles", "256"});
  ASSERT_EQ(r.code, 0);
  const json res = r.doc()["results"];
  EXPECT_TRUE(res["kappa_closed"].is_null());
  EXPECT_FALSE(res["kappa_numeric"]["defined"].get<bool>());
}

TEST(Cli, TraceToStdout) {
  const CliRun r = run({"trace", "--a", "1", "--b", "1", "--samples", "16", "--theta-min", "0.001"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 17u);
  EXPECT_EQ(ls[0], "theta,u,v");
  EXPECT_EQ(ls[1].substr(0, 6), "0.001,");  // shortest round-trip text

  const CliRun j = run({"trace", "--a", "1", "--b", "1", "--samples", "16", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  const json rows = json::parse(j.out);
  ASSERT_EQ(rows.size(), 16u);
  EXPECT_EQ(run({"trace", "--a", "1", "--b", "1", "--samples", "5"}).code, 2);
  EXPECT_NEAR(rows[0]["v"].get<double>(), (M_PI - 1e-3) / 2, 1e-12);
}

TEST(Cli, TraceToFile) {
  const auto path = std::filesystem::temp_directory_path() / "hypgeo_cli_trace.csv";
  const CliRun r = run({"trace", "--a", "1", "--b", "1", "--samples", "200", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json res = r.doc()["results"];
  EXPECT_NEAR(res["strip_halfwidth"].get<double>(), M_PI / 2, 1e-15);
  EXPECT_NEAR(res["v_limit_estimate"].get<double>(), M_PI / 2, 1e-6);
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  EXPECT_EQ(lines(content.str()).size(), 201u);
  std::filesystem::remove(path);

  const CliRun bad = run({"trace", "--a", "1", "--b", "1", "--out", "/nonexistent-dir/x/trace.csv"});
  EXPECT_EQ(bad.code, 3);
}

TEST(Cli, VerifyExitCodesFollowVerdict) {
  const CliRun strip = run({"verify", "strip", "--a", "1", "--b", "1"});
  EXPECT_EQ(strip.code, 0) << strip.out;
  const json d = strip.doc();
  EXPECT_TRUE(d["results"]["passed"].get<bool>());
  EXPECT_EQ(d["checks"][0]["name"], "strip");
  EXPECT_EQ(d["inputs"]["c"].get<double>(), 2.0);

  const CliRun nc = run({"verify", "not-convex", "--a", "1", "--b", "1"});
  EXPECT_EQ(nc.code, 1);
  EXPECT_EQ(nc.doc()["inputs"]["angles"].get<int>(), 8192);

  EXPECT_EQ(run({"verify", "not-convex", "--a", "0.5", "--b", "0.5", "--angles", "512"}).code, 0);
  EXPECT_EQ(run({"verify", "log-limits"}).code, 0);
  EXPECT_EQ(run({"verify", "limit-inf", "--a", "1.5", "--b", "1.5", "--c", "3.2"}).code, 1);
  EXPECT_EQ(run({"verify", "qs", "--a", "2", "--b", "2", "--c", "4"}).code, 0);
  EXPECT_EQ(run({"verify", "gf-asymptotics", "--a", "1", "--b", "1", "--c", "2.5"}).code, 0);
  EXPECT_EQ(run({"verify", "herglotz", "--a", "2", "--b", "2", "--c", "4", "--fn", "M_normalized"}).code, 0);
  EXPECT_EQ(run({"verify", "ratio-bounds", "--grid-n", "5"}).code, 0);
  EXPECT_EQ(run({"verify", "boundary-vmax", "--a", "1", "--b", "4", "--samples", "1000"}).code, 0);
}

TEST(Cli, VerifyPreconditionIsUsageError) {
  const CliRun r = run({"verify", "qs", "--a", "1", "--b", "1", "--c", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1<a"), std::string::npos) << r.err;
  EXPECT_EQ(run({"verify", "herglotz", "--a", "1", "--b", "1", "--c", "2", "--fn", "other"}).code, 2);
}

TEST(Cli, VerifyCustomList) {
  const CliRun r = run({"verify", "log-limits", "--list", "0.1", "0.001"});
  ASSERT_EQ(r.code, 1);  // the last angle is too coarse for |Im - pi/2| < 1e-3
  EXPECT_EQ(r.doc()["inputs"]["theta_list"].size(), 2u);
}

TEST(Cli, ScanCsvAndExitCode) {
  const CliRun r = run({"scan", "--mode", "thm13", "--a-range", "1:1.5:0.25", "--b-range", "1:2:0.5",
                     "--samples", "800", "--angles", "512", "--radii", "0.9,0.99"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 10u);
  EXPECT_EQ(ls[0], "a,b,in_region,kappa,verdict");
  EXPECT_EQ(ls[1].substr(0, 10), "1,1,true,0");

  const CliRun bad = run({"scan", "--mode", "thm12", "--a-range", "2.25:2.25:1", "--b-range", "2.25:2.25:1",
                       "--c", "2.25", "--angles", "256", "--format", "json"});
  EXPECT_EQ(bad.code, 1);
  const json rows = json::parse(bad.out);
  EXPECT_EQ(rows[0]["verdict"], "undefined");
}

TEST(Cli, SubprocessSmoke) {
  const char* exe = std::getenv("HYPGEO_CLI");
  if (exe == nullptr) GTEST_SKIP() << "HYPGEO_CLI not set";
  const auto exec = [&](const std::string& args, std::string* out) {
    FILE* p = popen((std::string("'") + exe + "' " + args + " 2>/dev/null").c_str(), "r");
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out->append(buf, n);
    const int status = pclose(p);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  std::string out;
  ASSERT_EQ(exec("eval --a 1 --b 1 --c 2 --z-re 0.5", &out), 0);
  EXPECT_NEAR(json::parse(out)["results"]["value"]["re"].get<double>(), 2 * std::log(2.0), 1e-14);
  std::string ignored;
  EXPECT_EQ(exec("verify not-convex --a 1 --b 1 --angles 256", &ignored), 1);
  EXPECT_EQ(exec("eval --a 1", &ignored), 2);
}

}  // namespace
}  // namespace hypgeo
