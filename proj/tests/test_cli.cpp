#include "support.hpp"

#include <graphlp/serialize.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using graphlp::Json;
using testsupport::graph_file;
using testsupport::run_cli;

namespace {

std::string temp_path(const std::string& stem) {
  return ::testing::TempDir() + "graphlp_" + stem;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(CliExitCodes, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"certify", "--seeds", "x", graph_file("k3.graph")}).code, 1);
  EXPECT_EQ(run_cli({"polytope", "--kind", "square"}).code, 1);
  EXPECT_EQ(run_cli({"polytope", "--kind", "triangle", "--check", "1/2", "1/2"}).code, 1);
  auto missing = run_cli({"certify", "/nonexistent/graph"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("/nonexistent/graph"), std::string::npos);
}

TEST(CliExitCodes, ComputationFailure) {
  auto r = run_cli({"realize", graph_file("k4.graph"), "--seeds", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("k4.graph"), std::string::npos);
}

TEST(CliExitCodes, UnknownCertificateIsSuccess) {
  auto r = run_cli({"certify", graph_file("c4.graph")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out).at("status"), "unknown");
}

TEST(CliOutput, RunHeaderRecordsConfig) {
  auto r = run_cli({"certify", graph_file("k3.graph"), "--seed", "5"});
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("run").at("tool"), "graphlp");
  EXPECT_EQ(j.at("run").at("command"), "certify");
  EXPECT_FALSE(j.at("run").at("version").get<std::string>().empty());
  EXPECT_EQ(j.at("run").at("config").at("seed"), 5);
  EXPECT_EQ(j.at("witness"), Json::array({"1/2", "1/2", "1/2"}));
}

TEST(CliOutput, CertifyVerifyRoundTrip) {
  for (const char* name : {"k3.graph", "tree_triangle.graph", "two_triangles.graph", "two_blocks13.graph"}) {
    const std::string path = temp_path(std::string(name) + ".json");
    ASSERT_EQ(run_cli({"certify", graph_file(name), "--out", path}).code, 0);
    auto v = run_cli({"certify", "--verify", path});
    ASSERT_EQ(v.code, 0) << v.err;
    EXPECT_EQ(Json::parse(v.out).at("ok"), true) << name;
    std::remove(path.c_str());
  }
}

TEST(CliOutput, VerifyRejectsTamperedFile) {
  const std::string path = temp_path("tampered.json");
  auto r = run_cli({"certify", graph_file("p3.graph")});
  auto j = Json::parse(r.out);
  j["witness"][0] = "3/4";
  j["sum"] = "7/4";
  std::ofstream(path) << j.dump();
  auto v = run_cli({"certify", "--verify", path});
  EXPECT_EQ(v.code, 2);
  EXPECT_EQ(Json::parse(v.out).at("ok"), false);
  std::remove(path.c_str());
}

TEST(CliOutput, OutFlagWritesSameBytes) {
  const std::string path = temp_path("poly.json");
  auto a = run_cli({"polytope", "--kind", "triangle", "--d", "2"});
  auto b = run_cli({"--out", path, "polytope", "--kind", "triangle", "--d", "2"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(slurp(path), a.out);
  std::remove(path.c_str());
}

TEST(CliOutput, AnalyzeReport) {
  auto r = run_cli({"analyze", graph_file("tree_triangle.graph"), "--seeds", "4"});
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("is_tree"), false);
  EXPECT_EQ(j.at("blocks").size(), 1u);
}

TEST(CliOutput, EstimateCsvFile) {
  const std::string csv = temp_path("scaling.csv");
  auto r = run_cli({"estimate", "--config", graph_file("experiments/chain3_ball_constant_annulus.json"), "--csv", csv});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(csv);
  EXPECT_EQ(text.rfind("param,lambda,", 0), 0u);
  EXPECT_EQ(Json::parse(r.out).at("csv"), text);
  std::remove(csv.c_str());
}
