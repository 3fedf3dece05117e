#include "cli.h"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "latinhc/io.h"

namespace latinhc::cli {
namespace {

using Json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Call(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = Run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string Fixture(const std::string& name) {
  return std::string(LATINHC_FIXTURE_DIR) + "/" + name;
}

TEST(CliTest, CountJson) {
  const Result r = Call({"count", Fixture("min6.sq"), "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["counts"]["total"], 4296);
  EXPECT_EQ(j["object"]["kind"], "square");
  EXPECT_EQ(j["bounds"]["measured_total"], j["counts"]["total"]);
  EXPECT_EQ(j["quadrangle"]["square"]["verdict"], "fail");
  EXPECT_FALSE(j.contains("meta"));
}

TEST(CliTest, OutputIsDeterministic) {
  const auto a = Call({"count", Fixture("min3d4.hc"), "--json"});
  const auto b = Call({"count", Fixture("min3d4.hc"), "--json", "--threads", "3"});
  EXPECT_EQ(a.out, b.out);
  const Json meta = Json::parse(Call({"count", Fixture("min6.sq"), "--json", "--meta"}).out);
  EXPECT_TRUE(meta["meta"].contains("version"));
}

TEST(CliTest, ConstructPipesIntoCount) {
  const Result built = Call({"construct", "iterated-cyclic", "--order", "5", "--dim", "3"});
  ASSERT_EQ(built.code, kOk) << built.err;
  const Result counted = Call({"count", "-", "--json"}, built.out);
  ASSERT_EQ(counted.code, kOk) << counted.err;
  EXPECT_EQ(Json::parse(counted.out)["counts"]["total"], 390625);
}

TEST(CliTest, ConstructCompose) {
  const std::string z2 = Call({"construct", "cyclic", "--order", "2"}).out;
  const std::string dir = ::testing::TempDir();
  const std::string path = dir + "/z2.sq";
  {
    std::ofstream(path) << z2;
  }
  const Result r = Call({"construct", "compose", "--f", path, "--g", path});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(ParseHypercube(r.out), IteratedCyclicGroup(2, 3));
  EXPECT_EQ(Call({"construct", "compose", "--f", path}).code, kInputError);
  EXPECT_EQ(Call({"construct", "compose", "--f", path, "--g", path, "--sigma", "0,1,x,3"}).code,
            kInputError);
}

TEST(CliTest, BoundsSquare) {
  const Result r = Call({"bounds", "--n", "7", "--d", "2", "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["square"], 7147);
  EXPECT_EQ(j["table"]["recipe_total"], 7147);
  EXPECT_NE(Call({"bounds", "--n", "7", "--d", "2"}).out.find("7147"), std::string::npos);
}

TEST(CliTest, BoundsLargeValuesAreExactStrings) {
  const Result r = Call({"bounds", "--n", "1000", "--d", "4", "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_TRUE(j["generic"]["component_sum_total"].is_string());
  EXPECT_EQ(j["generic"]["component_sum_total"].get<std::string>().size(), 26u);
  EXPECT_FALSE(j.contains("table"));
}

TEST(CliTest, BoundsFlagsTabulatedDiscrepancy) {
  const Json j = Json::parse(Call({"bounds", "--n", "5", "--d", "3", "--json"}).out);
  EXPECT_EQ(j["table"]["recipe_total"], 87440);
  EXPECT_TRUE(j["table"]["rows"][3]["discrepancy"].get<bool>());
}

TEST(CliTest, CheckQuadrangleFailIsNotAnError) {
  const Result r = Call({"check-quadrangle", Fixture("min3d4.hc"), "--json"});
  EXPECT_EQ(r.code, kOk);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_TRUE(j["bundle"].contains("witness"));
  EXPECT_EQ(Call({"check-quadrangle", Fixture("min3d4.hc"), "--strict"}).code, kCheckFailed);
  EXPECT_EQ(Call({"check-quadrangle", "-", "--strict"}, "0 1\n1 0\n").code, kOk);
}

TEST(CliTest, Patterns) {
  const Result r = Call({"patterns", "--n", "4", "--d", "4", "--k", "3", "--json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["refined_bound"], 28800);
  ASSERT_EQ(j["types"].size(), 3u);
  EXPECT_EQ(j["types"][0]["P"], 51);
  EXPECT_EQ(Call({"patterns", "--n", "4", "--d", "2", "--k", "3"}).code, kInputError);
}

TEST(CliTest, Search) {
  const Result r = Call({"search", "--n", "5", "--json", "--check-groups"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["min_total"]["value"], 1949);
  EXPECT_EQ(j["criterion_mismatches"], 0);
  EXPECT_EQ(ParseHypercube(j["min_total"]["witness"].get<std::string>()).order(), 5);
  EXPECT_EQ(Call({"search", "--n", "7"}).code, kInputError);
}

TEST(CliTest, ConjugateAndConvert) {
  const Result t = Call({"conjugate", Fixture("min6.sq"), "--perm", "0,2,1"});
  ASSERT_EQ(t.code, kOk) << t.err;
  const Result back = Call({"conjugate", "-", "--perm", "0,2,1"}, t.out);
  EXPECT_EQ(ParseHypercube(back.out), ReadHypercubeFile(Fixture("min6.sq")));
  EXPECT_EQ(Call({"conjugate", Fixture("min6.sq"), "--perm", "0,1"}).code, kInputError);

  const Result hc = Call({"convert", Fixture("min7.sq"), "--to", "hypercube"});
  ASSERT_EQ(hc.code, kOk);
  const Result sq = Call({"convert", "-", "--to", "square"}, hc.out);
  EXPECT_EQ(ParseHypercube(sq.out), ReadHypercubeFile(Fixture("min7.sq")));
  EXPECT_EQ(Call({"convert", Fixture("min3d4.hc"), "--to", "square"}).code, kInputError);
}

TEST(CliTest, Validate) {
  EXPECT_EQ(Call({"validate", Fixture("min4d5.hc")}).code, kOk);
  const Result bad = Call({"validate", "-", "--json"}, "0 1\n0 1\n");
  EXPECT_EQ(bad.code, kOk);
  EXPECT_FALSE(Json::parse(bad.out)["valid"].get<bool>());
  EXPECT_EQ(Call({"validate", "-", "--strict"}, "0 1\n0 1\n").code, kCheckFailed);
}

TEST(CliTest, InputErrors) {
  const Result syntax = Call({"count", "-"}, "0 1\n1 x\n");
  EXPECT_EQ(syntax.code, kInputError);
  EXPECT_NE(syntax.err.find("line 2, column 3"), std::string::npos);
  EXPECT_EQ(Call({"count", "-"}, "0 1\n0 1\n").code, kInputError);
  EXPECT_EQ(Call({"count", "/nonexistent.sq"}).code, kInputError);
  EXPECT_EQ(Call({"frobnicate"}).code, kInputError);
  EXPECT_EQ(Call({"count", Fixture("min6.sq"), "--bogus"}).code, kInputError);
  EXPECT_EQ(Call({}).code, kInputError);
}

TEST(CliTest, HelpExitsCleanly) {
  const Result r = Call({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("check-quadrangle"), std::string::npos);
}

}  // namespace
}  // namespace latinhc::cli
