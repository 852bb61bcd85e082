#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vgrp/cli.hpp"

namespace {

const std::filesystem::path kDocs = VGRP_DOCUMENTS;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = vgrp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string doc(const char* name) { return (kDocs / name).string(); }

/// Writes `text` to a scratch file and returns its path.
std::string scratch(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "vgrp_cli_test";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

void expect_golden(const std::string& golden, std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  CliRun r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(kDocs / "expected" / golden)) << golden;
}

}  // namespace

TEST(CliGolden, ClassifyZ4Boolean) { expect_golden("classify_z4_boolean.json", {"classify", "--input", doc("z4_boolean.json")}); }
TEST(CliGolden, DecomposeZ4Boolean) {
  expect_golden("decompose_z4_boolean.json", {"decompose", "--input", doc("z4_boolean.json")});
}
TEST(CliGolden, ClassifyZ4Lawvere) { expect_golden("classify_z4_lawvere.json", {"classify", "--input", doc("z4_lawvere.json")}); }
TEST(CliGolden, PretorsionZ4Lawvere) {
  expect_golden("pretorsion_z4_lawvere.json", {"pretorsion", "--input", doc("z4_lawvere.json")});
}
TEST(CliGolden, ClassifyQ) {
  expect_golden("classify_q.json", {"classify", "--input", doc("q_morphism.json"), "--morphism", "q"});
}
TEST(CliGolden, FactorizeQ) {
  expect_golden("factorize_q.json", {"factorize", "--input", doc("q_morphism.json"), "--morphism", "q"});
}
TEST(CliGolden, MlFactorizeQ) {
  expect_golden("ml_factorize_q.json", {"ml-factorize", "--input", doc("q_morphism.json"), "--morphism", "q"});
}
TEST(CliGolden, CoverQ) { expect_golden("cover_q.json", {"cover", "--input", doc("q_morphism.json"), "--morphism", "q"}); }

TEST(CliOutput, DocumentedFacts) {
  CliRun c = run({"classify", "--input", doc("z4_boolean.json"), "--format", "json"});
  vgrp::Json j = vgrp::Json::parse(c.out);
  EXPECT_FALSE(j["object"]["separated"].get<bool>());
  EXPECT_TRUE(j["object"]["symmetric"].get<bool>());
  CliRun d = run({"decompose", "--input", doc("z4_boolean.json"), "--format", "json"});
  j = vgrp::Json::parse(d.out);
  EXPECT_EQ(j["torsion_part"], vgrp::Json::parse("[0, 2]"));
  EXPECT_EQ(j["quotient"]["group"]["order"], 2);
  EXPECT_EQ(j["quotient"]["structure"], vgrp::Json::parse(R"([["top", "bot"], ["bot", "top"]])"));
  CliRun v = run({"cover", "--input", doc("q_morphism.json"), "--morphism", "q", "--format", "json"});
  j = vgrp::Json::parse(v.out);
  EXPECT_FALSE(j["covering"].get<bool>());
  EXPECT_TRUE(j["kernel"]["class"]["indiscrete"].get<bool>());
}

TEST(CliOutput, TextFormat) {
  CliRun c = run({"classify", "--input", doc("z4_boolean.json")});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("object.separated: false\n"), std::string::npos);
  EXPECT_NE(c.out.find("object.symmetric: true\n"), std::string::npos);
}

TEST(CliOutput, JsonIsDeterministic) {
  std::vector<std::string> a{"classify", "--input", doc("q_morphism.json"), "--morphism", "q", "--format", "json"};
  EXPECT_EQ(run(a).out, run(a).out);
}

TEST(CliOutput, ValidateAll) {
  CliRun r = run({"validate", "--input", doc("z4_boolean.json"), "--input", doc("z4_lawvere.json"), "--input",
               doc("q_morphism.json"), "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(vgrp::Json::parse(r.out)["ok"].get<bool>());
}

TEST(CliOutput, Descent) {
  CliRun r = run({"descent", "--input", doc("z4_boolean.json"), "--window", "2", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  vgrp::Json j = vgrp::Json::parse(r.out);
  EXPECT_TRUE(j["cover"]["ok"].get<bool>());
  EXPECT_TRUE(j["eq_f"]["report"]["ok"].get<bool>());
  EXPECT_EQ(j["window"], 2);
}

TEST(CliExit, TransitivityViolationIsOne) {
  std::string p = scratch("t_violation.json", R"({"quantale": {"builtin": "boolean"}, "group": {"cyclic": 3},
    "structure": {"delta": ["top", "top", "bot"]}})");
  CliRun r = run({"validate", "--input", p, "--format", "json"});
  EXPECT_EQ(r.code, 1);
  vgrp::Json j = vgrp::Json::parse(r.out);
  const vgrp::Json& v = j["documents"][0]["structure"]["violations"];
  bool found = false;
  for (const auto& e : v)
    if (e["law"] == "T") {
      EXPECT_EQ(e["witness"], vgrp::Json::parse("[0, 1, 2]"));
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST(CliExit, InvalidQuantaleIsOne) {
  std::string p = scratch("bad_quantale.json", R"({"quantale": {"elements": ["bot", "top"],
    "leq": [[true, true], [false, true]], "tensor": [["top", "bot"], ["bot", "top"]], "unit": "top"},
    "group": {"cyclic": 1}, "structure": [["top"]]})");
  EXPECT_EQ(run({"classify", "--input", p}).code, 1);
  CliRun v = run({"validate", "--input", p, "--format", "json"});
  EXPECT_EQ(v.code, 1);
  EXPECT_FALSE(vgrp::Json::parse(v.out)["documents"][0]["quantale"]["ok"].get<bool>());
}

TEST(CliExit, InputErrorsAreTwo) {
  EXPECT_EQ(run({"classify", "--input", scratch("broken.json", "{not json")}).code, 2);
  EXPECT_EQ(run({"classify", "--input", doc("missing.json")}).code, 2);
  EXPECT_EQ(run({"explode", "--input", doc("z4_boolean.json")}).code, 2);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"factorize", "--input", doc("q_morphism.json")}).code, 2);
  EXPECT_EQ(run({"factorize", "--input", doc("q_morphism.json"), "--morphism", "nope"}).code, 2);
  EXPECT_EQ(run({"classify", "--input", doc("z4_boolean.json"), "--format", "yaml"}).code, 2);
  std::string t = scratch("t_violation2.json", R"({"quantale": {"builtin": "boolean"}, "group": {"cyclic": 3},
    "structure": {"delta": ["top", "top", "bot"]}})");
  EXPECT_EQ(run({"decompose", "--input", t}).code, 2);
  std::string ni = scratch("nonintegral.json", R"({"quantale": {"elements": ["bot", "k", "top"],
    "leq": [[true, true, true], [false, true, true], [false, false, true]],
    "tensor": [["bot", "bot", "bot"], ["bot", "k", "top"], ["bot", "top", "top"]], "unit": "k"},
    "group": {"cyclic": 2}, "structure": [["k", "bot"], ["bot", "k"]]})");
  EXPECT_EQ(run({"decompose", "--input", ni}).code, 2);
  EXPECT_EQ(run({"pretorsion", "--input", ni}).code, 0);
  EXPECT_EQ(run({"descent", "--input", doc("q_morphism.json"), "--morphism", "q"}).code, 2);
}

TEST(CliExit, CapacityIsThree) {
  std::string p = scratch("big.json", R"({"quantale": {"builtin": "lawvere_chain", "m": 2}, "group": {"cyclic": 13},
    "structure": {"delta": ["0", "2", "2", "2", "2", "2", "2", "2", "2", "2", "2", "2", "2"]}})");
  CliRun r = run({"pretorsion", "--input", p});
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST(CliExit, SmokeSuitePasses) {
  CliRun r = run({"suite", "--suite-level", "smoke", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(vgrp::Json::parse(r.out)["ok"].get<bool>());
}
