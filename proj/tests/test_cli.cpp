#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bfoml/cli.hpp"
#include "bfoml/fo.hpp"
#include "bfoml/kripke.hpp"
#include "bfoml/model_io.hpp"
#include "bfoml/parser.hpp"

namespace bfoml {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "bfoml");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bfoml_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }
  static std::string read(const std::string& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

TEST_F(CliTest, SatIncreasing) {
  const Outcome r = run({"sat", "E x [] P(x)", "--model", path("m.json"), "--report", path("r.json")});
  EXPECT_EQ(r.code, kExitSat);
  EXPECT_EQ(r.out, "SAT\n");
  const KripkeModel m = model_from_json(read(path("m.json")));
  EXPECT_TRUE(check(m, "r", {}, parse_formula("E x [] P(x)")));
  EXPECT_NE(read(path("r.json")).find("\"verdict\": \"SAT\""), std::string::npos);
}

TEST_F(CliTest, SatConstant) {
  EXPECT_EQ(run({"sat", "--semantics", "constant", "(E x [] P(x) & A y <> !P(y))"}).code,
            kExitUnsat);
  const Outcome r = run({"sat", "--semantics", "constant", "A x [] P(x)"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, SatFromFileAndTrace) {
  write("f.txt", "(P(x) & !P(x))\n");
  const Outcome r = run({"sat", "--file", path("f.txt"), "--trace", path("t.txt")});
  EXPECT_EQ(r.code, kExitUnsat);
  EXPECT_NE(read(path("t.txt")).find("(closed)"), std::string::npos);
}

TEST_F(CliTest, SatBudget) {
  const Outcome r = run({"sat", "--budget", "1", "(E x <> P(x) & E y <> Q(y))"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST_F(CliTest, ParseErrorsExitOne) {
  EXPECT_EQ(run({"sat", "E x [] (P(x)"}).code, kExitError);
  EXPECT_EQ(run({"nnf"}).code, kExitError);
  EXPECT_EQ(run({}).code, kExitError);
  EXPECT_EQ(run({"sat", "--semantics", "flat", "T"}).code, kExitError);
}

TEST_F(CliTest, Check) {
  write("m.json", R"({"worlds": ["w", "v"], "domain": ["a", "b"], "edges": [["w", "v"]],
    "local": {"w": ["a"], "v": ["a", "b"]}, "rho": {"v": {"P": [["a"]]}}})");
  Outcome r = run({"check", "E x [] P(x)", "--model", path("m.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "true\n");
  r = run({"check", "P(y)", "--model", path("m.json"), "--world", "v", "--assign", "y=b"});
  EXPECT_EQ(r.code, kExitFalse);
  EXPECT_EQ(r.out, "false\n");
  write("bad.json", "{\"worlds\": [");
  EXPECT_EQ(run({"check", "T", "--model", path("bad.json")}).code, kExitError);
  EXPECT_EQ(run({"check", "P(y)", "--model", path("m.json"), "--assign", "y"}).code, kExitError);
}

TEST_F(CliTest, NnfCleanInfo) {
  EXPECT_EQ(run({"nnf", "!E x [] P(x)"}).out, "A x <> !P(x)\n");
  EXPECT_EQ(run({"clean", "(E x [] P(x) & E x [] Q(x))"}).out,
            "(E x [] P(x) & E x_1 [] Q(x_1))\n");
  const Outcome r = run({"info", "(E x [] P(x) & R(z))"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("modal depth 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("free z\n"), std::string::npos);
  EXPECT_NE(r.out.find("signature P/1 R/1\n"), std::string::npos);
}

TEST_F(CliTest, Translate) {
  Outcome r = run({"translate", "EX x . EX y . R(x,y)"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(parse_formula(r.out), translate_sentence(parse_fo("EX x . EX y . R(x,y)")));

  write("fo.json", R"({"domain": ["a", "b"], "R": [["a", "b"]]})");
  r = run({"translate", "EX x . EX y . R(x,y)", "--fo-model", path("fo.json"), "--witness",
           path("k.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("6 worlds"), std::string::npos);
  EXPECT_NE(r.err.find("false"), std::string::npos);

  r = run({"translate", "EX x . EX y . R(x,y)", "--fo-model", path("fo.json"), "--witness",
           path("k.json"), "--repaired"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("true"), std::string::npos);
  const KripkeModel k = model_from_json(read(path("k.json")));
  EXPECT_TRUE(check(k, "v1", {}, parse_formula(run({"translate", "EX x . EX y . R(x,y)"}).out)));

  EXPECT_EQ(run({"translate", "R(x,y)"}).code, kExitError);
  EXPECT_EQ(run({"translate", "EX x . R(x,x)", "--witness", path("k.json")}).code, kExitError);
}

TEST_F(CliTest, Oracle) {
  Outcome r = run({"oracle", "E x <> P(x)", "--model", path("m.json")});
  EXPECT_EQ(r.code, kExitSat);
  EXPECT_EQ(r.out.rfind("SAT at w0", 0), 0u);
  EXPECT_TRUE(check(model_from_json(read(path("m.json"))), "w0", {}, parse_formula("E x <> P(x)")));
  r = run({"oracle", "--semantics", "constant", "--max-worlds", "4", "--max-domain", "3",
           "(A x [] A y [] !P(x) & A z [] E u <> P(u))"});
  EXPECT_EQ(r.code, kExitSat);
  r = run({"oracle", "--semantics", "constant",
           "((A x [] A y [] !P(x) & A z [] E u <> P(u)) & E v <> T)"});
  EXPECT_EQ(r.code, kExitUnsat);
  EXPECT_EQ(r.out, "UNSAT within 4 worlds and 3 elements\n");
}

TEST_F(CliTest, Fuzz) {
  Outcome r = run({"fuzz", "--seed", "3", "--count", "20", "--fragment", "eb"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("tableau agreement 20/20"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("failures 0"), std::string::npos);
  r = run({"fuzz", "--count", "0"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(run({"fuzz", "--fragment", "modal"}).code, kExitError);
}

TEST(CliReport, Json) {
  RunReport rep;
  rep.verdict = RunReport::Verdict::InputError;
  rep.nodes = 7;
  const std::string j = report_to_json(rep);
  EXPECT_NE(j.find("VALID-INPUT-ERROR"), std::string::npos);
  EXPECT_NE(j.find("\"nodes\": 7"), std::string::npos);
  EXPECT_EQ(to_string(RunReport::Verdict::Unsat), "UNSAT");
}

}  // namespace
}  // namespace bfoml
