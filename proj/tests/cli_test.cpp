#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "lpmln/report.hpp"
#include "support.hpp"

#ifndef LPMLN_CLI_PATH
#error "LPMLN_CLI_PATH must name the lpmln executable"
#endif

using namespace lpmln;
using support::data_path;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(LPMLN_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return "'" + data_path(name) + "'"; }

// Per-process scratch directory, removed when the test binary exits.
struct ScratchDir {
  std::filesystem::path path =
      std::filesystem::temp_directory_path() / ("lpmln_cli_test_" + std::to_string(getpid()));
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

// Writes `text` to a scratch file and returns its quoted path.
std::string scratch(const std::string& name, const std::string& text) {
  static const ScratchDir scratch_dir;
  const auto& dir = scratch_dir.path;
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary) << text;
  return "'" + path.string() + "'";
}

json run_json(const std::string& args, int expected_code) {
  const Outcome r = run(args + " --json");
  EXPECT_EQ(r.code, expected_code) << args;
  return json::parse(r.out);
}

TEST(CliModels, ExampleProgramF) {
  const Outcome r = run("models " + data("F.lpmln"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{}\te^{5}\t0.468311\n{a}\te^{3}\t0.063379\n{a,b}\te^{5}\t0.468311\n");
}

TEST(CliModels, TrivialPrograms) {
  EXPECT_EQ(run("models " + scratch("hard.lpmln", "alpha: a.\n")).out, "{}\te^{0}\t0.000000\n{a}\te^{0+1a}\t1.000000\n");
  EXPECT_EQ(run("models " + scratch("empty.lpmln", "")).out, "{}\te^{0}\t1.000000\n");
}

TEST(CliModels, Json) {
  const json j = run_json("models " + data("F.lpmln"), 0);
  ASSERT_EQ(j.at("models").size(), 3u);
  EXPECT_EQ(j["signature"], json({"a", "b"}));
  EXPECT_EQ(j["models"][2]["atoms"], json({"a", "b"}));
  EXPECT_EQ(j["models"][1]["weight"].get<WExpr>(), (WExpr{3, 0}));
  double total = 0;
  for (const auto& m : j["models"]) total += m["probability"].get<double>();
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(CliProb, DistributionAndSingleInterpretation) {
  EXPECT_EQ(run("prob " + data("P1.lpmln")).out, "{}\t0.000000\n{a}\t0.500000\n{b}\t0.500000\n");
  EXPECT_EQ(run("prob " + data("F.lpmln") + " --interp a").out, "{a}\t0.063379\n");
  const json j = run_json("prob " + data("F.lpmln") + " --interp b", 0);
  EXPECT_EQ(j["probability"].get<double>(), 0.0);
  EXPECT_EQ(run_json("prob " + data("F.lpmln"), 0).at("distribution").size(), 3u);
  EXPECT_EQ(run("prob " + data("F.lpmln") + " --interp zz").code, 2);
}

TEST(CliCheckSE, DefaultMethodExamples) {
  Outcome r = run("check-se " + data("F.lpmln") + " " + data("G.lpmln"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "equivalent, c = e^{2}\n");

  r = run("check-se " + data("Fprime.lpmln") + " " + data("G.lpmln"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("reduct mismatch at {a}"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("reducts differ at: {a} {a,b}"), std::string::npos) << r.out;

  r = run("check-se " + data("F.lpmln") + " " + data("Gprime.lpmln"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "not equivalent: weight ratio e^{1} at {} but e^{2} at {a}\n");
}

TEST(CliCheckSE, JsonRoundTripsWExpr) {
  json j = run_json("check-se " + data("F.lpmln") + " " + data("G.lpmln"), 0);
  EXPECT_EQ(j["verdict"], "equivalent");
  EXPECT_EQ(j["witness"].get<WExpr>(), (WExpr{2, 0}));
  EXPECT_TRUE(j["counterexample"].is_null());

  j = run_json("check-se " + data("F.lpmln") + " " + data("Gprime.lpmln"), 1);
  EXPECT_EQ(j["verdict"], "weight-mismatch");
  EXPECT_EQ(j["counterexample"]["ratio1"].get<WExpr>(), (WExpr{1, 0}));
  EXPECT_EQ(j["counterexample"]["ratio2"].get<WExpr>(), (WExpr{2, 0}));
  EXPECT_EQ(j["counterexample"]["x2"].get<Interpretation>(), (Interpretation{"a"}));

  j = run_json("check-se " + data("Fprime.lpmln") + " " + data("G.lpmln"), 1);
  EXPECT_EQ(j["verdict"], "reduct-mismatch");
  EXPECT_EQ(j["counterexample"]["x"].get<Interpretation>(), (Interpretation{"a"}));
  const auto all = j["counterexample"]["all_x"];
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[1].get<Interpretation>(), (Interpretation{"a", "b"}));
}

TEST(CliCheckSE, Conditions) {
  for (const char* m : {"b", "c", "d", "e", "f", "g", "B"}) {
    EXPECT_EQ(run("check-se --method " + std::string(m) + " " + data("F.lpmln") + " " + data("G.lpmln")).code, 0) << m;
    EXPECT_EQ(run("check-se --method " + std::string(m) + " " + data("P1.lpmln") + " " + data("P2.lpmln")).code, 1)
        << m;
  }
  const json j = run_json("check-se --method b " + data("P1.lpmln") + " " + data("P2.lpmln"), 1);
  EXPECT_FALSE(j["conditions"]["B"]["holds"].get<bool>());
  EXPECT_EQ(j["conditions"]["B"]["at"], json({"a", "b"}));
}

TEST(CliCheckSE, Falsify) {
  Outcome r = run("check-se --method falsify --trials 1000 " + data("Fprime.lpmln") + " " + data("G.lpmln"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("violation found", 0), 0u) << r.out;

  r = run("check-se --method falsify --trials 200 --seed 5 " + data("F.lpmln") + " " + data("G.lpmln"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "no violation in 200 trials (seed 5)\n");

  const json j = run_json("check-se --method falsify --trials 1000 --seed 3 " + data("F.lpmln") + " " +
                              data("Gprime.lpmln"),
                          1);
  EXPECT_TRUE(j["found"].get<bool>());
  EXPECT_EQ(j["seed"], 3);
  EXPECT_NO_THROW(parse_program(j["counterexample"]["h"].get<std::string>()));
}

// The same inputs and seed give the same verdict in both output modes.
TEST(CliCheckSE, TextAndJsonAgree) {
  const std::string pairs[][2] = {{"F.lpmln", "G.lpmln"},   {"Fprime.lpmln", "G.lpmln"}, {"F.lpmln", "Gprime.lpmln"},
                                  {"P1.lpmln", "P2.lpmln"}, {"H.lpmln", "Hhard.lpmln"},  {"G.lpmln", "G.lpmln"}};
  for (const auto& p : pairs) {
    for (const char* m : {"theorem1", "b", "d", "g", "falsify"}) {
      const std::string args =
          "check-se --method " + std::string(m) + " --trials 300 --seed 11 " + data(p[0]) + " " + data(p[1]);
      const Outcome text = run(args);
      const Outcome js = run(args + " --json");
      ASSERT_EQ(text.code, js.code) << args;
      const json j = json::parse(js.out);
      const bool positive = j.contains("found") ? !j["found"].get<bool>() : j["equivalent"].get<bool>();
      EXPECT_EQ(positive, text.code == 0) << args;
    }
  }
}

TEST(CliReduct, Examples) {
  Outcome r = run("reduct " + data("F.lpmln") + " --interp a");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "X = {a}\nF_X: 3: a <- not not a\nreduct: not bot -> a\n");

  const json empty = run_json("reduct " + data("F.lpmln") + " --interp ''", 0);
  ASSERT_EQ(empty["reduct"].size(), 3u);
  for (const auto& f : empty["reduct"])
    EXPECT_TRUE(classically_equivalent(parse_formula(f.get<std::string>()), top()).holds) << f;

  const json g = run_json("reduct " + data("G.lpmln") + " --interp a,b", 0);
  std::vector<Formula> fs;
  for (const auto& f : g["reduct"]) fs.push_back(parse_formula(f.get<std::string>()));
  EXPECT_TRUE(classically_equivalent(conjunction(fs), conj(atom("a"), atom("b"))).holds);

  EXPECT_EQ(run("reduct " + data("F.lpmln") + " --interp q").code, 2);
  EXPECT_EQ(run("reduct " + data("F.lpmln")).code, 2);
}

TEST(CliTranslate, DeltaAndChoice) {
  EXPECT_EQ(run("delta " + scratch("imp.lpmln", "a -> b.")).out, "(a_prime -> b_prime) & (a -> b)\n");
  EXPECT_EQ(run("delta " + scratch("neg.lpmln", "not a.")).out, "not a\n");
  EXPECT_EQ(run("choice " + scratch("fact.lpmln", "a.")).out, "a | not a\n");
  const json j = run_json("choice " + data("G.lpmln"), 0);
  EXPECT_EQ(j["formulas"].size(), 2u);
  // printed translations re-parse
  const json delta = run_json("delta " + data("F.lpmln"), 0);
  for (const auto& f : delta["formulas"])
    EXPECT_NO_THROW(parse_formula(f.get<std::string>())) << f;
}

TEST(CliCrossCheck, Examples) {
  Outcome r = run("cross-check " + data("F.lpmln") + " " + data("G.lpmln"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("agree: all conditions hold"), std::string::npos);
  EXPECT_EQ(run("cross-check " + data("F.lpmln") + " " + data("F.lpmln")).code, 0);

  const json j = run_json("cross-check " + data("P1.lpmln") + " " + data("P2.lpmln"), 1);
  EXPECT_EQ(j["verdict"], "all-fail");
  EXPECT_TRUE(j["agree"].get<bool>());
  for (const char* c : {"B", "C", "D", "E", "F", "G"}) EXPECT_FALSE(j["conditions"][c]["holds"].get<bool>()) << c;
  EXPECT_TRUE(j["conditions"]["D"]["candidate_definition"].get<bool>());
}

TEST(CliErrors, ExitCodes) {
  const std::string bad = scratch("bad.lpmln", "1: a &\n");
  EXPECT_EQ(run("models " + bad).code, 2);
  EXPECT_EQ(run("check-se " + bad + " " + data("G.lpmln")).code, 2);
  EXPECT_EQ(run("models /nonexistent/x.lpmln").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check-se --method z " + data("F.lpmln") + " " + data("G.lpmln")).code, 2);
  EXPECT_EQ(run("check-se --trials 0 --method falsify " + data("F.lpmln") + " " + data("G.lpmln")).code, 2);

  std::string wide;
  for (int i = 0; i < 25; ++i) wide += "1: p" + std::to_string(i) + ".\n";
  const std::string big = scratch("wide.lpmln", wide);
  EXPECT_EQ(run("models " + big).code, 3);
  EXPECT_EQ(run("check-se " + big + " " + data("F.lpmln")).code, 3);
  EXPECT_EQ(run("cross-check " + data("F.lpmln") + " " + big).code, 3);
}

TEST(CliErrors, ParseErrorIsPositioned) {
  const std::string bad = scratch("bad2.lpmln", "1: a.\n2: (a | b\n");
  const std::string cmd = std::string(LPMLN_CLI_PATH) + " models " + bad + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  char buf[512] = {};
  const std::size_t n = std::fread(buf, 1, sizeof buf - 1, pipe);
  pclose(pipe);
  EXPECT_NE(std::string(buf, n).find("2:10"), std::string::npos) << buf;
}

}  // namespace
