// Drives the hbk binary end-to-end: the external interfaces (subcommands,
// diagram files, JSON output) rather than the library API.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "hbk/builders.hpp"
#include "hbk/diagram_io.hpp"

namespace {

struct RunResult {
  int exit_code = 0;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(HBK_BIN) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  while (fgets(buffer.data(), buffer.size(), pipe)) result.out += buffer.data();
  int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

std::string write_diagram(const hbk::Diagram& d, const std::string& name) {
  std::string path = std::string("cli_") + name + ".json";
  hbk::save_diagram_file(d, path);
  return path;
}

nlohmann::json parse(const RunResult& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, ValidateGood) {
  std::string path = write_diagram(hbk::builders::kinked_unknot(), "kink");
  RunResult r = run("validate " + path);
  EXPECT_EQ(r.exit_code, 0);
  auto j = parse(r);
  EXPECT_TRUE(j["valid"].get<bool>());
  EXPECT_EQ(j["faces"], 3);
}

TEST(Cli, ValidateBadFile) {
  std::ofstream("cli_bad.json") << "{ not json";
  RunResult r = run("validate cli_bad.json");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, FlowsCount) {
  std::string path = write_diagram(hbk::builders::theta_with_kink(), "theta");
  RunResult r = run("flows " + path + " --m 3");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(parse(r)["count"], "9");
}

TEST(Cli, FlowsList) {
  std::string path = write_diagram(hbk::builders::kinked_unknot(), "kink");
  RunResult r = run("flows " + path + " --m 5 --list");
  auto j = parse(r);
  EXPECT_EQ(j["flows"].size(), 5u);
}

TEST(Cli, ColorKinkOverGf4) {
  std::string path = write_diagram(hbk::builders::kinked_unknot(), "kink");
  RunResult r = run("color " + path + " --m 3 --p 2 --f 1,1,1 --s 1");
  EXPECT_EQ(r.exit_code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["dim"], 1);
  EXPECT_EQ(j["count"], "4^1");
  EXPECT_TRUE(j["residual_zero"].get<bool>());
}

TEST(Cli, ColorWithExplicitFlow) {
  std::string path = write_diagram(hbk::builders::trefoil(), "trefoil");
  RunResult r = run("color " + path + " --m 3 --p 2 --f 1,1,1 --s 1 --flow l1=1,l2=1,l3=1");
  EXPECT_EQ(r.exit_code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["dim"], 2);
  EXPECT_EQ(j["count"], "4^2");
}

TEST(Cli, OracleAgrees) {
  std::string path = write_diagram(hbk::builders::theta_with_kink(), "theta");
  RunResult r = run("oracle " + path + " --m 3 --p 2 --f 1,1,1 --s 1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(parse(r)["match"].get<bool>());
}

TEST(Cli, CheckRelation) {
  std::string path = write_diagram(hbk::builders::two_crossing_genus2(), "genus2");
  RunResult r = run("check-relation " + path + " --m 8 --p 3 --f 2,1,1 --s 1,1");
  EXPECT_EQ(r.exit_code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["flows"], 64);
  EXPECT_TRUE(j["residual_zero"].get<bool>());
}

TEST(Cli, BoundUnknotTrivial) {
  std::string path = write_diagram(hbk::builders::trivial_genus(2), "triv2");
  RunResult r = run("bound-unknot " + path + " --m 3 --p 2 --f 1,1,1 --s 1");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(parse(r)["bound"], 0);
}

TEST(Cli, BoundDistanceSelfIsZero) {
  std::string path = write_diagram(hbk::builders::two_crossing_genus2(), "genus2");
  RunResult r = run("bound-distance " + path + " " + path + " --m 3 --p 2 --f 1,1,1 --s 1");
  EXPECT_EQ(r.exit_code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["bound"], 0);
  EXPECT_EQ(j["direction_details"]["d1_to_d2"], 0);
}

TEST(Cli, MovesListAndApply) {
  std::string path = write_diagram(hbk::builders::kinked_unknot(), "kink");
  RunResult r = run("moves " + path + " --list");
  EXPECT_EQ(r.exit_code, 0);
  auto j = parse(r);
  EXPECT_GT(j["sites"].size(), 0u);

  RunResult applied = run("moves " + path + " --apply R1+:x1,under,+");
  EXPECT_EQ(applied.exit_code, 0);
  hbk::Diagram d = hbk::parse_diagram(applied.out);
  EXPECT_EQ(d.crossings().size(), 2u);
}

TEST(Cli, MovesRandomizeDeterministic) {
  std::string path = write_diagram(hbk::builders::theta_with_kink(), "theta");
  RunResult a = run("moves " + path + " --randomize 4 --seed 7");
  RunResult b = run("moves " + path + " --randomize 4 --seed 7");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);  // byte-for-byte reproducible
  RunResult c = run("moves " + path + " --randomize 4 --seed 8");
  EXPECT_EQ(c.exit_code, 0);
}

TEST(Cli, RandomizeRequiresSeed) {
  std::string path = write_diagram(hbk::builders::theta_with_kink(), "theta");
  RunResult r = run("moves " + path + " --randomize 4");
  EXPECT_NE(r.exit_code, 0);
}

TEST(Cli, BadFieldRejected) {
  std::string path = write_diagram(hbk::builders::kinked_unknot(), "kink");
  RunResult r = run("color " + path + " --m 3 --p 4 --f 1,1,1 --s 1");
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Cli, NotZmFamilyRejected) {
  std::string path = write_diagram(hbk::builders::kinked_unknot(), "kink");
  // GF(4) family has type 3; m = 4 is not a multiple
  RunResult r = run("color " + path + " --m 4 --p 2 --f 1,1,1 --s 1");
  EXPECT_EQ(r.exit_code, 2);
}
