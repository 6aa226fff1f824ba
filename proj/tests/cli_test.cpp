#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "leaguelab/cli.hpp"

using namespace leaguelab;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  const int code = cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) {
  return std::string(LEAGUELAB_SAMPLES_DIR) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST(Cli, RankFixture) {
  const auto r = run_cli({"rank", "@table1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "| Gliders | 17 | 18 : 1 |"));
  const auto csv = run_cli({"rank", "@table1", "--format", "csv"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_TRUE(contains(csv.out, "Gliders,17,18,1,"));
}

TEST(Cli, RankGameLogBothSchemes) {
  for (const char* scheme : {"discrete", "continuous"}) {
    const auto r = run_cli({"rank", sample("games.csv"), "--scheme", scheme});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "north"));
  }
}

TEST(Cli, RankFromStdin) {
  const auto r = run_cli({"rank", "-"}, "a,b,1,0\nb,a,2,2\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "| a |"));
}

TEST(Cli, ContinuousNeedsCounts) {
  const auto r = run_cli({"rank", "@table1", "--scheme", "continuous"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "counts-required"));
}

TEST(Cli, CompareFixtures) {
  auto r = run_cli({"compare", "@rank_actual_2016", "@table1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "L1 distance: 8"));
  r = run_cli({"compare", "@table4", "@rank_chronological"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "L1 distance: 0"));
  r = run_cli({"compare", "@table1", "@table4"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, BiasReportFlagsInconsistentReference) {
  const auto r = run_cli({"bias", "--n", "2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "(2.31, 0.32) violates the draw-rate identity"));
  EXPECT_TRUE(contains(r.out, "| ⇔ | 1.0 | 1.5 |"));
}

TEST(Cli, BiasIsThreadIndependent) {
  const auto one = run_cli({"bias", "--q", "0,0.5,1,2,3", "--n", "3000",
                            "--threads", "1", "--seed", "5"});
  const auto many = run_cli({"bias", "--q", "0,0.5,1,2,3", "--n", "3000",
                             "--threads", "8", "--seed", "5"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.out, many.out);
}

TEST(Cli, SimulateWritesMatrix) {
  const auto path =
      std::filesystem::temp_directory_path() / "leaguelab_cli_sim.json";
  const auto r = run_cli({"simulate", sample("graded_league.json"), "--n",
                          "500", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "L1 distance between discrete and continuous"));
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto m = load_matrix(ss.str());
  EXPECT_EQ(m.size(), 4u);
  EXPECT_EQ(m.pair("alpha"_team, "bravo"_team).n_games, 500);
  std::filesystem::remove(path);

  const auto ranked = run_cli({"rank", "-", "--scheme", "continuous"}, ss.str());
  EXPECT_EQ(ranked.code, 0) << ranked.err;
}

TEST(Cli, SimulateRejectsIncompleteModel) {
  const auto r = run_cli({"simulate", "-"},
                         R"({"teams": ["a", "b", "c"], "pairs": [
                           {"a": "a", "b": "b", "mean_a": 1, "mean_b": 1}]})");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "incomplete-model"));
}

TEST(Cli, ChallengeParse) {
  auto r = run_cli({"challenge", "parse", "(change_player_param (ball_decay 0.5))"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "(change_player_param (ball_decay 0.5))\nball_decay = 0.5\n");

  r = run_cli({"challenge", "parse", "(bad"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "position"));

  r = run_cli({"challenge", "parse", "--strict", "(change_player_param (wind_force 3))"});
  EXPECT_EQ(r.code, 2);
  r = run_cli({"challenge", "parse", "--strict", "--registry", sample("registry.json"),
               "(change_player_param (wind_force 3))"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, ChallengeEmitAndConf) {
  auto r = run_cli({"challenge", "emit", "--set", "kick_rand=0.2", "--set",
                    "player_rand=0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "(change_player_param (kick_rand 0.2) (player_rand 0.2))\n");

  r = run_cli({"challenge", "conf", "--on", "--set", "ball_rand=0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "server::global_challenge_mode = true\nserver::ball_rand = 0.3\n");

  r = run_cli({"challenge", "conf", "--off"});
  EXPECT_EQ(r.out, "server::global_challenge_mode = false\n");

  r = run_cli({"challenge", "emit", "--set", "x=1", "--set", "x=2"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, ReportVerifiesTables) {
  const auto r = run_cli({"report"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "Table 3"));
  EXPECT_TRUE(contains(r.out, "chronological order: 0"));
}

TEST(Cli, ReportDetectsTamperedScores) {
  auto m = fixtures::table1().matrix;
  auto p = m.pair("Gliders"_team, "HELIOS"_team);
  p.avg_goals_a = 0.0;
  p.avg_goals_b = 2.0;
  m.set_pair(p);
  const auto path =
      std::filesystem::temp_directory_path() / "leaguelab_cli_tampered.json";
  {
    std::ofstream f(path);
    f << dump_matrix(m);
  }
  const auto r = run_cli({"report", "--override", "table1=" + path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(contains(r.err, "mismatch: table1"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"rank", "@nope"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, BinaryExitCode) {
  const std::string cmd =
      std::string(LEAGUELAB_CLI_PATH) + " challenge parse '(bad' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  ASSERT_NE(status, -1);
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
