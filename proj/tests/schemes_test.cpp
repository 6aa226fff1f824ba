#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "leaguelab/fixtures.hpp"
#include "leaguelab/ingest.hpp"
#include "leaguelab/schemes.hpp"

using namespace leaguelab;

namespace {

PairAggregate counted(std::int64_t wins_a, std::int64_t draws,
                      std::int64_t wins_b) {
  PairAggregate p;
  p.a = "a"_team;
  p.b = "b"_team;
  p.n_games = wins_a + draws + wins_b;
  p.wins_a = wins_a;
  p.draws = draws;
  p.wins_b = wins_b;
  p.avg_goals_a = 1.0;
  p.avg_goals_b = 1.0;
  p.counts_known = true;
  return p;
}

ScoreMatrix random_matrix(std::mt19937_64& rng, int n, bool with_counts) {
  std::vector<TeamId> teams;
  for (int i = 0; i < n; ++i) teams.emplace_back("t" + std::to_string(i));
  ScoreMatrix m(teams);
  std::uniform_int_distribution<int> tenths(0, 40);
  std::uniform_int_distribution<int> count(0, 20);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto p = PairAggregate::averages_only(teams[i], teams[j],
                                            tenths(rng) / 10.0,
                                            tenths(rng) / 10.0);
      if (with_counts) {
        p.wins_a = count(rng);
        p.draws = count(rng);
        p.wins_b = count(rng);
        p.n_games = p.wins_a + p.draws + p.wins_b;
        if (p.n_games == 0) {
          p.draws = 1;
          p.n_games = 1;
        }
        p.counts_known = true;
      }
      m.set_pair(p);
    }
  }
  return m;
}

}  // namespace

TEST(DiscretePairPoints, Examples) {
  EXPECT_EQ(discrete_pair_points(1.2, 0.5), (DiscretePairPoints{1, 1, 1, 1}));
  EXPECT_EQ(discrete_pair_points(2.8, 0.3), (DiscretePairPoints{3, 0, 3, 0}));
  EXPECT_EQ(discrete_pair_points(0.0, 0.0), (DiscretePairPoints{1, 1, 0, 0}));
  EXPECT_EQ(discrete_pair_points(0.4, 0.5), (DiscretePairPoints{0, 3, 0, 1}));
}

TEST(DiscretePairPoints, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(discrete_pair_points(-0.1, 1.0), Error);
  EXPECT_THROW(discrete_pair_points(1.0, std::nan("")), Error);
}

TEST(ContinuousPairPoints, Examples) {
  auto all_draws = continuous_pair_points(counted(0, 10, 0));
  EXPECT_DOUBLE_EQ(all_draws.points_a, 1.0);
  EXPECT_DOUBLE_EQ(all_draws.points_b, 1.0);

  auto split = continuous_pair_points(counted(5, 0, 5));
  EXPECT_DOUBLE_EQ(split.points_a, 1.5);
  EXPECT_DOUBLE_EQ(split.points_b, 1.5);

  auto mixed = continuous_pair_points(counted(6, 2, 2));
  EXPECT_DOUBLE_EQ(mixed.points_a, 2.0);
  EXPECT_DOUBLE_EQ(mixed.points_b, 0.8);
}

TEST(ContinuousPairPoints, Errors) {
  try {
    continuous_pair_points(
        PairAggregate::averages_only("a"_team, "b"_team, 1.0, 1.0, 100));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CountsRequired);
  }
  try {
    continuous_pair_points(counted(0, 0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyPair);
  }
}

TEST(PointsTable, Table1Discrete) {
  const auto t1 = fixtures::table1();
  const auto table = points_table(t1.matrix, SchemeKind::Discrete);
  ASSERT_EQ(table.rows.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(table.rows[i].points, t1.points[i]) << table.rows[i].team.str();
    EXPECT_EQ(table.rows[i].goals_for_rounded, t1.goals[i].first);
    EXPECT_EQ(table.rows[i].goals_against_rounded, t1.goals[i].second);
  }
  EXPECT_EQ(table.row("Gliders"_team).goals_for_rounded, 18);
  EXPECT_EQ(table.row("Gliders"_team).goals_against_rounded, 1);
}

TEST(PointsTable, SinglePairDraw) {
  ScoreMatrix m({"a"_team, "b"_team});
  m.set_pair(PairAggregate::averages_only("a"_team, "b"_team, 0.0, 0.0));
  const auto t = points_table(m, SchemeKind::Discrete);
  EXPECT_EQ(t.rows[0].points, 1.0);
  EXPECT_EQ(t.rows[1].points, 1.0);
}

TEST(PointsTable, ContinuousRefusesAveragesOnly) {
  try {
    points_table(fixtures::table1().matrix, SchemeKind::Continuous);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CountsRequired);
    EXPECT_NE(std::string(e.what()).find("Gliders"), std::string::npos);
  }
}

TEST(PointsTable, IncompleteMatrixRejected) {
  ScoreMatrix m({"a"_team, "b"_team, "c"_team});
  m.set_pair(PairAggregate::averages_only("a"_team, "b"_team, 1.0, 0.0));
  EXPECT_THROW(points_table(m, SchemeKind::Discrete), Error);
}

TEST(Rank, Table1DiscreteRanking) {
  const auto t1 = fixtures::table1();
  const auto r = rank(t1.matrix, SchemeKind::Discrete);
  EXPECT_EQ(r.ranks_for(t1.matrix.teams()), t1.ranks);
}

TEST(Rank, Table4TieResolvedByRawGoalDifference) {
  const auto t4 = fixtures::table4();
  const auto table = points_table(t4.matrix, SchemeKind::Discrete);
  const auto& we15 = table.row("WE2015"_team);
  const auto& we14 = table.row("WE2014"_team);
  EXPECT_EQ(we15.points, 8);
  EXPECT_EQ(we14.points, 8);
  EXPECT_EQ(we15.goal_difference_rounded(), 1);
  EXPECT_EQ(we14.goal_difference_rounded(), 1);
  EXPECT_EQ(we15.goals_for_rounded, 13);
  EXPECT_EQ(we14.goals_against_rounded, 12);
  // Row sums 13.1 : 10.6 and 12.8 : 10.7.
  EXPECT_NEAR(we15.goal_difference_raw(), 2.5, 1e-9);
  EXPECT_NEAR(we14.goal_difference_raw(), 2.1, 1e-9);

  const auto r = rank(table, SchemeKind::Discrete);
  EXPECT_EQ(r.rank_of("WE2015"_team), 2);
  EXPECT_EQ(r.rank_of("WE2014"_team), 3);
}

TEST(Rank, SingleTeam) {
  PointsTable t;
  t.rows.push_back({"solo"_team});
  EXPECT_EQ(rank(t, SchemeKind::Discrete).rank_of("solo"_team), 1);
  EXPECT_THROW(rank(PointsTable{}, SchemeKind::Discrete), Error);
}

TEST(Rank, LexicographicFallbackOnFullTie) {
  ScoreMatrix m({"zeta"_team, "alpha"_team});
  m.set_pair(PairAggregate::averages_only("zeta"_team, "alpha"_team, 1.0, 1.0));
  const auto r = rank(m, SchemeKind::Discrete);
  EXPECT_EQ(r.order().front(), "alpha"_team);
}

TEST(Rank, ContinuousUsesRawGoalDifferenceNotRounded) {
  // Equal points; b has the better raw goal difference though rounded goal
  // difference would favour neither.
  ScoreMatrix m({"a"_team, "b"_team, "c"_team});
  auto ab = counted(1, 0, 1);
  ab.avg_goals_a = 1.0;
  ab.avg_goals_b = 1.4;
  m.set_pair(ab);
  auto ac = counted(1, 0, 1);
  ac.a = "a"_team;
  ac.b = "c"_team;
  m.set_pair(ac);
  auto bc = counted(1, 0, 1);
  bc.a = "b"_team;
  bc.b = "c"_team;
  m.set_pair(bc);
  const auto r = rank(m, SchemeKind::Continuous);
  EXPECT_EQ(r.order().front(), "b"_team);
}

TEST(SchemeProperties, PerPairPointSums) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> tenths(0, 60);
  for (int i = 0; i < 5000; ++i) {
    auto d = discrete_pair_points(tenths(rng) / 10.0, tenths(rng) / 10.0);
    const int sum = d.points_a + d.points_b;
    EXPECT_TRUE(sum == 2 || sum == 3);
  }
  std::uniform_int_distribution<int> count(0, 50);
  for (int i = 0; i < 5000; ++i) {
    auto p = counted(count(rng), count(rng), count(rng));
    if (p.n_games == 0) continue;
    auto c = continuous_pair_points(p);
    const double draw_rate = static_cast<double>(p.draws) / p.n_games;
    EXPECT_NEAR(c.points_a + c.points_b, 3.0 - draw_rate, 1e-12);
    EXPECT_GE(c.points_a + c.points_b, 2.0 - 1e-12);
    EXPECT_LE(c.points_a + c.points_b, 3.0 + 1e-12);
  }
}

TEST(SchemeProperties, RankingInvariantUnderTeamOrder) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const bool counts = trial % 2 == 1;
    const auto m = random_matrix(rng, 2 + trial % 7, counts);
    auto order = m.teams();
    std::shuffle(order.begin(), order.end(), rng);
    const auto shuffled = reordered(m, order);
    for (auto scheme : {SchemeKind::Discrete, SchemeKind::Continuous}) {
      if (scheme == SchemeKind::Continuous && !counts) continue;
      EXPECT_EQ(rank(m, scheme), rank(shuffled, scheme));
    }
  }
}

TEST(SchemeProperties, CommonAllDrawOpponentPreservesOrder) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_matrix(rng, 2 + trial % 7, false);
    auto teams = m.teams();
    const auto before = points_table(m, SchemeKind::Discrete);
    const auto rank_before = rank(before, SchemeKind::Discrete);

    teams.push_back("newcomer"_team);
    ScoreMatrix extended(teams);
    for (auto p : m.pairs()) extended.set_pair(p);
    for (const auto& t : m.teams()) {
      extended.set_pair(
          PairAggregate::averages_only(t, "newcomer"_team, 0.0, 0.0));
    }
    const auto after = points_table(extended, SchemeKind::Discrete);
    for (const auto& t : m.teams()) {
      EXPECT_EQ(after.row(t).points, before.row(t).points + 1);
    }
    auto rank_after = rank(after, SchemeKind::Discrete).order();
    std::erase(rank_after, "newcomer"_team);
    EXPECT_EQ(rank_after, rank_before.order());
  }
}

TEST(SchemeProperties, TieBreakIsTotal) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(rng, 8, true);
    for (auto scheme : {SchemeKind::Discrete, SchemeKind::Continuous}) {
      const auto r = rank(m, scheme);
      ASSERT_EQ(r.size(), m.size());
      for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_EQ(r.rank_of(r.order()[i]), static_cast<int>(i + 1));
      }
    }
  }
}
