#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "leaguelab/error.hpp"
#include "leaguelab/model.hpp"

namespace leaguelab {

enum class SchemeKind { Discrete, Continuous };

constexpr std::string_view to_string(SchemeKind s) {
  return s == SchemeKind::Discrete ? "discrete" : "continuous";
}

inline SchemeKind parse_scheme(std::string_view s) {
  if (s == "discrete") return SchemeKind::Discrete;
  if (s == "continuous") return SchemeKind::Continuous;
  throw Error(ErrorCode::InvalidValue,
              fmt::format("unknown scheme '{}' (expected discrete|continuous)",
                          s));
}

/// Tolerance applied to real-valued points and goal tallies when ordering.
inline constexpr double kTieTolerance = 1e-9;

struct DiscretePairPoints {
  int points_a = 0;
  int points_b = 0;
  std::int64_t rounded_a = 0;
  std::int64_t rounded_b = 0;

  friend bool operator==(const DiscretePairPoints&,
                         const DiscretePairPoints&) = default;
};

/// Rounds both average scores, then awards 3/1/0 on the rounded result.
inline DiscretePairPoints discrete_pair_points(double avg_a, double avg_b) {
  for (double v : {avg_a, avg_b}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("average goals must be finite and non-negative, "
                              "got {}",
                              v));
    }
  }
  DiscretePairPoints r;
  r.rounded_a = round_half_away(avg_a);
  r.rounded_b = round_half_away(avg_b);
  if (r.rounded_a > r.rounded_b) {
    r.points_a = 3;
  } else if (r.rounded_a < r.rounded_b) {
    r.points_b = 3;
  } else {
    r.points_a = r.points_b = 1;
  }
  return r;
}

struct ContinuousPairPoints {
  double points_a = 0.0;
  double points_b = 0.0;
};

/// Per-game 3/1/0 points averaged over all games of the pairing.
inline ContinuousPairPoints continuous_pair_points(const PairAggregate& agg) {
  if (!agg.counts_known) {
    throw Error(ErrorCode::CountsRequired,
                fmt::format("pair ({}, {}) has averages only; the continuous "
                            "scheme needs win/draw/loss counts",
                            agg.a, agg.b));
  }
  if (agg.n_games <= 0) {
    throw Error(ErrorCode::EmptyPair,
                fmt::format("pair ({}, {}) has no games", agg.a, agg.b));
  }
  const auto n = static_cast<double>(agg.n_games);
  return {static_cast<double>(3 * agg.wins_a + agg.draws) / n,
          static_cast<double>(3 * agg.wins_b + agg.draws) / n};
}

/// Sums per-pair points and goal tallies for every team of a complete matrix.
inline PointsTable points_table(const ScoreMatrix& matrix, SchemeKind scheme) {
  matrix.require_complete();
  const auto& teams = matrix.teams();

  // Opponents are visited in id order so raw sums do not depend on the
  // matrix's team order.
  std::vector<std::size_t> by_id(teams.size());
  for (std::size_t i = 0; i < by_id.size(); ++i) by_id[i] = i;
  std::sort(by_id.begin(), by_id.end(),
            [&](std::size_t x, std::size_t y) { return teams[x] < teams[y]; });

  PointsTable table;
  table.rows.reserve(teams.size());
  for (const auto& team : teams) {
    PointsRow row;
    row.team = team;
    for (std::size_t j : by_id) {
      const auto& opp = teams[j];
      if (opp == team) continue;
      const PairAggregate agg = matrix.pair(team, opp);
      try {
        auto d = discrete_pair_points(agg.avg_goals_a, agg.avg_goals_b);
        if (scheme == SchemeKind::Discrete) {
          row.points += d.points_a;
        } else {
          row.points += continuous_pair_points(agg).points_a;
        }
        row.goals_for_rounded += d.rounded_a;
        row.goals_against_rounded += d.rounded_b;
        row.goals_for_raw += agg.avg_goals_a;
        row.goals_against_raw += agg.avg_goals_b;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::CountsRequired ||
            e.code() == ErrorCode::EmptyPair) {
          throw;  // message already names the pair
        }
        throw Error(e.code(),
                    fmt::format("pair ({}, {}): {}", team, opp, e.what()));
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace detail {

// Snaps a real onto a 1e-9 grid so that values equal within the tie tolerance
// compare equal and the comparator stays a strict weak order.
inline std::int64_t tie_key(double x) {
  return static_cast<std::int64_t>(std::llround(x / kTieTolerance));
}

}  // namespace detail

/// Orders a points table into a ranking with a total tie-break chain.
///
/// Discrete: points, rounded goal difference, raw goal difference, raw goals
/// for, then team id ascending. Continuous: points, raw goal difference, raw
/// goals for, then team id ascending.
inline Ranking rank(const PointsTable& table, SchemeKind scheme) {
  if (table.rows.empty()) {
    throw Error(ErrorCode::EmptyTable, "cannot rank an empty points table");
  }
  using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t,
                         std::int64_t>;
  auto key_of = [scheme](const PointsRow& r) -> Key {
    const std::int64_t rounded_gd =
        scheme == SchemeKind::Discrete ? r.goal_difference_rounded() : 0;
    return {detail::tie_key(r.points), rounded_gd,
            detail::tie_key(r.goal_difference_raw()),
            detail::tie_key(r.goals_for_raw)};
  };

  std::vector<const PointsRow*> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(),
            [&](const PointsRow* x, const PointsRow* y) {
              const Key kx = key_of(*x), ky = key_of(*y);
              if (kx != ky) return kx > ky;
              return x->team < y->team;
            });

  std::vector<TeamId> order;
  order.reserve(rows.size());
  for (const auto* r : rows) order.push_back(r->team);
  return Ranking(std::move(order));
}

inline Ranking rank(const ScoreMatrix& matrix, SchemeKind scheme) {
  return rank(points_table(matrix, scheme), scheme);
}

}  // namespace leaguelab
