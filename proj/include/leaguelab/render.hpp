#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "leaguelab/fixtures.hpp"
#include "leaguelab/ingest.hpp"
#include "leaguelab/metrics.hpp"
#include "leaguelab/model.hpp"
#include "leaguelab/schemes.hpp"
#include "leaguelab/simlab.hpp"

namespace leaguelab {

enum class TableFormat { Markdown, Csv };

inline TableFormat parse_table_format(std::string_view s) {
  if (s == "markdown" || s == "md" || s == "text") return TableFormat::Markdown;
  if (s == "csv") return TableFormat::Csv;
  throw Error(ErrorCode::InvalidValue,
              fmt::format("unknown format '{}' (expected markdown|csv)", s));
}

inline std::string format_points(double points, SchemeKind scheme) {
  return scheme == SchemeKind::Discrete
             ? fmt::format("{}", static_cast<long long>(std::llround(points)))
             : fmt::format("{:.4f}", points);
}

/// Team | Points | Goals (rounded) | Goals (raw) | Rank, in table row order.
inline std::string render_points_table(const PointsTable& table,
                                       const Ranking& ranking,
                                       SchemeKind scheme,
                                       TableFormat format) {
  std::string out;
  if (format == TableFormat::Csv) {
    out += "team,points,goals_for_rounded,goals_against_rounded,goals_for_raw,"
           "goals_against_raw,rank\n";
    for (const auto& r : table.rows) {
      out += fmt::format("{},{},{},{},{:.6f},{:.6f},{}\n", r.team,
                         format_points(r.points, scheme), r.goals_for_rounded,
                         r.goals_against_rounded, r.goals_for_raw,
                         r.goals_against_raw, ranking.rank_of(r.team));
    }
    return out;
  }
  out += "| Team | Points | Goals (rounded) | Goals (raw) | Rank |\n";
  out += "|---|---:|---:|---:|---:|\n";
  for (const auto& r : table.rows) {
    out += fmt::format("| {} | {} | {} : {} | {:.3f} : {:.3f} | {} |\n", r.team,
                       format_points(r.points, scheme), r.goals_for_rounded,
                       r.goals_against_rounded, r.goals_for_raw,
                       r.goals_against_raw, ranking.rank_of(r.team));
  }
  return out;
}

/// Score grid in row perspective, one decimal as in published tables.
inline std::string render_score_grid(const ScoreMatrix& m) {
  std::string out = "| |";
  for (const auto& t : m.teams()) out += fmt::format(" {} |", t);
  out += "\n|---|";
  for (std::size_t i = 0; i < m.size(); ++i) out += "---|";
  out += "\n";
  for (const auto& row : m.teams()) {
    out += fmt::format("| {} |", row);
    for (const auto& col : m.teams()) {
      if (row == col) {
        out += " - |";
      } else {
        const auto p = m.pair(row, col);
        out += fmt::format(" {:.1f} : {:.1f} |", p.avg_goals_a, p.avg_goals_b);
      }
    }
    out += "\n";
  }
  return out;
}

inline std::string render_compare(const Ranking& ra, const Ranking& rb) {
  std::string out = "| Team | Rank A | Rank B | abs diff |\n|---|---:|---:|---:|\n";
  int total = 0;
  for (const auto& d : rank_deltas(ra, rb)) {
    out += fmt::format("| {} | {} | {} | {} |\n", d.team, d.rank_a, d.rank_b,
                       d.abs_diff());
    total += d.abs_diff();
  }
  out += fmt::format("\nL1 distance: {}\n", total);
  return out;
}

// ---------------------------------------------------------------------------
// Bias report

/// Previously reported sampled values (10,000 games, sigma = 1) the report
/// compares against.
struct ReferencePoint {
  double q;
  std::optional<double> p_equal;
  std::optional<double> p_win;
  std::optional<double> p_loss;
};

inline const std::vector<ReferencePoint>& reference_points() {
  static const std::vector<ReferencePoint> refs = {
      {0.0, 1.23, std::nullopt, std::nullopt},
      {1.0, 1.33, 2.31, 0.32},
      {2.0, 1.36, 2.75, 0.13},
      {3.0, 1.38, 2.94, 0.04},
  };
  return refs;
}

inline const ReferencePoint* find_reference(double q) {
  for (const auto& r : reference_points()) {
    if (r.q == q) return &r;
  }
  return nullptr;
}

/// Reported values are given to two decimals.
inline constexpr double kReferenceResolution = 0.005;

/// A winner/loser points pair is only achievable if the loser's points are at
/// least the draw rate implied by points_win + points_loss = 3 - draw_rate.
struct IdentityCheck {
  double implied_draw_rate;
  bool consistent;
};

inline IdentityCheck check_draw_identity(double p_win, double p_loss) {
  const double implied = 3.0 - (p_win + p_loss);
  const bool ok = implied >= 0.0 && implied <= 1.0 && p_loss >= implied &&
                  p_win >= implied;
  return {implied, ok};
}

inline std::string ref_cell(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f}", *v) : std::string("-");
}

inline std::string render_bias_report(const std::vector<BiasRow>& rows,
                                      const SimConfig& cfg) {
  std::string out;
  out += "# Continuous-scheme bias analysis\n\n";
  out += fmt::format(
      "Goal model: integer goals = max(0, round(N(q, sigma))); sigma = {}, "
      "{} games per pairing, seed {}.\n\n",
      shortest_decimal(cfg.sigma), cfg.n_games, cfg.master_seed);

  out += "## Equal-strength pairings (q : q)\n\n";
  out += "| q | p_eq MC | SE | p_eq exact | reference | draw rate exact | "
         "mean scores MC | mean scores exact |\n";
  out += "|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& r : rows) {
    const auto& mc = r.equal_mc.estimate;
    const auto* ref = find_reference(r.q);
    out += fmt::format(
        "| {:.2f} | {:.4f} | {:.4f} | {:.4f} | {} | {:.4f} | {:.3f} : {:.3f} | "
        "{:.3f} : {:.3f} |\n",
        r.q, mc.points_a, r.equal_mc.points_se_a, r.equal_exact.points_a,
        ref ? ref_cell(ref->p_equal) : "-", r.equal_exact.draw_rate,
        mc.mean_goals_a, mc.mean_goals_b, r.equal_exact.mean_goals_a,
        r.equal_exact.mean_goals_b);
  }

  out += "\n## Asymmetric pairings (q : 0)\n\n";
  out += "| q | p_win MC | p_win exact | reference | p_loss MC | p_loss exact "
         "| reference | draw rate MC | draw rate exact | mean scores MC |\n";
  out += "|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& r : rows) {
    const auto& mc = r.asym_mc.estimate;
    const auto* ref = find_reference(r.q);
    out += fmt::format(
        "| {:.2f} | {:.4f} | {:.4f} | {} | {:.4f} | {:.4f} | {} | {:.4f} | "
        "{:.4f} | {:.3f} : {:.3f} |\n",
        r.q, mc.points_a, r.asym_exact.points_a,
        ref ? ref_cell(ref->p_win) : "-", mc.points_b, r.asym_exact.points_b,
        ref ? ref_cell(ref->p_loss) : "-", mc.draw_rate,
        r.asym_exact.draw_rate, mc.mean_goals_a, mc.mean_goals_b);
  }

  double worst_exact = 0.0, worst_mc = 0.0;
  for (const auto& r : rows) {
    for (const auto* e : {&r.equal_exact, &r.asym_exact}) {
      worst_exact = std::max(
          worst_exact, std::fabs(e->points_a + e->points_b - (3.0 - e->draw_rate)));
    }
    for (const auto* m : {&r.equal_mc.estimate, &r.asym_mc.estimate}) {
      worst_mc = std::max(
          worst_mc, std::fabs(m->points_a + m->points_b - (3.0 - m->draw_rate)));
    }
  }
  out += "\n## Draw-rate identity\n\n";
  out += "points_a + points_b = 3 - draw_rate for every pairing.\n\n";
  out += fmt::format("- max deviation, exact: {:.3e}\n", worst_exact);
  out += fmt::format("- max deviation, Monte Carlo: {:.3e}\n", worst_mc);

  out += "\n## Scenario bounds on a team's continuous points\n\n";
  out += "| scenario | lower | upper |\n|---|---:|---:|\n";
  using C = Contest;
  const std::vector<std::vector<Contest>> scenarios = {
      {C::EqualStrength}, {C::Stronger}, {C::Weaker},
      {C::EqualStrength, C::EqualStrength}, {C::Stronger, C::Weaker}};
  for (const auto& s : scenarios) {
    const auto b = scenario_bounds(s);
    std::string label;
    for (auto c : s) label += symbol(c);
    out += fmt::format("| {} | {:.1f} | {:.1f} |\n", label, b.lower, b.upper);
  }

  out += "\n## Reference values vs exact\n\n";
  std::size_t notes = 0;
  for (const auto& r : rows) {
    const auto* ref = find_reference(r.q);
    if (!ref) continue;
    auto compare = [&](const char* what, const std::optional<double>& v,
                       double exact) {
      if (!v || std::fabs(*v - exact) <= kReferenceResolution) return;
      out += fmt::format("- q = {:.0f}: reference {} {:.2f} differs from the "
                         "exact {:.4f} by {:+.4f}\n",
                         r.q, what, *v, exact, *v - exact);
      ++notes;
    };
    compare("p_eq", ref->p_equal, r.equal_exact.points_a);
    compare("p_win", ref->p_win, r.asym_exact.points_a);
    compare("p_loss", ref->p_loss, r.asym_exact.points_b);
    if (ref->p_win && ref->p_loss) {
      const auto check = check_draw_identity(*ref->p_win, *ref->p_loss);
      if (!check.consistent) {
        out += fmt::format(
            "- q = {:.0f}: reference pair (p_win, p_loss) = ({:.2f}, {:.2f}) "
            "violates the draw-rate identity: the sum {:.2f} implies draw rate "
            "{:.2f} > p_loss, but p_loss = 3 * loss_rate + draw_rate >= "
            "draw_rate\n",
            r.q, *ref->p_win, *ref->p_loss, *ref->p_win + *ref->p_loss,
            check.implied_draw_rate);
        ++notes;
      }
    }
  }
  if (notes == 0) out += "- no divergences\n";
  return out;
}

// ---------------------------------------------------------------------------
// Self-checking reproduction of the published tables.

struct FixtureSet {
  fixtures::PublishedTable table1;
  BenchmarkRow table2;
  std::vector<GameRecord> table2_event;
  fixtures::PublishedTable table3;
  fixtures::PublishedTable table4;
  Ranking rank_actual;
  Ranking rank_chronological;
  int expected_actual_vs_discrete = 8;
  int expected_champions_vs_chronological = 0;

  static FixtureSet builtin() {
    return {fixtures::table1(),           fixtures::table2(),
            fixtures::table2_event_games(), fixtures::table3(),
            fixtures::table4(),           fixtures::rank_actual_2016(),
            fixtures::rank_chronological()};
  }
};

struct AuditResult {
  std::string markdown;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

namespace detail {

inline void audit_table(const std::string& title,
                        const fixtures::PublishedTable& expected,
                        const ScoreMatrix& matrix, AuditResult& result) {
  const auto table = points_table(matrix, SchemeKind::Discrete);
  const auto ranking = rank(table, SchemeKind::Discrete);
  result.markdown += fmt::format("## {}\n\n", title);
  result.markdown += render_score_grid(matrix);
  result.markdown += "\n";
  result.markdown += render_points_table(table, ranking, SchemeKind::Discrete,
                                         TableFormat::Markdown);
  result.markdown += "\n";

  const auto& teams = expected.matrix.teams();
  for (std::size_t i = 0; i < teams.size(); ++i) {
    const auto& t = teams[i];
    if (!matrix.contains(t)) {
      result.mismatches.push_back(
          fmt::format("{}: team {} missing", expected.name, t));
      continue;
    }
    const auto& row = table.row(t);
    const int points = static_cast<int>(std::llround(row.points));
    if (i < expected.points.size() && points != expected.points[i]) {
      result.mismatches.push_back(fmt::format("{}: {} points {} != {}",
                                              expected.name, t, points,
                                              expected.points[i]));
    }
    if (i < expected.goals.size() &&
        (row.goals_for_rounded != expected.goals[i].first ||
         row.goals_against_rounded != expected.goals[i].second)) {
      result.mismatches.push_back(fmt::format(
          "{}: {} goals {}:{} != {}:{}", expected.name, t,
          row.goals_for_rounded, row.goals_against_rounded,
          expected.goals[i].first, expected.goals[i].second));
    }
    if (i < expected.ranks.size() &&
        ranking.rank_of(t) != expected.ranks[i]) {
      result.mismatches.push_back(fmt::format("{}: {} rank {} != {}",
                                              expected.name, t,
                                              ranking.rank_of(t),
                                              expected.ranks[i]));
    }
  }
}

}  // namespace detail

/// Re-derives points, goals and rankings of every table from its scores and
/// lists every cell that differs from the printed columns.
inline AuditResult audit_tables(const FixtureSet& fx) {
  AuditResult result;
  result.markdown += "# League evaluation tables\n\n";
  result.markdown += "Discrete scheme: average scores rounded half away from "
                     "zero, 3/1/0 points per pairing, rounded goal difference "
                     "then raw goal difference as tie-breakers.\n\n";
  try {
    // Table 1 and its distance to the actual standings.
    detail::audit_table("Table 1: 2016 top 8 round robin", fx.table1,
                        fx.table1.matrix, result);
    const auto r_discrete = rank(fx.table1.matrix, SchemeKind::Discrete);
    const int d_actual = l1_distance(fx.rank_actual, r_discrete);
    result.markdown += fmt::format(
        "L1 distance between actual standings and discrete ranking: {}\n\n",
        d_actual);
    if (d_actual != fx.expected_actual_vs_discrete) {
      result.mismatches.push_back(fmt::format(
          "table1: L1(actual, discrete) {} != {}", d_actual,
          fx.expected_actual_vs_discrete));
    }

    // Table 2: the benchmark row.
    result.markdown += fmt::format("## Table 2: {} evaluation\n\n", fx.table2.team);
    result.markdown += "| Opponent | Event game | Average |\n|---|---:|---:|\n";
    for (const auto& c : fx.table2.cells) {
      std::string event = "-";
      for (const auto& g : fx.table2_event) {
        if (g.left == fx.table2.team && g.right == c.opponent) {
          event = fmt::format("{} : {}", g.goals_left, g.goals_right);
        }
      }
      result.markdown += fmt::format("| {} | {} | {:.1f} : {:.1f} |\n",
                                     c.opponent, event, c.avg_bench,
                                     c.avg_opponent);
    }
    result.markdown += "\n";

    // Table 3: the merge must reproduce the printed grid.
    const auto merged = reordered(merge_benchmark(fx.table1.matrix, fx.table2),
                                  fx.table3.matrix.teams());
    for (const auto& p : fx.table3.matrix.pairs()) {
      const auto got = merged.pair(p.a, p.b);
      if (got.avg_goals_a != p.avg_goals_a || got.avg_goals_b != p.avg_goals_b) {
        result.mismatches.push_back(fmt::format(
            "table3: cell ({}, {}) merged {}:{} != printed {}:{}", p.a, p.b,
            got.avg_goals_a, got.avg_goals_b, p.avg_goals_a, p.avg_goals_b));
      }
    }
    detail::audit_table("Table 3: top 8 plus benchmark", fx.table3, merged,
                        result);

    // Table 4 and chronological concordance.
    detail::audit_table("Table 4: champions league", fx.table4,
                        fx.table4.matrix, result);
    const auto r_league = rank(fx.table4.matrix, SchemeKind::Discrete);
    const int d_chrono =
        chronological_concordance(r_league, fx.rank_chronological.order());
    result.markdown += fmt::format(
        "L1 distance between champions ranking and chronological order: {}\n",
        d_chrono);
    if (d_chrono != fx.expected_champions_vs_chronological) {
      result.mismatches.push_back(fmt::format(
          "table4: L1(league, chronological) {} != {}", d_chrono,
          fx.expected_champions_vs_chronological));
    }
  } catch (const Error& e) {
    result.mismatches.push_back(e.what());
  }

  if (!result.mismatches.empty()) {
    result.markdown += "\n## Mismatches\n\n";
    for (const auto& m : result.mismatches) result.markdown += "- " + m + "\n";
  }
  return result;
}

}  // namespace leaguelab
