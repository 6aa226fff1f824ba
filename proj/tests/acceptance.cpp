// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "leaguelab/cli.hpp"
#include "leaguelab/leaguelab.hpp"

using namespace leaguelab;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<int> rounded_points(const PointsTable& t) {
  std::vector<int> out;
  for (const auto& r : t.rows) out.push_back(static_cast<int>(std::llround(r.points)));
  return out;
}

std::string goals_text(const PointsTable& t) {
  std::string out;
  for (const auto& r : t.rows) {
    out += fmt::format("{}{}:{}", out.empty() ? "" : ", ", r.goals_for_rounded,
                       r.goals_against_rounded);
  }
  return out;
}

std::string run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  std::istringstream in;
  const int code = cli::run(args, out, err, in);
  return fmt::format("exit {}\n{}{}", code, out.str(), err.str());
}

void table1(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto fx = fixtures::table1();
  const auto table = points_table(fx.matrix, SchemeKind::Discrete);
  const auto r = rank(table, SchemeKind::Discrete);
  const double elapsed = seconds_since(t0);

  c.expect(rounded_points(table) == std::vector<int>{17, 17, 4, 11, 15, 5, 2, 3},
           "points");
  const auto goals = goals_text(table);
  c.expect(goals == "18:1, 17:1, 3:10, 6:8, 16:4, 5:16, 0:15, 2:12",
           "goals " + goals);
  c.expect(r.ranks_for(fx.matrix.teams()) ==
               std::vector<int>{1, 2, 6, 4, 3, 5, 8, 7},
           "ranking");
  c.expect(elapsed < 1.0, fmt::format("runtime {:.3f}s", elapsed));
}

void table3(Check& c) {
  const auto merged =
      merge_benchmark(fixtures::table1().matrix, fixtures::table2());
  const auto t3 = fixtures::table3();
  const auto ordered = reordered(merged, t3.matrix.teams());
  const auto table = points_table(ordered, SchemeKind::Discrete);
  const auto r = rank(table, SchemeKind::Discrete);
  c.expect(rounded_points(table) ==
               std::vector<int>{20, 20, 18, 4, 11, 15, 5, 2, 3},
           "points");
  c.expect(r.rank_of("WE2015"_team) == 3, "WE2015 rank");
  c.expect(r.ranks_for(t3.matrix.teams()) == t3.ranks, "ranking");
}

void table4(Check& c) {
  const auto t4 = fixtures::table4();
  const auto table = points_table(t4.matrix, SchemeKind::Discrete);
  const auto r = rank(table, SchemeKind::Discrete);
  c.expect(rounded_points(table) == std::vector<int>{15, 8, 8, 6, 3, 1}, "points");
  const auto& a = table.row("WE2015"_team);
  const auto& b = table.row("WE2014"_team);
  c.expect(a.points == b.points, "tie on points");
  c.expect(a.goals_for_rounded == 13 && a.goals_against_rounded == 12 &&
               b.goals_for_rounded == 13 && b.goals_against_rounded == 12,
           "rounded goals 13:12");
  // Raw goal differences recomputed from the printed grid.
  c.expect(std::fabs(a.goal_difference_raw() - 2.5) < 1e-9 &&
               std::fabs(b.goal_difference_raw() - 2.1) < 1e-9,
           fmt::format("raw goal difference {} vs {}", a.goal_difference_raw(),
                       b.goal_difference_raw()));
  c.expect(r.rank_of("WE2015"_team) < r.rank_of("WE2014"_team), "tie order");
  c.expect(r == fixtures::rank_chronological(), "chronological order");
  c.expect(chronological_concordance(r, fixtures::rank_chronological().order()) == 0,
           "concordance");
}

void distances(Check& c) {
  const auto rd = rank(fixtures::table1().matrix, SchemeKind::Discrete);
  c.expect(l1_distance(fixtures::rank_actual_2016(), rd) == 8, "d1(actual, discrete)");
  c.expect(l1_distance(rd, rd) == 0, "identity");
  std::mt19937_64 rng(4);
  std::vector<TeamId> base;
  for (int i = 0; i < 20; ++i) base.emplace_back(fmt::format("t{}", i));
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(1 + trial % 20);
    std::vector<TeamId> a(base.begin(), base.begin() + n), b = a;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    if (l1_distance(Ranking(a), Ranking(b)) % 2 != 0) {
      c.expect(false, fmt::format("odd distance at trial {}", trial));
      break;
    }
  }
}

void equal_pairs(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const double qs[] = {0.0, 1.0, 2.0, 3.0};
  // Independent high-precision summation of the exact model.
  const double oracle[] = {1.229869135, 1.348015848, 1.364165175, 1.364541466};
  // Listed four-decimal approximations.
  const double listed[] = {1.2299, 1.3480, 1.3642, 1.3646};
  const double reported[] = {1.23, 1.33, 1.36, 1.38};
  const double means[] = {0.38, 1.07, 2.00, 3.00};
  SimConfig cfg;
  cfg.n_games = kBiasSampleGames;
  cfg.master_seed = 1;
  const auto rows = bias_table(qs, cfg);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double exact = r.equal_exact.points_a;
    c.expect(std::fabs(exact - oracle[i]) < 1e-8,
             fmt::format("q={} exact {:.9f}", r.q, exact));
    c.expect(std::fabs(exact - listed[i]) < 1e-4,
             fmt::format("q={} listed {:.4f}", r.q, listed[i]));
    c.expect(std::fabs(reported[i] - exact) <= 0.03,
             fmt::format("q={} reported {:.2f}", r.q, reported[i]));
    const double mc = r.equal_mc.estimate.points_a;
    c.expect(std::fabs(mc - exact) <= 3.0 * r.equal_mc.points_se_a,
             fmt::format("q={} MC {:.4f} se {:.4f}", r.q, mc,
                         r.equal_mc.points_se_a));
    c.expect(std::fabs(r.equal_exact.mean_goals_a - means[i]) <= 0.03 &&
                 std::fabs(r.equal_mc.estimate.mean_goals_a - means[i]) <= 0.03 &&
                 std::fabs(r.equal_mc.estimate.mean_goals_b - means[i]) <= 0.03,
             fmt::format("q={} mean goals", r.q));
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 5.0, fmt::format("runtime {:.3f}s", elapsed));
}

void asymmetric_pairs(Check& c) {
  const double qs[] = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  SimConfig cfg;
  cfg.n_games = kBiasSampleGames;
  cfg.master_seed = 1;
  const auto rows = bias_table(qs, cfg);
  double worst = 0.0;
  for (const auto& r : rows) {
    for (const auto* e : {&r.equal_exact, &r.asym_exact, &r.equal_mc.estimate,
                          &r.asym_mc.estimate}) {
      worst = std::max(worst,
                       std::fabs(e->points_a + e->points_b - (3.0 - e->draw_rate)));
    }
    c.expect(std::fabs(r.asym_mc.estimate.points_a - r.asym_exact.points_a) <=
                 3.0 * r.asym_mc.points_se_a,
             fmt::format("q={} asymmetric MC", r.q));
  }
  c.expect(worst <= 1e-12, fmt::format("identity deviation {:.3e}", worst));
  const auto check = check_draw_identity(2.31, 0.32);
  c.expect(!check.consistent && std::fabs(check.implied_draw_rate - 0.37) < 1e-9,
           "identity check on (2.31, 0.32)");
  const auto report = render_bias_report(rows, cfg);
  c.expect(report.find("(2.31, 0.32) violates the draw-rate identity") !=
               std::string::npos,
           "report flag");
}

void bounds(Check& c) {
  using C = Contest;
  auto is = [](const ScenarioBound& b, double lo, double hi) {
    return b.lower == lo && b.upper == hi;
  };
  c.expect(is(scenario_bounds({C::EqualStrength}), 1.0, 1.5), "eq");
  c.expect(is(scenario_bounds({C::EqualStrength, C::EqualStrength}), 2.0, 3.0),
           "eq eq");
  c.expect(is(scenario_bounds({C::Stronger, C::Weaker}), 1.5, 4.5), "win loss");
  c.expect(is(scenario_bounds({C::Weaker}), 0.0, 1.5), "loss");
  SimConfig cfg;
  cfg.n_games = kBiasSampleGames;
  for (int i = 0; i <= 30; ++i) {
    const double q = 0.1 * i;
    cfg.master_seed = static_cast<std::uint64_t>(100 + i);
    for (std::uint64_t stream = 0; stream < 2; ++stream) {
      const auto mc =
          estimate_from_aggregate(simulate_pair({q, q, 1.0}, cfg, stream));
      for (double p : {mc.estimate.points_a, mc.estimate.points_b}) {
        if (p < 1.0 || p > 1.5) {
          c.expect(false, fmt::format("q={} points {}", q, p));
        }
      }
    }
  }
}

void determinism(Check& c) {
  const std::string model = std::string(LEAGUELAB_SAMPLES_DIR) + "/equal_league.json";
  auto sim = [&](const char* threads) {
    return run_cli({"simulate", model, "--n", "2000", "--seed", "7",
                    "--threads", threads});
  };
  auto bias = [&](const char* threads) {
    return run_cli({"bias", "--q", "0,0.5,1,1.5,2,2.5,3", "--n", "4000",
                    "--seed", "7", "--threads", threads});
  };
  const auto s1 = sim("1");
  c.expect(s1.rfind("exit 0", 0) == 0, "simulate exit");
  c.expect(s1 == sim("1"), "simulate repeat");
  c.expect(s1 == sim("8"), "simulate 1 vs 8 threads");
  const auto b1 = bias("1");
  c.expect(b1.rfind("exit 0", 0) == 0, "bias exit");
  c.expect(b1 == bias("1"), "bias repeat");
  c.expect(b1 == bias("8"), "bias 1 vs 8 threads");
}

void challenge_protocol(Check& c) {
  using namespace leaguelab::challenge;
  std::mt19937_64 rng(91);
  std::uniform_int_distribution<int> count(1, 6), letter(0, 25), digits(0, 9);
  std::uniform_real_distribution<double> value(-1000.0, 1000.0);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<ParamOverride> ov;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
      std::string name = fmt::format("p{}_", k);
      for (int j = 0; j < 6; ++j) name += static_cast<char>('a' + letter(rng));
      ov.push_back({name, k % 2 ? value(rng) : static_cast<double>(digits(rng))});
    }
    const auto text = emit_change_command(ov);
    if (parse_change_command(text) != ov || emit_change_command(parse_change_command(text)) != text) {
      ++bad;
    }
  }
  c.expect(bad == 0, fmt::format("{} round-trip failures", bad));

  const auto reg = ParamRegistry::weather();
  std::vector<ParamOverride> weather;
  for (const char* name : {"ball_accel_max", "ball_decay", "ball_rand",
                           "ball_speed_max", "catch_probability",
                           "inertia_moment", "kick_rand", "player_rand"}) {
    weather.push_back({name, 0.5});
  }
  c.expect(reg.size() == 8 && validate(weather, reg, true).clean(),
           "weather parameters");
  c.expect(emit_server_conf(true, {}) == "server::global_challenge_mode = true\n",
           "server.conf snippet");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
      {"table 1 reproduction", table1},
      {"table 3 reproduction", table3},
      {"table 4 reproduction", table4},
      {"ranking distances", distances},
      {"bias analysis, equal pairs", equal_pairs},
      {"bias analysis, asymmetric pairs", asymmetric_pairs},
      {"scenario bounds", bounds},
      {"determinism", determinism},
      {"challenge protocol", challenge_protocol},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, fmt::format("exception: {}", e.what()));
    }
    const bool ok = c.failures().empty();
    failed += ok ? 0 : 1;
    fmt::print("{} {}: {}", ok ? "PASS" : "FAIL", i + 1, criteria[i].first);
    if (!ok) {
      std::string why;
      for (const auto& f : c.failures()) why += (why.empty() ? "" : "; ") + f;
      fmt::print(" ({})", why);
    }
    fmt::print("\n");
  }
  return failed == 0 ? 0 : 1;
}
