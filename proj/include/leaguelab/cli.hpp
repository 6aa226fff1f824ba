#pragma once

// Command-line front end. `run` is the whole program; tools/leaguelab.cpp only
// forwards argv and the standard streams.
//
// Exit codes: 0 success, 2 usage or input error, 3 verification mismatch.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "leaguelab/challenge.hpp"
#include "leaguelab/error.hpp"
#include "leaguelab/fixtures.hpp"
#include "leaguelab/ingest.hpp"
#include "leaguelab/metrics.hpp"
#include "leaguelab/render.hpp"
#include "leaguelab/schemes.hpp"
#include "leaguelab/simlab.hpp"

namespace leaguelab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitMismatch = 3;

namespace detail {

inline std::string read_text(const std::string& path, std::istream& in) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::InvalidValue, fmt::format("cannot read '{}'", path));
  }
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline void write_text(const std::string& path, const std::string& text,
                       std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << text)) {
    throw Error(ErrorCode::InvalidValue, fmt::format("cannot write '{}'", path));
  }
}

using Source = std::variant<ScoreMatrix, Ranking>;

/// `@fixture`, a matrix or ranking JSON file, or a CSV game log; `-` is stdin.
inline Source load_source(const std::string& spec, std::istream& in) {
  if (!spec.empty() && spec.front() == '@') {
    auto payload = fixtures::find(std::string_view(spec).substr(1));
    if (auto* m = std::get_if<ScoreMatrix>(&payload)) return *m;
    if (auto* r = std::get_if<Ranking>(&payload)) return *r;
    if (auto* g = std::get_if<std::vector<GameRecord>>(&payload)) {
      return aggregate(*g);
    }
    throw Error(ErrorCode::InvalidValue,
                fmt::format("fixture '{}' is a benchmark row, not a matrix or "
                            "ranking",
                            spec));
  }
  const std::string text = read_text(spec, in);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto doc = leaguelab::detail::parse_json(text);
    if (doc.contains("ranking")) return ranking_from_json(doc);
    return matrix_from_json(doc);
  }
  const auto games = parse_results(text);
  return aggregate(games);
}

inline Ranking as_ranking(const Source& src, SchemeKind scheme) {
  if (const auto* r = std::get_if<Ranking>(&src)) return *r;
  return rank(std::get<ScoreMatrix>(src), scheme);
}

inline challenge::ParamOverride parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorCode::InvalidValue,
                fmt::format("expected name=value, got '{}'", text));
  }
  // Reuse the wire grammar for validation.
  auto parsed = challenge::parse_change_command(
      fmt::format("(change_player_param ({} {}))", text.substr(0, eq),
                  text.substr(eq + 1)));
  return parsed.front();
}

inline std::vector<challenge::ParamOverride> parse_assignments(
    const std::vector<std::string>& sets) {
  std::vector<challenge::ParamOverride> out;
  for (const auto& s : sets) out.push_back(parse_assignment(s));
  return out;
}

inline std::string render_findings(const challenge::ValidationReport& report) {
  std::string out;
  for (const auto& f : report.findings) {
    out += fmt::format("{}: {}: {}\n",
                       f.severity == challenge::Severity::Error ? "error"
                                                                : "warning",
                       f.name, f.message);
  }
  return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err, std::istream& in = std::cin) {
  CLI::App app{"Round-robin ranking schemes, ranking distances, score-model "
               "bias analysis and challenge-protocol tooling."};
  app.name("leaguelab");
  app.require_subcommand(1);

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "Points table and ranking");
  std::string rank_source, rank_scheme = "discrete", rank_format = "markdown";
  rank_cmd->add_option("source", rank_source,
                       "@fixture, matrix JSON, game-log CSV, or - for stdin")
      ->required();
  rank_cmd->add_option("--scheme", rank_scheme, "discrete|continuous");
  rank_cmd->add_option("--format", rank_format, "markdown|csv");

  // compare
  auto* compare_cmd =
      app.add_subcommand("compare", "L1 distance between two rankings");
  std::string cmp_a, cmp_b, cmp_scheme = "discrete";
  compare_cmd->add_option("a", cmp_a, "first ranking source")->required();
  compare_cmd->add_option("b", cmp_b, "second ranking source")->required();
  compare_cmd->add_option("--scheme", cmp_scheme,
                          "scheme used to rank matrix sources");

  // bias
  auto* bias_cmd =
      app.add_subcommand("bias", "Continuous-scheme bias report");
  std::vector<double> bias_q{0.0, 1.0, 2.0, 3.0};
  SimConfig bias_cfg;
  bias_cfg.n_games = kBiasSampleGames;
  bias_cfg.master_seed = 1;
  bias_cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  bias_cmd->add_option("--q", bias_q, "comma-separated mean goals")
      ->delimiter(',');
  bias_cmd->add_option("--n", bias_cfg.n_games, "games per pairing");
  bias_cmd->add_option("--sigma", bias_cfg.sigma, "goal standard deviation");
  bias_cmd->add_option("--seed", bias_cfg.master_seed, "master seed");
  bias_cmd->add_option("--threads", bias_cfg.threads, "worker threads");

  // simulate
  auto* sim_cmd =
      app.add_subcommand("simulate", "Simulate a round robin from score models");
  std::string sim_model, sim_out = "-";
  SimConfig sim_cfg;
  sim_cfg.master_seed = 1;
  sim_cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  sim_cmd->add_option("model", sim_model, "score-model JSON")->required();
  sim_cmd->add_option("--n", sim_cfg.n_games, "games per pairing");
  sim_cmd->add_option("--sigma", sim_cfg.sigma,
                      "default sigma for pairs that give none");
  sim_cmd->add_option("--seed", sim_cfg.master_seed, "master seed");
  sim_cmd->add_option("--threads", sim_cfg.threads, "worker threads");
  sim_cmd->add_option("--out", sim_out, "matrix output path (- for none)");

  // challenge
  auto* ch_cmd =
      app.add_subcommand("challenge", "Global Challenge coach protocol");
  ch_cmd->require_subcommand(1);
  auto* ch_parse = ch_cmd->add_subcommand("parse", "Parse and validate");
  std::string ch_text, ch_registry;
  bool ch_strict = false;
  ch_parse->add_option("command", ch_text, "command text, or - for stdin")
      ->required();
  ch_parse->add_option("--registry", ch_registry,
                       "extra registry JSON [{name, min?, max?}]");
  ch_parse->add_flag("--strict", ch_strict, "unknown parameters are errors");

  auto* ch_emit = ch_cmd->add_subcommand("emit", "Emit a canonical command");
  std::vector<std::string> emit_sets;
  ch_emit->add_option("--set", emit_sets, "name=value")->required();

  auto* ch_conf = ch_cmd->add_subcommand("conf", "Emit a server.conf snippet");
  std::vector<std::string> conf_sets;
  bool conf_on = false, conf_off = false;
  auto* on_flag = ch_conf->add_flag("--on", conf_on, "enable the mode (default)");
  auto* off_flag = ch_conf->add_flag("--off", conf_off, "disable the mode");
  on_flag->excludes(off_flag);
  ch_conf->add_option("--set", conf_sets, "name=value");

  // report
  auto* report_cmd = app.add_subcommand(
      "report", "Regenerate and verify the league tables from fixtures");
  std::vector<std::string> overrides;
  report_cmd->add_option("--override", overrides,
                         "replace a table's scores: table1|table3|table4=path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*rank_cmd) {
      const auto scheme = parse_scheme(rank_scheme);
      const auto format = parse_table_format(rank_format);
      auto src = detail::load_source(rank_source, in);
      const auto* matrix = std::get_if<ScoreMatrix>(&src);
      if (!matrix) {
        throw Error(ErrorCode::InvalidValue,
                    fmt::format("'{}' is a ranking, not a score matrix",
                                rank_source));
      }
      const auto table = points_table(*matrix, scheme);
      out << render_points_table(table, rank(table, scheme), scheme, format);
      return kExitOk;
    }

    if (*compare_cmd) {
      const auto scheme = parse_scheme(cmp_scheme);
      const auto ra = detail::as_ranking(detail::load_source(cmp_a, in), scheme);
      const auto rb = detail::as_ranking(detail::load_source(cmp_b, in), scheme);
      out << render_compare(ra, rb);
      return kExitOk;
    }

    if (*bias_cmd) {
      const auto rows = bias_table(bias_q, bias_cfg);
      out << render_bias_report(rows, bias_cfg);
      return kExitOk;
    }

    if (*sim_cmd) {
      const auto models =
          load_pair_models(detail::read_text(sim_model, in), sim_cfg.sigma);
      const auto matrix = simulate_round_robin(models, sim_cfg);
      if (sim_out != "-") detail::write_text(sim_out, dump_matrix(matrix), out);

      out << fmt::format("# Simulated round robin\n\n{} games per pairing, "
                         "seed {}.\n\n",
                         sim_cfg.n_games, sim_cfg.master_seed);
      std::vector<Ranking> rankings;
      for (auto scheme : {SchemeKind::Discrete, SchemeKind::Continuous}) {
        const auto table = points_table(matrix, scheme);
        const auto r = rank(table, scheme);
        out << fmt::format("## {} scheme\n\n", to_string(scheme));
        out << render_points_table(table, r, scheme, TableFormat::Markdown);
        out << "\n";
        rankings.push_back(r);
      }
      out << fmt::format("L1 distance between discrete and continuous "
                         "rankings: {}\n",
                         l1_distance(rankings[0], rankings[1]));
      return kExitOk;
    }

    if (*ch_cmd) {
      if (*ch_parse) {
        const std::string text =
            ch_text == "-" ? detail::read_text("-", in) : ch_text;
        const auto overrides = challenge::parse_change_command(text);
        auto registry = challenge::ParamRegistry::weather();
        if (!ch_registry.empty()) {
          registry.merge(
              challenge::load_registry(detail::read_text(ch_registry, in)));
        }
        const auto report = challenge::validate(overrides, registry, ch_strict);
        out << challenge::emit_change_command(overrides) << "\n";
        for (const auto& o : overrides) {
          out << fmt::format("{} = {}\n", o.name, shortest_decimal(o.value));
        }
        out << detail::render_findings(report);
        return report.has_errors() ? kExitInput : kExitOk;
      }
      if (*ch_emit) {
        out << challenge::emit_change_command(
                   detail::parse_assignments(emit_sets))
            << "\n";
        return kExitOk;
      }
      if (*ch_conf) {
        const auto sets = detail::parse_assignments(conf_sets);
        if (!sets.empty()) {
          challenge::emit_change_command(sets);  // rejects duplicates
        }
        out << challenge::emit_server_conf(!conf_off, sets);
        return kExitOk;
      }
    }

    if (*report_cmd) {
      auto fx = FixtureSet::builtin();
      for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) {
          throw Error(ErrorCode::InvalidValue,
                      fmt::format("expected table=path, got '{}'", o));
        }
        const auto name = o.substr(0, eq);
        auto matrix = load_matrix(detail::read_text(o.substr(eq + 1), in));
        if (name == "table1") {
          fx.table1.matrix = std::move(matrix);
        } else if (name == "table3") {
          fx.table3.matrix = std::move(matrix);
        } else if (name == "table4") {
          fx.table4.matrix = std::move(matrix);
        } else {
          throw Error(ErrorCode::InvalidValue,
                      fmt::format("cannot override '{}'", name));
        }
      }
      const auto result = audit_tables(fx);
      out << result.markdown;
      if (!result.ok()) {
        for (const auto& m : result.mismatches) err << "mismatch: " << m << "\n";
        return kExitMismatch;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  err << app.help();
  return kExitInput;
}

inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err, std::istream& in = std::cin) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err, in);
}

}  // namespace leaguelab::cli
