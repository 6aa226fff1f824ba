#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "leaguelab/error.hpp"
#include "leaguelab/model.hpp"

namespace leaguelab::challenge {

inline constexpr std::string_view kCommandName = "change_player_param";
inline constexpr std::string_view kModeParam = "global_challenge_mode";

inline bool is_param_name(std::string_view s) {
  if (s.empty() || s.front() < 'a' || s.front() > 'z') return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) {
      return false;
    }
  }
  return true;
}

/// Decimal with optional sign, fraction and exponent.
inline bool is_number_token(std::string_view s) {
  std::size_t i = 0;
  auto digits = [&] {
    std::size_t start = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    return i - start;
  };
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_digits = digits();
  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    frac_digits = digits();
  }
  if (int_digits + frac_digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (digits() == 0) return false;
  }
  return i == s.size();
}

struct ParamOverride {
  std::string name;
  double value = 0.0;

  friend bool operator==(const ParamOverride&, const ParamOverride&) = default;
};

namespace detail {

inline void check_overrides(std::span<const ParamOverride> overrides) {
  if (overrides.empty()) {
    throw Error(ErrorCode::EmptyCommand,
                "change_player_param needs at least one (name value) pair");
  }
  std::set<std::string_view> seen;
  for (const auto& o : overrides) {
    if (!is_param_name(o.name)) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("invalid parameter name '{}'", o.name));
    }
    if (!std::isfinite(o.value)) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("parameter '{}' has a non-finite value",
                              o.name));
    }
    if (!seen.insert(o.name).second) {
      throw Error(ErrorCode::DuplicateParam,
                  fmt::format("parameter '{}' given more than once", o.name));
    }
  }
}

struct Token {
  enum class Kind { Open, Close, Atom, End } kind;
  std::string_view text;
  std::size_t position;  // 1-based character offset
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    if (pos_ == text_.size()) return {Token::Kind::End, {}, pos_ + 1};
    const std::size_t start = pos_;
    if (text_[pos_] == '(') return {Token::Kind::Open, text_.substr(pos_++, 1), start + 1};
    if (text_[pos_] == ')') return {Token::Kind::Close, text_.substr(pos_++, 1), start + 1};
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    return {Token::Kind::Atom, text_.substr(start, pos_ - start), start + 1};
  }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] inline void syntax_error(const Token& at,
                                      std::string_view expected) {
  const std::string found = at.kind == Token::Kind::End
                                ? std::string("end of input")
                                : fmt::format("'{}'", at.text);
  throw Error(ErrorCode::Syntax, fmt::format("position {}: expected {}, found {}",
                                             at.position, expected, found));
}

}  // namespace detail

/// Parses `(change_player_param (name value) ...)`. Whitespace between
/// tokens is free; override order is preserved.
inline std::vector<ParamOverride> parse_change_command(std::string_view text) {
  using detail::Token;
  detail::Lexer lex(text);

  Token t = lex.next();
  if (t.kind != Token::Kind::Open) detail::syntax_error(t, "'('");
  t = lex.next();
  if (t.kind != Token::Kind::Atom || t.text != kCommandName) {
    detail::syntax_error(t, "'change_player_param'");
  }

  std::vector<ParamOverride> out;
  std::set<std::string, std::less<>> seen;
  for (t = lex.next(); t.kind == Token::Kind::Open; t = lex.next()) {
    Token name = lex.next();
    if (name.kind != Token::Kind::Atom || !is_param_name(name.text)) {
      detail::syntax_error(name, "a parameter name [a-z][a-z0-9_]*");
    }
    Token value = lex.next();
    if (value.kind != Token::Kind::Atom || !is_number_token(value.text)) {
      detail::syntax_error(value, "a decimal number");
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.text.data(),
                                     value.text.data() + value.text.size(), v);
    // from_chars rejects a leading '+'.
    if (ec == std::errc::invalid_argument && value.text.front() == '+') {
      auto r = std::from_chars(value.text.data() + 1,
                               value.text.data() + value.text.size(), v);
      ec = r.ec;
    }
    if (ec != std::errc() || !std::isfinite(v)) {
      throw Error(ErrorCode::Syntax,
                  fmt::format("position {}: number '{}' is out of range",
                              value.position, value.text));
    }
    Token close = lex.next();
    if (close.kind != Token::Kind::Close) detail::syntax_error(close, "')'");
    if (!seen.emplace(name.text).second) {
      throw Error(ErrorCode::DuplicateParam,
                  fmt::format("position {}: parameter '{}' given more than "
                              "once",
                              name.position, name.text));
    }
    out.push_back({std::string(name.text), v});
  }
  if (t.kind != Token::Kind::Close) detail::syntax_error(t, "'(' or ')'");
  if (out.empty()) {
    throw Error(ErrorCode::EmptyCommand,
                fmt::format("position {}: change_player_param needs at least "
                            "one (name value) pair",
                            t.position));
  }
  Token end = lex.next();
  if (end.kind != Token::Kind::End) detail::syntax_error(end, "end of input");
  return out;
}

/// Canonical form: single spaces, shortest round-trip numbers, input order.
inline std::string emit_change_command(std::span<const ParamOverride> overrides) {
  detail::check_overrides(overrides);
  std::string out = "(";
  out += kCommandName;
  for (const auto& o : overrides) {
    out += fmt::format(" ({} {})", o.name, shortest_decimal(o.value));
  }
  out += ")";
  return out;
}

/// `server::global_challenge_mode = true|false` followed by one line per
/// override, LF-terminated.
inline std::string emit_server_conf(bool mode,
                                    std::span<const ParamOverride> overrides) {
  std::string out =
      fmt::format("server::{} = {}\n", kModeParam, mode ? "true" : "false");
  for (const auto& o : overrides) {
    out += fmt::format("server::{} = {}\n", o.name, shortest_decimal(o.value));
  }
  return out;
}

struct ParamSpec {
  std::optional<double> min;
  std::optional<double> max;
};

/// Parameters the home coach may change, with optional value ranges.
class ParamRegistry {
 public:
  /// The bad-weather set: ball and player noise and handling parameters.
  static ParamRegistry weather() {
    ParamRegistry r;
    r.add("ball_accel_max", {0.0, std::nullopt});
    r.add("ball_decay", {0.0, 1.0});
    r.add("ball_rand", {0.0, std::nullopt});
    r.add("ball_speed_max", {0.0, std::nullopt});
    r.add("catch_probability", {0.0, 1.0});
    r.add("inertia_moment", {0.0, std::nullopt});
    r.add("kick_rand", {0.0, std::nullopt});
    r.add("player_rand", {0.0, std::nullopt});
    return r;
  }

  void add(const std::string& name, ParamSpec spec) {
    if (!is_param_name(name)) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("invalid parameter name '{}'", name));
    }
    if (spec.min && spec.max && *spec.min > *spec.max) {
      throw Error(ErrorCode::InvalidValue,
                  fmt::format("parameter '{}': min > max", name));
    }
    if (!entries_.emplace(name, spec).second) {
      throw Error(ErrorCode::DuplicateParam,
                  fmt::format("parameter '{}' registered twice", name));
    }
  }

  /// Adds entries, replacing any with the same name.
  void merge(const ParamRegistry& other) {
    for (const auto& [name, spec] : other.entries_) entries_[name] = spec;
  }

  const ParamSpec* find(std::string_view name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<std::string, ParamSpec, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, ParamSpec, std::less<>> entries_;
};

/// Registry file: a JSON array of {"name", "min"?, "max"?} objects.
inline ParamRegistry load_registry(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, fmt::format("$: {}", e.what()));
  }
  if (!doc.is_array()) throw Error(ErrorCode::Parse, "$: expected an array");
  ParamRegistry r;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    const auto path = fmt::format("$[{}]", i);
    if (!e.is_object() || !e.contains("name") || !e["name"].is_string()) {
      throw Error(ErrorCode::Parse, path + ": expected {\"name\": string}");
    }
    ParamSpec spec;
    for (const char* key : {"min", "max"}) {
      if (!e.contains(key)) continue;
      if (!e[key].is_number()) {
        throw Error(ErrorCode::Parse,
                    fmt::format("{}.{}: expected a number", path, key));
      }
      (std::string_view(key) == "min" ? spec.min : spec.max) =
          e[key].get<double>();
    }
    try {
      r.add(e["name"].get<std::string>(), spec);
    } catch (const Error& err) {
      throw Error(err.code(), fmt::format("{}: {}", path, err.what()));
    }
  }
  return r;
}

enum class Severity { Warning, Error };

struct Finding {
  Severity severity = Severity::Warning;
  std::string name;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool clean() const { return findings.empty(); }
  bool has_errors() const {
    for (const auto& f : findings) {
      if (f.severity == Severity::Error) return true;
    }
    return false;
  }

  friend bool operator==(const ValidationReport&,
                         const ValidationReport&) = default;
};

/// Unknown names are errors when `strict`, warnings otherwise; values outside
/// a registered range are warnings.
inline ValidationReport validate(std::span<const ParamOverride> overrides,
                                 const ParamRegistry& registry, bool strict) {
  ValidationReport report;
  for (const auto& o : overrides) {
    const ParamSpec* spec = registry.find(o.name);
    if (!spec) {
      report.findings.push_back(
          {strict ? Severity::Error : Severity::Warning, o.name,
           "not a registered changeable parameter"});
      continue;
    }
    if ((spec->min && o.value < *spec->min) ||
        (spec->max && o.value > *spec->max)) {
      report.findings.push_back(
          {Severity::Warning, o.name,
           fmt::format("value {} outside [{}, {}]", shortest_decimal(o.value),
                       spec->min ? shortest_decimal(*spec->min) : "-inf",
                       spec->max ? shortest_decimal(*spec->max) : "inf")});
    }
  }
  return report;
}

}  // namespace leaguelab::challenge
