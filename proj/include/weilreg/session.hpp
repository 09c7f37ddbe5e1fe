#pragma once

// The session language: declarations of varieties, maps, groups and actions
// followed by commands, and the JSON / text reports they produce.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace weilreg::session {

struct Span {
  std::size_t line = 0, column = 0;
};

/// Raw expression texts, one per coordinate.
using Tuple = std::vector<std::string>;

struct SessionName {
  std::string name;
};
struct VarDecl {
  std::vector<std::string> names;
};
struct VarietyDecl {
  std::string name;
  std::vector<std::string> vars;
  std::vector<std::string> ideal;
  bool reducible = false;
};
struct OpenDecl {
  std::string name, variety;
  std::vector<std::string> witnesses;
};
struct MapDecl {
  std::string name, source, target;
  std::vector<Tuple> reps;
};
struct GroupDecl {
  std::string name;
  std::string kind;  // Ga, Gm, finite, product
  std::vector<std::string> args;
  std::vector<std::vector<std::string>> table;
};
struct ActionDecl {
  std::string name, group, space;
  std::vector<Tuple> reps;                                // parametric
  std::vector<std::pair<std::string, Tuple>> per_element;  // finite
};
struct Command {
  std::string keyword;
  std::vector<std::string> refs;
  /// atlas S=(...), certify sample=(...) / samples=(...): raw point texts.
  std::string points_key;
  std::vector<std::string> points;
  /// certify F over X x Y by f.
  std::string expr, by;
  std::optional<std::string> on;
};

using Node = std::variant<SessionName, VarDecl, VarietyDecl, OpenDecl, MapDecl, GroupDecl, ActionDecl, Command>;

struct Statement {
  Span span;
  Node node;
};

struct SessionAST {
  std::vector<Statement> statements;
};

/// Throws SyntaxError (with position and expected tokens) or
/// UseBeforeDeclare.
SessionAST parse_session(std::string_view text);
/// Canonical text; parse_session(print_session(a)) reproduces a.
std::string print_session(const SessionAST& ast);
std::string print_statement(const Statement& s);
/// The command as it appears in reports, without the leading "cmd".
std::string command_text(const Command& c);

struct Record {
  std::string command;
  std::string status;  // ok | fail | error
  nlohmann::ordered_json payload;
  double millis = 0;
  std::uint64_t groebner_steps = 0;

  friend bool operator==(const Record&, const Record&) = default;
};

struct Report {
  int version = 1;
  std::string session;
  std::vector<Record> records;

  friend bool operator==(const Report&, const Report&) = default;
  bool has_error() const;
};

struct RunOptions {
  std::uint64_t max_groebner_steps = 0;  // 0 keeps the current budget
  bool parallel = false;
  /// Called with a progress line per command when set.
  void (*log)(const std::string&) = nullptr;
};

Report run_session(const SessionAST& ast, const RunOptions& options = {});

enum class Format { Json, Text };

std::string emit_report(const Report& report, Format format);
nlohmann::ordered_json to_json(const Report& report);
/// Inverse of emit_report(.., Json). Throws ParseError.
Report report_from_json(std::string_view text);

}  // namespace weilreg::session
