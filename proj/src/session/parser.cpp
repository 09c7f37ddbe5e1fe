#include <map>
#include <set>

#include "weilreg/errors.hpp"
#include "weilreg/session.hpp"

namespace weilreg::session {

namespace {

enum class Tok { Ident, Number, Punct, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset, end, line, column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Newline:
      return "end of line";
    case Tok::End:
      return "end of input";
    default:
      return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  int depth = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto is_ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      if (depth == 0 && (out.empty() || out.back().kind != Tok::Newline))
        out.push_back({Tok::Newline, "\n", i, i + 1, line, col});
      advance(1);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    Token t{Tok::Punct, "", i, i, line, col};
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && is_ident(s[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Number;
      t.text = std::string(s.substr(i, j - i));
    } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      t.text = "->";
    } else if (std::string_view("()[]{},:=/\\*+-^|").find(c) != std::string_view::npos) {
      t.text = std::string(1, c);
      if (c == '(' || c == '[' || c == '{') ++depth;
      if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
    } else {
      throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
    }
    t.end = i + t.text.size();
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "", s.size(), s.size(), line, col});
  return out;
}

enum class Kind { Variety, Open, Map, Group, Action };

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Variety:
      return "variety";
    case Kind::Open:
      return "open subset";
    case Kind::Map:
      return "map";
    case Kind::Group:
      return "group";
    case Kind::Action:
      return "action";
  }
  return "";
}

const std::set<std::string> kCommands{"dom",        "breg",        "graph", "image",      "invert", "compose",
                                      "closedgraph", "checkaction", "xreg",  "regularize", "atlas",  "certify"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), toks_(lex(text)) {}

  SessionAST parse() {
    SessionAST ast;
    skip_newlines();
    while (peek().kind != Tok::End) {
      ast.statements.push_back(statement());
      if (peek().kind != Tok::End) expect_newline();
      skip_newlines();
    }
    return ast;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool at_word(std::string_view w) const { return peek().kind == Tok::Ident && peek().text == w; }

  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw SyntaxError(t.line, t.column, "unexpected " + describe(t), std::move(expected));
  }
  void expect(std::string_view p) {
    if (!at(p)) unexpected({"'" + std::string(p) + "'"});
    next();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) unexpected({"'" + std::string(w) + "'"});
    next();
  }
  void expect_newline() {
    if (peek().kind != Tok::Newline) unexpected({"end of line"});
    next();
  }
  void skip_newlines() {
    while (peek().kind == Tok::Newline) next();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) unexpected({"identifier"});
    return next().text;
  }

  [[noreturn]] void undeclared(const Token& t, const std::string& what) const {
    throw UseBeforeDeclare(std::to_string(t.line) + ":" + std::to_string(t.column) + ": " + what + " '" + t.text +
                           "' is not declared");
  }

  /// A reference to a declared object of one of the given kinds.
  std::string reference(std::initializer_list<Kind> kinds) {
    const Token& t = peek();
    std::string name = ident();
    auto it = objects_.find(name);
    if (it == objects_.end()) undeclared(t, "object");
    for (Kind k : kinds)
      if (it->second == k) return name;
    std::string want;
    for (Kind k : kinds) want += (want.empty() ? "" : " or ") + kind_name(k);
    throw KindMismatch(std::to_string(t.line) + ":" + std::to_string(t.column) + ": '" + name + "' is a " +
                       kind_name(it->second) + ", expected " + want);
  }

  void declare(const Token& t, const std::string& name, Kind k) {
    if (objects_.count(name) || vars_.count(name))
      throw SyntaxError(t.line, t.column, "'" + name + "' is already declared");
    objects_[name] = k;
  }

  // Expressions: validated here, kept as text with whitespace removed.
  std::string expression() {
    std::size_t start = peek().offset;
    expr();
    std::string out;
    for (char c : text_.substr(start, toks_[pos_ - 1].end - start))
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out += c;
    return out;
  }
  void expr() {
    term();
    while (at("+") || at("-")) {
      next();
      term();
    }
  }
  void term() {
    unary();
    while (at("*") || at("/")) {
      next();
      unary();
    }
  }
  void unary() {
    if (at("-") || at("+")) {
      next();
      unary();
      return;
    }
    primary();
    if (at("^")) {
      next();
      if (peek().kind != Tok::Number) unexpected({"number"});
      next();
    }
  }
  void primary() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
    } else if (t.kind == Tok::Ident) {
      if (!vars_.count(t.text)) undeclared(t, "variable");
      next();
    } else if (at("(")) {
      next();
      expr();
      expect(")");
    } else {
      unexpected({"identifier", "number", "'('", "'+'", "'-'"});
    }
  }

  std::vector<std::string> expression_list() {
    expect("(");
    std::vector<std::string> out{expression()};
    while (at(",")) {
      next();
      out.push_back(expression());
    }
    expect(")");
    return out;
  }

  std::vector<std::string> ident_list() {
    expect("(");
    std::vector<std::string> out{ident()};
    while (at(",")) {
      next();
      out.push_back(ident());
    }
    expect(")");
    return out;
  }

  std::vector<std::string> declared_var_list() {
    expect("(");
    std::vector<std::string> out;
    do {
      if (!out.empty()) next();
      const Token& t = peek();
      std::string v = ident();
      if (!vars_.count(v)) undeclared(t, "variable");
      out.push_back(v);
    } while (at(","));
    expect(")");
    return out;
  }

  // Group points: 3, -1/2, e, (1, 2).
  std::string point_item() {
    if (at("(")) {
      next();
      std::string s = "(" + point_item();
      while (at(",")) {
        next();
        s += ", " + point_item();
      }
      expect(")");
      return s + ")";
    }
    if (peek().kind == Tok::Ident) return next().text;
    std::string s;
    if (at("-")) {
      next();
      s = "-";
    }
    if (peek().kind != Tok::Number) unexpected({"number", "identifier", "'('"});
    s += next().text;
    if (at("/")) {
      next();
      if (peek().kind != Tok::Number) unexpected({"number"});
      s += "/" + next().text;
    }
    return s;
  }

  std::vector<std::string> point_list() {
    expect("(");
    std::vector<std::string> out{point_item()};
    while (at(",")) {
      next();
      out.push_back(point_item());
    }
    expect(")");
    return out;
  }

  std::vector<Tuple> representatives() {
    std::vector<Tuple> reps{expression_list()};
    while (at("|")) {
      next();
      reps.push_back(expression_list());
    }
    return reps;
  }

  Statement statement() {
    const Token& head = peek();
    Statement st{{head.line, head.column}, {}};
    if (head.kind != Tok::Ident) unexpected({"declaration", "'cmd'"});
    const std::string word = next().text;
    if (word == "session") {
      st.node = SessionName{ident()};
    } else if (word == "var") {
      VarDecl d;
      while (peek().kind == Tok::Ident) {
        const Token& t = peek();
        std::string v = ident();
        if (vars_.count(v) || objects_.count(v)) throw SyntaxError(t.line, t.column, "'" + v + "' is already declared");
        vars_.insert(v);
        d.names.push_back(v);
      }
      if (d.names.empty()) unexpected({"identifier"});
      st.node = d;
    } else if (word == "variety") {
      VarietyDecl d;
      const Token& t = peek();
      d.name = ident();
      expect("=");
      expect_word("affine");
      d.vars = declared_var_list();
      if (at("/")) {
        next();
        d.ideal = expression_list();
      }
      if (at_word("reducible")) {
        next();
        d.reducible = true;
      }
      declare(t, d.name, Kind::Variety);
      st.node = d;
    } else if (word == "open") {
      OpenDecl d;
      const Token& t = peek();
      d.name = ident();
      expect("=");
      d.variety = reference({Kind::Variety});
      expect("\\");
      d.witnesses = expression_list();
      declare(t, d.name, Kind::Open);
      st.node = d;
    } else if (word == "map") {
      MapDecl d;
      const Token& t = peek();
      d.name = ident();
      expect(":");
      d.source = reference({Kind::Variety, Kind::Open});
      expect("->");
      d.target = reference({Kind::Variety, Kind::Open});
      expect("=");
      d.reps = representatives();
      declare(t, d.name, Kind::Map);
      st.node = d;
    } else if (word == "group") {
      st.node = group_decl();
    } else if (word == "action") {
      st.node = action_decl();
    } else if (word == "cmd") {
      st.node = command();
    } else {
      throw SyntaxError(head.line, head.column, "unknown statement '" + word + "'",
                        {"session", "var", "variety", "open", "map", "group", "action", "cmd"});
    }
    return st;
  }

  GroupDecl group_decl() {
    GroupDecl d;
    const Token& t = peek();
    d.name = ident();
    expect("=");
    if (peek().kind != Tok::Ident) unexpected({"Ga", "Gm", "finite", "product"});
    d.kind = peek().text;
    if (d.kind == "Ga") {
      next();
      d.args = declared_var_list();
      if (d.args.size() != 1) throw SyntaxError(t.line, t.column, "Ga takes one variable");
    } else if (d.kind == "Gm") {
      next();
      d.args = declared_var_list();
      if (d.args.size() != 2) throw SyntaxError(t.line, t.column, "Gm takes two variables");
    } else if (d.kind == "finite") {
      next();
      d.args = ident_list();
      expect_word("table");
      expect("[");
      do {
        if (!d.table.empty()) next();
        expect("[");
        std::vector<std::string> row{ident()};
        while (at(",")) {
          next();
          row.push_back(ident());
        }
        expect("]");
        d.table.push_back(std::move(row));
      } while (at(","));
      expect("]");
    } else if (d.kind == "product") {
      next();
      expect("(");
      d.args.push_back(reference({Kind::Group}));
      expect(",");
      d.args.push_back(reference({Kind::Group}));
      expect(")");
    } else {
      unexpected({"Ga", "Gm", "finite", "product"});
    }
    declare(t, d.name, Kind::Group);
    return d;
  }

  ActionDecl action_decl() {
    ActionDecl d;
    const Token& t = peek();
    d.name = ident();
    expect(":");
    d.group = reference({Kind::Group});
    expect_word("x");
    d.space = reference({Kind::Variety, Kind::Open});
    expect("->");
    const Token& tt = peek();
    std::string target = reference({Kind::Variety, Kind::Open});
    if (target != d.space) throw SyntaxError(tt.line, tt.column, "an action maps its space to itself", {d.space});
    expect("=");
    if (at("{")) {
      next();
      do {
        if (!d.per_element.empty()) next();
        std::string element = ident();
        expect(":");
        d.per_element.emplace_back(element, expression_list());
      } while (at(","));
      expect("}");
    } else {
      d.reps = representatives();
    }
    declare(t, d.name, Kind::Action);
    return d;
  }

  Command command() {
    Command c;
    const Token& t = peek();
    c.keyword = ident();
    if (!kCommands.count(c.keyword))
      throw SyntaxError(t.line, t.column, "unknown command '" + c.keyword + "'",
                        std::vector<std::string>(kCommands.begin(), kCommands.end()));
    const std::string& k = c.keyword;
    bool allow_on = false;
    if (k == "dom" || k == "breg" || k == "graph" || k == "image" || k == "invert") {
      c.refs.push_back(reference({Kind::Map}));
    } else if (k == "compose") {
      c.refs.push_back(reference({Kind::Map}));
      c.refs.push_back(reference({Kind::Map}));
    } else if (k == "closedgraph") {
      c.refs.push_back(reference({Kind::Map}));
      allow_on = true;
    } else if (k == "checkaction") {
      c.refs.push_back(reference({Kind::Action}));
    } else if (k == "xreg" || k == "regularize") {
      c.refs.push_back(reference({Kind::Action}));
      allow_on = true;
    } else if (k == "atlas") {
      c.refs.push_back(reference({Kind::Action}));
      expect_word("S");
      expect("=");
      c.points_key = "S";
      c.points = point_list();
      allow_on = true;
    } else if (k == "certify") {
      auto it = peek().kind == Tok::Ident ? objects_.find(peek().text) : objects_.end();
      if (it != objects_.end() && it->second == Kind::Action) {
        c.refs.push_back(reference({Kind::Action}));
        expect_word("sample");
        expect("=");
        c.points_key = "sample";
        c.points = point_list();
      } else {
        c.expr = expression();
        expect_word("over");
        c.refs.push_back(reference({Kind::Variety}));
        expect_word("x");
        c.refs.push_back(reference({Kind::Variety}));
        expect_word("by");
        c.by = expression();
        if (at_word("samples")) {
          next();
          expect("=");
          c.points_key = "samples";
          c.points = point_list();
        }
      }
    }
    if (allow_on && at_word("on")) {
      next();
      c.on = reference({Kind::Open});
    }
    return c;
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> vars_;
  std::map<std::string, Kind> objects_;
};

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

std::string tuple_text(const Tuple& t) { return "(" + join(t) + ")"; }

}  // namespace

SessionAST parse_session(std::string_view text) { return Parser(text).parse(); }

std::string command_text(const Command& c) {
  std::string s = c.keyword;
  if (c.keyword == "certify" && !c.expr.empty()) {
    s += " " + c.expr + " over " + c.refs.at(0) + " x " + c.refs.at(1) + " by " + c.by;
  } else {
    for (const auto& r : c.refs) s += " " + r;
  }
  if (!c.points_key.empty()) s += " " + c.points_key + "=(" + join(c.points) + ")";
  if (c.on) s += " on " + *c.on;
  return s;
}

std::string print_statement(const Statement& st) {
  struct Printer {
    std::string operator()(const SessionName& d) const { return "session " + d.name; }
    std::string operator()(const VarDecl& d) const { return "var " + join(d.names, " "); }
    std::string operator()(const VarietyDecl& d) const {
      std::string s = "variety " + d.name + " = affine(" + join(d.vars) + ")";
      if (!d.ideal.empty()) s += " / " + tuple_text(d.ideal);
      if (d.reducible) s += " reducible";
      return s;
    }
    std::string operator()(const OpenDecl& d) const {
      return "open " + d.name + " = " + d.variety + " \\ " + tuple_text(d.witnesses);
    }
    std::string operator()(const MapDecl& d) const {
      std::string s = "map " + d.name + " : " + d.source + " -> " + d.target + " = ";
      for (std::size_t i = 0; i < d.reps.size(); ++i) s += (i ? " | " : "") + tuple_text(d.reps[i]);
      return s;
    }
    std::string operator()(const GroupDecl& d) const {
      std::string s = "group " + d.name + " = " + d.kind + "(" + join(d.args) + ")";
      if (d.kind == "finite") {
        std::vector<std::string> rows;
        for (const auto& r : d.table) rows.push_back("[" + join(r) + "]");
        s += " table [" + join(rows) + "]";
      }
      return s;
    }
    std::string operator()(const ActionDecl& d) const {
      std::string s = "action " + d.name + " : " + d.group + " x " + d.space + " -> " + d.space + " = ";
      if (!d.per_element.empty()) {
        std::vector<std::string> parts;
        for (const auto& [e, t] : d.per_element) parts.push_back(e + ": " + tuple_text(t));
        return s + "{ " + join(parts) + " }";
      }
      for (std::size_t i = 0; i < d.reps.size(); ++i) s += (i ? " | " : "") + tuple_text(d.reps[i]);
      return s;
    }
    std::string operator()(const Command& c) const { return "cmd " + command_text(c); }
  };
  return std::visit(Printer{}, st.node);
}

std::string print_session(const SessionAST& ast) {
  std::string out;
  for (const auto& s : ast.statements) out += print_statement(s) + "\n";
  return out;
}

}  // namespace weilreg::session
