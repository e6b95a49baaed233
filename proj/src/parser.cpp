#include "fta/parser.hpp"

#include <cctype>

namespace fta {

namespace {

struct Token {
  enum class Kind { Atom, Var, Punct, End };
  Kind kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok_.line, tok_.col, msg);
  }

 private:
  void advance() {
    skip_space();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_ = {Token::Kind::End, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c))) {
      tok_ = {Token::Kind::Atom, take_word(), tok_.line, tok_.col};
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      tok_ = {Token::Kind::Var, take_word(), tok_.line, tok_.col};
      return;
    }
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      bump();
      bump();
      tok_ = {Token::Kind::Punct, ":-", tok_.line, tok_.col};
      return;
    }
    if (std::string("(),=.!").find(c) != std::string::npos) {
      bump();
      tok_ = {Token::Kind::Punct, std::string(1, c), tok_.line, tok_.col};
      return;
    }
    throw ParseError(line_, col_, std::string("unexpected character '") + c +
                                      "'");
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  std::string take_word() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      bump();
    return text_.substr(start, pos_ - start);
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, TermArena& arena, VarTable& vt)
      : lex_(text), arena_(arena), vt_(vt) {}

  Program parse() {
    Program p;
    while (lex_.peek().kind != Token::Kind::End) {
      size_t idx = p.clauses.size();
      begin_clause("c" + std::to_string(idx));
      p.clauses.push_back(clause());
      const Clause& c = p.clauses.back();
      p.index[{c.head.pred, c.head.arity()}].push_back(idx);
    }
    return p;
  }

  Atom goal_atom(const std::string& scope) {
    begin_clause(scope);
    Atom a = atom();
    expect(Token::Kind::End, "");
    return a;
  }

  TermId single_term(const std::string& scope) {
    begin_clause(scope);
    TermId t = term();
    expect(Token::Kind::End, "");
    return t;
  }

 private:
  void begin_clause(const std::string& scope) {
    scope_ = scope;
    locals_.clear();
    clause_vars_.clear();
    fresh_count_ = 0;
  }

  Clause clause() {
    Clause c;
    c.head = atom();
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == ":-") {
      lex_.next();
      c.body.push_back(goal());
      while (lex_.peek().kind == Token::Kind::Punct &&
             lex_.peek().text == ",") {
        lex_.next();
        c.body.push_back(goal());
      }
    }
    expect_punct(".");
    c.vars = clause_vars_;
    return c;
  }

  Goal goal() {
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "!") {
      lex_.next();
      Goal g;
      g.kind = Goal::Kind::Call;
      g.atom = Atom{"!", {}};
      return g;
    }
    TermId first = term();
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "=") {
      lex_.next();
      Goal g;
      g.kind = Goal::Kind::Unify;
      g.lhs = first;
      g.rhs = term();
      return g;
    }
    // A non-equation goal must be a predicate call.
    if (arena_.is_var(first)) lex_.fail("goal cannot be a variable");
    Goal g;
    g.kind = Goal::Kind::Call;
    g.atom.pred = arena_.functor_name(arena_.functor_of(first));
    g.atom.args = arena_.args_of(first);
    return g;
  }

  Atom atom() {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Atom)
      throw ParseError(t.line, t.col, "expected predicate name");
    Atom a;
    a.pred = t.text;
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(") {
      lex_.next();
      a.args.push_back(term());
      while (lex_.peek().kind == Token::Kind::Punct &&
             lex_.peek().text == ",") {
        lex_.next();
        a.args.push_back(term());
      }
      expect_punct(")");
    }
    return a;
  }

  TermId term() {
    Token t = lex_.next();
    if (t.kind == Token::Kind::Var) {
      Variable v = clause_var(t.text);
      return arena_.var(v);
    }
    if (t.kind != Token::Kind::Atom)
      throw ParseError(t.line, t.col, "expected term");
    std::vector<TermId> args;
    if (lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == "(") {
      lex_.next();
      args.push_back(term());
      while (lex_.peek().kind == Token::Kind::Punct &&
             lex_.peek().text == ",") {
        lex_.next();
        args.push_back(term());
      }
      expect_punct(")");
    }
    return arena_.app(t.text, args);
  }

  Variable clause_var(const std::string& name) {
    std::string key = name;
    if (name == "_") key = "_anon" + std::to_string(fresh_count_++);
    auto it = locals_.find(key);
    if (it != locals_.end()) return it->second;
    Variable v = vt_.intern(key + "@" + scope_);
    locals_.emplace(key, v);
    clause_vars_.push_back(v);
    return v;
  }

  void expect_punct(const std::string& p) {
    Token t = lex_.next();
    if (t.kind != Token::Kind::Punct || t.text != p)
      throw ParseError(t.line, t.col, "expected '" + p + "'");
  }

  void expect(Token::Kind k, const std::string& p) {
    Token t = lex_.next();
    if (t.kind != k || (!p.empty() && t.text != p))
      throw ParseError(t.line, t.col, "unexpected trailing input");
  }

  Lexer lex_;
  TermArena& arena_;
  VarTable& vt_;
  std::string scope_;
  std::map<std::string, Variable> locals_;
  std::vector<Variable> clause_vars_;
  int fresh_count_ = 0;
};

}  // namespace

Program parse_program(const std::string& text, TermArena& arena,
                      VarTable& vt) {
  return Parser(text, arena, vt).parse();
}

Atom parse_goal_atom(const std::string& text, TermArena& arena, VarTable& vt,
                     const std::string& scope) {
  return Parser(text, arena, vt).goal_atom(scope);
}

TermId parse_term_text(const std::string& text, TermArena& arena,
                       VarTable& vt, const std::string& scope) {
  return Parser(text, arena, vt).single_term(scope);
}

}  // namespace fta
