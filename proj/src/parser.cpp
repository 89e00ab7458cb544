#include "invgh/parser.hpp"

#include <cctype>
#include <optional>

namespace invgh {

namespace {

enum class Tok {
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semi,
  Plus,
  Minus,
  Star,
  Caret,
  Slash,
  EqEq,
  NeqEq,
  Assign,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Slash: return "'/'";
    case Tok::EqEq: return "'=='";
    case Tok::NeqEq: return "'!='";
    case Tok::Assign: return "':='";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok k, size_t n) {
      out.push_back({k, text.substr(i, n), tl, tc});
      bump(n);
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' ||
              text[j] == '\''))
        ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Number, j - i);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '{': push(Tok::LBrace, 1); continue;
      case '}': push(Tok::RBrace, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case ';': push(Tok::Semi, 1); continue;
      case '+': push(Tok::Plus, 1); continue;
      case '-': push(Tok::Minus, 1); continue;
      case '*': push(Tok::Star, 1); continue;
      case '^': push(Tok::Caret, 1); continue;
      case '/': push(Tok::Slash, 1); continue;
      case '=':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(Tok::EqEq, 2);
          continue;
        }
        break;
      case '!':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(Tok::NeqEq, 2);
          continue;
        }
        break;
      case ':':
        if (i + 1 < text.size() && text[i + 1] == '=') {
          push(Tok::Assign, 2);
          continue;
        }
        break;
      default: break;
    }
    throw SyntaxError("unexpected character '" + std::string(1, c) + "'", line, col, {});
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Program parse_program() {
    StmtPtr body = parse_stmt_sequence();
    expect(Tok::End, "end of input");
    Program p;
    p.body = std::move(body);
    p.declared_vars = var_order_;
    return p;
  }

  Polynomial parse_poly_only() {
    Polynomial p = parse_poly();
    expect(Tok::End, "end of input");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_keyword(const char* kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    const Token& t = peek();
    std::string msg = "syntax error at line " + std::to_string(t.line) + ", column " +
                      std::to_string(t.col) + ": unexpected " + tok_name(t.kind);
    if (t.kind == Tok::Ident || t.kind == Tok::Number) msg += " '" + t.text + "'";
    if (!expected.empty()) {
      msg += "; expected ";
      for (size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
    }
    throw SyntaxError(msg, t.line, t.col, expected);
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail({what});
    return advance();
  }

  VarName note_var(const std::string& name) {
    VarName v(name);
    if (!seen_.count(v)) {
      seen_.insert(v);
      var_order_.push_back(v);
    }
    return v;
  }

  StmtPtr parse_stmt_sequence() {
    StmtPtr first = parse_stmt();
    std::vector<StmtPtr> rest;
    while (at(Tok::Ident) || at(Tok::LParen)) rest.push_back(parse_stmt());
    // Fold right so a printed flat sequence reparses to the same shape.
    if (rest.empty()) return first;
    StmtPtr acc = rest.back();
    for (size_t i = rest.size() - 1; i-- > 0;) {
      Stmt s;
      s.node = SeqStmt{rest[i], acc};
      s.loc = {0, 0};
      acc = make_stmt(std::move(s));
    }
    Stmt s;
    s.node = SeqStmt{first, acc};
    s.loc = {0, 0};
    return make_stmt(std::move(s));
  }

  StmtPtr parse_block() {
    expect(Tok::LBrace, "'{'");
    StmtPtr body = parse_stmt_sequence();
    expect(Tok::RBrace, "'}'");
    return body;
  }

  StmtPtr parse_stmt() {
    Stmt s;
    s.loc = {peek().line, peek().col};
    if (at_keyword("skip")) {
      advance();
      expect(Tok::Semi, "';'");
      s.node = SkipStmt{};
      return make_stmt(std::move(s));
    }
    if (at_keyword("if")) {
      advance();
      Polynomial guard = parse_poly();
      expect(Tok::EqEq, "'=='");
      expect_zero();
      StmtPtr then_b = parse_block();
      if (!at_keyword("else")) fail({"'else'"});
      advance();
      StmtPtr else_b = parse_block();
      s.node = IfStmt{std::move(guard), std::move(then_b), std::move(else_b)};
      return make_stmt(std::move(s));
    }
    if (at_keyword("while")) {
      advance();
      Polynomial guard = parse_poly();
      GuardSense sense;
      if (at(Tok::EqEq)) {
        advance();
        sense = GuardSense::EqZero;
      } else if (at(Tok::NeqEq)) {
        advance();
        sense = GuardSense::NeqZero;
      } else {
        fail({"'=='", "'!='"});
      }
      expect_zero();
      StmtPtr body = parse_block();
      s.node = WhileStmt{std::move(guard), sense, std::move(body)};
      return make_stmt(std::move(s));
    }
    // Assignment: var := poly;  or  (v1, ..., vn) := (p1, ..., pn);
    AssignStmt a;
    if (at(Tok::LParen)) {
      advance();
      a.targets.push_back(note_var(expect(Tok::Ident, "identifier").text));
      while (at(Tok::Comma)) {
        advance();
        a.targets.push_back(note_var(expect(Tok::Ident, "identifier").text));
      }
      expect(Tok::RParen, "')'");
    } else if (at(Tok::Ident)) {
      a.targets.push_back(note_var(advance().text));
    } else {
      fail({"statement"});
    }
    expect(Tok::Assign, "':='");
    if (a.targets.size() > 1) {
      expect(Tok::LParen, "'('");
      a.values.push_back(parse_poly());
      while (at(Tok::Comma)) {
        advance();
        a.values.push_back(parse_poly());
      }
      expect(Tok::RParen, "')'");
    } else {
      a.values.push_back(parse_poly());
    }
    expect(Tok::Semi, "';'");
    if (a.targets.size() != a.values.size())
      throw SyntaxError("assignment arity mismatch at line " + std::to_string(s.loc.line), s.loc.line,
                        s.loc.col, {});
    for (size_t i = 0; i < a.targets.size(); ++i)
      for (size_t j = i + 1; j < a.targets.size(); ++j)
        if (a.targets[i] == a.targets[j])
          throw SyntaxError("duplicate assignment target '" + a.targets[i].name + "' at line " +
                                std::to_string(s.loc.line),
                            s.loc.line, s.loc.col, {});
    s.node = std::move(a);
    return make_stmt(std::move(s));
  }

  void expect_zero() {
    const Token& t = expect(Tok::Number, "'0'");
    if (t.text != "0")
      throw SyntaxError("comparisons must be against 0, got '" + t.text + "' at line " +
                            std::to_string(t.line),
                        t.line, t.col, {"'0'"});
  }

  // poly := ['-'] term (('+'|'-') term)*
  Polynomial parse_poly() {
    bool neg = false;
    if (at(Tok::Minus)) {
      advance();
      neg = true;
    }
    Polynomial p = parse_term();
    if (neg) p = -p;
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool minus = advance().kind == Tok::Minus;
      Polynomial t = parse_term();
      p = minus ? p - t : p + t;
    }
    return p;
  }

  Polynomial parse_term() {
    Polynomial p = parse_factor();
    while (at(Tok::Star)) {
      advance();
      p = p * parse_factor();
    }
    return p;
  }

  Polynomial parse_factor() {
    Polynomial base = parse_atom();
    if (at(Tok::Caret)) {
      advance();
      const Token& t = expect(Tok::Number, "nonnegative integer exponent");
      long e = std::stol(t.text);
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  Polynomial parse_atom() {
    if (at(Tok::Minus)) {
      advance();
      return -parse_factor();
    }
    if (at(Tok::Number)) {
      std::string num = advance().text;
      if (at(Tok::Slash)) {
        advance();
        std::string den = expect(Tok::Number, "denominator").text;
        Rational r{mpz_class(num), mpz_class(den)};
        r.canonicalize();
        return Polynomial::constant(r);
      }
      return Polynomial::constant(Rational(mpz_class(num)));
    }
    if (at(Tok::Ident)) {
      const Token& t = peek();
      if (t.text == "skip" || t.text == "if" || t.text == "else" || t.text == "while")
        fail({"polynomial"});
      return Polynomial::var(note_var(advance().text));
    }
    if (at(Tok::LParen)) {
      advance();
      Polynomial p = parse_poly();
      expect(Tok::RParen, "')'");
      return p;
    }
    fail({"polynomial"});
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::set<VarName> seen_;
  std::vector<VarName> var_order_;
};

}  // namespace

Program parse_program(const std::string& text) { return Parser(text).parse_program(); }

Polynomial parse_polynomial(const std::string& text) { return Parser(text).parse_poly_only(); }

}  // namespace invgh
