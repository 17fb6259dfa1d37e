#include "stackcalc/surface.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "stackcalc/constants.hpp"
#include "stackcalc/separator.hpp"

namespace stackcalc {

namespace {

struct Token {
  enum class Kind {
    Bd, Car, Cdr, Nil, Ident, Const, Nat,
    Dot, At, PushOp, LParen, RParen, Caret, End
  };
  Kind kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { tokenize(); }

  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  void tokenize() {
    int line = 1, col = 1;
    size_t i = 0;
    auto tok = [&](Token::Kind k, std::string text, int l, int c) {
      tokens_.push_back(Token{k, std::move(text), l, c});
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\n') { ++line; col = 1; ++i; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
      int startc = col;
      if (c == '(') { tok(Token::Kind::LParen, "(", line, startc); ++i; ++col; continue; }
      if (c == ')') { tok(Token::Kind::RParen, ")", line, startc); ++i; ++col; continue; }
      if (c == '.') { tok(Token::Kind::Dot, ".", line, startc); ++i; ++col; continue; }
      if (c == '@') { tok(Token::Kind::At, "@", line, startc); ++i; ++col; continue; }
      if (c == '^') { tok(Token::Kind::Caret, "^", line, startc); ++i; ++col; continue; }
      if (c == ':' && i + 1 < src_.size() && src_[i + 1] == ':') {
        tok(Token::Kind::PushOp, "::", line, startc);
        i += 2; col += 2;
        continue;
      }
      if (c == '#') {
        size_t j = i + 1;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) {
          ++j;
        }
        if (j == i + 1) throw SyntaxError(line, startc, "constant name after '#'");
        tok(Token::Kind::Const, std::string(src_.substr(i + 1, j - i - 1)), line, startc);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        tok(Token::Kind::Nat, std::string(src_.substr(i, j - i)), line, startc);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (std::islower(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) {
          ++j;
        }
        std::string word(src_.substr(i, j - i));
        Token::Kind k = Token::Kind::Ident;
        if (word == "bd") k = Token::Kind::Bd;
        else if (word == "car") k = Token::Kind::Car;
        else if (word == "cdr") k = Token::Kind::Cdr;
        else if (word == "nil") k = Token::Kind::Nil;
        tok(k, std::move(word), line, startc);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      throw SyntaxError(line, startc, "term or stack syntax");
    }
    tokens_.push_back(Token{Token::Kind::End, "", line, col});
  }

  std::string_view src_;
  std::vector<Token> tokens_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) {}

  TermPtr term_all() {
    TermPtr t = parse_term();
    expect_end();
    return t;
  }

  StackPtr stack_all() {
    StackPtr s = parse_stack();
    expect_end();
    return s;
  }

 private:
  const Token& peek() const { return lexer_.tokens()[pos_]; }
  const Token& get() { return lexer_.tokens()[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw SyntaxError(t.line, t.col, expected);
  }

  void expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) fail(what);
    get();
  }

  void expect_end() {
    if (peek().kind != Token::Kind::End) fail("end of input");
  }

  bool starts_term() const {
    switch (peek().kind) {
      case Token::Kind::Bd:
      case Token::Kind::Car:
      case Token::Kind::Const:
      case Token::Kind::LParen:
        return true;
      default:
        return false;
    }
  }

  TermPtr parse_term() {
    if (peek().kind == Token::Kind::Bd) {
      get();
      if (peek().kind != Token::Kind::Ident) fail("identifier after 'bd'");
      VarName v = VarName::from_ident(get().text);
      expect(Token::Kind::Dot, "'.'");
      return abs(std::move(v), parse_term());
    }
    TermPtr t = parse_prim();
    while (peek().kind == Token::Kind::At) {
      get();
      t = app(std::move(t), parse_stack());
    }
    return t;
  }

  TermPtr parse_prim() {
    switch (peek().kind) {
      case Token::Kind::Car: {
        get();
        expect(Token::Kind::LParen, "'(' after 'car'");
        StackPtr s = parse_stack();
        expect(Token::Kind::RParen, "')'");
        return car(std::move(s));
      }
      case Token::Kind::Const: {
        Token t = get();
        return resolve_const(t);
      }
      case Token::Kind::LParen: {
        get();
        TermPtr t = parse_term();
        expect(Token::Kind::RParen, "')'");
        return t;
      }
      default:
        fail("term");
    }
  }

  StackPtr parse_stack() {
    switch (peek().kind) {
      case Token::Kind::Nil:
        get();
        return nil();
      case Token::Kind::Ident:
        return svar(VarName::from_ident(get().text));
      case Token::Kind::Cdr: {
        get();
        uint32_t count = 1;
        if (peek().kind == Token::Kind::Caret) {
          get();
          if (peek().kind != Token::Kind::Nat) fail("number after '^'");
          count = static_cast<uint32_t>(std::stoul(get().text));
        }
        expect(Token::Kind::LParen, "'(' after 'cdr'");
        StackPtr s = parse_stack();
        expect(Token::Kind::RParen, "')'");
        return cdrn(std::move(s), count);
      }
      case Token::Kind::LParen: {
        // Either '(' term ')' '::' stack or '(' stack ')'. Try the term
        // reading first and fall back on failure or a missing '::'.
        size_t save = pos_;
        try {
          TermPtr t = parse_term_paren_or_plain();
          if (peek().kind == Token::Kind::PushOp) {
            get();
            return push(std::move(t), parse_stack());
          }
        } catch (const SyntaxError&) {
        }
        pos_ = save;
        get();  // '('
        StackPtr s = parse_stack();
        expect(Token::Kind::RParen, "')'");
        return s;
      }
      default:
        if (starts_term()) {
          TermPtr t = parse_term();
          expect(Token::Kind::PushOp, "'::' after term in stack position");
          return push(std::move(t), parse_stack());
        }
        fail("stack");
    }
  }

  // Used from the '(' branch of parse_stack: parses a term that begins at
  // the current '(' token.
  TermPtr parse_term_paren_or_plain() {
    expect(Token::Kind::LParen, "'('");
    TermPtr t = parse_term();
    expect(Token::Kind::RParen, "')'");
    // Applications may continue after the closing paren: (M) @ pi :: ...
    while (peek().kind == Token::Kind::At) {
      get();
      t = app(std::move(t), parse_stack());
    }
    return t;
  }

  TermPtr resolve_const(const Token& t) {
    if (t.text.size() > 1 && t.text[0] == 'P' &&
        std::isdigit(static_cast<unsigned char>(t.text[1]))) {
      bool all_digits = true;
      for (size_t i = 1; i < t.text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) {
          all_digits = false;
          break;
        }
      }
      if (all_digits) {
        return permutator(static_cast<uint32_t>(std::stoul(t.text.substr(1))));
      }
    }
    const auto& table = constants();
    auto it = table.find(t.text);
    if (it == table.end()) {
      throw SyntaxError(t.line, t.col, "known constant (got '#" + t.text + "')");
    }
    return it->second;
  }

  Lexer lexer_;
  size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// printer

void print_term(const TermPtr& t, std::string& out);
void print_stack(const StackPtr& s, std::string& out);

bool needs_parens_in_push(const TermPtr& t) {
  // A '::' or '@' after these would be swallowed by the term itself.
  return t->kind == Term::Kind::Abs || t->kind == Term::Kind::App;
}

void print_prim(const TermPtr& t, std::string& out) {
  if (t->kind == Term::Kind::Car) {
    out += "car(";
    print_stack(t->stack, out);
    out += ")";
  } else {
    out += "(";
    print_term(t, out);
    out += ")";
  }
}

void print_term(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case Term::Kind::Abs:
      out += "bd " + t->binder.str() + ". ";
      print_term(t->body, out);
      return;
    case Term::Kind::App: {
      if (t->body->kind == Term::Kind::Abs) {
        print_prim(t->body, out);
      } else {
        print_term(t->body, out);
      }
      out += " @ ";
      print_stack(t->stack, out);
      return;
    }
    case Term::Kind::Car:
      print_prim(t, out);
      return;
  }
}

void print_stack(const StackPtr& s, std::string& out) {
  switch (s->kind) {
    case Stack::Kind::Nil:
      out += "nil";
      return;
    case Stack::Kind::Var:
      out += s->var.str();
      return;
    case Stack::Kind::Cdr: {
      uint32_t count = 0;
      StackPtr cur = s;
      while (cur->kind == Stack::Kind::Cdr) {
        ++count;
        cur = cur->rest;
      }
      if (count >= 2) {
        out += "cdr^" + std::to_string(count) + "(";
      } else {
        out += "cdr(";
      }
      print_stack(cur, out);
      out += ")";
      return;
    }
    case Stack::Kind::Push: {
      if (needs_parens_in_push(s->head)) {
        out += "(";
        print_term(s->head, out);
        out += ")";
      } else {
        print_term(s->head, out);
      }
      out += " :: ";
      print_stack(s->rest, out);
      return;
    }
  }
}

}  // namespace

Expr parse(std::string_view text, Sort sort) {
  Parser p(text);
  if (sort == Sort::Term) return Expr(p.term_all());
  return Expr(p.stack_all());
}

TermPtr parse_term(std::string_view text) { return Parser(text).term_all(); }

StackPtr parse_stack(std::string_view text) { return Parser(text).stack_all(); }

Expr parse_expr(std::string_view text) {
  try {
    return Expr(parse_term(text));
  } catch (const SyntaxError&) {
    return Expr(parse_stack(text));
  }
}

std::string print(const TermPtr& t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string print(const StackPtr& s) {
  std::string out;
  print_stack(s, out);
  return out;
}

std::string print(const Expr& e) {
  return e.is_term() ? print(e.term()) : print(e.stack());
}

}  // namespace stackcalc
