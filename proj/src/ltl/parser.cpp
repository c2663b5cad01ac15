#include <cctype>
#include <vector>

#include "nncomp/ltl.hpp"

namespace nncomp::ltl {

ParseError::ParseError(const std::string& what, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Implies, Next, Eventually, Until, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "atom";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Next: return "'X'";
    case Tok::Eventually: return "'F'";
    case Tok::Until: return "'U'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    const SourcePos pos{line, col};
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      std::string word(text.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      else if (word == "X") kind = Tok::Next;
      else if (word == "F") kind = Tok::Eventually;
      else if (word == "U") kind = Tok::Until;
      out.push_back({kind, std::move(word), pos});
      advance(j - i);
      continue;
    }
    switch (c) {
      case '!': out.push_back({Tok::Not, "!", pos}); advance(1); continue;
      case '&': out.push_back({Tok::And, "&", pos}); advance(1); continue;
      case '|': out.push_back({Tok::Or, "|", pos}); advance(1); continue;
      case '(': out.push_back({Tok::LParen, "(", pos}); advance(1); continue;
      case ')': out.push_back({Tok::RParen, ")", pos}); advance(1); continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Implies, "->", pos});
          advance(2);
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(std::string("unknown token '") + c + "'", line, col);
  }
  out.push_back({Tok::End, "", SourcePos{line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected " + std::string(describe(peek().kind)));
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().pos.line, peek().pos.column);
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Implies) {
      const SourcePos p = take().pos;
      Formula rhs = implication();
      return Formula::disjunction(Formula::negation(lhs, p), rhs, p);
    }
    return lhs;
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    while (peek().kind == Tok::Or) {
      const SourcePos p = take().pos;
      lhs = Formula::disjunction(lhs, conjunction(), p);
    }
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = until();
    while (peek().kind == Tok::And) {
      const SourcePos p = take().pos;
      lhs = Formula::conjunction(lhs, until(), p);
    }
    return lhs;
  }

  Formula until() {
    Formula lhs = unary();
    if (peek().kind == Tok::Until) {
      const SourcePos p = take().pos;
      return Formula::until(lhs, until(), p);
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: {
        const SourcePos p = take().pos;
        return Formula::negation(unary(), p);
      }
      case Tok::Next: {
        const SourcePos p = take().pos;
        return Formula::next(unary(), p);
      }
      case Tok::Eventually: {
        const SourcePos p = take().pos;
        return Formula::eventually(unary(), p);
      }
      default:
        return primary();
    }
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::True:
        take();
        return Formula::truth(t.pos);
      case Tok::False:
        take();
        return Formula::falsity(t.pos);
      case Tok::Ident:
        take();
        return Formula::atom(t.text, t.pos);
      case Tok::LParen: {
        take();
        Formula inner = implication();
        if (peek().kind != Tok::RParen) fail("expected ')' but found " + std::string(describe(peek().kind)));
        take();
        return inner;
      }
      default:
        fail("expected a formula but found " + std::string(describe(t.kind)));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

}  // namespace nncomp::ltl
