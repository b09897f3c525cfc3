#include "bfoml/parser.hpp"

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "bfoml/error.hpp"

namespace bfoml {
namespace {

enum class Tok { LParen, RParen, Comma, Bang, Amp, Bar, Arrow, Box, Diamond, Upper, Lower, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto is_ident = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, k = col;
    auto two = [&](char a, char b) { return c == a && i + 1 < src.size() && src[i + 1] == b; };
    if (two('-', '>')) {
      out.push_back({Tok::Arrow, "->", l, k});
      advance(2);
    } else if (two('[', ']')) {
      out.push_back({Tok::Box, "[]", l, k});
      advance(2);
    } else if (two('<', '>')) {
      out.push_back({Tok::Diamond, "<>", l, k});
      advance(2);
    } else if (c == '(' || c == ')' || c == ',' || c == '!' || c == '&' || c == '|') {
      static const std::map<char, Tok> single = {{'(', Tok::LParen}, {')', Tok::RParen},
                                                 {',', Tok::Comma},  {'!', Tok::Bang},
                                                 {'&', Tok::Amp},    {'|', Tok::Bar}};
      out.push_back({single.at(c), std::string(1, c), l, k});
      advance(1);
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && is_ident(src[j])) ++j;
      const Tok kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::Upper : Tok::Lower;
      out.push_back({kind, std::string(src.substr(i, j - i)), l, k});
      advance(j - i);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", l, k);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("expected end of input, got " + describe(peek()));
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", got " + describe(peek()));
    return next();
  }

  Var variable() {
    const Token& t = expect(Tok::Lower, "a variable (lowercase identifier)");
    return Var(t.text);
  }

  Formula formula() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Bang:
        next();
        return Formula::negation(formula());
      case Tok::LParen: {
        next();
        Formula lhs = formula();
        const Token op = next();
        if (op.kind != Tok::Amp && op.kind != Tok::Bar && op.kind != Tok::Arrow) {
          throw ParseError("expected '&', '|' or '->', got " + describe(op), op.line, op.column);
        }
        Formula rhs = formula();
        expect(Tok::RParen, "')'");
        if (op.kind == Tok::Amp) return Formula::conjunction(std::move(lhs), std::move(rhs));
        if (op.kind == Tok::Bar) return Formula::disjunction(std::move(lhs), std::move(rhs));
        return Formula::implication(std::move(lhs), std::move(rhs));
      }
      case Tok::Upper: {
        const bool applied = peek(1).kind == Tok::LParen;
        if (!applied && t.text == "T") {
          next();
          return Formula::top();
        }
        if (!applied && t.text == "F") {
          next();
          return Formula::bot();
        }
        if (!applied && (t.text == "E" || t.text == "A")) return bundle();
        return atom();
      }
      default:
        fail("expected a formula, got " + describe(t));
    }
  }

  Formula bundle() {
    const Quantifier q = next().text == "E" ? Quantifier::Exists : Quantifier::Forall;
    Var v = variable();
    Modality m;
    if (peek().kind == Tok::Box) {
      m = Modality::Box;
    } else if (peek().kind == Tok::Diamond) {
      m = Modality::Diamond;
    } else {
      fail("expected '[]' or '<>', got " + describe(peek()));
    }
    next();
    return Formula::bundle(q, m, std::move(v), formula());
  }

  Formula atom() {
    const Token name = next();
    if (peek().kind != Tok::LParen) fail("expected '(' after predicate " + name.text);
    next();
    std::vector<Var> args{variable()};
    while (peek().kind == Tok::Comma) {
      next();
      args.push_back(variable());
    }
    expect(Tok::RParen, "')'");
    auto [it, inserted] = arity_.emplace(name.text, args.size());
    if (!inserted && it->second != args.size()) {
      throw ArityError(name.text, it->second, args.size());
    }
    return Formula::atom(name.text, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> arity_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(lex(text)).parse_all(); }

}  // namespace bfoml
