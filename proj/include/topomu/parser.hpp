#pragma once

// Recursive-descent parser for the formula grammar:
//
//   atoms           [a-z][a-zA-Z0-9_]*
//   binder vars     [A-Z][a-zA-Z0-9_]*
//   constants       T, F
//   unary           ~  <>  []  <*>  [*]
//   binders         nu V. / mu V.   (scope extends maximally right)
//   n-ary           tangle_d{f1, ...}  tangle_c{...}
//   binary          &  |  ->  <->   (-> and <-> right-associative)
//   precedence      unary/binder > & > | > -> > <->
//
// `nu`, `mu`, `tangle_d`, `tangle_c`, `T`, `F` are reserved words.

#include <string>
#include <string_view>
#include <vector>

#include "topomu/errors.hpp"
#include "topomu/surface.hpp"

namespace topomu {

namespace detail {

enum class Tok : uint8_t {
  Atom, BindVar, KwNu, KwMu, KwTangleD, KwTangleC, ConstT, ConstF,
  Tilde, Dia, Box, StarDia, StarBox, Amp, Pipe, Arrow, Iff,
  LParen, RParen, LBrace, RBrace, Comma, Dot, End
};

inline const char* tokName(Tok t) {
  switch (t) {
    case Tok::Atom: return "atom";
    case Tok::BindVar: return "variable";
    case Tok::KwNu: return "'nu'";
    case Tok::KwMu: return "'mu'";
    case Tok::KwTangleD: return "'tangle_d'";
    case Tok::KwTangleC: return "'tangle_c'";
    case Tok::ConstT: return "'T'";
    case Tok::ConstF: return "'F'";
    case Tok::Tilde: return "'~'";
    case Tok::Dia: return "'<>'";
    case Tok::Box: return "'[]'";
    case Tok::StarDia: return "'<*>'";
    case Tok::StarBox: return "'[*]'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  size_t offset;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  auto isIdentStart = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto isIdentCont = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    size_t start = i;
    if (isIdentStart(c)) {
      size_t j = i + 1;
      while (j < src.size() && isIdentCont(src[j])) ++j;
      std::string word(src.substr(i, j - i));
      Tok k;
      if (word == "nu") k = Tok::KwNu;
      else if (word == "mu") k = Tok::KwMu;
      else if (word == "tangle_d") k = Tok::KwTangleD;
      else if (word == "tangle_c") k = Tok::KwTangleC;
      else if (word == "T") k = Tok::ConstT;
      else if (word == "F") k = Tok::ConstF;
      else k = (word[0] >= 'a' && word[0] <= 'z') ? Tok::Atom : Tok::BindVar;
      out.push_back({k, std::move(word), start});
      i = j;
      continue;
    }
    auto two = [&](size_t at) { return at + 1 < src.size() ? src[at + 1] : '\0'; };
    auto three = [&](size_t at) { return at + 2 < src.size() ? src[at + 2] : '\0'; };
    switch (c) {
      case '~': out.push_back({Tok::Tilde, "~", start}); ++i; break;
      case '&': out.push_back({Tok::Amp, "&", start}); ++i; break;
      case '|': out.push_back({Tok::Pipe, "|", start}); ++i; break;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; break;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; break;
      case '{': out.push_back({Tok::LBrace, "{", start}); ++i; break;
      case '}': out.push_back({Tok::RBrace, "}", start}); ++i; break;
      case ',': out.push_back({Tok::Comma, ",", start}); ++i; break;
      case '.': out.push_back({Tok::Dot, ".", start}); ++i; break;
      case '-':
        if (two(i) == '>') {
          out.push_back({Tok::Arrow, "->", start});
          i += 2;
        } else {
          throw SyntaxError("expected '->'", start, {"'->'"});
        }
        break;
      case '<':
        if (two(i) == '-' && three(i) == '>') {
          out.push_back({Tok::Iff, "<->", start});
          i += 3;
        } else if (two(i) == '*' && three(i) == '>') {
          out.push_back({Tok::StarDia, "<*>", start});
          i += 3;
        } else if (two(i) == '>') {
          out.push_back({Tok::Dia, "<>", start});
          i += 2;
        } else {
          throw SyntaxError("expected '<>', '<*>' or '<->'", start, {"'<>'", "'<*>'", "'<->'"});
        }
        break;
      case '[':
        if (two(i) == ']') {
          out.push_back({Tok::Box, "[]", start});
          i += 2;
        } else if (two(i) == '*' && three(i) == ']') {
          out.push_back({Tok::StarBox, "[*]", start});
          i += 3;
        } else {
          throw SyntaxError("expected '[]' or '[*]'", start, {"'[]'", "'[*]'"});
        }
        break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", start,
                          {"formula"});
    }
  }
  out.push_back({Tok::End, "", src.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  SurfaceFormula parseAll() {
    SurfaceFormula f = parseIff();
    expect(Tok::End);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  Token expect(Tok k) {
    if (!at(k))
      throw SyntaxError(std::string("expected ") + tokName(k) + ", found " +
                            (peek().kind == Tok::End ? "end of input" : "'" + peek().text + "'"),
                        peek().offset, {tokName(k)});
    return take();
  }

  [[noreturn]] void failFormula() {
    throw SyntaxError("expected a formula, found " +
                          (peek().kind == Tok::End ? std::string("end of input")
                                                   : "'" + peek().text + "'"),
                      peek().offset,
                      {"'T'", "'F'", "atom", "variable", "'~'", "'<>'", "'[]'", "'<*>'",
                       "'[*]'", "'nu'", "'mu'", "'tangle_d'", "'tangle_c'", "'('"});
  }

  SurfaceFormula parseIff() {
    SurfaceFormula l = parseImplies();
    if (at(Tok::Iff)) {
      take();
      return SurfaceFormula::binary(SKind::Iff, std::move(l), parseIff());
    }
    return l;
  }

  SurfaceFormula parseImplies() {
    SurfaceFormula l = parseOr();
    if (at(Tok::Arrow)) {
      take();
      return SurfaceFormula::binary(SKind::Implies, std::move(l), parseImplies());
    }
    return l;
  }

  SurfaceFormula parseOr() {
    SurfaceFormula l = parseAnd();
    while (at(Tok::Pipe)) {
      take();
      l = SurfaceFormula::binary(SKind::Or, std::move(l), parseAnd());
    }
    return l;
  }

  SurfaceFormula parseAnd() {
    SurfaceFormula l = parseUnary();
    while (at(Tok::Amp)) {
      take();
      l = SurfaceFormula::binary(SKind::And, std::move(l), parseUnary());
    }
    return l;
  }

  SurfaceFormula parseUnary() {
    switch (peek().kind) {
      case Tok::Tilde: take(); return SurfaceFormula::unary(SKind::Neg, parseUnary());
      case Tok::Dia: take(); return SurfaceFormula::unary(SKind::Dia, parseUnary());
      case Tok::Box: take(); return SurfaceFormula::unary(SKind::Box, parseUnary());
      case Tok::StarDia: take(); return SurfaceFormula::unary(SKind::StarDia, parseUnary());
      case Tok::StarBox: take(); return SurfaceFormula::unary(SKind::StarBox, parseUnary());
      case Tok::KwNu:
      case Tok::KwMu: {
        bool isNu = take().kind == Tok::KwNu;
        Token v = expect(Tok::BindVar);
        expect(Tok::Dot);
        return SurfaceFormula::binder(isNu ? SKind::Nu : SKind::Mu, v.text, parseIff());
      }
      case Tok::KwTangleD:
      case Tok::KwTangleC: {
        bool isD = take().kind == Tok::KwTangleD;
        expect(Tok::LBrace);
        std::vector<SurfaceFormula> args;
        if (!at(Tok::RBrace)) {
          args.push_back(parseIff());
          while (at(Tok::Comma)) {
            take();
            args.push_back(parseIff());
          }
        }
        expect(Tok::RBrace);
        return SurfaceFormula::tangle(isD ? SKind::TangleD : SKind::TangleC, std::move(args));
      }
      case Tok::ConstT: take(); return SurfaceFormula::top();
      case Tok::ConstF: take(); return SurfaceFormula::bot();
      case Tok::Atom:
      case Tok::BindVar: return SurfaceFormula::var(take().text);
      case Tok::LParen: {
        take();
        SurfaceFormula f = parseIff();
        expect(Tok::RParen);
        return f;
      }
      default: failFormula();
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace detail

inline SurfaceFormula parse(std::string_view text) { return detail::Parser(text).parseAll(); }

// Parse + normalize in one go; most callers want the core formula.
inline Formula parseCore(std::string_view text) { return normalize(parse(text)); }

}  // namespace topomu
