/* Copyright 2026 The aaw Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef AAW_PARSER_HPP
#define AAW_PARSER_HPP

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "aaw/syntax.hpp"

namespace aaw {

// A named formula with term parameters, expanded at parse time by
// simultaneous substitution. Used by corpus files.
struct Definition {
  std::vector<std::string> params;
  Formula body;
};

using Definitions = std::map<std::string, Definition>;

// Relation between the two sides of a parsed condition statement.
enum class Relation { Le, Ge, Eq };

namespace detail {

enum class Tok {
  Ident,
  Number,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  Meet,
  Join,
  LParen,
  RParen,
  Comma,
  Bar,
  Dot,
  Le,
  Ge,
  Eq,
  Define,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const std::size_t l = line_, c = column_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string id;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          id += advance();
        }
        while (pos_ < src_.size() && src_[pos_] == '\'') id += advance();
        out.push_back({Tok::Ident, id, l, c});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string num;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          num += advance();
        }
        if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) ||
                                   src_[pos_] == '_')) {
          throw ParseError("malformed identifier starting with a digit", l, c);
        }
        out.push_back({Tok::Number, num, l, c});
        continue;
      }
      if (auto u = utf8_operator()) {
        out.push_back({*u, "", l, c});
        continue;
      }
      advance();
      switch (ch) {
        case '+': out.push_back({Tok::Plus, "+", l, c}); break;
        case '-': out.push_back({Tok::Minus, "-", l, c}); break;
        case '*': out.push_back({Tok::Star, "*", l, c}); break;
        case '^': out.push_back({Tok::Caret, "^", l, c}); break;
        case '(': out.push_back({Tok::LParen, "(", l, c}); break;
        case ')': out.push_back({Tok::RParen, ")", l, c}); break;
        case ',': out.push_back({Tok::Comma, ",", l, c}); break;
        case '|': out.push_back({Tok::Bar, "|", l, c}); break;
        case '.': out.push_back({Tok::Dot, ".", l, c}); break;
        case '=': out.push_back({Tok::Eq, "=", l, c}); break;
        case '/':
          if (peek('\\')) {
            advance();
            out.push_back({Tok::Meet, "/\\", l, c});
          } else {
            out.push_back({Tok::Slash, "/", l, c});
          }
          break;
        case '\\':
          if (!peek('/')) throw ParseError("expected '\\/'", l, c);
          advance();
          out.push_back({Tok::Join, "\\/", l, c});
          break;
        case '<':
          if (!peek('=')) throw ParseError("expected '<='", l, c);
          advance();
          out.push_back({Tok::Le, "<=", l, c});
          break;
        case '>':
          if (!peek('=')) throw ParseError("expected '>='", l, c);
          advance();
          out.push_back({Tok::Ge, ">=", l, c});
          break;
        case ':':
          if (!peek('=')) throw ParseError("expected ':='", l, c);
          advance();
          out.push_back({Tok::Define, ":=", l, c});
          break;
        default:
          throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
      }
    }
  }

 private:
  bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }

  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::optional<Tok> utf8_operator() {
    static const std::pair<std::string_view, Tok> table[] = {
        {"∧", Tok::Meet}, {"∨", Tok::Join}, {"≤", Tok::Le},
        {"⩽", Tok::Le},   {"≥", Tok::Ge},   {"⩾", Tok::Ge},
        {"·", Tok::Star}, {"−", Tok::Minus},
    };
    for (const auto& [text, tok] : table) {
      if (src_.substr(pos_, text.size()) == text) {
        for (std::size_t i = 0; i < text.size(); ++i) advance();
        return tok;
      }
    }
    return std::nullopt;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, const Definitions* defs) : toks_(Lexer(src).run()), defs_(defs) {}

  Formula formula_only() {
    Formula f = sum();
    expect_end();
    return f;
  }

  Term term_only() {
    Term t = term();
    expect_end();
    return t;
  }

  std::pair<Condition, Relation> statement() {
    Formula lhs = sum();
    Relation rel;
    switch (cur().kind) {
      case Tok::Le: rel = Relation::Le; break;
      case Tok::Ge: rel = Relation::Ge; break;
      case Tok::Eq: rel = Relation::Eq; break;
      default: fail("expected '<=', '>=' or '='");
    }
    next();
    Formula rhs = sum();
    expect_end();
    if (rel == Relation::Ge) return {Condition{rhs, lhs}, rel};
    return {Condition{lhs, rhs}, rel};
  }

  // name(p1, ..., pn) := formula
  std::pair<std::string, Definition> definition() {
    const std::string name = ident("definition name");
    expect(Tok::LParen, "'('");
    Definition def;
    if (cur().kind != Tok::RParen) {
      def.params.push_back(ident("parameter name"));
      while (accept(Tok::Comma)) def.params.push_back(ident("parameter name"));
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Define, "':='");
    def.body = sum();
    expect_end();
    return {name, def};
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t n = 1) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  void next() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  bool accept(Tok k) {
    if (cur().kind != k) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().column);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }
  void expect_end() {
    if (cur().kind != Tok::End) fail("unexpected trailing input");
  }

  static bool is_keyword(const std::string& s) { return s == "sup" || s == "inf" || s == "d"; }

  std::string ident(const char* what) {
    if (cur().kind != Tok::Ident || is_keyword(cur().text)) fail(std::string("expected ") + what);
    std::string s = cur().text;
    next();
    return s;
  }

  Natural number() {
    if (cur().kind != Tok::Number) fail("expected a number");
    Natural n(cur().text);
    next();
    return n;
  }

  // integer ["/" positive-integer], the sign handled by the caller.
  Rational rational(bool negative) {
    Natural num = number();
    Natural den = 1;
    if (cur().kind == Tok::Slash) {
      next();
      if (cur().kind != Tok::Number) fail("malformed rational: expected a positive denominator");
      den = number();
      if (den == 0) fail("malformed rational: zero denominator");
    }
    Rational r(num, den);
    return negative ? Rational(-r) : r;
  }

  //----------------------------------------------------------------------------
  // Formulas

  Formula sum() {
    Formula f = factor();
    for (;;) {
      if (accept(Tok::Plus)) {
        f = Formula::add(f, factor());
      } else if (accept(Tok::Minus)) {
        f = Formula::sub(f, factor());
      } else {
        return f;
      }
    }
  }

  Formula scaled(Rational r) {
    if (accept(Tok::Star)) return Formula::scale(std::move(r), factor());
    return Formula::constant(std::move(r));
  }

  Formula factor() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Minus:
        next();
        if (cur().kind == Tok::Number) return scaled(rational(true));
        return Formula::scale(Rational(-1), factor());
      case Tok::Number:
        return scaled(rational(false));
      case Tok::LParen: {
        next();
        Formula f = sum();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Bar: {
        next();
        Term inner = term();
        expect(Tok::Bar, "'|'");
        return Formula::norm(inner);
      }
      case Tok::Ident:
        if (t.text == "d" && ahead().kind == Tok::LParen) {
          next();
          next();
          Term a = term();
          expect(Tok::Comma, "','");
          Term b = term();
          expect(Tok::RParen, "')'");
          return Formula::dist(a, b);
        }
        if (t.text == "sup" || t.text == "inf") return quantified();
        if (ahead().kind == Tok::LParen) return macro();
        fail("identifier '" + t.text + "' cannot stand for a formula");
      default:
        fail("expected a formula");
    }
  }

  Formula quantified() {
    const Formula::Kind k = cur().text == "sup" ? Formula::Kind::Sup : Formula::Kind::Inf;
    next();
    const std::string v = ident("a bound variable");
    std::optional<Term> bound;
    if (accept(Tok::Le)) bound = term();
    expect(Tok::Dot, "'.'");
    Formula body = sum();
    if (bound) return bounded_quantifier(k, v, *bound, body);
    return Formula::quantifier(k, v, body);
  }

  Formula macro() {
    const Token head = cur();
    if (!defs_ || defs_->count(head.text) == 0) fail("unknown definition '" + head.text + "'");
    const Definition& def = defs_->at(head.text);
    next();
    expect(Tok::LParen, "'('");
    std::vector<Term> args;
    if (cur().kind != Tok::RParen) {
      args.push_back(term());
      while (accept(Tok::Comma)) args.push_back(term());
    }
    expect(Tok::RParen, "')'");
    if (args.size() != def.params.size()) {
      throw ParseError("definition '" + head.text + "' expects " +
                           std::to_string(def.params.size()) + " arguments",
                       head.line, head.column);
    }
    std::map<std::string, Term> m;
    for (std::size_t i = 0; i < args.size(); ++i) m.emplace(def.params[i], args[i]);
    return substitute_all(def.body, m);
  }

  //----------------------------------------------------------------------------
  // Terms

  Term term() {
    Term t = term_sum();
    for (;;) {
      if (accept(Tok::Meet)) {
        t = Term::meet(t, term_sum());
      } else if (accept(Tok::Join)) {
        t = Term::join(t, term_sum());
      } else {
        return t;
      }
    }
  }

  Term term_sum() {
    Term t = term_product();
    while (accept(Tok::Plus)) t = Term::add(t, term_product());
    return t;
  }

  Term term_product() {
    Term t = term_power();
    while (accept(Tok::Star)) t = Term::mul(t, term_power());
    return t;
  }

  Term term_power() {
    Term base = term_atom();
    if (!accept(Tok::Caret)) return base;
    const Natural e = number();
    if (e > 64) fail("exponent too large");
    if (e == 0) return Term::one();
    Term t = base;
    for (Natural i = 1; i < e; ++i) t = Term::mul(t, base);
    return t;
  }

  Term term_atom() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Ident: {
        if (is_keyword(t.text)) fail("keyword '" + t.text + "' cannot be a term variable");
        Term v = Term::var(t.text);
        next();
        return v;
      }
      case Tok::Number: {
        const Natural n = number();
        if (n > 4096) fail("numeral too large for a term");
        return Term::numeral(n.convert_to<unsigned long>());
      }
      case Tok::LParen: {
        next();
        Term inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("expected a term");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Definitions* defs_;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, const Definitions* defs = nullptr) {
  return detail::Parser(text, defs).formula_only();
}

inline Term parse_term(std::string_view text) { return detail::Parser(text, nullptr).term_only(); }

// "lhs <= rhs" or "lhs >= rhs".
inline Condition parse_condition(std::string_view text, const Definitions* defs = nullptr) {
  auto [c, rel] = detail::Parser(text, defs).statement();
  if (rel == Relation::Eq) {
    throw ParseError("a condition needs '<=' or '>='; '=' is a pair of conditions", 1, 1);
  }
  return c;
}

// Also accepts '='; the returned condition is lhs <= rhs.
inline std::pair<Condition, Relation> parse_statement(std::string_view text,
                                                      const Definitions* defs = nullptr) {
  return detail::Parser(text, defs).statement();
}

inline std::pair<std::string, Definition> parse_definition(std::string_view text,
                                                           const Definitions* defs = nullptr) {
  return detail::Parser(text, defs).definition();
}

}  // namespace aaw

#endif  // AAW_PARSER_HPP
