/* Copyright 2026 The Quill Authors. All Rights Reserved.

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

// Lexer and recursive-descent parser for formulas and terms.
//
//   formula := quant | iff
//   iff     := imp ('<->' imp)?
//   imp     := or ('->' imp)?
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '~' unary | ('forall' | 'exists') ident '.' formula | primary
//   primary := 'bot' | M(t) | A(t) | T(t) | H(t,t) | sim(t,t)
//            | p | p(t,...) | '$' t ['(' t,... ')'] | '(' formula ')'
//   term    := ident | '`' name '`' | '{' formula '}'
//
// A bare identifier in term position is a constant when the environment
// declares it, otherwise a variable. Splices are accepted only inside '{}'.

#ifndef QUILL_PARSER_HPP
#define QUILL_PARSER_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "quill/environment.hpp"
#include "quill/error.hpp"
#include "quill/syntax.hpp"

namespace quill {

struct Token {
  enum class Kind { Ident, Name, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline std::vector<Token> tokenize(std::string_view src, std::size_t line = 1) {
  std::vector<Token> out;
  std::size_t col = 1;
  std::size_t i = 0;
  auto fail = [&](const std::string& what) { throw ParseError(what, line, col); };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '\''))
        ++i;
      tok.kind = Token::Kind::Ident;
      tok.text = std::string(src.substr(start, i - start));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      tok.kind = Token::Kind::Number;
      tok.text = std::string(src.substr(start, i - start));
    } else if (c == '`') {
      ++i;
      while (i < src.size() && src[i] != '`' && src[i] != '\n') ++i;
      if (i >= src.size() || src[i] != '`') fail("unterminated quotation name");
      tok.kind = Token::Kind::Name;
      tok.text = std::string(src.substr(start + 1, i - start - 1));
      if (tok.text.empty()) fail("empty quotation name");
      ++i;
    } else {
      static const char* kMulti[] = {"<->", "->", ":="};
      tok.kind = Token::Kind::Punct;
      for (const char* m : kMulti) {
        std::string_view mv(m);
        if (src.substr(i, mv.size()) == mv) {
          tok.text = std::string(mv);
          break;
        }
      }
      if (tok.text.empty()) {
        static const std::string kSingle = "()[]{},.&|~$:/";
        if (kSingle.find(c) == std::string::npos)
          fail(std::string("unexpected character '") + c + "'");
        tok.text = std::string(1, c);
      }
      i += tok.text.size();
    }
    col += i - start;
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

inline bool isReservedWord(const std::string& s) {
  return s == "bot" || s == "forall" || s == "exists" || s == "by" || s == "M" || s == "A" ||
         s == "T" || s == "H" || s == "sim";
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Environment& env)
      : tokens_(std::move(tokens)), env_(env) {}
  Parser(std::string_view text, const Environment& env, std::size_t line = 1)
      : Parser(tokenize(text, line), env) {}

  // Lets a definition mention the name it is introducing.
  void allowPendingName(const std::string& name) { pendingNames_.insert(name); }

  // -- token access ---------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool atEnd() const { return peek().kind == Token::Kind::End; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  bool isPunct(const char* p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }
  bool isWord(const char* w) const { return peek().kind == Token::Kind::Ident && peek().text == w; }
  bool acceptPunct(const char* p) {
    if (!isPunct(p)) return false;
    next();
    return true;
  }
  bool acceptWord(const char* w) {
    if (!isWord(w)) return false;
    next();
    return true;
  }
  void expectPunct(const char* p) {
    if (!acceptPunct(p)) fail(std::string("expected '") + p + "'");
  }
  void expectWord(const char* w) {
    if (!acceptWord(w)) fail(std::string("expected '") + w + "'");
  }
  std::string identifier() {
    if (peek().kind != Token::Kind::Ident) fail("expected identifier");
    if (isReservedWord(peek().text)) fail("'" + peek().text + "' is reserved");
    return next().text;
  }
  std::size_t number() {
    if (peek().kind != Token::Kind::Number) fail("expected number");
    return static_cast<std::size_t>(std::stoul(next().text));
  }
  void expectEnd() {
    if (!atEnd()) fail("unexpected '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + " (at " + found + ")", t.line, t.column);
  }

  // -- grammar --------------------------------------------------------------

  Formula formula() {
    Formula lhs = implication();
    if (acceptPunct("<->")) {
      Formula rhs = implication();
      return iff(lhs, rhs);
    }
    return lhs;
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Name) {
      std::string name = next().text;
      if (!env_.isBound(name) && !pendingNames_.count(name))
        fail("unknown quotation name `" + name + "`");
      return quote(name);
    }
    if (acceptPunct("{")) {
      ++quoteDepth_;
      Formula f = formula();
      --quoteDepth_;
      expectPunct("}");
      return lit(f);
    }
    std::string id = identifier();
    return env_.isConstant(id) ? constant(id) : var(id);
  }

  std::vector<Term> termList() {
    std::vector<Term> out;
    expectPunct("(");
    if (acceptPunct(")")) return out;
    out.push_back(term());
    while (acceptPunct(",")) out.push_back(term());
    expectPunct(")");
    return out;
  }

 private:
  Formula implication() {
    Formula lhs = disjunction();
    if (acceptPunct("->")) return imp(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (acceptPunct("|")) f = disj(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (acceptPunct("&")) f = conj(f, unary());
    return f;
  }

  Formula unary() {
    if (acceptPunct("~")) return neg(unary());
    if (isWord("forall") || isWord("exists")) {
      bool universal = next().text == "forall";
      std::string x = identifier();
      if (env_.isConstant(x)) fail("cannot bind constant '" + x + "'");
      expectPunct(".");
      Formula body = formula();
      return universal ? forall(x, body) : exists(x, body);
    }
    return primary();
  }

  Term single() {
    expectPunct("(");
    Term t = term();
    expectPunct(")");
    return t;
  }

  std::pair<Term, Term> pair() {
    expectPunct("(");
    Term a = term();
    expectPunct(",");
    Term b = term();
    expectPunct(")");
    return {a, b};
  }

  Formula primary() {
    if (acceptPunct("(")) {
      Formula f = formula();
      expectPunct(")");
      return f;
    }
    if (isPunct("$")) {
      if (quoteDepth_ == 0) fail("splice outside a quotation");
      next();
      Term head = term();
      std::vector<Term> args;
      if (isPunct("(")) args = termList();
      if (head.kind == Term::Kind::Quote && env_.isBound(head.name)) {
        std::size_t a = env_.arity(head.name);
        if (a != args.size())
          fail("`" + head.name + "` has arity " + std::to_string(a) + ", spliced with " +
               std::to_string(args.size()) + " argument(s)");
      }
      return splice(head, args);
    }
    if (peek().kind != Token::Kind::Ident) fail("expected formula");
    if (acceptWord("bot")) return bot();
    if (acceptWord("M")) return meaningful(single());
    if (acceptWord("A")) return assertible(single());
    if (acceptWord("T")) return truth(single());
    if (acceptWord("H")) {
      auto [a, b] = pair();
      return holds(a, b);
    }
    if (acceptWord("sim")) {
      auto [a, b] = pair();
      return sameConcept(a, b);
    }
    Token at = peek();
    std::string p = identifier();
    auto arity = env_.predicateArity(p);
    if (!arity) throw ParseError("unknown predicate '" + p + "'", at.line, at.column);
    std::vector<Term> args;
    if (isPunct("(")) args = termList();
    if (args.size() != *arity)
      throw ParseError("predicate '" + p + "' expects " + std::to_string(*arity) +
                           " argument(s), got " + std::to_string(args.size()),
                       at.line, at.column);
    return atom(p, args);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Environment& env_;
  int quoteDepth_ = 0;
  std::set<std::string> pendingNames_;
};

// Parses a complete formula; ~ and <-> are desugared on the way in.
inline Formula parseFormula(std::string_view text, const Environment& env) {
  Parser p(text, env);
  Formula f = p.formula();
  p.expectEnd();
  return f;
}

inline Term parseTerm(std::string_view text, const Environment& env) {
  Parser p(text, env);
  Term t = p.term();
  p.expectEnd();
  return t;
}

}  // namespace quill

#endif  // QUILL_PARSER_HPP
