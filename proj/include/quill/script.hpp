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

// Proof scripts (.pf). One item per line, '#' starts a comment.
//
//   pred p/1                         declare a predicate symbol
//   const a, b                       declare object constants
//   def La := A(`La`) -> bot         bind a quotation name (may mention itself)
//   def R/1 := H(v0, v0) -> bot      ... of arity 1
//   def RR := instance R(`R`)        bind a name to an instantiated body
//   domain D := {a, b} definite      finite domain, optionally definite
//   extend rt := r over D            total extension of r outside D
//   enable ReleaseAxiom(bot)         header grant for one instance
//   enable ReleaseRule               header grant for every instance
//   hyp 1: p
//   1: p by hyp 1
//   2: p -> q -> p by L1[p, q]
//   3: M({bot}) by Theory MBot[]
//   4: q -> p by MP 1 2
//   5: ... by GenF 4 x | GenE 4 x
//   6: A({bot}) -> bot by Extension ReleaseAxiom[{bot}]
//   7: bot by Extension ReleaseRule 6

#ifndef QUILL_SCRIPT_HPP
#define QUILL_SCRIPT_HPP

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "quill/environment.hpp"
#include "quill/error.hpp"
#include "quill/kernel.hpp"
#include "quill/parser.hpp"
#include "quill/syntax.hpp"

namespace quill {

struct Declaration {
  enum class Kind { Pred, Const, Def, Instance, Domain, Extend };

  Kind kind = Kind::Pred;
  std::string name;          // predicate, constant, quotation name, domain, r~
  std::size_t arity = 0;     // Pred, Def
  Formula body;              // Def
  std::string source;        // Instance: instantiated name; Extend: base predicate
  std::vector<Term> terms;   // Instance arguments, Domain members
  bool definite = false;     // Domain
  std::string over;          // Extend: domain predicate
};

struct Script {
  std::vector<Declaration> declarations;
  Environment env;
  Proof proof;
};

// Applies one declaration to env.
inline void applyDeclaration(Environment& env, const Declaration& d) {
  switch (d.kind) {
    case Declaration::Kind::Pred:
      env.declarePredicate(d.name, d.arity);
      break;
    case Declaration::Kind::Const:
      env.declareConstant(d.name);
      break;
    case Declaration::Kind::Def:
      env.defineName(d.name, d.arity, d.body);
      break;
    case Declaration::Kind::Instance:
      env.defineName(d.name, 0, env.instantiateBody(d.source, d.terms));
      break;
    case Declaration::Kind::Domain:
      env.declareDomain(d.name, d.terms, d.definite);
      break;
    case Declaration::Kind::Extend:
      defineTotalExtension(env, d.name, d.source, d.over);
      break;
  }
}

// -- printing ------------------------------------------------------------------

inline std::string printParam(const Param& p) {
  switch (p.kind) {
    case ParamKind::Formula:
      return toString(p.formula);
    case ParamKind::Term:
      return toString(p.term);
    default:
      return p.name;
  }
}

inline std::string printJustification(const Justification& j) {
  std::ostringstream os;
  switch (j.kind) {
    case Justification::Kind::Hypothesis:
      os << "hyp " << j.first;
      break;
    case Justification::Kind::Scheme: {
      SchemeCategory cat = schemeInfo(j.scheme).category;
      if (cat == SchemeCategory::Theory) os << "Theory ";
      if (cat == SchemeCategory::Extension) os << "Extension ";
      os << schemeName(j.scheme) << '[';
      for (std::size_t i = 0; i < j.params.size(); ++i)
        os << (i ? ", " : "") << printParam(j.params[i]);
      os << ']';
      break;
    }
    case Justification::Kind::ModusPonens:
      os << "MP " << j.first << ' ' << j.second;
      break;
    case Justification::Kind::GenForall:
      os << "GenF " << j.first << ' ' << j.variable;
      break;
    case Justification::Kind::GenExists:
      os << "GenE " << j.first << ' ' << j.variable;
      break;
    case Justification::Kind::ReleaseRule:
      os << "Extension ReleaseRule " << j.first;
      break;
  }
  return os.str();
}

inline std::string printDeclaration(const Declaration& d) {
  std::ostringstream os;
  switch (d.kind) {
    case Declaration::Kind::Pred:
      os << "pred " << d.name << '/' << d.arity;
      break;
    case Declaration::Kind::Const:
      os << "const " << d.name;
      break;
    case Declaration::Kind::Def:
      os << "def " << d.name;
      if (d.arity) os << '/' << d.arity;
      os << " := " << toString(d.body);
      break;
    case Declaration::Kind::Instance:
      os << "def " << d.name << " := instance " << d.source << '(';
      for (std::size_t i = 0; i < d.terms.size(); ++i)
        os << (i ? ", " : "") << toString(d.terms[i]);
      os << ')';
      break;
    case Declaration::Kind::Domain:
      os << "domain " << d.name << " := {";
      for (std::size_t i = 0; i < d.terms.size(); ++i)
        os << (i ? ", " : "") << toString(d.terms[i]);
      os << '}';
      if (d.definite) os << " definite";
      break;
    case Declaration::Kind::Extend:
      os << "extend " << d.name << " := " << d.source << " over " << d.over;
      break;
  }
  return os.str();
}

inline std::string printScript(const Script& s, const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << '\n';
  if (!comments.empty()) os << '\n';
  for (const auto& d : s.declarations) os << printDeclaration(d) << '\n';
  if (!s.declarations.empty()) os << '\n';
  for (const auto& g : s.proof.enabled) {
    os << "enable " << schemeName(g.scheme);
    if (g.instance) os << '(' << toString(*g.instance) << ')';
    os << '\n';
  }
  for (std::size_t i = 0; i < s.proof.hypotheses.size(); ++i)
    os << "hyp " << i + 1 << ": " << toString(s.proof.hypotheses[i]) << '\n';
  if (!s.proof.enabled.empty() || !s.proof.hypotheses.empty()) os << '\n';
  for (std::size_t i = 0; i < s.proof.steps.size(); ++i) {
    const ProofStep& st = s.proof.steps[i];
    os << i + 1 << ": " << toString(st.formula) << " by " << printJustification(st.by) << '\n';
  }
  return os.str();
}

// -- parsing -------------------------------------------------------------------

namespace detail {

inline Param parseParam(Parser& p, ParamKind kind) {
  switch (kind) {
    case ParamKind::Formula:
      return fparam(p.formula());
    case ParamKind::Term:
      return tparam(p.term());
    case ParamKind::Var:
      return vparam(p.identifier());
    case ParamKind::Symbol:
      return sparam(p.identifier());
  }
  return {};
}

inline std::vector<Param> parseParams(Parser& p, SchemeId id) {
  const auto& kinds = schemeInfo(id).params;
  std::vector<Param> out;
  p.expectPunct("[");
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i) p.expectPunct(",");
    out.push_back(parseParam(p, kinds[i]));
  }
  p.expectPunct("]");
  return out;
}

inline SchemeId schemeNamed(Parser& p) {
  Token at = p.peek();
  std::string name = p.next().text;
  auto id = schemeByName(name);
  if (!id) throw ParseError("unknown scheme '" + name + "'", at.line, at.column);
  return *id;
}

inline Justification parseJustification(Parser& p) {
  if (p.acceptWord("hyp")) return byHypothesis(p.number());
  if (p.acceptWord("MP")) {
    std::size_t i = p.number();
    std::size_t j = p.number();
    return byMP(i, j);
  }
  if (p.isWord("GenF") || p.isWord("GenE")) {
    bool universal = p.next().text == "GenF";
    std::size_t i = p.number();
    return byGen(universal, i, p.identifier());
  }
  if (p.acceptWord("Theory")) {
    Token at = p.peek();
    SchemeId id = schemeNamed(p);
    if (schemeInfo(id).category != SchemeCategory::Theory)
      throw ParseError("'" + std::string(schemeName(id)) + "' is not a theory scheme", at.line,
                       at.column);
    return byScheme(id, parseParams(p, id));
  }
  if (p.acceptWord("Extension")) {
    Token at = p.peek();
    SchemeId id = schemeNamed(p);
    if (!isExtension(id))
      throw ParseError("'" + std::string(schemeName(id)) + "' is not an extension scheme",
                       at.line, at.column);
    if (id == SchemeId::ReleaseRule) return byReleaseRule(p.number());
    return byScheme(id, parseParams(p, id));
  }
  Token at = p.peek();
  SchemeId id = schemeNamed(p);
  if (!isLogical(id))
    throw ParseError("'" + std::string(schemeName(id)) + "' must be cited as Theory or Extension",
                     at.line, at.column);
  return byScheme(id, parseParams(p, id));
}

inline std::vector<Term> parseTermsUntil(Parser& p, const char* close) {
  std::vector<Term> out;
  if (p.acceptPunct(close)) return out;
  out.push_back(p.term());
  while (p.acceptPunct(",")) out.push_back(p.term());
  p.expectPunct(close);
  return out;
}

}  // namespace detail

// Parses a script, building its environment as declarations are read.
// Throws ParseError (with line and column) or EnvironmentError/SchemeError
// wrapped as ParseError at the offending line.
inline Script parseScript(std::string_view text) {
  Script s;
  std::size_t lineNo = 0;
  std::size_t expectedStep = 1;
  std::size_t start = 0;
  bool inProof = false;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineNo;
    Parser p(tokenize(line, lineNo), s.env);
    if (p.atEnd()) {
      if (end == text.size()) break;
      continue;
    }
    try {
      const Token first = p.peek();
      if (first.kind == Token::Kind::Number) {
        std::size_t n = p.number();
        if (n != expectedStep)
          throw ParseError("expected step " + std::to_string(expectedStep) + ", found " +
                               std::to_string(n),
                           first.line, first.column);
        p.expectPunct(":");
        Formula f = p.formula();
        p.expectWord("by");
        Justification j = detail::parseJustification(p);
        p.expectEnd();
        s.proof.steps.push_back({f, j});
        ++expectedStep;
        inProof = true;
      } else if (p.acceptWord("hyp")) {
        std::size_t n = p.number();
        if (n != s.proof.hypotheses.size() + 1)
          throw ParseError("hypotheses must be numbered consecutively from 1", first.line,
                           first.column);
        p.expectPunct(":");
        s.proof.hypotheses.push_back(p.formula());
        p.expectEnd();
      } else if (p.acceptWord("enable")) {
        Token at = p.peek();
        SchemeId id = detail::schemeNamed(p);
        if (!isExtension(id))
          throw ParseError("only extension schemes can be enabled", at.line, at.column);
        std::optional<Formula> inst;
        if (p.acceptPunct("(")) {
          inst = p.formula();
          p.expectPunct(")");
        }
        p.expectEnd();
        s.proof.enabled.push_back({id, inst});
      } else {
        if (inProof) p.fail("declarations must precede the proof");
        Declaration d;
        if (p.acceptWord("pred")) {
          d.kind = Declaration::Kind::Pred;
          d.name = p.identifier();
          if (p.acceptPunct("/")) d.arity = p.number();
          p.expectEnd();
          applyDeclaration(s.env, d);
          s.declarations.push_back(d);
        } else if (p.acceptWord("const")) {
          do {
            Declaration c;
            c.kind = Declaration::Kind::Const;
            c.name = p.identifier();
            applyDeclaration(s.env, c);
            s.declarations.push_back(c);
          } while (p.acceptPunct(","));
          p.expectEnd();
        } else if (p.acceptWord("def")) {
          d.name = p.identifier();
          if (p.acceptPunct("/")) d.arity = p.number();
          p.expectPunct(":=");
          if (p.acceptWord("instance")) {
            d.kind = Declaration::Kind::Instance;
            d.source = p.identifier();
            p.expectPunct("(");
            d.terms = detail::parseTermsUntil(p, ")");
          } else {
            d.kind = Declaration::Kind::Def;
            p.allowPendingName(d.name);
            d.body = p.formula();
          }
          p.expectEnd();
          applyDeclaration(s.env, d);
          s.declarations.push_back(d);
        } else if (p.acceptWord("domain")) {
          d.kind = Declaration::Kind::Domain;
          d.name = p.identifier();
          p.expectPunct(":=");
          p.expectPunct("{");
          // Bare identifiers in a domain are constants by declaration.
          while (!p.isPunct("}")) {
            if (!d.terms.empty()) p.expectPunct(",");
            if (p.peek().kind == Token::Kind::Ident) {
              std::string c = p.identifier();
              s.env.declareConstant(c);
              d.terms.push_back(constant(c));
            } else {
              d.terms.push_back(p.term());
            }
          }
          p.expectPunct("}");
          d.definite = p.acceptWord("definite");
          p.expectEnd();
          applyDeclaration(s.env, d);
          s.declarations.push_back(d);
        } else if (p.acceptWord("extend")) {
          d.kind = Declaration::Kind::Extend;
          d.name = p.identifier();
          p.expectPunct(":=");
          d.source = p.identifier();
          p.expectWord("over");
          d.over = p.identifier();
          p.expectEnd();
          applyDeclaration(s.env, d);
          s.declarations.push_back(d);
        } else {
          p.fail("expected a declaration, header or step");
        }
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), lineNo, 1);
    }
    if (end == text.size()) break;
  }
  return s;
}

inline Script loadScript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parseScript(buf.str());
}

}  // namespace quill

#endif  // QUILL_SCRIPT_HPP
