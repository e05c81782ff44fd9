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

// The trusted checker.
//
// A proof is a list of hypotheses and a list of steps; each step states a
// formula and justifies it by a hypothesis, an axiom-scheme instance, or one
// of the rules below. The kernel recomputes every scheme instance from its
// parameters and compares it with the stated formula up to alpha-renaming
// and one-level quotation unfolding (see Equivalence).
//
// Rules:
//   MP i j      from  f  and  f -> g  infer  g
//   GenF i x    from  f -> g  infer  f -> forall x. g      (x not free in f)
//   GenE i x    from  g -> f  infer  (exists x. g) -> f    (x not free in f)
//
// In both generalisation rules x must also be free in no hypothesis the
// premise depends on.
//
// Logical schemes (intuitionistic predicate calculus):
//   L1  f -> (g -> f)
//   L2  (f -> (g -> h)) -> ((f -> g) -> (f -> h))
//   L3  f -> (g -> f & g)
//   L4  f & g -> f
//   L5  f & g -> g
//   L6  f -> f | g
//   L7  g -> f | g
//   L8  (f -> h) -> ((g -> h) -> (f | g -> h))
//   L9  bot -> f
//   L10 (forall x. f) -> f[t/x]
//   L11 f[t/x] -> exists x. f
//
// Theory schemes take quotation terms a, b (denoting formulas f, g):
//   MComp1..4     M(a) & M(b) -> M{f&g} -> M{f|g} -> M{f->g} -> M(a) & M(b)
//   MQuant1..3    M(a) -> M{forall x.f} -> M{exists x.f} -> M(a)
//   MBot          M{bot}
//   MofM, MofA    M{M(a)},  M{A(a)}
//   ALog          M(a) -> A(a)                 when f is an L1..L11 instance
//   AMP           A(a) & A{f->g} -> A(b)
//   AGenForall    A{f->g} -> A{f -> forall x.g}   (x not free in f)
//   AGenExists    A{g->f} -> A{(exists x.g) -> f} (x not free in f)
//   AtoM          A(a) -> M(a)
//   ForallCapture A{f[c1/x]} & ... & A{f[cn/x]} -> A{forall x. D(x) -> f}
//                 for a declared finite domain D = {c1..cn}
//   Capture       M(a) -> (f -> A(a))
//   TDef          M(a) -> A{T(a) <-> f}
//   TNeg          ~M(a) -> A{~T(a)}
//   HDef          M{p(c)} -> A{H(p,c) <-> p(c)}   for a unary quotation p
//   HNeg          ~M{p(c)} -> A{~H(p,c)}
//   SimDef        M(p) & M(q) -> A{sim(p,q) <-> T{forall x. p(x) <-> q(x)}}
//   DefiniteEM    D(c) | ~D(c)                    for a definite domain D
//   TotalExtPos   D(c) -> (r~(c) <-> r(c))
//   TotalExtNeg   ~D(c) -> (r~(c) <-> bot)
//   TotalExtM     M{r~(c)}
//
// Extensions, usable only when the proof header enables them:
//   ReleaseAxiom  A(a) -> f
//   UnrestrictedT T(a) <-> f
//   ReleaseRule   from a hypothesis-free A(a) infer f

#ifndef QUILL_KERNEL_HPP
#define QUILL_KERNEL_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quill/environment.hpp"
#include "quill/error.hpp"
#include "quill/syntax.hpp"

namespace quill {

enum class SchemeId {
  L1, L2, L3, L4, L5, L6, L7, L8, L9, L10, L11,
  MComp1, MComp2, MComp3, MComp4,
  MQuant1, MQuant2, MQuant3,
  MBot, MofM, MofA,
  ALog, AMP, AGenForall, AGenExists, AtoM,
  ForallCapture, Capture, TDef, TNeg, HDef, HNeg, SimDef,
  DefiniteEM, TotalExtPos, TotalExtNeg, TotalExtM,
  ReleaseAxiom, ReleaseRule, UnrestrictedT,
};

enum class SchemeCategory { Logical, Theory, Extension };

// Kinds of scheme parameters: a formula, a closed quotation or object term,
// a variable, or a predicate symbol naming a domain or extension.
enum class ParamKind { Formula, Term, Var, Symbol };

struct SchemeInfo {
  SchemeId id;
  std::string_view name;
  SchemeCategory category;
  std::vector<ParamKind> params;
};

inline const std::vector<SchemeInfo>& schemeCatalog() {
  using P = ParamKind;
  using C = SchemeCategory;
  static const std::vector<SchemeInfo> kCatalog = {
      {SchemeId::L1, "L1", C::Logical, {P::Formula, P::Formula}},
      {SchemeId::L2, "L2", C::Logical, {P::Formula, P::Formula, P::Formula}},
      {SchemeId::L3, "L3", C::Logical, {P::Formula, P::Formula}},
      {SchemeId::L4, "L4", C::Logical, {P::Formula, P::Formula}},
      {SchemeId::L5, "L5", C::Logical, {P::Formula, P::Formula}},
      {SchemeId::L6, "L6", C::Logical, {P::Formula, P::Formula}},
      {SchemeId::L7, "L7", C::Logical, {P::Formula, P::Formula}},
      {SchemeId::L8, "L8", C::Logical, {P::Formula, P::Formula, P::Formula}},
      {SchemeId::L9, "L9", C::Logical, {P::Formula}},
      {SchemeId::L10, "L10", C::Logical, {P::Formula, P::Var, P::Term}},
      {SchemeId::L11, "L11", C::Logical, {P::Formula, P::Var, P::Term}},
      {SchemeId::MComp1, "MComp1", C::Theory, {P::Term, P::Term}},
      {SchemeId::MComp2, "MComp2", C::Theory, {P::Term, P::Term}},
      {SchemeId::MComp3, "MComp3", C::Theory, {P::Term, P::Term}},
      {SchemeId::MComp4, "MComp4", C::Theory, {P::Term, P::Term}},
      {SchemeId::MQuant1, "MQuant1", C::Theory, {P::Term, P::Var}},
      {SchemeId::MQuant2, "MQuant2", C::Theory, {P::Term, P::Var}},
      {SchemeId::MQuant3, "MQuant3", C::Theory, {P::Term, P::Var}},
      {SchemeId::MBot, "MBot", C::Theory, {}},
      {SchemeId::MofM, "MofM", C::Theory, {P::Term}},
      {SchemeId::MofA, "MofA", C::Theory, {P::Term}},
      {SchemeId::ALog, "ALog", C::Theory, {P::Term}},
      {SchemeId::AMP, "AMP", C::Theory, {P::Term, P::Term}},
      {SchemeId::AGenForall, "AGenForall", C::Theory, {P::Term, P::Term, P::Var}},
      {SchemeId::AGenExists, "AGenExists", C::Theory, {P::Term, P::Term, P::Var}},
      {SchemeId::AtoM, "AtoM", C::Theory, {P::Term}},
      {SchemeId::ForallCapture, "ForallCapture", C::Theory, {P::Symbol, P::Var, P::Term}},
      {SchemeId::Capture, "Capture", C::Theory, {P::Term}},
      {SchemeId::TDef, "TDef", C::Theory, {P::Term}},
      {SchemeId::TNeg, "TNeg", C::Theory, {P::Term}},
      {SchemeId::HDef, "HDef", C::Theory, {P::Term, P::Term}},
      {SchemeId::HNeg, "HNeg", C::Theory, {P::Term, P::Term}},
      {SchemeId::SimDef, "SimDef", C::Theory, {P::Term, P::Term}},
      {SchemeId::DefiniteEM, "DefiniteEM", C::Theory, {P::Symbol, P::Term}},
      {SchemeId::TotalExtPos, "TotalExtPos", C::Theory, {P::Symbol, P::Term}},
      {SchemeId::TotalExtNeg, "TotalExtNeg", C::Theory, {P::Symbol, P::Term}},
      {SchemeId::TotalExtM, "TotalExtM", C::Theory, {P::Symbol, P::Term}},
      {SchemeId::ReleaseAxiom, "ReleaseAxiom", C::Extension, {P::Term}},
      {SchemeId::ReleaseRule, "ReleaseRule", C::Extension, {}},
      {SchemeId::UnrestrictedT, "UnrestrictedT", C::Extension, {P::Term}},
  };
  return kCatalog;
}

inline const SchemeInfo& schemeInfo(SchemeId id) {
  return schemeCatalog()[static_cast<std::size_t>(id)];
}
inline std::string_view schemeName(SchemeId id) { return schemeInfo(id).name; }
inline std::optional<SchemeId> schemeByName(std::string_view name) {
  for (const auto& s : schemeCatalog())
    if (s.name == name) return s.id;
  return std::nullopt;
}
inline bool isLogical(SchemeId id) { return schemeInfo(id).category == SchemeCategory::Logical; }
inline bool isExtension(SchemeId id) {
  return schemeInfo(id).category == SchemeCategory::Extension;
}

struct Param {
  ParamKind kind = ParamKind::Formula;
  Formula formula;
  Term term;
  std::string name;  // Var, Symbol
};

inline Param fparam(Formula f) { return Param{ParamKind::Formula, std::move(f), {}, {}}; }
inline Param tparam(Term t) { return Param{ParamKind::Term, {}, std::move(t), {}}; }
inline Param vparam(std::string x) { return Param{ParamKind::Var, {}, {}, std::move(x)}; }
inline Param sparam(std::string s) { return Param{ParamKind::Symbol, {}, {}, std::move(s)}; }

inline bool operator==(const Param& a, const Param& b) {
  return a.kind == b.kind && a.formula == b.formula && a.term == b.term && a.name == b.name;
}

namespace detail {

inline void checkParams(SchemeId id, const std::vector<Param>& params) {
  const SchemeInfo& info = schemeInfo(id);
  if (params.size() != info.params.size())
    throw SchemeError(std::string(info.name) + " expects " + std::to_string(info.params.size()) +
                      " parameter(s), got " + std::to_string(params.size()));
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i].kind != info.params[i])
      throw SchemeError(std::string(info.name) + ": parameter " + std::to_string(i + 1) +
                        " has the wrong kind");
    if (params[i].kind == ParamKind::Formula && !params[i].formula.valid())
      throw SchemeError(std::string(info.name) + ": missing formula parameter");
  }
}

// A closed quotation term and the formula it denotes.
struct Quoted {
  Term term;
  Formula formula;
};

inline Quoted quoted(const Environment& env, const Param& p, std::string_view scheme) {
  const Term& t = p.term;
  if (!t.isQuotation())
    throw SchemeError(std::string(scheme) + ": '" + toString(t) + "' is not a quotation");
  if (!freeVars(t).empty())
    throw SchemeError(std::string(scheme) + ": quotation '" + toString(t) +
                      "' has free variables");
  env.validateTerm(t);
  return Quoted{t, env.unquote(t)};
}

// As quoted(), additionally requiring a sentence (no free variables).
inline Quoted sentence(const Environment& env, const Param& p, std::string_view scheme) {
  Quoted qd = quoted(env, p, scheme);
  if (qd.term.kind == Term::Kind::Quote && env.arity(qd.term.name) != 0)
    throw SchemeError(std::string(scheme) + ": `" + qd.term.name + "` is not a sentence");
  if (!freeVars(qd.formula).empty())
    throw SchemeError(std::string(scheme) + ": '" + toString(qd.term) + "' is not a sentence");
  return qd;
}

// A unary predicate quotation and its instance at `arg`.
inline Formula predicateInstance(const Environment& env, const Term& pred, const Term& arg,
                                 std::string_view scheme) {
  if (pred.kind == Term::Kind::Quote) {
    if (env.arity(pred.name) != 1)
      throw SchemeError(std::string(scheme) + ": `" + pred.name +
                        "` must be a unary predicate (arity 1)");
    return env.instantiateBody(pred.name, {arg});
  }
  if (pred.kind == Term::Kind::Lit) {
    Formula body = env.unquote(pred);
    std::set<std::string> fv = freeVars(body);
    if (fv != std::set<std::string>{distinguishedVar(0)})
      throw SchemeError(std::string(scheme) + ": predicate literal must have exactly v0 free");
    return substitute(body, distinguishedVar(0), arg);
  }
  throw SchemeError(std::string(scheme) + ": '" + toString(pred) + "' is not a quotation");
}

inline Term closedObject(const Environment& env, const Param& p, std::string_view scheme) {
  if (!freeVars(p.term).empty())
    throw SchemeError(std::string(scheme) + ": object '" + toString(p.term) +
                      "' has free variables");
  env.validateTerm(p.term);
  return p.term;
}

inline std::vector<Term> objectUniverse(const Environment& env) {
  std::vector<Term> out = env.universe();
  for (const auto& [_, d] : env.domains())
    for (const Term& m : d.members)
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  return out;
}

inline const Domain& definiteDomain(const Environment& env, const std::string& pred,
                                    std::string_view scheme) {
  const Domain* d = env.domain(pred);
  if (!d) throw SchemeError(std::string(scheme) + ": '" + pred + "' is not a declared domain");
  if (!d->definite)
    throw SchemeError(std::string(scheme) + ": domain '" + pred +
                      "' is not declared definite, so excluded middle for it is unavailable");
  return *d;
}

inline Term universeMember(const Environment& env, const Param& p, std::string_view scheme) {
  auto u = objectUniverse(env);
  if (std::find(u.begin(), u.end(), p.term) == u.end())
    throw SchemeError(std::string(scheme) + ": '" + toString(p.term) +
                      "' is not an object of the declared universe");
  return p.term;
}

}  // namespace detail

// -- logical schemes ---------------------------------------------------------

inline Formula logicalScheme(SchemeId id, const std::vector<Param>& params) {
  if (!isLogical(id)) throw SchemeError(std::string(schemeName(id)) + " is not a logical scheme");
  detail::checkParams(id, params);
  auto f = [&](std::size_t i) { return params[i].formula; };
  switch (id) {
    case SchemeId::L1:
      return imp(f(0), imp(f(1), f(0)));
    case SchemeId::L2:
      return imp(imp(f(0), imp(f(1), f(2))), imp(imp(f(0), f(1)), imp(f(0), f(2))));
    case SchemeId::L3:
      return imp(f(0), imp(f(1), conj(f(0), f(1))));
    case SchemeId::L4:
      return imp(conj(f(0), f(1)), f(0));
    case SchemeId::L5:
      return imp(conj(f(0), f(1)), f(1));
    case SchemeId::L6:
      return imp(f(0), disj(f(0), f(1)));
    case SchemeId::L7:
      return imp(f(1), disj(f(0), f(1)));
    case SchemeId::L8:
      return imp(imp(f(0), f(2)), imp(imp(f(1), f(2)), imp(disj(f(0), f(1)), f(2))));
    case SchemeId::L9:
      return imp(bot(), f(0));
    case SchemeId::L10:
      return imp(forall(params[1].name, f(0)), substitute(f(0), params[1].name, params[2].term));
    case SchemeId::L11:
      return imp(substitute(f(0), params[1].name, params[2].term), exists(params[1].name, f(0)));
    default:
      break;
  }
  throw SchemeError("unreachable logical scheme");
}

// -- recognising logical axioms ----------------------------------------------

struct LogMatch {
  SchemeId scheme;
  std::vector<Param> params;
};

namespace detail {

inline std::optional<Term> termWitness(const Term& pattern, const Term& target,
                                       const std::string& x);

inline std::optional<Term> spliceWitness(const Formula& p, const Formula& t, const std::string& x) {
  if (p->kind != t->kind || p->terms.size() != t->terms.size()) return std::nullopt;
  if (p->kind == FormulaKind::Splice) {
    for (std::size_t i = 0; i < p->terms.size(); ++i)
      if (auto w = termWitness(p->terms[i], t->terms[i], x)) return w;
    return std::nullopt;
  }
  if (p->left.valid())
    if (auto w = spliceWitness(p->left, t->left, x)) return w;
  if (p->right.valid())
    if (auto w = spliceWitness(p->right, t->right, x)) return w;
  return std::nullopt;
}

inline std::optional<Term> termWitness(const Term& pattern, const Term& target,
                                       const std::string& x) {
  if (pattern.kind == Term::Kind::Var && pattern.name == x) return target;
  if (pattern.kind == Term::Kind::Lit && target.kind == Term::Kind::Lit)
    return spliceWitness(pattern.quoted, target.quoted, x);
  return std::nullopt;
}

// First term t such that pattern[t/x] may equal target, found by walking
// both trees in parallel.
inline std::optional<Term> findWitness(const Formula& pattern, const Formula& target,
                                       const std::string& x) {
  if (pattern->kind != target->kind || pattern->terms.size() != target->terms.size())
    return std::nullopt;
  for (std::size_t i = 0; i < pattern->terms.size(); ++i)
    if (auto w = termWitness(pattern->terms[i], target->terms[i], x)) return w;
  if (isQuantifier(pattern->kind) && pattern->symbol == x) return std::nullopt;
  if (pattern->left.valid())
    if (auto w = findWitness(pattern->left, target->left, x)) return w;
  if (pattern->right.valid())
    if (auto w = findWitness(pattern->right, target->right, x)) return w;
  return std::nullopt;
}

inline bool is(const Formula& f, FormulaKind k) { return f->kind == k; }

}  // namespace detail

// Decomposes f as an instance of one of L1..L11, or returns nullopt.
inline std::optional<LogMatch> isLogInstance(const Formula& f, const Environment& env) {
  using detail::is;
  using K = FormulaKind;
  Equivalence eq(env);
  if (!is(f, K::Implies)) return std::nullopt;
  const Formula& p = f->left;
  const Formula& q = f->right;
  // Ex falso first: it is the most specific reading when several apply.
  if (is(p, K::Bot)) return LogMatch{SchemeId::L9, {fparam(q)}};
  // L1
  if (is(q, K::Implies) && eq(q->right, p))
    return LogMatch{SchemeId::L1, {fparam(p), fparam(q->left)}};
  // L2
  if (is(p, K::Implies) && is(p->right, K::Implies) && is(q, K::Implies) &&
      is(q->left, K::Implies) && is(q->right, K::Implies)) {
    const Formula& a = p->left;
    const Formula& b = p->right->left;
    const Formula& c = p->right->right;
    if (eq(q->left->left, a) && eq(q->left->right, b) && eq(q->right->left, a) &&
        eq(q->right->right, c))
      return LogMatch{SchemeId::L2, {fparam(a), fparam(b), fparam(c)}};
  }
  // L3
  if (is(q, K::Implies) && is(q->right, K::And) && eq(q->right->left, p) &&
      eq(q->right->right, q->left))
    return LogMatch{SchemeId::L3, {fparam(p), fparam(q->left)}};
  // L4, L5
  if (is(p, K::And)) {
    if (eq(q, p->left)) return LogMatch{SchemeId::L4, {fparam(p->left), fparam(p->right)}};
    if (eq(q, p->right)) return LogMatch{SchemeId::L5, {fparam(p->left), fparam(p->right)}};
  }
  // L6, L7
  if (is(q, K::Or)) {
    if (eq(q->left, p)) return LogMatch{SchemeId::L6, {fparam(q->left), fparam(q->right)}};
    if (eq(q->right, p)) return LogMatch{SchemeId::L7, {fparam(q->left), fparam(q->right)}};
  }
  // L8
  if (is(p, K::Implies) && is(q, K::Implies) && is(q->left, K::Implies) &&
      is(q->right, K::Implies) && is(q->right->left, K::Or)) {
    const Formula& a = p->left;
    const Formula& c = p->right;
    const Formula& b = q->left->left;
    const Formula& o = q->right->left;
    if (eq(q->left->right, c) && eq(o->left, a) && eq(o->right, b) && eq(q->right->right, c))
      return LogMatch{SchemeId::L8, {fparam(a), fparam(b), fparam(c)}};
  }
  // L10
  if (is(p, K::Forall)) {
    const std::string& x = p->symbol;
    Term t = detail::findWitness(p->left, q, x).value_or(var(x));
    if (eq(substitute(p->left, x, t), q))
      return LogMatch{SchemeId::L10, {fparam(p->left), vparam(x), tparam(t)}};
  }
  // L11
  if (is(q, K::Exists)) {
    const std::string& x = q->symbol;
    Term t = detail::findWitness(q->left, p, x).value_or(var(x));
    if (eq(substitute(q->left, x, t), p))
      return LogMatch{SchemeId::L11, {fparam(q->left), vparam(x), tparam(t)}};
  }
  return std::nullopt;
}

// -- theory and extension schemes ---------------------------------------------

inline Formula theoryScheme(SchemeId id, const std::vector<Param>& params, const Environment& env) {
  if (isLogical(id)) return logicalScheme(id, params);
  if (id == SchemeId::ReleaseRule) throw SchemeError("ReleaseRule is a rule, not an axiom");
  detail::checkParams(id, params);
  const std::string name(schemeName(id));
  auto Q = [&](std::size_t i) { return detail::quoted(env, params[i], name); };
  auto S = [&](std::size_t i) { return detail::sentence(env, params[i], name); };

  switch (id) {
    case SchemeId::MComp1:
    case SchemeId::MComp2:
    case SchemeId::MComp3:
    case SchemeId::MComp4: {
      auto a = Q(0), b = Q(1);
      Formula both = conj(meaningful(a.term), meaningful(b.term));
      Formula mAnd = mOf(conj(a.formula, b.formula));
      Formula mOr = mOf(disj(a.formula, b.formula));
      Formula mImp = mOf(imp(a.formula, b.formula));
      if (id == SchemeId::MComp1) return imp(both, mAnd);
      if (id == SchemeId::MComp2) return imp(mAnd, mOr);
      if (id == SchemeId::MComp3) return imp(mOr, mImp);
      return imp(mImp, both);
    }
    case SchemeId::MQuant1:
    case SchemeId::MQuant2:
    case SchemeId::MQuant3: {
      auto a = Q(0);
      const std::string& x = params[1].name;
      Formula mAll = mOf(forall(x, a.formula));
      Formula mEx = mOf(exists(x, a.formula));
      if (id == SchemeId::MQuant1) return imp(meaningful(a.term), mAll);
      if (id == SchemeId::MQuant2) return imp(mAll, mEx);
      return imp(mEx, meaningful(a.term));
    }
    case SchemeId::MBot:
      return mOf(bot());
    case SchemeId::MofM:
      return mOf(meaningful(Q(0).term));
    case SchemeId::MofA:
      return mOf(assertible(Q(0).term));
    case SchemeId::ALog: {
      auto a = Q(0);
      if (!isLogInstance(a.formula, env))
        throw SchemeError("ALog: '" + toString(a.formula) +
                          "' is not an instance of a logical scheme L1..L11");
      return imp(meaningful(a.term), assertible(a.term));
    }
    case SchemeId::AMP: {
      auto a = Q(0), b = Q(1);
      return imp(conj(assertible(a.term), aOf(imp(a.formula, b.formula))), assertible(b.term));
    }
    case SchemeId::AGenForall: {
      auto a = Q(0), b = Q(1);
      const std::string& x = params[2].name;
      if (isFree(x, a.formula))
        throw SchemeError("AGenForall: variable " + x + " occurs free in the antecedent");
      return imp(aOf(imp(a.formula, b.formula)), aOf(imp(a.formula, forall(x, b.formula))));
    }
    case SchemeId::AGenExists: {
      auto a = Q(0), b = Q(1);
      const std::string& x = params[2].name;
      if (isFree(x, b.formula))
        throw SchemeError("AGenExists: variable " + x + " occurs free in the consequent");
      return imp(aOf(imp(a.formula, b.formula)), aOf(imp(exists(x, a.formula), b.formula)));
    }
    case SchemeId::AtoM: {
      auto a = Q(0);
      return imp(assertible(a.term), meaningful(a.term));
    }
    case SchemeId::ForallCapture: {
      const std::string& pred = params[0].name;
      const Domain* d = env.domain(pred);
      if (!d)
        throw SchemeError("ForallCapture: '" + pred +
                          "' is not a declared finite domain, so it is not known to be a set");
      const std::string& x = params[1].name;
      auto a = Q(2);
      Formula premises;
      for (const Term& c : d->members) {
        Formula inst = aOf(substitute(a.formula, x, c));
        premises = premises.valid() ? conj(premises, inst) : inst;
      }
      return imp(premises, aOf(forall(x, imp(atom(pred, {var(x)}), a.formula))));
    }
    case SchemeId::Capture: {
      auto a = S(0);
      return imp(meaningful(a.term), imp(a.formula, assertible(a.term)));
    }
    case SchemeId::TDef: {
      auto a = S(0);
      return imp(meaningful(a.term), aOf(iff(truth(a.term), a.formula)));
    }
    case SchemeId::TNeg: {
      auto a = S(0);
      return imp(neg(meaningful(a.term)), aOf(neg(truth(a.term))));
    }
    case SchemeId::HDef:
    case SchemeId::HNeg: {
      auto p = Q(0);
      Term c = detail::closedObject(env, params[1], name);
      Formula inst = detail::predicateInstance(env, p.term, c, name);
      if (id == SchemeId::HDef) return imp(mOf(inst), aOf(iff(holds(p.term, c), inst)));
      return imp(neg(mOf(inst)), aOf(neg(holds(p.term, c))));
    }
    case SchemeId::SimDef: {
      auto p = Q(0), r = Q(1);
      Formula fx = detail::predicateInstance(env, p.term, var("x"), name);
      Formula gx = detail::predicateInstance(env, r.term, var("x"), name);
      Formula body = forall("x", iff(fx, gx));
      return imp(conj(meaningful(p.term), meaningful(r.term)),
                 aOf(iff(sameConcept(p.term, r.term), truth(lit(body)))));
    }
    case SchemeId::DefiniteEM: {
      const Domain& d = detail::definiteDomain(env, params[0].name, name);
      Term c = detail::universeMember(env, params[1], name);
      Formula in = atom(d.predicate, {c});
      return disj(in, neg(in));
    }
    case SchemeId::TotalExtPos:
    case SchemeId::TotalExtNeg:
    case SchemeId::TotalExtM: {
      const TotalExtension* ext = env.totalExtension(params[0].name);
      if (!ext) throw SchemeError(name + ": '" + params[0].name + "' is not a total extension");
      const Domain& d = detail::definiteDomain(env, ext->domain, name);
      Term c = detail::universeMember(env, params[1], name);
      Formula in = atom(d.predicate, {c});
      Formula extended = atom(ext->extended, {c});
      if (id == SchemeId::TotalExtPos) return imp(in, iff(extended, atom(ext->base, {c})));
      if (id == SchemeId::TotalExtNeg) return imp(neg(in), iff(extended, bot()));
      return mOf(extended);
    }
    case SchemeId::ReleaseAxiom: {
      auto a = Q(0);
      return imp(assertible(a.term), a.formula);
    }
    case SchemeId::UnrestrictedT: {
      auto a = S(0);
      return iff(truth(a.term), a.formula);
    }
    default:
      break;
  }
  throw SchemeError("unreachable theory scheme " + name);
}

// Registers r~, the extension of unary r by "bot" outside the definite range
// `domain`, and returns the instances it makes available for each object of
// the universe.
inline std::vector<Formula> defineTotalExtension(Environment& env, const std::string& extended,
                                                 const std::string& base,
                                                 const std::string& domain) {
  auto arity = env.predicateArity(base);
  if (!arity || *arity != 1)
    throw EnvironmentError("'" + base + "' is not a declared unary predicate");
  const Domain* d = env.domain(domain);
  if (!d) throw EnvironmentError("'" + domain + "' is not a declared domain");
  if (!d->definite)
    throw EnvironmentError("range '" + domain +
                           "' is not declared definite; without excluded middle for it the "
                           "extension has no definite meaning");
  if (env.predicateArity(extended))
    throw EnvironmentError("'" + extended + "' is already a predicate");
  env.declarePredicate(extended, 1);
  env.addTotalExtension(TotalExtension{extended, base, domain});
  std::vector<Formula> out;
  for (const Term& c : detail::objectUniverse(env)) {
    out.push_back(theoryScheme(SchemeId::DefiniteEM, {sparam(domain), tparam(c)}, env));
    out.push_back(theoryScheme(SchemeId::TotalExtPos, {sparam(extended), tparam(c)}, env));
    out.push_back(theoryScheme(SchemeId::TotalExtNeg, {sparam(extended), tparam(c)}, env));
    out.push_back(theoryScheme(SchemeId::TotalExtM, {sparam(extended), tparam(c)}, env));
  }
  return out;
}

// -- proofs --------------------------------------------------------------------

struct Justification {
  enum class Kind { Hypothesis, Scheme, ModusPonens, GenForall, GenExists, ReleaseRule };

  Kind kind = Kind::Hypothesis;
  SchemeId scheme = SchemeId::L1;
  std::vector<Param> params;
  std::size_t first = 0;   // hypothesis number or premise step (1-based)
  std::size_t second = 0;  // MP major premise
  std::string variable;    // GenForall / GenExists
};

inline Justification byHypothesis(std::size_t k) {
  Justification j;
  j.kind = Justification::Kind::Hypothesis;
  j.first = k;
  return j;
}
inline Justification byScheme(SchemeId id, std::vector<Param> params) {
  Justification j;
  j.kind = Justification::Kind::Scheme;
  j.scheme = id;
  j.params = std::move(params);
  return j;
}
inline Justification byMP(std::size_t minor, std::size_t major) {
  Justification j;
  j.kind = Justification::Kind::ModusPonens;
  j.first = minor;
  j.second = major;
  return j;
}
inline Justification byGen(bool universal, std::size_t premise, std::string x) {
  Justification j;
  j.kind = universal ? Justification::Kind::GenForall : Justification::Kind::GenExists;
  j.first = premise;
  j.variable = std::move(x);
  return j;
}
inline Justification byReleaseRule(std::size_t premise) {
  Justification j;
  j.kind = Justification::Kind::ReleaseRule;
  j.scheme = SchemeId::ReleaseRule;
  j.first = premise;
  return j;
}

struct ProofStep {
  Formula formula;
  Justification by;
};

// Header permission for an extension scheme, optionally for one instance.
struct ExtensionGrant {
  SchemeId scheme;
  std::optional<Formula> instance;
};

struct Proof {
  std::vector<ExtensionGrant> enabled;
  std::vector<Formula> hypotheses;
  std::vector<ProofStep> steps;

  const Formula& conclusion() const { return steps.back().formula; }
};

struct Judgment {
  std::vector<Formula> hypotheses;
  Formula conclusion;
  std::vector<std::string> extensionsUsed;
};

struct StepError {
  std::size_t step = 0;  // 0 for errors not tied to a step
  std::string message;
};

struct CheckResult {
  std::optional<Judgment> judgment;
  std::vector<StepError> errors;

  bool ok() const { return judgment.has_value() && errors.empty(); }
};

struct CheckOptions {
  // When set, header grants for schemes outside this set are inert.
  std::optional<std::set<SchemeId>> allowedExtensions;
};

inline std::string extensionLabel(SchemeId id, const Formula& instance) {
  return std::string(schemeName(id)) + "(" + toString(instance) + ")";
}

namespace detail {

inline const ExtensionGrant* findGrant(const Proof& proof, const CheckOptions& opts,
                                       const Environment& env, SchemeId id,
                                       const Formula& instance) {
  if (opts.allowedExtensions && !opts.allowedExtensions->count(id)) return nullptr;
  Equivalence eq(env);
  for (const ExtensionGrant& g : proof.enabled) {
    if (g.scheme != id) continue;
    if (!g.instance || eq(*g.instance, instance)) return &g;
  }
  return nullptr;
}

}  // namespace detail

// Checks every step; deterministic and total. A judgment is returned only
// when no step has an error.
inline CheckResult checkProof(const Environment& env, const Proof& proof,
                              const CheckOptions& opts = {}) {
  CheckResult result;
  Equivalence eq(env);
  std::set<std::string> used;
  auto error = [&](std::size_t step, std::string msg) {
    result.errors.push_back(StepError{step, std::move(msg)});
  };

  for (std::size_t h = 0; h < proof.hypotheses.size(); ++h) {
    try {
      env.validate(proof.hypotheses[h]);
    } catch (const Error& e) {
      error(0, "hypothesis " + std::to_string(h + 1) + ": " + e.what());
    }
  }
  for (const ExtensionGrant& g : proof.enabled) {
    if (!isExtension(g.scheme))
      error(0, "'" + std::string(schemeName(g.scheme)) + "' is not an extension scheme");
  }
  if (proof.steps.empty()) {
    error(0, "proof has no steps");
    return result;
  }

  // Hypotheses each step depends on, for the generalisation side conditions.
  std::vector<std::set<std::size_t>> deps(proof.steps.size() + 1);

  for (std::size_t k = 1; k <= proof.steps.size(); ++k) {
    const ProofStep& step = proof.steps[k - 1];
    const Justification& by = step.by;
    auto premise = [&](std::size_t i) -> const Formula& {
      if (i < 1 || i >= k)
        throw SchemeError("cited step " + std::to_string(i) + " does not precede step " +
                          std::to_string(k));
      return proof.steps[i - 1].formula;
    };
    auto expect = [&](const Formula& expected) {
      if (!eq(step.formula, expected))
        throw SchemeError("stated formula '" + toString(step.formula) +
                          "' differs from the justified '" + toString(expected) + "'");
    };
    auto genVariableOk = [&](std::size_t i, const std::string& x) {
      for (std::size_t h : deps[i])
        if (isFree(x, proof.hypotheses[h - 1]))
          throw SchemeError("variable " + x + " is free in hypothesis " + std::to_string(h));
    };
    try {
      if (!step.formula.valid()) throw SchemeError("missing formula");
      env.validate(step.formula);
      switch (by.kind) {
        case Justification::Kind::Hypothesis:
          if (by.first < 1 || by.first > proof.hypotheses.size())
            throw SchemeError("no hypothesis " + std::to_string(by.first));
          expect(proof.hypotheses[by.first - 1]);
          deps[k] = {by.first};
          break;
        case Justification::Kind::Scheme: {
          if (by.scheme == SchemeId::ReleaseRule)
            throw SchemeError("ReleaseRule must cite a premise step");
          Formula expected = theoryScheme(by.scheme, by.params, env);
          if (isExtension(by.scheme)) {
            Formula inst = env.unquote(by.params[0].term);
            if (!detail::findGrant(proof, opts, env, by.scheme, inst))
              throw SchemeError("extension not enabled: " + extensionLabel(by.scheme, inst));
            used.insert(extensionLabel(by.scheme, inst));
          }
          expect(expected);
          break;
        }
        case Justification::Kind::ModusPonens: {
          const Formula& minor = premise(by.first);
          const Formula& major = premise(by.second);
          if (major->kind != FormulaKind::Implies)
            throw SchemeError("MP: step " + std::to_string(by.second) + " is not an implication");
          if (!eq(major->left, minor))
            throw SchemeError("MP: antecedent of step " + std::to_string(by.second) +
                              " does not match step " + std::to_string(by.first));
          expect(major->right);
          deps[k] = deps[by.first];
          deps[k].insert(deps[by.second].begin(), deps[by.second].end());
          break;
        }
        case Justification::Kind::GenForall:
        case Justification::Kind::GenExists: {
          bool universal = by.kind == Justification::Kind::GenForall;
          const Formula& pre = premise(by.first);
          const std::string& x = by.variable;
          if (pre->kind != FormulaKind::Implies)
            throw SchemeError("generalisation premise is not an implication");
          const Formula& side = universal ? pre->left : pre->right;
          if (isFree(x, side))
            throw SchemeError("variable " + x + " is free in '" + toString(side) + "'");
          genVariableOk(by.first, x);
          expect(universal ? imp(pre->left, forall(x, pre->right))
                           : imp(exists(x, pre->left), pre->right));
          deps[k] = deps[by.first];
          break;
        }
        case Justification::Kind::ReleaseRule: {
          const Formula& pre = premise(by.first);
          if (pre->kind != FormulaKind::A)
            throw SchemeError("ReleaseRule: premise is not an assertibility statement");
          if (!deps[by.first].empty())
            throw SchemeError("ReleaseRule: premise depends on hypotheses");
          Formula inst = env.unquote(pre->terms[0]);
          if (!detail::findGrant(proof, opts, env, SchemeId::ReleaseRule, inst))
            throw SchemeError("extension not enabled: " +
                              extensionLabel(SchemeId::ReleaseRule, inst));
          used.insert(extensionLabel(SchemeId::ReleaseRule, inst));
          expect(inst);
          break;
        }
      }
    } catch (const Error& e) {
      error(k, e.what());
    }
  }

  if (result.errors.empty()) {
    Judgment j;
    j.hypotheses = proof.hypotheses;
    j.conclusion = proof.conclusion();
    j.extensionsUsed.assign(used.begin(), used.end());
    result.judgment = std::move(j);
  }
  return result;
}

// Hypothesis indices (1-based) each step depends on. Steps are assumed to
// cite only earlier steps; out-of-range citations contribute nothing.
inline std::vector<std::set<std::size_t>> hypothesisDependencies(const Proof& proof) {
  std::vector<std::set<std::size_t>> deps(proof.steps.size() + 1);
  for (std::size_t k = 1; k <= proof.steps.size(); ++k) {
    const Justification& by = proof.steps[k - 1].by;
    auto add = [&](std::size_t i) {
      if (i >= 1 && i < k) deps[k].insert(deps[i].begin(), deps[i].end());
    };
    switch (by.kind) {
      case Justification::Kind::Hypothesis:
        deps[k] = {by.first};
        break;
      case Justification::Kind::ModusPonens:
        add(by.first);
        add(by.second);
        break;
      case Justification::Kind::GenForall:
      case Justification::Kind::GenExists:
      case Justification::Kind::ReleaseRule:
        add(by.first);
        break;
      case Justification::Kind::Scheme:
        break;
    }
  }
  return deps;
}

}  // namespace quill

#endif  // QUILL_KERNEL_HPP
