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

// Symbol table and definitional environment.
//
// A quotation name is bound to a body formula whose free variables are
// exactly the distinguished variables v0..v(n-1) of its arity. Bodies may
// mention their own name; resolution returns the body verbatim and never
// unfolds quotations inside it, so self-reference costs nothing.

#ifndef QUILL_ENVIRONMENT_HPP
#define QUILL_ENVIRONMENT_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quill/error.hpp"
#include "quill/syntax.hpp"

namespace quill {

inline std::string distinguishedVar(std::size_t i) { return "v" + std::to_string(i); }

struct NameDefinition {
  std::string name;
  std::size_t arity = 0;
  Formula body;
};

// A finite range of objects named by a unary predicate symbol.
struct Domain {
  std::string predicate;
  std::vector<Term> members;
  bool definite = false;

  bool contains(const Term& t) const {
    return std::find(members.begin(), members.end(), t) != members.end();
  }
};

// r~ extends r by "bot" outside a definite range.
struct TotalExtension {
  std::string extended;  // r~
  std::string base;      // r
  std::string domain;    // predicate of the definite range
};

class Environment {
 public:
  // -- symbols ------------------------------------------------------------

  void declarePredicate(const std::string& name, std::size_t arity) {
    checkIdentifier(name);
    auto it = predicates_.find(name);
    if (it != predicates_.end() && it->second != arity)
      throw EnvironmentError("predicate '" + name + "' redeclared with arity " +
                             std::to_string(arity) + " (was " + std::to_string(it->second) + ")");
    predicates_[name] = arity;
  }

  void declareConstant(const std::string& name) {
    checkIdentifier(name);
    if (constants_.insert(name).second) universe_.push_back(constant(name));
  }

  bool isConstant(const std::string& name) const { return constants_.count(name) > 0; }
  std::optional<std::size_t> predicateArity(const std::string& name) const {
    auto it = predicates_.find(name);
    if (it == predicates_.end()) return std::nullopt;
    return it->second;
  }
  const std::map<std::string, std::size_t>& predicates() const { return predicates_; }

  // Every declared object constant, in declaration order.
  const std::vector<Term>& universe() const { return universe_; }

  // -- quotation names ----------------------------------------------------

  // Binds `name` to `body`. Rebinding is allowed only with an identical
  // definition. Quotations inside the body must be bound already or be the
  // name itself.
  void defineName(const std::string& name, std::size_t arity, const Formula& body) {
    checkIdentifier(name);
    auto it = names_.find(name);
    if (it != names_.end()) {
      if (it->second.arity == arity && it->second.body == body) return;
      throw EnvironmentError("conflicting definition of quotation name '" + name + "'");
    }
    std::set<std::string> expected;
    for (std::size_t i = 0; i < arity; ++i) expected.insert(distinguishedVar(i));
    std::set<std::string> fv = freeVars(body);
    if (fv != expected) {
      auto list = [](const std::set<std::string>& vs) {
        std::string out;
        for (const auto& v : vs) out += (out.empty() ? "" : ", ") + v;
        return "{" + out + "}";
      };
      throw EnvironmentError("body of '" + name + "/" + std::to_string(arity) +
                             "' must have free variables exactly " + list(expected) +
                             "; found " + list(fv));
    }
    // Tentatively bind so self-mention validates, roll back on failure.
    names_[name] = NameDefinition{name, arity, body};
    try {
      validate(body);
    } catch (...) {
      names_.erase(name);
      throw;
    }
  }

  bool isBound(const std::string& name) const { return names_.count(name) > 0; }

  const NameDefinition& definition(const std::string& name) const {
    auto it = names_.find(name);
    if (it == names_.end()) throw EnvironmentError("unbound quotation name '" + name + "'");
    return it->second;
  }

  const Formula& resolve(const std::string& name) const { return definition(name).body; }

  std::size_t arity(const std::string& name) const { return definition(name).arity; }

  const std::map<std::string, NameDefinition>& names() const { return names_; }

  // Body of `name` with v0..v(n-1) replaced simultaneously by `args`.
  Formula instantiateBody(const std::string& name, const std::vector<Term>& args) const {
    const NameDefinition& def = definition(name);
    if (def.arity != args.size())
      throw EnvironmentError("'" + name + "' has arity " + std::to_string(def.arity) +
                             " but was applied to " + std::to_string(args.size()) +
                             " argument(s)");
    return instantiate(def.body, def.arity, args);
  }

  // -- domains ------------------------------------------------------------

  void declareDomain(const std::string& predicate, std::vector<Term> members, bool definite) {
    declarePredicate(predicate, 1);
    if (members.empty()) throw EnvironmentError("domain '" + predicate + "' is empty");
    for (const Term& m : members) {
      if (m.kind == Term::Kind::Const) {
        declareConstant(m.name);
      } else if (m.kind == Term::Kind::Quote) {
        if (!isBound(m.name))
          throw EnvironmentError("domain '" + predicate + "' lists unbound name `" + m.name + "`");
      } else {
        throw EnvironmentError("domain members must be constants or quotation names");
      }
    }
    if (domains_.count(predicate)) throw EnvironmentError("domain '" + predicate + "' redeclared");
    domains_[predicate] = Domain{predicate, std::move(members), definite};
  }

  const Domain* domain(const std::string& predicate) const {
    auto it = domains_.find(predicate);
    return it == domains_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, Domain>& domains() const { return domains_; }

  // -- total extensions ---------------------------------------------------

  void addTotalExtension(TotalExtension ext) {
    if (totalExtensions_.count(ext.extended))
      throw EnvironmentError("extension '" + ext.extended + "' already defined");
    totalExtensions_[ext.extended] = std::move(ext);
  }
  const TotalExtension* totalExtension(const std::string& extended) const {
    auto it = totalExtensions_.find(extended);
    return it == totalExtensions_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, TotalExtension>& totalExtensions() const { return totalExtensions_; }

  // -- quotation ----------------------------------------------------------

  // The formula a closed quotation term denotes: a name's body, or the
  // quoted literal with its splices filled in.
  Formula unquote(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::Quote:
        return resolve(t.name);
      case Term::Kind::Lit:
        return resolveSplices(t.quoted);
      default:
        throw EnvironmentError("'" + toString(t) + "' is not a quotation");
    }
  }

  // Formula denoted by the splice $head(args), when head is closed.
  Formula unfoldSplice(const Formula& s) const {
    const Term& head = s->terms[0];
    std::vector<Term> args(s->terms.begin() + 1, s->terms.end());
    if (head.kind == Term::Kind::Quote) return instantiateBody(head.name, args);
    if (head.kind == Term::Kind::Lit) {
      Formula inner = unquote(head);
      std::set<std::string> fv = freeVars(inner);
      std::size_t n = args.size();
      for (const auto& v : fv) {
        bool ok = false;
        for (std::size_t i = 0; i < n; ++i) ok = ok || v == distinguishedVar(i);
        if (!ok) throw EnvironmentError("spliced literal has stray free variable " + v);
      }
      return instantiate(inner, n, args);
    }
    throw EnvironmentError("splice head '" + toString(head) + "' is not a closed quotation");
  }

  // Checks that every quotation in f is bound and applied at its arity, and
  // that every predicate symbol is declared with matching arity.
  void validate(const Formula& f, bool insideQuote = false) const {
    switch (f->kind) {
      case FormulaKind::Atom: {
        auto a = predicateArity(f->symbol);
        if (!a) throw EnvironmentError("unknown predicate '" + f->symbol + "'");
        if (*a != f->terms.size())
          throw EnvironmentError("predicate '" + f->symbol + "' expects " + std::to_string(*a) +
                                 " argument(s), got " + std::to_string(f->terms.size()));
        break;
      }
      case FormulaKind::T:
        requireArity(f->terms[0], 0, "T");
        break;
      case FormulaKind::H:
        requireArity(f->terms[0], 1, "H");
        break;
      case FormulaKind::Sim:
        requireArity(f->terms[0], 1, "sim");
        requireArity(f->terms[1], 1, "sim");
        break;
      case FormulaKind::Splice:
        if (!insideQuote) throw EnvironmentError("splice outside a quotation");
        if (f->terms[0].kind == Term::Kind::Quote)
          requireArity(f->terms[0], f->terms.size() - 1, "splice");
        break;
      default:
        break;
    }
    for (const Term& t : f->terms) validateTerm(t);
    if (f->left.valid()) validate(f->left, insideQuote);
    if (f->right.valid()) validate(f->right, insideQuote);
  }

  void validateTerm(const Term& t) const {
    if (t.kind == Term::Kind::Quote) {
      if (!isBound(t.name)) throw EnvironmentError("unbound quotation name `" + t.name + "`");
    } else if (t.kind == Term::Kind::Lit) {
      validate(t.quoted, true);
    }
  }

 private:
  static void checkIdentifier(const std::string& name) {
    if (name.empty()) throw EnvironmentError("empty identifier");
  }

  void requireArity(const Term& t, std::size_t arity, const char* where) const {
    if (t.kind != Term::Kind::Quote) return;
    std::size_t got = this->arity(t.name);
    if (got != arity)
      throw EnvironmentError(std::string(where) + " expects a quotation of arity " +
                             std::to_string(arity) + "; `" + t.name + "` has arity " +
                             std::to_string(got));
  }

  static Formula instantiate(const Formula& body, std::size_t n, const std::vector<Term>& args) {
    bool clash = false;
    for (const Term& a : args) {
      for (const auto& v : freeVars(a))
        for (std::size_t i = 0; i < n; ++i) clash = clash || v == distinguishedVar(i);
    }
    Formula out = body;
    if (!clash) {
      for (std::size_t i = 0; i < n; ++i) out = substitute(out, distinguishedVar(i), args[i]);
      return out;
    }
    // Simultaneous substitution through temporaries.
    std::set<std::string> avoid = freeVars(body);
    for (const Term& a : args) {
      auto fv = freeVars(a);
      avoid.insert(fv.begin(), fv.end());
    }
    std::vector<std::string> temps;
    for (std::size_t i = 0; i < n; ++i) {
      temps.push_back(freshName("t", avoid));
      avoid.insert(temps.back());
      out = substitute(out, distinguishedVar(i), var(temps.back()));
    }
    for (std::size_t i = 0; i < n; ++i) out = substitute(out, temps[i], args[i]);
    return out;
  }

  Formula resolveSplices(const Formula& q) const {
    if (q->kind == FormulaKind::Splice) return unfoldSplice(q);
    if (!q->left.valid()) return q;
    Formula l = resolveSplices(q->left);
    Formula r = q->right.valid() ? resolveSplices(q->right) : Formula{};
    if (l.sameNode(q->left) && r.sameNode(q->right)) return q;
    return rebuild(q, q->terms, std::move(l), std::move(r));
  }

  std::map<std::string, std::size_t> predicates_;
  std::set<std::string> constants_;
  std::vector<Term> universe_;
  std::map<std::string, NameDefinition> names_;
  std::map<std::string, Domain> domains_;
  std::map<std::string, TotalExtension> totalExtensions_;
};

// Alpha-equivalence that also identifies a quotation name with a literal of
// its body, and a splice with the formula it denotes. Unfolding is bounded
// per comparison path, so the relation is total even for self-mentioning
// definitions.
class Equivalence {
 public:
  static constexpr int kDefaultUnfoldBudget = 8;

  explicit Equivalence(const Environment& env, int budget = kDefaultUnfoldBudget)
      : env_(env), budget_(budget) {}

  bool operator()(const Formula& a, const Formula& b) const {
    Scope sa, sb;
    return formula(a, b, sa, sb, budget_);
  }

  bool terms(const Term& a, const Term& b) const {
    Scope sa, sb;
    return term(a, b, sa, sb, budget_);
  }

 private:
  struct Scope {
    std::vector<std::string> binders;
    const Scope* outer = nullptr;  // level that splices in this body refer to
  };

  static std::optional<std::size_t> depth(const Scope& s, const std::string& x) {
    for (std::size_t i = s.binders.size(); i-- > 0;)
      if (s.binders[i] == x) return s.binders.size() - 1 - i;
    return std::nullopt;
  }

  bool term(const Term& a, const Term& b, const Scope& sa, const Scope& sb, int budget) const {
    using K = Term::Kind;
    if (a.kind == K::Var || b.kind == K::Var) {
      if (a.kind != b.kind) return false;
      auto da = depth(sa, a.name);
      auto db = depth(sb, b.name);
      if (da || db) return da == db;
      return a.name == b.name;
    }
    if (a.kind == K::Const || b.kind == K::Const) return a.kind == b.kind && a.name == b.name;
    if (a.kind == K::Quote && b.kind == K::Quote) return a.name == b.name;
    if (a.kind == K::Lit && b.kind == K::Lit) {
      Scope ia{{}, &sa}, ib{{}, &sb};
      return formula(a.quoted, b.quoted, ia, ib, budget);
    }
    if (budget <= 0) return false;
    // One side names a definition, the other quotes a literal.
    const Term& name = a.kind == K::Quote ? a : b;
    const Term& other = a.kind == K::Quote ? b : a;
    const Scope& otherScope = a.kind == K::Quote ? sb : sa;
    if (!env_.isBound(name.name)) return false;
    Scope in{{}, nullptr}, io{{}, &otherScope};
    return formula(env_.resolve(name.name), other.quoted, in, io, budget - 1);
  }

  bool closedIn(const Formula& splice, const Scope* outer) const {
    if (!outer) return true;
    for (const Term& t : splice->terms)
      for (const auto& v : freeVars(t))
        if (depth(*outer, v)) return false;
    return true;
  }

  bool formula(const Formula& a, const Formula& b, Scope& sa, Scope& sb, int budget) const {
    bool spa = a->kind == FormulaKind::Splice;
    bool spb = b->kind == FormulaKind::Splice;
    if (spa || spb) {
      if (spa && spb && sa.outer && sb.outer && a->terms.size() == b->terms.size()) {
        bool same = true;
        for (std::size_t i = 0; same && i < a->terms.size(); ++i)
          same = term(a->terms[i], b->terms[i], *sa.outer, *sb.outer, budget);
        if (same) return true;
      }
      if (budget <= 0) return false;
      const Formula& s = spa ? a : b;
      const Scope* outer = spa ? sa.outer : sb.outer;
      if (!closedIn(s, outer)) return false;
      Formula unfolded;
      try {
        unfolded = env_.unfoldSplice(s);
      } catch (const Error&) {
        return false;
      }
      Scope su{{}, nullptr};
      return spa ? formula(unfolded, b, su, sb, budget - 1)
                 : formula(a, unfolded, sa, su, budget - 1);
    }
    if (a->kind != b->kind) return false;
    if (a->kind == FormulaKind::Atom && a->symbol != b->symbol) return false;
    if (a->terms.size() != b->terms.size()) return false;
    for (std::size_t i = 0; i < a->terms.size(); ++i)
      if (!term(a->terms[i], b->terms[i], sa, sb, budget)) return false;
    if (isQuantifier(a->kind)) {
      sa.binders.push_back(a->symbol);
      sb.binders.push_back(b->symbol);
      bool ok = formula(a->left, b->left, sa, sb, budget);
      sa.binders.pop_back();
      sb.binders.pop_back();
      return ok;
    }
    if (a->left.valid() && !formula(a->left, b->left, sa, sb, budget)) return false;
    if (a->right.valid() && !formula(a->right, b->right, sa, sb, budget)) return false;
    return true;
  }

  const Environment& env_;
  int budget_;
};

}  // namespace quill

#endif  // QUILL_ENVIRONMENT_HPP
