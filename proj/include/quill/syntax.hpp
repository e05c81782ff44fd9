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

// Terms and formulas of the object language.
//
// Formulas are immutable trees shared through reference-counted handles.
// Negation and the biconditional are notations, never node kinds:
//
//   ~f      is  f -> bot
//   f <-> g is  (f -> g) & (g -> f)
//
// Quotation comes in two forms. A quote name `n` is an opaque reference to a
// definition in an Environment. A quote literal {f} quotes a formula
// directly; inside a literal, a splice $t(a1,...,an) stands for the formula
// denoted by the outer-level term t applied to outer-level arguments. Splices
// are the only way outer variables reach into a quotation: ordinary
// variables inside a literal belong to the quoted formula itself.

#ifndef QUILL_SYNTAX_HPP
#define QUILL_SYNTAX_HPP

#include <cstddef>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace quill {

struct FormulaNode;

// Handle to an immutable formula node. Copying is cheap.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

  bool valid() const { return node_ != nullptr; }
  const FormulaNode& node() const { return *node_; }
  const FormulaNode* operator->() const { return node_.get(); }
  bool sameNode(const Formula& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<const FormulaNode> node_;
};

struct Term {
  enum class Kind { Var, Const, Quote, Lit };

  Kind kind = Kind::Var;
  std::string name;  // Var, Const, Quote
  Formula quoted;    // Lit

  bool isVar() const { return kind == Kind::Var; }
  bool isQuotation() const { return kind == Kind::Quote || kind == Kind::Lit; }
};

enum class FormulaKind {
  Bot,
  Atom,
  M,
  A,
  T,
  H,
  Sim,
  And,
  Or,
  Implies,
  Forall,
  Exists,
  Splice,
};

struct FormulaNode {
  FormulaKind kind = FormulaKind::Bot;
  std::string symbol;        // predicate of an Atom, bound variable of a quantifier
  std::vector<Term> terms;   // arguments; for Splice, terms[0] is the head
  Formula left;              // And/Or/Implies, quantifier body
  Formula right;             // And/Or/Implies
};

// ---------------------------------------------------------------------------
// Construction

inline Term var(std::string name) { return Term{Term::Kind::Var, std::move(name), {}}; }
inline Term constant(std::string name) { return Term{Term::Kind::Const, std::move(name), {}}; }
inline Term quote(std::string name) { return Term{Term::Kind::Quote, std::move(name), {}}; }
inline Term lit(Formula f) { return Term{Term::Kind::Lit, {}, std::move(f)}; }

namespace detail {

inline Formula make(FormulaKind kind, std::string symbol, std::vector<Term> terms,
                    Formula left = {}, Formula right = {}) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = kind;
  node->symbol = std::move(symbol);
  node->terms = std::move(terms);
  node->left = std::move(left);
  node->right = std::move(right);
  return Formula(std::move(node));
}

}  // namespace detail

inline Formula bot() {
  static const Formula kBot = detail::make(FormulaKind::Bot, {}, {});
  return kBot;
}
inline Formula atom(std::string pred, std::vector<Term> args = {}) {
  return detail::make(FormulaKind::Atom, std::move(pred), std::move(args));
}
inline Formula meaningful(Term t) { return detail::make(FormulaKind::M, {}, {std::move(t)}); }
inline Formula assertible(Term t) { return detail::make(FormulaKind::A, {}, {std::move(t)}); }
inline Formula truth(Term t) { return detail::make(FormulaKind::T, {}, {std::move(t)}); }
inline Formula holds(Term pred, Term obj) {
  return detail::make(FormulaKind::H, {}, {std::move(pred), std::move(obj)});
}
inline Formula sameConcept(Term lhs, Term rhs) {
  return detail::make(FormulaKind::Sim, {}, {std::move(lhs), std::move(rhs)});
}
inline Formula conj(Formula a, Formula b) {
  return detail::make(FormulaKind::And, {}, {}, std::move(a), std::move(b));
}
inline Formula disj(Formula a, Formula b) {
  return detail::make(FormulaKind::Or, {}, {}, std::move(a), std::move(b));
}
inline Formula imp(Formula a, Formula b) {
  return detail::make(FormulaKind::Implies, {}, {}, std::move(a), std::move(b));
}
inline Formula forall(std::string x, Formula body) {
  return detail::make(FormulaKind::Forall, std::move(x), {}, std::move(body));
}
inline Formula exists(std::string x, Formula body) {
  return detail::make(FormulaKind::Exists, std::move(x), {}, std::move(body));
}
inline Formula splice(Term head, std::vector<Term> args = {}) {
  std::vector<Term> terms;
  terms.reserve(args.size() + 1);
  terms.push_back(std::move(head));
  for (auto& a : args) terms.push_back(std::move(a));
  return detail::make(FormulaKind::Splice, {}, std::move(terms));
}
inline Formula neg(Formula f) { return imp(std::move(f), bot()); }
inline Formula iff(const Formula& a, const Formula& b) { return conj(imp(a, b), imp(b, a)); }

// Quote of a formula, M/A/T of a quoted formula.
inline Term q(const Formula& f) { return lit(f); }
inline Formula mOf(const Formula& f) { return meaningful(lit(f)); }
inline Formula aOf(const Formula& f) { return assertible(lit(f)); }

// ---------------------------------------------------------------------------
// Structural equality (exact, no alpha-renaming, no name resolution).

bool operator==(const Formula& a, const Formula& b);

inline bool operator==(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Term::Kind::Lit) return a.quoted == b.quoted;
  return a.name == b.name;
}

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.sameNode(b)) return true;
  if (!a.valid() || !b.valid()) return false;
  const FormulaNode& x = a.node();
  const FormulaNode& y = b.node();
  if (x.kind != y.kind || x.symbol != y.symbol || x.terms != y.terms) return false;
  if (x.left.valid() != y.left.valid() || x.right.valid() != y.right.valid()) return false;
  if (x.left.valid() && !(x.left == y.left)) return false;
  if (x.right.valid() && !(x.right == y.right)) return false;
  return true;
}

inline bool isBinary(FormulaKind k) {
  return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Implies;
}
inline bool isQuantifier(FormulaKind k) {
  return k == FormulaKind::Forall || k == FormulaKind::Exists;
}
inline bool isNegation(const Formula& f) {
  return f->kind == FormulaKind::Implies && f->right->kind == FormulaKind::Bot;
}
// Matches (a -> b) & (b -> a); fills a and b.
inline bool matchIff(const Formula& f, Formula* a, Formula* b) {
  if (f->kind != FormulaKind::And) return false;
  const Formula& l = f->left;
  const Formula& r = f->right;
  if (l->kind != FormulaKind::Implies || r->kind != FormulaKind::Implies) return false;
  if (!(l->left == r->right) || !(l->right == r->left)) return false;
  if (a) *a = l->left;
  if (b) *b = l->right;
  return true;
}

// Rebuild a node with new children and terms.
inline Formula rebuild(const Formula& f, std::vector<Term> terms, Formula left, Formula right) {
  return detail::make(f->kind, f->symbol, std::move(terms), std::move(left), std::move(right));
}

inline std::size_t formulaSize(const Formula& f) {
  std::size_t n = 1;
  for (const Term& t : f->terms)
    if (t.kind == Term::Kind::Lit) n += formulaSize(t.quoted);
  if (f->left.valid()) n += formulaSize(f->left);
  if (f->right.valid()) n += formulaSize(f->right);
  return n;
}

// ---------------------------------------------------------------------------
// Free variables.
//
// A quote literal contributes only the variables its splices refer to; the
// formula under the quotation keeps its own variables to itself.

namespace detail {

inline void termFreeVars(const Term& t, const std::set<std::string>& bound,
                         std::set<std::string>& out);

// Outer-level variables referenced by splices directly inside quoted body q.
inline void spliceRefs(const Formula& q, const std::set<std::string>& bound,
                       std::set<std::string>& out) {
  if (q->kind == FormulaKind::Splice) {
    for (const Term& t : q->terms) termFreeVars(t, bound, out);
    return;
  }
  if (q->left.valid()) spliceRefs(q->left, bound, out);
  if (q->right.valid()) spliceRefs(q->right, bound, out);
}

inline void termFreeVars(const Term& t, const std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Var:
      if (!bound.count(t.name)) out.insert(t.name);
      break;
    case Term::Kind::Lit:
      spliceRefs(t.quoted, bound, out);
      break;
    default:
      break;
  }
}

inline void freeVars(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  for (const Term& t : f->terms) termFreeVars(t, bound, out);
  if (isQuantifier(f->kind)) {
    bool fresh = bound.insert(f->symbol).second;
    freeVars(f->left, bound, out);
    if (fresh) bound.erase(f->symbol);
    return;
  }
  if (f->left.valid()) freeVars(f->left, bound, out);
  if (f->right.valid()) freeVars(f->right, bound, out);
}

}  // namespace detail

inline std::set<std::string> freeVars(const Formula& f) {
  std::set<std::string> bound, out;
  detail::freeVars(f, bound, out);
  return out;
}

inline std::set<std::string> freeVars(const Term& t) {
  std::set<std::string> out;
  detail::termFreeVars(t, {}, out);
  return out;
}

inline bool isFree(const std::string& x, const Formula& f) { return freeVars(f).count(x) > 0; }

// A variable name not in `avoid`, derived from `base`.
inline std::string freshName(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  auto us = stem.rfind('_');
  if (us != std::string::npos && us + 1 < stem.size() &&
      stem.find_first_not_of("0123456789", us + 1) == std::string::npos)
    stem.resize(us);
  for (std::size_t i = 1;; ++i) {
    std::string candidate = stem + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Capture-avoiding substitution f[t/x].

Formula substitute(const Formula& f, const std::string& x, const Term& t);

namespace detail {

inline Formula substituteSplices(const Formula& q, const std::string& x, const Term& t);

inline Term substituteTerm(const Term& s, const std::string& x, const Term& t) {
  switch (s.kind) {
    case Term::Kind::Var:
      return s.name == x ? t : s;
    case Term::Kind::Lit:
      return lit(substituteSplices(s.quoted, x, t));
    default:
      return s;
  }
}

inline std::vector<Term> substituteTerms(const std::vector<Term>& ts, const std::string& x,
                                         const Term& t) {
  std::vector<Term> out;
  out.reserve(ts.size());
  for (const Term& s : ts) out.push_back(substituteTerm(s, x, t));
  return out;
}

// Splices inside a quoted body refer to the enclosing level; binders of the
// quoted body never shadow them.
inline Formula substituteSplices(const Formula& q, const std::string& x, const Term& t) {
  if (q->kind == FormulaKind::Splice) return rebuild(q, substituteTerms(q->terms, x, t), {}, {});
  if (!q->left.valid()) return q;
  Formula l = substituteSplices(q->left, x, t);
  Formula r = q->right.valid() ? substituteSplices(q->right, x, t) : Formula{};
  if (l.sameNode(q->left) && r.sameNode(q->right)) return q;
  return rebuild(q, q->terms, std::move(l), std::move(r));
}

}  // namespace detail

inline Formula substitute(const Formula& f, const std::string& x, const Term& t) {
  if (!isFree(x, f)) return f;
  if (isQuantifier(f->kind)) {
    const std::string& y = f->symbol;
    Formula body = f->left;
    std::string binder = y;
    std::set<std::string> tv = freeVars(t);
    if (tv.count(y)) {
      std::set<std::string> avoid = freeVars(body);
      avoid.insert(tv.begin(), tv.end());
      avoid.insert(x);
      binder = freshName(y, avoid);
      body = substitute(body, y, var(binder));
    }
    Formula nb = substitute(body, x, t);
    return detail::make(f->kind, binder, {}, std::move(nb));
  }
  std::vector<Term> terms = detail::substituteTerms(f->terms, x, t);
  Formula l = f->left.valid() ? substitute(f->left, x, t) : Formula{};
  Formula r = f->right.valid() ? substitute(f->right, x, t) : Formula{};
  return rebuild(f, std::move(terms), std::move(l), std::move(r));
}

// ---------------------------------------------------------------------------
// Printing. The output re-parses to the same tree (given the same symbols).

std::string toString(const Formula& f);

namespace detail {

// Precedence: 0 quantifier / top, 1 <->, 2 ->, 3 |, 4 &, 5 unary and atoms.
inline int precedence(const Formula& f) {
  if (isQuantifier(f->kind)) return 0;
  if (matchIff(f, nullptr, nullptr)) return 1;
  switch (f->kind) {
    case FormulaKind::Implies:
      return isNegation(f) ? 5 : 2;
    case FormulaKind::Or:
      return 3;
    case FormulaKind::And:
      return 4;
    default:
      return 5;
  }
}

inline void print(std::ostream& os, const Formula& f, int need);

inline void print(std::ostream& os, const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      os << t.name;
      break;
    case Term::Kind::Quote:
      os << '`' << t.name << '`';
      break;
    case Term::Kind::Lit:
      os << '{';
      print(os, t.quoted, 0);
      os << '}';
      break;
  }
}

inline void printArgs(std::ostream& os, const std::vector<Term>& ts, std::size_t from) {
  os << '(';
  for (std::size_t i = from; i < ts.size(); ++i) {
    if (i > from) os << ", ";
    print(os, ts[i]);
  }
  os << ')';
}

inline void print(std::ostream& os, const Formula& f, int need) {
  int own = precedence(f);
  bool paren = own < need;
  if (paren) os << '(';
  Formula a, b;
  if (own == 1) {
    matchIff(f, &a, &b);
    print(os, a, 2);
    os << " <-> ";
    print(os, b, 2);
  } else {
    switch (f->kind) {
      case FormulaKind::Bot:
        os << "bot";
        break;
      case FormulaKind::Atom:
        os << f->symbol;
        if (!f->terms.empty()) printArgs(os, f->terms, 0);
        break;
      case FormulaKind::M:
        os << 'M';
        printArgs(os, f->terms, 0);
        break;
      case FormulaKind::A:
        os << 'A';
        printArgs(os, f->terms, 0);
        break;
      case FormulaKind::T:
        os << 'T';
        printArgs(os, f->terms, 0);
        break;
      case FormulaKind::H:
        os << 'H';
        printArgs(os, f->terms, 0);
        break;
      case FormulaKind::Sim:
        os << "sim";
        printArgs(os, f->terms, 0);
        break;
      case FormulaKind::Splice:
        os << '$';
        print(os, f->terms[0]);
        if (f->terms.size() > 1) printArgs(os, f->terms, 1);
        break;
      case FormulaKind::And:
        print(os, f->left, 4);
        os << " & ";
        print(os, f->right, 5);
        break;
      case FormulaKind::Or:
        print(os, f->left, 3);
        os << " | ";
        print(os, f->right, 4);
        break;
      case FormulaKind::Implies:
        if (isNegation(f)) {
          os << '~';
          print(os, f->left, 5);
        } else {
          print(os, f->left, 3);
          os << " -> ";
          print(os, f->right, 2);
        }
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists:
        os << (f->kind == FormulaKind::Forall ? "forall " : "exists ") << f->symbol << ". ";
        print(os, f->left, 0);
        break;
    }
  }
  if (paren) os << ')';
}

}  // namespace detail

inline std::string toString(const Formula& f) {
  std::ostringstream os;
  detail::print(os, f, 0);
  return os.str();
}

inline std::string toString(const Term& t) {
  std::ostringstream os;
  detail::print(os, t);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << toString(f); }
inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << toString(t); }

}  // namespace quill

#endif  // QUILL_SYNTAX_HPP
