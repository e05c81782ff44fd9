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

// Untrusted helper for emitting proofs step by step. Every method appends
// steps whose formulas are computed from the kernel's own scheme functions;
// the result is still re-checked by checkProof before anyone relies on it.
//
// Step counts of the derived combinators:
//   identity 5, lift 2, mpUnder 3, chain 5, andIntro 3, andElim 2,
//   uncurry 10, mp2Under 9, curry 14, permute 12.

#ifndef QUILL_BUILDER_HPP
#define QUILL_BUILDER_HPP

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quill/environment.hpp"
#include "quill/error.hpp"
#include "quill/kernel.hpp"
#include "quill/syntax.hpp"

namespace quill {

class ProofBuilder {
 public:
  explicit ProofBuilder(const Environment& env) : env_(env), eq_(env) {}

  const Environment& env() const { return env_; }
  const Proof& proof() const { return proof_; }
  Proof take() {
    deps_.clear();
    byText_.clear();
    return std::move(proof_);
  }
  std::size_t size() const { return proof_.steps.size(); }

  const Formula& formula(std::size_t i) const {
    if (i < 1 || i > proof_.steps.size()) throw TacticError("no step " + std::to_string(i));
    return proof_.steps[i - 1].formula;
  }

  void enable(ExtensionGrant g) { proof_.enabled.push_back(std::move(g)); }

  // 1-based index of hypothesis f, added if absent.
  std::size_t hypothesisIndex(const Formula& f) {
    for (std::size_t i = 0; i < proof_.hypotheses.size(); ++i)
      if (proof_.hypotheses[i] == f) return i + 1;
    proof_.hypotheses.push_back(f);
    return proof_.hypotheses.size();
  }

  // Appends a step, or returns an earlier step stating the same formula
  // whose hypotheses are among the new step's.
  std::size_t add(Formula f, Justification j, bool reuse = true) {
    std::set<std::size_t> deps;
    auto inherit = [&](std::size_t i) {
      if (i >= 1 && i <= deps_.size()) deps.insert(deps_[i - 1].begin(), deps_[i - 1].end());
    };
    switch (j.kind) {
      case Justification::Kind::Hypothesis:
        deps.insert(j.first);
        break;
      case Justification::Kind::ModusPonens:
        inherit(j.first);
        inherit(j.second);
        break;
      case Justification::Kind::GenForall:
      case Justification::Kind::GenExists:
      case Justification::Kind::ReleaseRule:
        inherit(j.first);
        break;
      case Justification::Kind::Scheme:
        break;
    }
    std::string key = toString(f);
    std::vector<std::size_t>& same = byText_[key];
    if (reuse)
      for (std::size_t c : same)
        if (proof_.steps[c - 1].formula == f &&
            std::includes(deps.begin(), deps.end(), deps_[c - 1].begin(), deps_[c - 1].end()))
          return c;
    proof_.steps.push_back({std::move(f), std::move(j)});
    deps_.push_back(std::move(deps));
    same.push_back(proof_.steps.size());
    return proof_.steps.size();
  }

  std::size_t hyp(const Formula& f) { return add(f, byHypothesis(hypothesisIndex(f))); }

  std::size_t axiom(SchemeId id, std::vector<Param> params) {
    Formula f = theoryScheme(id, params, env_);
    return add(std::move(f), byScheme(id, std::move(params)));
  }

  std::size_t mp(std::size_t minor, std::size_t major) {
    const Formula& m = formula(major);
    if (m->kind != FormulaKind::Implies || !eq_(m->left, formula(minor)))
      throw TacticError("cannot apply step " + std::to_string(major) + " to step " +
                        std::to_string(minor));
    return add(m->right, byMP(minor, major));
  }

  std::size_t gen(bool universal, std::size_t i, const std::string& x) {
    const Formula& f = formula(i);
    if (f->kind != FormulaKind::Implies) throw TacticError("generalisation of a non-implication");
    Formula out = universal ? imp(f->left, forall(x, f->right))
                            : imp(exists(x, f->left), f->right);
    return add(std::move(out), byGen(universal, i, x));
  }

  std::size_t releaseRule(std::size_t i) {
    const Formula& f = formula(i);
    if (f->kind != FormulaKind::A) throw TacticError("release of a non-assertibility statement");
    return add(env_.unquote(f->terms[0]), byReleaseRule(i));
  }

  // Replaces the stated formula of step i by an equivalent one.
  void restate(std::size_t i, const Formula& f) {
    if (!eq_(formula(i), f))
      throw TacticError("cannot restate '" + toString(formula(i)) + "' as '" + toString(f) + "'");
    proof_.steps[i - 1].formula = f;
    byText_[toString(f)].push_back(i);
  }

  // Makes step i the conclusion, repeating it at the end if necessary.
  std::size_t conclude(std::size_t i) {
    if (i == size()) return i;
    ProofStep copy = proof_.steps.at(i - 1);
    return add(copy.formula, copy.by, false);
  }

  // Copies the steps of `sub`, merging its hypotheses and grants; returns
  // the index standing for its last step. A hypothesis of `sub` whose
  // formula is stated by one of the `cuts` steps is replaced by that step.
  std::size_t append(const Proof& sub, const std::vector<std::size_t>& cuts = {}) {
    for (const auto& g : sub.enabled) {
      bool have = false;
      for (const auto& h : proof_.enabled)
        have = have || (h.scheme == g.scheme && h.instance.has_value() == g.instance.has_value() &&
                        (!h.instance || *h.instance == *g.instance));
      if (!have) proof_.enabled.push_back(g);
    }
    std::vector<std::size_t> hypMap, cutMap;
    for (const auto& h : sub.hypotheses) {
      std::size_t cut = 0;
      for (std::size_t c : cuts)
        if (!cut && eq_(formula(c), h)) cut = c;
      cutMap.push_back(cut);
      hypMap.push_back(cut ? 0 : hypothesisIndex(h));
    }
    std::vector<std::size_t> where(sub.steps.size() + 1, 0);
    auto at = [&](std::size_t i) {
      if (i < 1 || i >= where.size() || !where[i]) throw TacticError("append: bad step reference");
      return where[i];
    };
    for (std::size_t k = 1; k <= sub.steps.size(); ++k) {
      const ProofStep& s = sub.steps[k - 1];
      Justification j = s.by;
      switch (j.kind) {
        case Justification::Kind::Hypothesis:
          if (std::size_t c = cutMap.at(j.first - 1)) {
            where[k] = c;
            continue;
          }
          j.first = hypMap.at(j.first - 1);
          break;
        case Justification::Kind::ModusPonens:
          j.first = at(j.first);
          j.second = at(j.second);
          break;
        case Justification::Kind::GenForall:
        case Justification::Kind::GenExists:
        case Justification::Kind::ReleaseRule:
          j.first = at(j.first);
          break;
        case Justification::Kind::Scheme:
          break;
      }
      where[k] = add(s.formula, std::move(j));
    }
    return where[sub.steps.size()];
  }

  // -- derived rules ---------------------------------------------------------

  // a -> a
  std::size_t identity(const Formula& a) {
    Formula aa = imp(a, a);
    std::size_t s1 = axiom(SchemeId::L1, {fparam(a), fparam(aa)});
    std::size_t s2 = axiom(SchemeId::L2, {fparam(a), fparam(aa), fparam(a)});
    std::size_t s3 = mp(s1, s2);
    std::size_t s4 = axiom(SchemeId::L1, {fparam(a), fparam(a)});
    return mp(s4, s3);
  }

  // From x infer h -> x.
  std::size_t lift(std::size_t i, const Formula& h) {
    std::size_t k = axiom(SchemeId::L1, {fparam(formula(i)), fparam(h)});
    return mp(i, k);
  }

  // From h -> a and h -> (a -> b) infer h -> b.
  std::size_t mpUnder(std::size_t ha, std::size_t hab) {
    const Formula& f = formula(hab);
    Formula h, a, b;
    if (!splitImp(f, &h, &a, &b)) throw TacticError("mpUnder: step is not h -> (a -> b)");
    std::size_t k = axiom(SchemeId::L2, {fparam(h), fparam(a), fparam(b)});
    std::size_t m = mp(hab, k);
    return mp(ha, m);
  }

  // From a -> b and b -> c infer a -> c.
  std::size_t chain(std::size_t ab, std::size_t bc) {
    const Formula& f = formula(ab);
    if (f->kind != FormulaKind::Implies) throw TacticError("chain: not an implication");
    std::size_t lifted = lift(bc, f->left);
    return mpUnder(ab, lifted);
  }

  std::size_t andIntro(std::size_t i, std::size_t j) {
    std::size_t k = axiom(SchemeId::L3, {fparam(formula(i)), fparam(formula(j))});
    return mp(j, mp(i, k));
  }

  std::size_t andElim(std::size_t i, bool left) {
    const Formula& f = formula(i);
    if (f->kind != FormulaKind::And) throw TacticError("andElim: not a conjunction");
    std::size_t k =
        axiom(left ? SchemeId::L4 : SchemeId::L5, {fparam(f->left), fparam(f->right)});
    return mp(i, k);
  }

  // From a -> (b -> c) infer a & b -> c.
  std::size_t uncurry(std::size_t i) {
    Formula a, b, c;
    if (!splitImp(formula(i), &a, &b, &c)) throw TacticError("uncurry: not a -> (b -> c)");
    Formula ab = conj(a, b);
    std::size_t l4 = axiom(SchemeId::L4, {fparam(a), fparam(b)});
    std::size_t l5 = axiom(SchemeId::L5, {fparam(a), fparam(b)});
    std::size_t lifted = lift(i, ab);
    std::size_t bc = mpUnder(l4, lifted);
    return mpUnder(l5, bc);
  }

  // From h -> (a -> (x -> c)) and h -> (a -> x) infer h -> (a -> c).
  std::size_t mp2Under(std::size_t haxc, std::size_t hax) {
    Formula h, a, xc;
    if (!splitImp(formula(haxc), &h, &a, &xc) || xc->kind != FormulaKind::Implies)
      throw TacticError("mp2Under: bad shape");
    std::size_t k = axiom(SchemeId::L2, {fparam(a), fparam(xc->left), fparam(xc->right)});
    std::size_t lk = lift(k, h);
    std::size_t m = mpUnder(haxc, lk);
    return mpUnder(hax, m);
  }

  // From a & b -> c infer a -> (b -> c).
  std::size_t curry(std::size_t i) {
    const Formula& f = formula(i);
    if (f->kind != FormulaKind::Implies || f->left->kind != FormulaKind::And)
      throw TacticError("curry: not a & b -> c");
    const Formula& a = f->left->left;
    const Formula& b = f->left->right;
    std::size_t pair = axiom(SchemeId::L3, {fparam(a), fparam(b)});
    std::size_t inner = lift(lift(i, b), a);
    return mp2Under(inner, pair);
  }

  // From a -> (b -> c) infer b -> (a -> c).
  std::size_t permute(std::size_t i) {
    Formula a, b, c;
    if (!splitImp(formula(i), &a, &b, &c)) throw TacticError("permute: not a -> (b -> c)");
    std::size_t inner = lift(i, b);
    std::size_t k = axiom(SchemeId::L1, {fparam(b), fparam(a)});
    return mp2Under(inner, k);
  }

 private:
  static bool splitImp(const Formula& f, Formula* a, Formula* b, Formula* c) {
    if (f->kind != FormulaKind::Implies || f->right->kind != FormulaKind::Implies) return false;
    *a = f->left;
    *b = f->right->left;
    *c = f->right->right;
    return true;
  }

  const Environment& env_;
  Equivalence eq_;
  Proof proof_;
  std::vector<std::set<std::size_t>> deps_;  // per step
  std::unordered_map<std::string, std::vector<std::size_t>> byText_;
};

}  // namespace quill

#endif  // QUILL_BUILDER_HPP
