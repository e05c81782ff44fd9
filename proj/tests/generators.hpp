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

// Random formulas and random valid proofs for property tests.

#ifndef QUILL_TESTS_GENERATORS_HPP
#define QUILL_TESTS_GENERATORS_HPP

#include <algorithm>
#include <cstddef>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quill/environment.hpp"
#include "quill/kernel.hpp"
#include "quill/syntax.hpp"

namespace quill::testgen {

inline std::size_t formulaDepth(const Formula& f) {
  std::size_t d = 0;
  if (f->left.valid()) d = std::max(d, formulaDepth(f->left));
  if (f->right.valid()) d = std::max(d, formulaDepth(f->right));
  return d + 1;
}

// Environment shared by the generators.
inline Environment sampleEnvironment() {
  Environment env;
  for (const char* p : {"p", "q", "r"}) env.declarePredicate(p, 0);
  env.declarePredicate("P", 1);
  env.declarePredicate("Q", 1);
  env.declarePredicate("R", 2);
  env.declareConstant("a");
  env.declareConstant("b");
  env.defineName("La", 0, imp(assertible(quote("La")), bot()));
  env.defineName("L", 0, imp(truth(quote("L")), bot()));
  env.defineName("Pn", 1, atom("P", {var("v0")}));
  return env;
}

// Arbitrary well-formed formulas over sampleEnvironment(), including
// quantifiers, quotation literals and splices.
class FormulaGen {
 public:
  explicit FormulaGen(unsigned seed) : rng_(seed) {}

  Formula formula(int depth) { return gen(depth, 0); }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Term object() {
    static const char* kVars[] = {"x", "y", "z"};
    return pick(3) == 0 ? constant(pick(2) ? "a" : "b") : var(kVars[pick(3)]);
  }

  Term quotation(int depth, int quoteDepth) {
    switch (pick(4)) {
      case 0:
        return quote(pick(2) ? "La" : "L");
      default:
        return lit(gen(std::max(depth - 1, 0), quoteDepth + 1));
    }
  }

  Formula gen(int depth, int quoteDepth) {
    if (depth <= 0 || pick(5) == 0) {
      switch (pick(quoteDepth > 0 ? 9 : 8)) {
        case 0:
          return bot();
        case 1:
          return atom(pick(2) ? "p" : "q");
        case 2:
          return atom("P", {object()});
        case 3:
          return atom("R", {object(), object()});
        case 4:
          return meaningful(quotation(depth, quoteDepth));
        case 5:
          return assertible(quotation(depth, quoteDepth));
        case 6:
          return truth(pick(2) ? quote("L") : lit(atom("r")));
        case 7:
          return holds(quote("Pn"), object());
        default:
          return pick(2) ? splice(var("x")) : splice(quote("Pn"), {object()});
      }
    }
    static const char* kVars[] = {"x", "y", "z"};
    switch (pick(7)) {
      case 0:
        return conj(gen(depth - 1, quoteDepth), gen(depth - 1, quoteDepth));
      case 1:
        return disj(gen(depth - 1, quoteDepth), gen(depth - 1, quoteDepth));
      case 2:
        return imp(gen(depth - 1, quoteDepth), gen(depth - 1, quoteDepth));
      case 3:
        return neg(gen(depth - 1, quoteDepth));
      case 4:
        return iff(gen(depth - 1, quoteDepth), gen(depth - 1, quoteDepth));
      case 5:
        return forall(kVars[pick(3)], gen(depth - 1, quoteDepth));
      default:
        return exists(kVars[pick(3)], gen(depth - 1, quoteDepth));
    }
  }

  std::mt19937 rng_;
};

// Random valid Hilbert proofs. Propositional mode uses atoms p, q, r;
// first-order mode uses P(x), Q(x), p and adds generalisation steps and
// quantifier axioms. Derivation depth (longest chain of rule applications
// above an axiom or hypothesis) is at most maxDepth.
class ProofGen {
 public:
  ProofGen(const Environment& env, unsigned seed, bool firstOrder = false, int maxDepth = 4)
      : env_(env), rng_(seed), firstOrder_(firstOrder), maxDepth_(maxDepth) {}

  // M facts the closure needs for this generator's atoms.
  std::vector<Formula> baseFacts() const {
    std::vector<Formula> out;
    for (const Formula& a : atoms()) out.push_back(mOf(a));
    return out;
  }

  Proof generate(std::size_t minSteps = 3, std::size_t maxSteps = 12, std::size_t maxHyps = 3) {
    for (;;) {
      Proof p = attempt(minSteps, maxSteps, maxHyps);
      if (!p.steps.empty()) return p;
    }
  }

 private:
  std::vector<Formula> atoms() const {
    if (firstOrder_) return {atom("P", {var("x")}), atom("Q", {var("x")}), atom("p")};
    return {atom("p"), atom("q"), atom("r")};
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  Formula small(int depth) {
    auto as = atoms();
    if (depth <= 0 || pick(3) == 0) return pick(8) == 0 ? bot() : as[pick(static_cast<int>(as.size()))];
    switch (pick(3)) {
      case 0:
        return conj(small(depth - 1), small(depth - 1));
      case 1:
        return disj(small(depth - 1), small(depth - 1));
      default:
        return imp(small(depth - 1), small(depth - 1));
    }
  }

  struct State {
    Proof proof;
    std::vector<int> depth;                      // per step
    std::vector<std::set<std::size_t>> deps;     // hypotheses per step
  };

  Formula existingOrSmall(const State& s) {
    if (!s.proof.steps.empty() && pick(2) == 0)
      return s.proof.steps[pick(static_cast<int>(s.proof.steps.size()))].formula;
    return small(1);
  }

  void push(State& s, Formula f, Justification j, int depth, std::set<std::size_t> deps) {
    s.proof.steps.push_back({std::move(f), std::move(j)});
    s.depth.push_back(depth);
    s.deps.push_back(std::move(deps));
  }

  bool tryAxiom(State& s) {
    static const SchemeId kIds[] = {SchemeId::L1, SchemeId::L2, SchemeId::L3, SchemeId::L4,
                                    SchemeId::L5, SchemeId::L6, SchemeId::L7, SchemeId::L8,
                                    SchemeId::L9};
    SchemeId id = kIds[pick(9)];
    if (firstOrder_ && pick(4) == 0) id = pick(2) ? SchemeId::L10 : SchemeId::L11;
    std::vector<Param> ps;
    if (id == SchemeId::L10 || id == SchemeId::L11) {
      ps = {fparam(existingOrSmall(s)), vparam("x"), tparam(var("x"))};
    } else {
      for (std::size_t i = 0; i < schemeInfo(id).params.size(); ++i)
        ps.push_back(fparam(existingOrSmall(s)));
    }
    Formula f = logicalScheme(id, ps);
    if (formulaDepth(f) > 7) return false;
    push(s, f, byScheme(id, ps), 0, {});
    return true;
  }

  bool tryHyp(State& s, std::size_t maxHyps) {
    if (s.proof.hypotheses.size() >= maxHyps) return false;
    Formula f = pick(2) == 0 && !s.proof.steps.empty() ? imp(existingOrSmall(s), small(1))
                                                       : small(2);
    if (firstOrder_ && freeVars(f).count("x") && pick(2) == 0) return false;
    s.proof.hypotheses.push_back(f);
    std::size_t h = s.proof.hypotheses.size();
    push(s, f, byHypothesis(h), 0, {h});
    return true;
  }

  bool tryMP(State& s) {
    Equivalence eq(env_);
    std::vector<std::pair<std::size_t, std::size_t>> cands;
    const auto& st = s.proof.steps;
    for (std::size_t j = 0; j < st.size(); ++j) {
      const Formula& maj = st[j].formula;
      if (maj->kind != FormulaKind::Implies) continue;
      for (std::size_t i = 0; i < st.size(); ++i)
        if (std::max(s.depth[i], s.depth[j]) < maxDepth_ && maj->left == st[i].formula)
          cands.push_back({i + 1, j + 1});
    }
    if (cands.empty()) return false;
    auto [i, j] = cands[pick(static_cast<int>(cands.size()))];
    std::set<std::size_t> d = s.deps[i - 1];
    d.insert(s.deps[j - 1].begin(), s.deps[j - 1].end());
    push(s, st[j - 1].formula->right, byMP(i, j), std::max(s.depth[i - 1], s.depth[j - 1]) + 1,
         d);
    return true;
  }

  bool tryGen(State& s) {
    std::vector<std::pair<std::size_t, bool>> cands;
    const auto& st = s.proof.steps;
    for (std::size_t i = 0; i < st.size(); ++i) {
      const Formula& f = st[i].formula;
      if (f->kind != FormulaKind::Implies || s.depth[i] >= maxDepth_) continue;
      bool hypFree = true;
      for (std::size_t h : s.deps[i]) hypFree = hypFree && !isFree("x", s.proof.hypotheses[h - 1]);
      if (!hypFree) continue;
      if (!isFree("x", f->left)) cands.push_back({i + 1, true});
      if (!isFree("x", f->right)) cands.push_back({i + 1, false});
    }
    if (cands.empty()) return false;
    auto [i, universal] = cands[pick(static_cast<int>(cands.size()))];
    const Formula& f = st[i - 1].formula;
    Formula out = universal ? imp(f->left, forall("x", f->right)) : imp(exists("x", f->left), f->right);
    push(s, out, byGen(universal, i, "x"), s.depth[i - 1] + 1, s.deps[i - 1]);
    return true;
  }

  Proof attempt(std::size_t minSteps, std::size_t maxSteps, std::size_t maxHyps) {
    State s;
    std::size_t target = minSteps + pick(static_cast<int>(maxSteps - minSteps + 1));
    int guard = 0;
    while (s.proof.steps.size() < target && guard++ < 200) {
      int action = pick(firstOrder_ ? 10 : 8);
      if (action < 3) {
        tryMP(s) || tryAxiom(s);
      } else if (action < 6) {
        tryAxiom(s);
      } else if (action < 8) {
        tryHyp(s, maxHyps) || tryAxiom(s);
      } else {
        tryGen(s) || tryMP(s);
      }
    }
    // End on a rule application when one is available.
    if (s.proof.steps.size() < maxSteps + 1) tryMP(s) || (firstOrder_ && tryGen(s));
    if (s.proof.steps.size() < minSteps) return {};
    return s.proof;
  }

  const Environment& env_;
  std::mt19937 rng_;
  bool firstOrder_;
  int maxDepth_;
};

// Per step (1-based; index 0 unused): whether the step depends on an
// extension scheme or the release rule. Such steps are not theorems of the
// base system.
inline std::vector<bool> restsOnExtension(const Proof& proof) {
  std::vector<bool> out(proof.steps.size() + 1, false);
  for (std::size_t i = 1; i <= proof.steps.size(); ++i) {
    const Justification& by = proof.steps[i - 1].by;
    using K = Justification::Kind;
    switch (by.kind) {
      case K::Scheme: out[i] = isExtension(by.scheme); break;
      case K::ReleaseRule: out[i] = true; break;
      case K::ModusPonens: out[i] = out[by.first] || out[by.second]; break;
      case K::GenForall:
      case K::GenExists: out[i] = out[by.first]; break;
      case K::Hypothesis: break;
    }
  }
  return out;
}

}  // namespace quill::testgen

#endif  // QUILL_TESTS_GENERATORS_HPP
