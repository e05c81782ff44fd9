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

// Proof transformers. None of this is trusted: callers re-check the output
// with checkProof.
//
//   deductionTheorem     H + {f} |- g     ~>  H |- f -> g
//   internalize          {f1..fk} |- g    ~>  |- A{f1} & ... & A{fk} -> A{g}
//   meaningfulnessClosure                  ~>  facts |- M{f}

#ifndef QUILL_TACTICS_HPP
#define QUILL_TACTICS_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quill/builder.hpp"
#include "quill/environment.hpp"
#include "quill/error.hpp"
#include "quill/kernel.hpp"
#include "quill/syntax.hpp"

namespace quill {

// -- deduction theorem -----------------------------------------------------------

// Discharges hypothesis `h` (1-based). Steps that do not depend on it are
// copied unchanged; the rest are rewritten under the discharged formula.
inline Proof deductionTheorem(const Environment& env, const Proof& in, std::size_t h) {
  if (h < 1 || h > in.hypotheses.size())
    throw TacticError("no hypothesis " + std::to_string(h) + " to discharge");
  if (in.steps.empty()) throw TacticError("empty proof");
  const Formula phi = in.hypotheses[h - 1];
  const std::size_t n = in.steps.size();

  ProofBuilder b(env);
  for (const auto& g : in.enabled) b.enable(g);
  for (std::size_t i = 0; i < in.hypotheses.size(); ++i)
    if (i + 1 != h) b.hypothesisIndex(in.hypotheses[i]);

  auto deps = hypothesisDependencies(in);
  std::vector<std::size_t> plain(n + 1, 0), under(n + 1, 0);
  auto underOf = [&](std::size_t i) {
    if (!under[i]) under[i] = b.lift(plain[i], phi);
    return under[i];
  };

  for (std::size_t k = 1; k <= n; ++k) {
    const ProofStep& step = in.steps[k - 1];
    Justification j = step.by;
    if (!deps[k].count(h)) {
      switch (j.kind) {
        case Justification::Kind::Hypothesis:
          j.first = b.hypothesisIndex(in.hypotheses.at(j.first - 1));
          break;
        case Justification::Kind::ModusPonens:
          j.first = plain.at(j.first);
          j.second = plain.at(j.second);
          break;
        case Justification::Kind::GenForall:
        case Justification::Kind::GenExists:
        case Justification::Kind::ReleaseRule:
          j.first = plain.at(j.first);
          break;
        case Justification::Kind::Scheme:
          break;
      }
      plain[k] = b.add(step.formula, std::move(j));
      continue;
    }
    switch (j.kind) {
      case Justification::Kind::Hypothesis:
        under[k] = b.identity(phi);
        break;
      case Justification::Kind::ModusPonens:
        under[k] = b.mpUnder(underOf(j.first), underOf(j.second));
        break;
      case Justification::Kind::GenForall:
      case Justification::Kind::GenExists: {
        bool universal = j.kind == Justification::Kind::GenForall;
        if (isFree(j.variable, phi))
          throw TacticError("step " + std::to_string(k) + ": generalises " + j.variable +
                            ", which is free in the discharged hypothesis '" + toString(phi) +
                            "'");
        if (universal) {
          std::size_t u = b.uncurry(under[j.first]);
          std::size_t g = b.gen(true, u, j.variable);
          under[k] = b.curry(g);
        } else {
          std::size_t p = b.permute(under[j.first]);
          std::size_t g = b.gen(false, p, j.variable);
          under[k] = b.permute(g);
        }
        break;
      }
      default:
        throw TacticError("step " + std::to_string(k) +
                          ": release rule applied to a premise that depends on hypotheses");
    }
  }
  b.conclude(underOf(n));
  return b.take();
}

// -- meaningfulness closure ------------------------------------------------------

// Derives M facts syntax-directed. Base facts are hypotheses M(t); compound
// ones are first decomposed (MComp4 for ->, MComp2..4 for & and |, MQuant
// for quantifiers) so their parts are available as well.
class MeaningfulnessClosure {
 public:
  MeaningfulnessClosure(ProofBuilder& b, const std::vector<Formula>& baseFacts)
      : b_(b), eq_(b.env()) {
    for (const Formula& f : baseFacts) {
      if (f->kind != FormulaKind::M || !f->terms[0].isQuotation())
        throw TacticError("base fact '" + toString(f) + "' is not of the form M(quotation)");
      facts_.push_back(Fact{b_.env().unquote(f->terms[0]), f, -1, How::Hyp});
      decompose(facts_.size() - 1);
    }
  }

  // Step proving M{phi}.
  std::size_t prove(const Formula& phi) {
    for (const auto& [f, s] : proved_)
      if (eq_(f, phi)) return s;
    std::size_t s = build(phi);
    proved_.push_back({phi, s});
    return s;
  }

  std::size_t proveTerm(const Term& t) {
    if (!t.isQuotation()) throw TacticError("'" + toString(t) + "' is not a quotation");
    std::size_t s = prove(b_.env().unquote(t));
    return s;
  }

 private:
  enum class How { Hyp, Left, Right, Body };
  struct Fact {
    Formula denoted;
    Formula stated;  // Hyp only
    int parent;
    How how;
  };

  void decompose(std::size_t i) {
    Formula d = facts_[i].denoted;
    if (isBinary(d->kind)) {
      facts_.push_back(Fact{d->left, {}, static_cast<int>(i), How::Left});
      decompose(facts_.size() - 1);
      facts_.push_back(Fact{d->right, {}, static_cast<int>(i), How::Right});
      decompose(facts_.size() - 1);
    } else if (isQuantifier(d->kind)) {
      facts_.push_back(Fact{d->left, {}, static_cast<int>(i), How::Body});
      decompose(facts_.size() - 1);
    }
  }

  std::size_t ax(SchemeId id, std::vector<Param> ps) { return b_.axiom(id, std::move(ps)); }

  // M(a) & M(b) for a fact denoting a binary compound.
  std::size_t pairOf(std::size_t i) {
    auto it = pairs_.find(i);
    if (it != pairs_.end()) return it->second;
    const Formula& d = facts_[i].denoted;
    std::vector<Param> ab = {tparam(q(d->left)), tparam(q(d->right))};
    std::size_t s = emit(i);
    if (d->kind == FormulaKind::And) s = b_.mp(s, ax(SchemeId::MComp2, ab));
    if (d->kind != FormulaKind::Implies) s = b_.mp(s, ax(SchemeId::MComp3, ab));
    s = b_.mp(s, ax(SchemeId::MComp4, ab));
    pairs_[i] = s;
    return s;
  }

  std::size_t emit(std::size_t i) {
    auto it = emitted_.find(i);
    if (it != emitted_.end()) return it->second;
    const Fact& f = facts_[i];
    std::size_t s = 0;
    switch (f.how) {
      case How::Hyp:
        s = b_.hyp(f.stated);
        break;
      case How::Left:
      case How::Right:
        s = b_.andElim(pairOf(f.parent), f.how == How::Left);
        break;
      case How::Body: {
        const Formula& d = facts_[f.parent].denoted;
        std::vector<Param> ps = {tparam(q(d->left)), vparam(d->symbol)};
        s = emit(f.parent);
        if (d->kind == FormulaKind::Forall) s = b_.mp(s, ax(SchemeId::MQuant2, ps));
        s = b_.mp(s, ax(SchemeId::MQuant3, ps));
        break;
      }
    }
    emitted_[i] = s;
    return s;
  }

  std::size_t build(const Formula& phi) {
    for (std::size_t i = 0; i < facts_.size(); ++i)
      if (eq_(facts_[i].denoted, phi)) return emit(i);
    switch (phi->kind) {
      case FormulaKind::Bot:
        return ax(SchemeId::MBot, {});
      case FormulaKind::M:
      case FormulaKind::A:
        if (!phi->terms[0].isQuotation() || !freeVars(phi->terms[0]).empty()) break;
        return ax(phi->kind == FormulaKind::M ? SchemeId::MofM : SchemeId::MofA,
                  {tparam(phi->terms[0])});
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies: {
        std::vector<Param> ab = {tparam(q(phi->left)), tparam(q(phi->right))};
        std::size_t pa = prove(phi->left);
        std::size_t pb = prove(phi->right);
        std::size_t s = b_.mp(b_.andIntro(pa, pb), ax(SchemeId::MComp1, ab));
        if (phi->kind == FormulaKind::And) return s;
        s = b_.mp(s, ax(SchemeId::MComp2, ab));
        if (phi->kind == FormulaKind::Or) return s;
        return b_.mp(s, ax(SchemeId::MComp3, ab));
      }
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        std::vector<Param> ps = {tparam(q(phi->left)), vparam(phi->symbol)};
        std::size_t s = b_.mp(prove(phi->left), ax(SchemeId::MQuant1, ps));
        if (phi->kind == FormulaKind::Forall) return s;
        return b_.mp(s, ax(SchemeId::MQuant2, ps));
      }
      default:
        break;
    }
    throw TacticError("no meaningfulness fact for '" + toString(phi) + "'");
  }

  ProofBuilder& b_;
  Equivalence eq_;
  std::vector<Fact> facts_;
  std::map<std::size_t, std::size_t> emitted_;
  std::map<std::size_t, std::size_t> pairs_;
  std::vector<std::pair<Formula, std::size_t>> proved_;
};

// Proof of M{phi} from the base facts it actually uses.
inline Proof meaningfulnessClosure(const Environment& env, const Formula& phi,
                                   const std::vector<Formula>& baseFacts = {}) {
  ProofBuilder b(env);
  MeaningfulnessClosure mc(b, baseFacts);
  std::size_t s = b.conclude(mc.prove(phi));
  b.restate(s, mOf(phi));
  return b.take();
}

// Proof of M(t) for a closed quotation t.
inline Proof meaningfulnessClosure(const Environment& env, const Term& t,
                                   const std::vector<Formula>& baseFacts = {}) {
  ProofBuilder b(env);
  MeaningfulnessClosure mc(b, baseFacts);
  std::size_t s = b.conclude(mc.proveTerm(t));
  b.restate(s, meaningful(t));
  return b.take();
}

// -- internalization ----------------------------------------------------------------

// The logical axiom instances a proof uses, once each.
inline std::vector<Formula> axiomInstances(const Environment& env, const Proof& p) {
  Equivalence eq(env);
  std::vector<Formula> out;
  for (const ProofStep& s : p.steps) {
    if (s.by.kind != Justification::Kind::Scheme || !isLogical(s.by.scheme)) continue;
    bool seen = false;
    for (const Formula& f : out) seen = seen || eq(f, s.formula);
    if (!seen) out.push_back(s.formula);
  }
  return out;
}

// One M proof per axiom instance of p, each by meaningfulnessClosure.
inline std::vector<Proof> mProofsFor(const Environment& env, const Proof& p,
                                     const std::vector<Formula>& baseFacts) {
  std::vector<Proof> out;
  for (const Formula& a : axiomInstances(env, p))
    out.push_back(meaningfulnessClosure(env, a, baseFacts));
  return out;
}

inline Formula conjoinAssertions(const std::vector<Formula>& fs) {
  Formula c;
  for (const Formula& f : fs) c = c.valid() ? conj(c, aOf(f)) : aOf(f);
  return c;
}

// Simulates the input proof one level up, under A. With hypotheses
// f1..fk the output works under C = A{f1} & ... & A{fk}: each step that
// depends on C is carried as C -> A{g}, the rest as A{g}.
inline Proof internalize(const Environment& env, const Proof& in,
                         const std::vector<Proof>& mProofs) {
  if (in.steps.empty()) throw TacticError("empty proof");
  for (std::size_t k = 1; k <= in.steps.size(); ++k) {
    const Justification& j = in.steps[k - 1].by;
    if ((j.kind == Justification::Kind::Scheme && !isLogical(j.scheme)) ||
        j.kind == Justification::Kind::ReleaseRule)
      throw TacticError("step " + std::to_string(k) + ": " +
                        std::string(schemeName(j.scheme)) +
                        " is not a logical scheme; only L1..L11 and the rules can be internalized");
  }
  Equivalence eq(env);
  const std::size_t n = in.steps.size();
  const std::size_t k = in.hypotheses.size();
  const Formula C = conjoinAssertions(in.hypotheses);

  ProofBuilder b(env);
  std::vector<std::pair<Formula, std::size_t>> mDone;
  auto mStep = [&](const Formula& alpha) -> std::size_t {
    for (const auto& [f, s] : mDone)
      if (eq(f, alpha)) return s;
    Formula want = mOf(alpha);
    for (const Proof& mp : mProofs) {
      if (mp.steps.empty() || !eq(mp.conclusion(), want)) continue;
      std::size_t s = b.append(mp);
      mDone.push_back({alpha, s});
      return s;
    }
    throw TacticError("missing M proof for axiom instance '" + toString(alpha) + "'");
  };

  // C_m -> A{fi}, where C_m conjoins the first m hypotheses.
  std::map<std::size_t, std::size_t> projections;
  std::vector<Formula> prefix(k + 1);
  for (std::size_t m = 1; m <= k; ++m)
    prefix[m] = m == 1 ? aOf(in.hypotheses[0]) : conj(prefix[m - 1], aOf(in.hypotheses[m - 1]));
  std::function<std::size_t(std::size_t, std::size_t)> project = [&](std::size_t m,
                                                                     std::size_t i) {
    if (m == 1) return b.identity(prefix[1]);
    std::vector<Param> ps = {fparam(prefix[m - 1]), fparam(aOf(in.hypotheses[m - 1]))};
    if (i == m) return b.axiom(SchemeId::L5, ps);
    std::size_t s = b.axiom(SchemeId::L4, ps);
    return m - 1 == 1 ? s : b.chain(s, project(m - 1, i));
  };

  // With one hypothesis, a step that is the hypothesis itself is C; it is
  // marked kSelf and only turned into C -> C when nothing cheaper applies.
  constexpr std::size_t kSelf = static_cast<std::size_t>(-1);
  std::size_t selfIdentity = 0;
  std::vector<std::size_t> indep(n + 1, 0), dep(n + 1, 0);
  auto asDep = [&](std::size_t i) {
    if (dep[i] != kSelf) return dep[i];
    if (!selfIdentity) selfIdentity = b.identity(C);
    return selfIdentity;
  };
  auto underC = [&](std::size_t i) { return dep[i] ? asDep(i) : b.lift(indep[i], C); };

  for (std::size_t s = 1; s <= n; ++s) {
    const ProofStep& step = in.steps[s - 1];
    const Justification& j = step.by;
    // A formula already simulated is reused as is.
    std::size_t seen = 0;
    for (std::size_t t = 1; t < s && !seen; ++t)
      if (in.steps[t - 1].formula == step.formula) seen = t;
    if (seen) {
      dep[s] = dep[seen];
      indep[s] = indep[seen];
      continue;
    }
    switch (j.kind) {
      case Justification::Kind::Hypothesis: {
        if (k == 1) {
          dep[s] = kSelf;
          break;
        }
        auto it = projections.find(j.first);
        if (it == projections.end())
          it = projections.emplace(j.first, project(k, j.first)).first;
        dep[s] = it->second;
        break;
      }
      case Justification::Kind::Scheme: {
        std::size_t m = mStep(step.formula);
        indep[s] = b.mp(m, b.axiom(SchemeId::ALog, {tparam(q(step.formula))}));
        break;
      }
      case Justification::Kind::ModusPonens: {
        const Formula& a = in.steps[j.first - 1].formula;
        const Formula& ab = in.steps[j.second - 1].formula;
        Formula x = aOf(a), y = aOf(ab);
        std::size_t amp = b.axiom(SchemeId::AMP, {tparam(q(a)), tparam(q(ab->right))});
        bool di = dep[j.first] != 0, dj = dep[j.second] != 0;
        if (!di && !dj) {
          indep[s] = b.mp(b.andIntro(indep[j.first], indep[j.second]), amp);
          break;
        }
        bool si = dep[j.first] == kSelf, sj = dep[j.second] == kSelf;
        if (sj && !di) {
          // A{a} & C -> Z with A{a} proved outright.
          std::size_t l3 = b.axiom(SchemeId::L3, {fparam(x), fparam(C)});
          dep[s] = b.chain(b.mp(indep[j.first], l3), amp);
          break;
        }
        std::size_t pairC;
        if (si) {
          std::size_t l3 = b.axiom(SchemeId::L3, {fparam(C), fparam(y)});
          pairC = b.mpUnder(dj ? asDep(j.second) : b.lift(indep[j.second], C), l3);
        } else if (di && dj) {
          std::size_t l3 = b.axiom(SchemeId::L3, {fparam(x), fparam(y)});
          std::size_t t = b.mpUnder(asDep(j.first), b.lift(l3, C));
          pairC = b.mpUnder(asDep(j.second), t);
        } else if (dj) {
          std::size_t l3 = b.axiom(SchemeId::L3, {fparam(x), fparam(y)});
          pairC = b.chain(asDep(j.second), b.mp(indep[j.first], l3));
        } else {
          std::size_t l3 = b.axiom(SchemeId::L3, {fparam(x), fparam(y)});
          Formula pair = conj(x, y);
          std::size_t l2 = b.axiom(SchemeId::L2, {fparam(x), fparam(y), fparam(pair)});
          std::size_t m1 = b.mp(l3, l2);
          std::size_t xp = b.mp(b.lift(indep[j.second], x), m1);
          pairC = b.chain(asDep(j.first), xp);
        }
        dep[s] = b.chain(pairC, amp);
        break;
      }
      case Justification::Kind::GenForall:
      case Justification::Kind::GenExists: {
        const Formula& pre = in.steps[j.first - 1].formula;
        bool universal = j.kind == Justification::Kind::GenForall;
        std::size_t ag = b.axiom(universal ? SchemeId::AGenForall : SchemeId::AGenExists,
                                 {tparam(q(pre->left)), tparam(q(pre->right)), vparam(j.variable)});
        if (dep[j.first] == kSelf)
          dep[s] = ag;  // already C -> A{...}
        else if (dep[j.first])
          dep[s] = b.chain(dep[j.first], ag);
        else
          indep[s] = b.mp(indep[j.first], ag);
        break;
      }
      default:
        throw TacticError("unsupported step in internalize");
    }
  }
  b.conclude(k > 0 ? underC(n) : indep[n]);
  return b.take();
}

}  // namespace quill

#endif  // QUILL_TACTICS_HPP
