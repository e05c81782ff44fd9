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

// Regenerates corpus/*.pf and corpus/manifest.json. Every derivation is
// elaborated with the tactics, re-checked, and frozen as text; the checker
// never runs this code.
//
//   gen_corpus <corpus-dir>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "quill/builder.hpp"
#include "quill/kernel.hpp"
#include "quill/script.hpp"
#include "quill/tactics.hpp"

namespace fs = std::filesystem;
using namespace quill;

namespace {

using Step = std::size_t;

// -- small derivations ------------------------------------------------------------

// Index of hypothesis f in p.
std::size_t hypIndex(const Environment& env, const Proof& p, const Formula& f) {
  Equivalence eq(env);
  for (std::size_t i = 0; i < p.hypotheses.size(); ++i)
    if (eq(p.hypotheses[i], f)) return i + 1;
  throw TacticError("no hypothesis " + toString(f));
}

Proof discharge(const Environment& env, const Proof& p, const Formula& f) {
  return deductionTheorem(env, p, hypIndex(env, p, f));
}

// {t <-> ~t} |- bot
Proof contradictionFromIff(const Environment& env, const Formula& t) {
  ProofBuilder b(env);
  Step h = b.hyp(iff(t, neg(t)));
  Step tnt = b.andElim(h, true);    // t -> ~t
  Step ntt = b.andElim(h, false);   // ~t -> t
  Step l2 = b.axiom(SchemeId::L2, {fparam(t), fparam(t), fparam(bot())});
  Step m = b.mp(tnt, l2);
  Step nt = b.mp(b.identity(t), m);
  Step tt = b.mp(nt, ntt);
  b.mp(tt, nt);
  return b.take();
}

// {T{f} <-> f, T{g} <-> g, T{f & g} <-> f & g} |- T{f & g} <-> T{f} & T{g}
Proof truthDistribution(const Environment& env, const Formula& f, const Formula& g) {
  Formula tf = truth(q(f)), tg = truth(q(g)), tfg = truth(q(conj(f, g)));
  std::vector<Formula> hs = {iff(tf, f), iff(tg, g), iff(tfg, conj(f, g))};
  auto start = [&] {
    ProofBuilder b(env);
    for (const Formula& h : hs) b.hypothesisIndex(h);
    return b;
  };

  ProofBuilder fwd = start();
  {
    Step pq = fwd.mp(fwd.hyp(tfg), fwd.andElim(fwd.hyp(hs[2]), true));
    Step a = fwd.mp(fwd.andElim(pq, true), fwd.andElim(fwd.hyp(hs[0]), false));
    Step c = fwd.mp(fwd.andElim(pq, false), fwd.andElim(fwd.hyp(hs[1]), false));
    fwd.andIntro(a, c);
  }
  ProofBuilder bwd = start();
  {
    Step both = bwd.hyp(conj(tf, tg));
    Step a = bwd.mp(bwd.andElim(both, true), bwd.andElim(bwd.hyp(hs[0]), true));
    Step c = bwd.mp(bwd.andElim(both, false), bwd.andElim(bwd.hyp(hs[1]), true));
    bwd.mp(bwd.andIntro(a, c), bwd.andElim(bwd.hyp(hs[2]), false));
  }
  ProofBuilder b = start();
  Step x = b.append(discharge(env, fwd.take(), tfg));
  Step y = b.append(discharge(env, bwd.take(), conj(tf, tg)));
  b.andIntro(x, y);
  return b.take();
}

// Given steps stating A{h_i} for the hypotheses of `logic`, derives A{g}
// for its conclusion g. M proofs for the axiom instances start from the
// facts M{h_i}, obtained by AtoM.
Step underA(ProofBuilder& b, const Proof& logic, const std::vector<Step>& assertions) {
  const Environment& env = b.env();
  Equivalence eq(env);
  std::vector<Formula> base;
  std::vector<Step> ordered, cuts;
  for (const Formula& h : logic.hypotheses) {
    Step a = 0;
    for (Step s : assertions)
      if (!a && eq(b.formula(s), aOf(h))) a = s;
    if (!a) throw TacticError("no step asserts " + toString(h));
    ordered.push_back(a);
    base.push_back(mOf(h));
    cuts.push_back(b.mp(a, b.axiom(SchemeId::AtoM, {tparam(q(h))})));
  }
  Proof internal = internalize(env, logic, mProofsFor(env, logic, base));
  Step rule = b.append(internal, cuts);
  Step c = ordered.at(0);
  for (std::size_t i = 1; i < ordered.size(); ++i) c = b.andIntro(c, ordered[i]);
  return b.mp(c, rule);
}

Step mClosure(ProofBuilder& b, const Term& t) {
  return b.append(meaningfulnessClosure(b.env(), t));
}

// The sentence name s has body A(s') -> bot with s' naming s again.
Formula assertedPart(const Environment& env, const std::string& s) {
  Formula body = env.resolve(s);
  if (!isNegation(body) || body->left->kind != FormulaKind::A)
    throw TacticError("'" + s + "' is not an assertible liar");
  return body->left;
}

// |- ~~A(s)
Step notNotAssertible(ProofBuilder& b, const std::string& s) {
  const Environment& env = b.env();
  ProofBuilder sub(env);
  Formula body = env.resolve(s);
  Step h = sub.hyp(body);
  Step m = mClosure(sub, quote(s));
  Step cap = sub.mp(m, sub.axiom(SchemeId::Capture, {tparam(quote(s))}));
  Step a = sub.mp(h, cap);
  sub.mp(a, h);
  Step out = b.append(discharge(env, sub.take(), body));
  b.restate(out, neg(neg(assertible(quote(s)))));
  return out;
}

// |- A(s) -> A{bot}
Step assertibleCollapse(ProofBuilder& b, const std::string& s) {
  const Environment& env = b.env();
  Formula x = assertedPart(env, s);  // A(s')
  ProofBuilder sub(env);
  Step h = sub.hyp(assertible(quote(s)));
  Step mx = sub.axiom(SchemeId::MofA, {tparam(x->terms[0])});
  Step cap = sub.mp(mx, sub.axiom(SchemeId::Capture, {tparam(q(x))}));
  Step ax = sub.mp(h, cap);  // A{A(s')}
  Step amp = sub.axiom(SchemeId::AMP, {tparam(q(x)), tparam(q(bot()))});
  sub.mp(sub.andIntro(ax, h), amp);
  return b.append(discharge(env, sub.take(), assertible(quote(s))));
}

// |- ~~M(s), given the scheme instance ~M(s) -> A{~t} whose conclusion
// A{~t} denotes the same sentence as s.
Step notMeaningless(ProofBuilder& b, const Term& s, SchemeId id, std::vector<Param> ps) {
  const Environment& env = b.env();
  ProofBuilder sub(env);
  Formula h = neg(meaningful(s));
  Step hs = sub.hyp(h);
  Step a = sub.mp(hs, sub.axiom(id, std::move(ps)));
  Step m = sub.mp(a, sub.axiom(SchemeId::AtoM, {tparam(s)}));
  sub.mp(m, hs);
  Step out = b.append(discharge(env, sub.take(), h));
  b.restate(out, neg(neg(meaningful(s))));
  return out;
}

// |- M(s) -> A{bot}, given the scheme instance M(s) -> A{t <-> ~t}.
Step meaningfulCollapse(ProofBuilder& b, const Term& s, SchemeId id, std::vector<Param> ps,
                        const Formula& t) {
  const Environment& env = b.env();
  ProofBuilder sub(env);
  Step hs = sub.hyp(meaningful(s));
  Step a = sub.mp(hs, sub.axiom(id, std::move(ps)));
  underA(sub, contradictionFromIff(env, t), {a});
  return b.append(discharge(env, sub.take(), meaningful(s)));
}

// A{T{f & g} <-> T{f} & T{g}} from steps proving M{f} and M{g}.
Step assertedDistribution(ProofBuilder& b, const Formula& f, const Formula& g, Step mf, Step mg) {
  const Environment& env = b.env();
  Step mfg = b.mp(b.andIntro(mf, mg), b.axiom(SchemeId::MComp1, {tparam(q(f)), tparam(q(g))}));
  Step a1 = b.mp(mf, b.axiom(SchemeId::TDef, {tparam(q(f))}));
  Step a2 = b.mp(mg, b.axiom(SchemeId::TDef, {tparam(q(g))}));
  Step a3 = b.mp(mfg, b.axiom(SchemeId::TDef, {tparam(q(conj(f, g)))}));
  return underA(b, truthDistribution(env, f, g), {a1, a2, a3});
}

// -- the quantified distribution over a two-sentence language ---------------------

const char* kLanguage = R"(def S1 := bot
def S2 := A(`S1`)
domain Sent := {`S1`, `S2`} definite
)";

// A{forall x. Sent(x) -> forall y. Sent(y) -> (T{$x & $y} <-> T(x) & T(y))}
Step quantifiedDistribution(ProofBuilder& b) {
  const Environment& env = b.env();
  const std::vector<std::string> names = {"S1", "S2"};
  auto m = [&](const std::string& s) { return mClosure(b, quote(s)); };
  Formula inner = parseFormula("T({$x & $y}) <-> T(x) & T(y)", env);
  Formula outerBody = forall("y", imp(atom("Sent", {var("y")}), inner));
  std::vector<Step> rows;
  for (const auto& x : names) {
    std::vector<Step> cells;
    for (const auto& y : names)
      cells.push_back(assertedDistribution(b, env.resolve(x), env.resolve(y), m(x), m(y)));
    Step both = b.andIntro(cells[0], cells[1]);
    Formula row = substitute(inner, "x", quote(x));
    rows.push_back(
        b.mp(both, b.axiom(SchemeId::ForallCapture, {sparam("Sent"), vparam("y"), tparam(q(row))})));
  }
  Step both = b.andIntro(rows[0], rows[1]);
  return b.mp(both,
              b.axiom(SchemeId::ForallCapture, {sparam("Sent"), vparam("x"), tparam(q(outerBody))}));
}

// -- entries ------------------------------------------------------------------------

struct Entry {
  std::string file;
  std::string locus;
  std::string header;
  std::function<Step(ProofBuilder&)> build;
  std::vector<std::string> extensions;
};

const char* kLiar = "def La := A(`La`) -> bot\n";
const char* kTruthLiar = "def L := ~T(`L`)\n";
const char* kRussell = "def R/1 := ~H(v0, v0)\ndef RR := instance R(`R`)\n";
const char* kRussellA = "def Ra/1 := ~A({$v0(v0)})\ndef RaRa := instance Ra(`Ra`)\n";

std::vector<Entry> entries() {
  std::vector<Entry> out;
  out.push_back({"anomaly_assertible_liar.pf", "assertible liar: A(La) is not not the case", kLiar,
                 [](ProofBuilder& b) { return notNotAssertible(b, "La"); }, {}});
  out.push_back({"assertible_liar_collapse.pf",
                 "assertible liar: from A(La) only the assertibility of bot follows", kLiar,
                 [](ProofBuilder& b) { return assertibleCollapse(b, "La"); }, {}});
  out.push_back({"assertible_liar_meaningful.pf", "the assertible liar is definitely meaningful",
                 kLiar, [](ProofBuilder& b) { return mClosure(b, quote("La")); }, {}});
  out.push_back({"liar_not_meaningless.pf", "truth liar: not meaningless, not not meaningful",
                 kTruthLiar,
                 [](ProofBuilder& b) {
                   return notMeaningless(b, quote("L"), SchemeId::TNeg, {tparam(quote("L"))});
                 },
                 {}});
  auto liarCollapse = [](ProofBuilder& b) {
    return meaningfulCollapse(b, quote("L"), SchemeId::TDef, {tparam(quote("L"))},
                              truth(quote("L")));
  };
  out.push_back({"liar_meaningful_collapse.pf",
                 "truth liar: if meaningful then bot is assertible", kTruthLiar, liarCollapse, {}});
  out.push_back({"liar_meaningful_collapse_released.pf",
                 "truth liar: if meaningful then bot, reading the collapse with release",
                 std::string(kTruthLiar) + "enable ReleaseAxiom(bot)\n",
                 [liarCollapse](ProofBuilder& b) {
                   Step c = liarCollapse(b);
                   Step r = b.axiom(SchemeId::ReleaseAxiom, {tparam(q(bot()))});
                   return b.chain(c, r);
                 },
                 {"ReleaseAxiom(bot)"}});
  out.push_back({"truth_conjunction.pf",
                 "subjunctive truth: T distributes over conjunction under A", "pred p/0\npred q/0\n",
                 [](ProofBuilder& b) {
                   const Environment& env = b.env();
                   Formula p = atom("p"), qq = atom("q");
                   ProofBuilder sub(env);
                   Formula h = conj(mOf(p), mOf(qq));
                   Step hs = sub.hyp(h);
                   assertedDistribution(sub, p, qq, sub.andElim(hs, true), sub.andElim(hs, false));
                   return b.append(discharge(env, sub.take(), h));
                 },
                 {}});
  out.push_back({"truth_conjunction_quantified.pf",
                 "forall-capture of the truth distribution over a finite language", kLanguage,
                 quantifiedDistribution, {}});
  out.push_back({"truth_conjunction_released.pf",
                 "forall-capture followed by the release rule", std::string(kLanguage) +
                 "enable ReleaseRule\n",
                 [](ProofBuilder& b) { return b.releaseRule(quantifiedDistribution(b)); },
                 {"ReleaseRule(forall x. Sent(x) -> (forall y. Sent(y) -> (T({$x & $y}) <-> "
                  "T(x) & T(y))))"}});
  out.push_back({"russell_not_meaningless.pf", "Russell predicate: M(R(R)) is not not the case",
                 kRussell,
                 [](ProofBuilder& b) {
                   return notMeaningless(b, quote("RR"), SchemeId::HNeg,
                                         {tparam(quote("R")), tparam(quote("R"))});
                 },
                 {}});
  out.push_back({"russell_meaningful_collapse.pf",
                 "Russell predicate: if R(R) is meaningful then bot is assertible", kRussell,
                 [](ProofBuilder& b) {
                   return meaningfulCollapse(b, quote("RR"), SchemeId::HDef,
                                             {tparam(quote("R")), tparam(quote("R"))},
                                             holds(quote("R"), quote("R")));
                 },
                 {}});
  out.push_back({"russell_assertible_anomaly.pf",
                 "assertible Russell predicate: A(Ra(Ra)) is not not the case", kRussellA,
                 [](ProofBuilder& b) { return notNotAssertible(b, "RaRa"); }, {}});
  out.push_back({"russell_assertible_collapse.pf",
                 "assertible Russell predicate: A(Ra(Ra)) gives only the assertibility of bot",
                 kRussellA, [](ProofBuilder& b) { return assertibleCollapse(b, "RaRa"); }, {}});
  out.push_back({"russell_assertible_meaningful.pf",
                 "assertible Russell predicate: Ra(Ra) is definitely meaningful", kRussellA,
                 [](ProofBuilder& b) { return mClosure(b, quote("RaRa")); }, {}});
  out.push_back({"release_paradox.pf",
                 "release law instance for bot turns the assertible liar into a proof of bot",
                 std::string(kLiar) + "enable ReleaseAxiom(bot)\n",
                 [](ProofBuilder& b) {
                   Step nn = notNotAssertible(b, "La");
                   Step c = assertibleCollapse(b, "La");
                   Step r = b.axiom(SchemeId::ReleaseAxiom, {tparam(q(bot()))});
                   return b.mp(b.chain(c, r), nn);
                 },
                 {"ReleaseAxiom(bot)"}});
  out.push_back({"unrestricted_T_paradox.pf",
                 "convention T without the meaningfulness guard refutes itself on the liar",
                 std::string(kTruthLiar) + "enable UnrestrictedT\n",
                 [](ProofBuilder& b) {
                   Step t = b.axiom(SchemeId::UnrestrictedT, {tparam(quote("L"))});
                   return b.append(contradictionFromIff(b.env(), truth(quote("L"))), {t});
                 },
                 {"UnrestrictedT(~T(`L`))"}});
  out.push_back({"meaningful_meaningfulness.pf", "ascriptions of meaningfulness are meaningful",
                 "pred p/0\n",
                 [](ProofBuilder& b) {
                   return b.axiom(SchemeId::MofM, {tparam(q(atom("p")))});
                 },
                 {}});
  out.push_back({"meaningful_assertibility.pf", "ascriptions of assertibility are meaningful",
                 "pred p/0\n",
                 [](ProofBuilder& b) {
                   return b.axiom(SchemeId::MofA, {tparam(q(atom("p")))});
                 },
                 {}});
  out.push_back({"definite_extension.pf",
                 "a predicate restricted to a definite domain extends to a meaningful total one",
                 "pred r/1\nconst c\ndomain D := {a, b} definite\nextend rt := r over D\n",
                 [](ProofBuilder& b) {
                   return b.axiom(SchemeId::TotalExtM, {sparam("rt"), tparam(constant("c"))});
                 },
                 {}});
  out.push_back({"identity.pf", "propositional identity", "pred p/0\n",
                 [](ProofBuilder& b) { return b.identity(atom("p")); }, {}});
  out.push_back({"syllogism.pf", "propositional hypothetical syllogism",
                 "pred p/0\npred q/0\npred r/0\n",
                 [](ProofBuilder& b) {
                   const Environment& env = b.env();
                   Formula p = atom("p"), qq = atom("q"), r = atom("r");
                   ProofBuilder sub(env);
                   Step pq = sub.hyp(imp(p, qq));
                   Step qr = sub.hyp(imp(qq, r));
                   Step pp = sub.hyp(p);
                   sub.mp(sub.mp(pp, pq), qr);
                   Proof a = discharge(env, sub.take(), p);
                   Proof c = discharge(env, a, imp(qq, r));
                   return b.append(discharge(env, c, imp(p, qq)));
                 },
                 {}});
  out.push_back({"excluded_middle_not_refuted.pf",
                 "excluded middle is not refutable intuitionistically", "pred p/0\n",
                 [](ProofBuilder& b) {
                   const Environment& env = b.env();
                   Formula p = atom("p"), em = disj(p, neg(p));
                   ProofBuilder inner(env);
                   Step h = inner.hyp(neg(em));
                   Step pp = inner.hyp(p);
                   inner.mp(inner.mp(pp, inner.axiom(SchemeId::L6, {fparam(p), fparam(neg(p))})), h);
                   Proof np = discharge(env, inner.take(), p);  // ~em |- ~p
                   ProofBuilder outer(env);
                   Step h2 = outer.hyp(neg(em));
                   Step n = outer.append(np);
                   Step e = outer.mp(n, outer.axiom(SchemeId::L7, {fparam(p), fparam(neg(p))}));
                   outer.mp(e, h2);
                   return b.append(discharge(env, outer.take(), neg(em)));
                 },
                 {}});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_corpus <corpus-dir>\n";
    return 2;
  }
  fs::path dir = argv[1];
  fs::create_directories(dir);
  nlohmann::json manifest = {{"entries", nlohmann::json::array()}};
  int failures = 0;
  for (const Entry& e : entries()) {
    try {
      Script s = parseScript(e.header);
      ProofBuilder b(s.env);
      for (const auto& g : s.proof.enabled) b.enable(g);
      b.conclude(e.build(b));
      s.proof = b.take();
      CheckResult r = checkProof(s.env, s.proof);
      if (!r.ok()) {
        std::cerr << e.file << ": generated proof does not check\n";
        for (const auto& err : r.errors) std::cerr << "  step " << err.step << ": " << err.message << '\n';
        ++failures;
        continue;
      }
      if (r.judgment->extensionsUsed != e.extensions) {
        std::cerr << e.file << ": unexpected extension set\n";
        for (const auto& x : r.judgment->extensionsUsed) std::cerr << "  " << x << '\n';
        ++failures;
        continue;
      }
      // The frozen text must read back to the same judgment.
      std::string text = printScript(s, {e.locus});
      Script back = parseScript(text);
      CheckResult again = checkProof(back.env, back.proof);
      if (!again.ok()) {
        std::cerr << e.file << ": printed script does not re-check\n";
        ++failures;
        continue;
      }
      std::ofstream(dir / e.file) << text;
      manifest["entries"].push_back({{"script", e.file},
                                     {"conclusion", toString(r.judgment->conclusion)},
                                     {"extensions", r.judgment->extensionsUsed},
                                     {"locus", e.locus}});
      std::printf("%-40s %6zu steps  %s\n", e.file.c_str(), s.proof.steps.size(),
                  toString(r.judgment->conclusion).c_str());
    } catch (const Error& err) {
      std::cerr << e.file << ": " << err.what() << '\n';
      ++failures;
    }
  }
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
  return failures ? 1 : 0;
}
