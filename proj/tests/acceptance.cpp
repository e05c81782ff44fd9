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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"
#include "json.hpp"
#include "kripke_oracle.hpp"
#include "mutations.hpp"
#include "quill/corpus.hpp"
#include "quill/kripke.hpp"
#include "quill/script.hpp"
#include "quill/tactics.hpp"

using namespace quill;

namespace {

const std::string kDir = QUILL_CORPUS_DIR;

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Thrown by require(); the message becomes the FAIL detail.
struct Unmet {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Unmet{why};
}

Script load(const std::string& name) { return loadScript(kDir + "/" + name); }

CheckOptions noKeys() { return CheckOptions{std::set<SchemeId>{}}; }

// Checks `script` with every extension off and compares the conclusion, parsed
// in the script's environment, to `want`.
void theorem(const std::string& script, const std::string& want) {
  Script s = load(script);
  CheckResult r = checkProof(s.env, s.proof, noKeys());
  require(r.ok(), script + " does not check without extensions" +
                      (r.errors.empty() ? "" : ": " + r.errors.front().message));
  require(r.judgment->hypotheses.empty(), script + " has open hypotheses");
  require(r.judgment->extensionsUsed.empty(), script + " uses an extension");
  require(r.judgment->conclusion == parseFormula(want, s.env),
          script + " concludes " + toString(r.judgment->conclusion) + ", want " + want);
}

void defined(const std::string& script, const std::string& name, const std::string& body) {
  Script s = load(script);
  require(Equivalence(s.env)(s.env.unquote(quote(name)), parseFormula(body, s.env)),
          script + ": " + name + " is not " + body);
}

// Numbered entry -> scripts and their conclusions.
const std::vector<std::tuple<int, std::string, std::string>> kEntries = {
    {1, "anomaly_assertible_liar.pf", "~~A(`La`)"},
    {2, "assertible_liar_collapse.pf", "A(`La`) -> A({bot})"},
    {3, "assertible_liar_meaningful.pf", "M(`La`)"},
    {4, "liar_not_meaningless.pf", "~~M(`L`)"},
    {5, "liar_meaningful_collapse.pf", "M(`L`) -> A({bot})"},
    {6, "truth_conjunction.pf", "M({p}) & M({q}) -> A({T({p & q}) <-> T({p}) & T({q})})"},
    {7, "truth_conjunction_quantified.pf",
     "A({forall x. Sent(x) -> (forall y. Sent(y) -> (T({$x & $y}) <-> T(x) & T(y)))})"},
    {8, "russell_not_meaningless.pf", "~~M(`RR`)"},
    {8, "russell_meaningful_collapse.pf", "M(`RR`) -> A({bot})"},
    {9, "russell_assertible_anomaly.pf", "~~A(`RaRa`)"},
    {9, "russell_assertible_collapse.pf", "A(`RaRa`) -> A({bot})"},
    {12, "meaningful_meaningfulness.pf", "M({M({p})})"},
    {12, "meaningful_assertibility.pf", "M({A({p})})"},
};

// -- criteria --------------------------------------------------------------------------

std::string corpusFidelity() {
  auto t0 = std::chrono::steady_clock::now();
  CorpusReport r = runCorpus(kDir);
  double secs = seconds(t0);
  for (const auto& e : r.entries)
    require(e.passed, e.entry.script + ": " + (e.diffs.empty() ? "failed" : e.diffs.front()));
  require(r.entries.size() >= 12, "only " + std::to_string(r.entries.size()) + " entries");
  std::set<int> numbers;
  for (const auto& [n, script, want] : kEntries) {
    theorem(script, want);
    numbers.insert(n);
  }
  require(numbers.size() == 10, "numbered entries missing");
  for (const auto& [script, label] :
       std::vector<std::pair<std::string, std::string>>{{"release_paradox.pf", "ReleaseAxiom(bot)"},
                                                        {"unrestricted_T_paradox.pf", "UnrestrictedT(~T(`L`))"}}) {
    bool found = false;
    for (const auto& e : r.entries)
      if (e.entry.script == script) found = e.extensions == std::vector<std::string>{label};
    require(found, script + " does not use exactly " + label);
  }
  require(secs < 5.0, "corpus took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << r.passed() << "/" << r.entries.size() << " entries, entries 1-9 and 12 extension-free, "
     << secs << " s";
  return os.str();
}

std::string assertibleLiarPair() {
  defined("anomaly_assertible_liar.pf", "La", "A(`La`) -> bot");
  theorem("anomaly_assertible_liar.pf", "~~A(`La`)");
  theorem("assertible_liar_collapse.pf", "A(`La`) -> A({bot})");
  return "|- ~~A(`La`) and |- A(`La`) -> A({bot}), no extensions";
}

std::string liarPair() {
  defined("liar_not_meaningless.pf", "L", "~T(`L`)");
  theorem("liar_not_meaningless.pf", "~~M(`L`)");
  theorem("liar_meaningful_collapse.pf", "M(`L`) -> A({bot})");
  return "|- ~~M(`L`) and |- M(`L`) -> A({bot}), no extensions";
}

std::string russellPairs() {
  defined("russell_not_meaningless.pf", "RR", "~H(`R`, `R`)");
  defined("russell_assertible_anomaly.pf", "RaRa", "~A({$`Ra`(`Ra`)})");
  theorem("russell_not_meaningless.pf", "~~M(`RR`)");
  theorem("russell_meaningful_collapse.pf", "M(`RR`) -> A({bot})");
  theorem("russell_assertible_anomaly.pf", "~~A(`RaRa`)");
  theorem("russell_assertible_collapse.pf", "A(`RaRa`) -> A({bot})");
  return "both anomaly pairs checked, no extensions";
}

std::string paradoxGating() {
  using testcli::run, testcli::corpusFile;
  auto json = [](const testcli::Run& r) { return nlohmann::json::parse(r.out); };

  auto both = run("check " + corpusFile("release_paradox.pf") + " --allow ReleaseAxiom --json");
  require(both.exit == 0, "release paradox with both keys exits " + std::to_string(both.exit));
  require(json(both)["judgment"]["conclusion"] == "bot", "release paradox does not conclude bot");
  auto header = run("check " + corpusFile("release_paradox.pf"));
  require(header.exit == 1, "header grant alone exits " + std::to_string(header.exit));

  Script s = load("release_paradox.pf");
  CheckOptions key{std::set<SchemeId>{SchemeId::ReleaseAxiom}};
  Proof bare = s.proof;
  bare.enabled.clear();
  require(!checkProof(s.env, bare, key).ok(), "command key alone suffices");
  Proof other = s.proof;
  other.enabled = {ExtensionGrant{SchemeId::ReleaseAxiom, mOf(bot())}};
  require(!checkProof(s.env, other, key).ok(), "a grant for another instance suffices");

  auto t = run("check " + corpusFile("unrestricted_T_paradox.pf") + " --allow UnrestrictedT --json");
  require(t.exit == 0 && json(t)["judgment"]["conclusion"] == "bot",
          "unrestricted T paradox does not conclude bot under UnrestrictedT");
  require(run("check " + corpusFile("unrestricted_T_paradox.pf")).exit == 1,
          "unrestricted T paradox checks without the command key");

  for (const CorpusEntry& e : loadManifest(kDir)) {
    Script x = load(e.script);
    CheckResult r = checkProof(x.env, x.proof, noKeys());
    require(!(r.ok() && r.judgment->conclusion == bot()), e.script + " proves bot without extensions");
  }
  return "bot only with header grant and --allow; exit 1 otherwise";
}

std::string classicalityGuard() {
  Environment env;
  for (const char* p : {"p", "q", "r"}) env.declarePredicate(p, 0);
  std::ostringstream os;
  for (const char* text : {"p | ~p", "~~p -> p", "((p -> q) -> p) -> p"}) {
    Formula f = parseFormula(text, env);
    require(!isLogInstance(f, env), std::string(text) + " matches a logical scheme");
    auto cm = findCountermodel(f, 4);
    require(cm.has_value(), std::string("no countermodel for ") + text);
    require(cm->model.frame.size() <= 2, std::string(text) + " needs more than 2 worlds");
    // Independent confirmation on the oracle's forcing relation.
    oracle::Model o{cm->model.frame.size(), {}, {}};
    o.leq.assign(o.n, std::vector<bool>(o.n));
    for (std::size_t a = 0; a < o.n; ++a)
      for (std::size_t b = 0; b < o.n; ++b) o.leq[a][b] = cm->model.frame.leq(a, b);
    for (const auto& [atom, s] : cm->model.valuation)
      for (std::size_t w = 0; w < o.n; ++w) o.holds[atom].push_back(s >> w & 1);
    require(!oracle::forces(o, cm->world, f), std::string("oracle disagrees on ") + text);
    os << text << ": " << cm->model.frame.size() << " worlds; ";
  }
  Formula theorem = parseFormula("(p -> q) -> (q -> r) -> (r -> p) -> (p | q | r -> p & q & r)", env);
  auto t0 = std::chrono::steady_clock::now();
  require(!findCountermodel(theorem, 4), "countermodel to a theorem");
  double secs = seconds(t0);
  require(secs < 2.0, "exhaustive search at bound 4 took " + std::to_string(secs) + " s");
  os << "exhaustive bound-4 search " << secs << " s";
  return os.str();
}

std::string transformerSoundness() {
  Environment env = testgen::sampleEnvironment();
  Equivalence eq(env);
  std::size_t proofs = 0, dts = 0;
  double worst = 0;
  for (bool firstOrder : {false, true}) {
    testgen::ProofGen gen(env, firstOrder ? 2027 : 2026, firstOrder, 4);
    for (int i = 0; i < (firstOrder ? 300 : 1000); ++i, ++proofs) {
      Proof in = gen.generate();
      require(checkProof(env, in).ok(), "generator produced an invalid proof");
      for (std::size_t h = 1; h <= in.hypotheses.size(); ++h, ++dts) {
        CheckResult r = checkProof(env, deductionTheorem(env, in, h));
        require(r.ok(), "deduction output rejected");
        require(eq(r.judgment->conclusion, imp(in.hypotheses[h - 1], in.conclusion())),
                "deduction output has the wrong conclusion");
      }
      auto ms = mProofsFor(env, in, gen.baseFacts());
      std::size_t mlen = 0;
      for (const auto& m : ms) mlen += m.steps.size();
      Proof out = internalize(env, in, ms);
      CheckResult r = checkProof(env, out);
      require(r.ok(), "internalize output rejected");
      Formula want = aOf(in.conclusion());
      if (!in.hypotheses.empty()) want = imp(conjoinAssertions(in.hypotheses), want);
      require(eq(r.judgment->conclusion, want), "internalize output has the wrong conclusion");
      require(out.steps.size() <= 10 * in.steps.size() + mlen,
              "internalize output of " + std::to_string(out.steps.size()) + " steps for " +
                  std::to_string(in.steps.size()) + " input + " + std::to_string(mlen) + " M steps");
      worst = std::max(worst, (double(out.steps.size()) - double(mlen)) / double(in.steps.size()));
    }
  }
  std::ostringstream os;
  os << proofs << " proofs, " << dts << " deductions, worst (output - M steps) / input = " << worst;
  return os.str();
}

bool validUpTo(const Formula& f, std::size_t worlds) {
  auto as = propositionalAtoms(f);
  std::vector<std::string> atoms(as.begin(), as.end());
  bool valid = true;
  forEachModel(atoms, worlds, [&](const KripkeModel& m) {
    valid = truthSet(m, f) == m.frame.all();
    return valid;
  });
  return valid;
}

std::string soundnessCrossCheck() {
  std::set<std::string> checked;
  for (const CorpusEntry& e : loadManifest(kDir)) {
    Script s = load(e.script);
    require(s.proof.hypotheses.empty(), e.script + " has hypotheses");
    std::vector<bool> extended = testgen::restsOnExtension(s.proof);
    for (std::size_t i = 1; i <= s.proof.steps.size(); ++i) {
      const Formula& f = s.proof.steps[i - 1].formula;
      if (extended[i] || !isPropositional(f) || !checked.insert(toString(f)).second) continue;
      require(validUpTo(f, 4), e.script + ": " + toString(f) + " fails in a model");
    }
  }
  require(!checked.empty(), "no propositional theorems in the corpus");
  return std::to_string(checked.size()) + " distinct propositional theorems valid up to 4 worlds";
}

std::string mutationRobustness() {
  std::size_t total = 0;
  for (const CorpusEntry& e : loadManifest(kDir)) {
    Script s = load(e.script);
    std::set<SchemeId> ids;
    for (const auto& g : s.proof.enabled) ids.insert(g.scheme);
    CheckOptions key{ids};
    require(checkProof(s.env, s.proof, key).ok(), e.script + " does not check");
    auto ms = testgen::Mutator(s.env, s.proof, 20260101u).generate(20);
    require(ms.size() == 20, e.script + ": only " + std::to_string(ms.size()) + " mutations");
    std::set<testgen::MutationKind> kinds;
    for (const auto& m : ms) {
      kinds.insert(m.kind);
      require(!checkProof(s.env, m.proof, key).ok(),
              e.script + ": " + testgen::mutationKindName(m.kind) + " mutation at step " +
                  std::to_string(m.step) + " accepted");
    }
    require(kinds.size() == 3, e.script + ": not every mutation kind applied");
    total += ms.size();
  }
  return std::to_string(total) + " mutations rejected";
}

std::string roundTrip() {
  std::size_t n = 0;
  auto once = [&](const Formula& f, const Environment& env) {
    std::string printed = toString(f);
    Formula back = parseFormula(printed, env);
    require(back == f && toString(back) == printed, "round trip changes " + printed);
    ++n;
  };
  for (const CorpusEntry& e : loadManifest(kDir)) {
    Script s = load(e.script);
    for (const auto& h : s.proof.hypotheses) once(h, s.env);
    for (const auto& st : s.proof.steps) {
      once(st.formula, s.env);
      for (const auto& p : st.by.params)
        if (p.kind == ParamKind::Formula) once(p.formula, s.env);
    }
  }
  std::size_t corpus = n;
  Environment env = testgen::sampleEnvironment();
  testgen::FormulaGen gen(4321);
  for (int i = 0; i < 1000; ++i) once(gen.formula(1 + i % 5), env);
  return std::to_string(corpus) + " corpus formulas, " + std::to_string(n - corpus) + " random";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"corpus fidelity", corpusFidelity},
      {"assertible liar anomaly pair", assertibleLiarPair},
      {"liar anomaly pair", liarPair},
      {"Russell analogues", russellPairs},
      {"paradox gating", paradoxGating},
      {"classicality guard", classicalityGuard},
      {"transformer soundness", transformerSoundness},
      {"soundness cross-check", soundnessCrossCheck},
      {"mutation robustness", mutationRobustness},
      {"round trip", roundTrip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, run] = criteria[i];
    std::string verdict, detail;
    try {
      detail = run();
      verdict = "PASS";
    } catch (const Unmet& u) {
      verdict = "FAIL", detail = u.why;
    } catch (const std::exception& e) {
      verdict = "FAIL", detail = std::string("exception: ") + e.what();
    }
    if (verdict == "FAIL") ++failed;
    std::cout << verdict << " " << (i + 1) << ". " << name << ": " << detail << std::endl;
  }
  return failed ? 1 : 0;
}
