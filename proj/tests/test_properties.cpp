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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "generators.hpp"
#include "kripke_oracle.hpp"
#include "quill/corpus.hpp"
#include "quill/kripke.hpp"
#include "quill/parser.hpp"
#include "quill/script.hpp"

namespace quill {
namespace {

const std::string kDir = QUILL_CORPUS_DIR;

void expectRoundTrip(const Formula& f, const Environment& env) {
  std::string once = toString(f);
  Formula back = parseFormula(once, env);
  ASSERT_EQ(back, f) << once;
  EXPECT_EQ(toString(back), once);
}

TEST(RoundTrip, ThousandRandomFormulas) {
  Environment env = testgen::sampleEnvironment();
  testgen::FormulaGen gen(1234);
  for (int i = 0; i < 1000; ++i) expectRoundTrip(gen.formula(1 + i % 5), env);
}

TEST(RoundTrip, EveryCorpusFormula) {
  std::size_t seen = 0;
  for (const CorpusEntry& e : loadManifest(kDir)) {
    Script s = loadScript(kDir + "/" + e.script);
    for (const auto& h : s.proof.hypotheses) expectRoundTrip(h, s.env), ++seen;
    for (const auto& st : s.proof.steps) {
      expectRoundTrip(st.formula, s.env), ++seen;
      for (const auto& p : st.by.params)
        if (p.kind == ParamKind::Formula) expectRoundTrip(p.formula, s.env), ++seen;
    }
    expectRoundTrip(parseFormula(e.conclusion, s.env), s.env);
    std::string printed = printScript(s);
    EXPECT_EQ(printScript(parseScript(printed)), printed) << e.script;
  }
  EXPECT_GT(seen, 10000u);
}

// -- semantics ----------------------------------------------------------------------

class PropGen {
 public:
  explicit PropGen(unsigned seed) : rng_(seed) {}
  Formula operator()(int depth) {
    if (depth == 0 || pick(4) == 0) return pick(7) == 0 ? bot() : atom(std::string(1, "pqr"[pick(3)]));
    Formula a = (*this)(depth - 1), b = (*this)(depth - 1);
    switch (pick(3)) {
      case 0: return conj(a, b);
      case 1: return disj(a, b);
      default: return imp(a, b);
    }
  }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

 private:
  std::mt19937 rng_;
};

oracle::Model toOracle(const KripkeModel& m) {
  oracle::Model o;
  o.n = m.frame.size();
  o.leq.assign(o.n, std::vector<bool>(o.n));
  for (std::size_t a = 0; a < o.n; ++a)
    for (std::size_t b = 0; b < o.n; ++b) o.leq[a][b] = m.frame.leq(a, b);
  for (const auto& [atom, s] : m.valuation) {
    std::vector<bool> ws(o.n);
    for (std::size_t w = 0; w < o.n; ++w) ws[w] = s >> w & 1;
    o.holds[atom] = ws;
  }
  return o;
}

TEST(Semantics, PersistenceAndOracleAgreementOnRandomModels) {
  PropGen gen(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + gen.pick(5);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (gen.pick(3) == 0) pairs.push_back({a, b});
    KripkeFrame frame = KripkeFrame::generatedBy(n, pairs);
    auto ups = upsets(frame);
    KripkeModel m{frame, {}};
    for (const char* p : {"p", "q", "r"}) m.valuation[p] = ups[gen.pick(static_cast<int>(ups.size()))];
    ASSERT_TRUE(checkMonotonicity(m));
    oracle::Model o = toOracle(m);
    for (int k = 0; k < 10; ++k) {
      Formula f = gen(4);
      WorldSet s = truthSet(m, f);
      EXPECT_TRUE(frame.isUpset(s)) << toString(f);
      for (std::size_t w = 0; w < n; ++w) EXPECT_EQ(evalAt(m, w, f), oracle::forces(o, w, f)) << toString(f);
    }
  }
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

TEST(Semantics, PropositionalCorpusTheoremsHoldEverywhere) {
  std::set<std::string> checked;
  for (const CorpusEntry& e : loadManifest(kDir)) {
    Script s = loadScript(kDir + "/" + e.script);
    ASSERT_TRUE(s.proof.hypotheses.empty()) << e.script;
    std::vector<bool> extended = testgen::restsOnExtension(s.proof);
    for (std::size_t i = 1; i <= s.proof.steps.size(); ++i) {
      const ProofStep& st = s.proof.steps[i - 1];
      if (extended[i] || !isPropositional(st.formula) ||
          !checked.insert(toString(st.formula)).second)
        continue;
      EXPECT_TRUE(validUpTo(st.formula, 4)) << e.script << ": " << toString(st.formula);
    }
  }
  EXPECT_GE(checked.size(), 30u);
}

TEST(Semantics, RandomKernelTheoremsHoldEverywhere) {
  Environment env = testgen::sampleEnvironment();
  testgen::ProofGen gen(env, 5);
  for (int i = 0; i < 150; ++i) {
    Proof p = gen.generate(3, 12, 0);
    ASSERT_TRUE(checkProof(env, p).ok());
    for (const auto& st : p.steps) EXPECT_TRUE(validUpTo(st.formula, 3)) << toString(st.formula);
  }
}

}  // namespace
}  // namespace quill
