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

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "kripke_oracle.hpp"
#include "quill/environment.hpp"
#include "quill/kripke.hpp"
#include "quill/parser.hpp"

namespace quill {
namespace {

Environment props() {
  Environment env;
  for (const char* p : {"p", "q", "r"}) env.declarePredicate(p, 0);
  env.declarePredicate("P", 1);
  return env;
}

Formula F(const std::string& s) {
  static Environment env = props();
  return parseFormula(s, env);
}

KripkeModel chainWith(WorldSet p) { return KripkeModel{KripkeFrame::chain(2), {{"p", p}}}; }

oracle::Model toOracle(const KripkeModel& m) {
  oracle::Model o;
  o.n = m.frame.size();
  o.leq.assign(o.n, std::vector<bool>(o.n));
  for (std::size_t a = 0; a < o.n; ++a)
    for (std::size_t b = 0; b < o.n; ++b) o.leq[a][b] = m.frame.leq(a, b);
  for (const auto& [atom, s] : m.valuation) {
    std::vector<bool> v(o.n);
    for (std::size_t w = 0; w < o.n; ++w) v[w] = s >> w & 1;
    o.holds[atom] = v;
  }
  return o;
}

TEST(KripkeTest, BotFailsEverywhere) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& fr : posets(n))
      for (std::size_t w = 0; w < n; ++w) EXPECT_FALSE(evalAt(KripkeModel{fr, {}}, w, bot()));
}

TEST(KripkeTest, ExcludedMiddleOnTheTwoWorldChain) {
  KripkeModel m = chainWith(0b10);
  Formula em = F("p | ~p");
  oracle::Model o = toOracle(m);
  EXPECT_FALSE(evalAt(m, 0, em));
  EXPECT_EQ(evalAt(m, 0, em), oracle::forces(o, 0, em));
  EXPECT_TRUE(evalAt(m, 1, em));
  EXPECT_EQ(evalAt(m, 1, em), oracle::forces(o, 1, em));
}

TEST(KripkeTest, Monotonicity) {
  EXPECT_TRUE(checkMonotonicity(chainWith(0b10)));
  EXPECT_FALSE(checkMonotonicity(chainWith(0b01)));
  EXPECT_TRUE(checkMonotonicity(KripkeModel{KripkeFrame(), {{"p", 1}, {"q", 0}}}));
  EXPECT_THROW(evalAt(chainWith(0b01), 0, F("p")), SemanticsError);
}

TEST(KripkeTest, FramesAreValidated) {
  EXPECT_THROW(KripkeFrame(2, {{0, 0}}), SemanticsError);                         // reflexivity
  EXPECT_THROW(KripkeFrame(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}}), SemanticsError);  // antisymmetry
  EXPECT_THROW(KripkeFrame(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}}), SemanticsError);
  EXPECT_NO_THROW(KripkeFrame(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}}));
  EXPECT_THROW(KripkeFrame(kWorldLimit + 1, {}), SemanticsError);
}

TEST(KripkeTest, RejectsNonPropositionalInput) {
  EXPECT_THROW(evalAt(chainWith(0), 0, F("P(x)")), SemanticsError);
  EXPECT_THROW(evalAt(chainWith(0), 0, F("forall x. p")), SemanticsError);
  EXPECT_THROW(findCountermodel(F("M({p}) | p")), SemanticsError);
}

// Labelled posets grouped by isomorphism must give the unlabelled counts.
TEST(KripkeTest, PosetEnumerationMatchesBruteForce) {
  for (std::size_t n = 1; n <= 4; ++n) {
    std::set<std::vector<std::vector<bool>>> classes;
    for (auto r : oracle::labelledPosets(n)) {
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      std::vector<std::vector<bool>> best;
      do {
        std::vector<std::vector<bool>> s(n, std::vector<bool>(n));
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) s[a][b] = r[perm[a]][perm[b]];
        if (best.empty() || s < best) best = s;
      } while (std::next_permutation(perm.begin(), perm.end()));
      classes.insert(best);
    }
    EXPECT_EQ(posets(n).size(), classes.size()) << "n=" << n;
  }
}

TEST(KripkeTest, CountermodelsForClassicalPrinciples) {
  for (const char* s : {"p | ~p", "~~p -> p", "((p -> q) -> p) -> p"}) {
    Formula f = F(s);
    auto cm = findCountermodel(f, 4);
    ASSERT_TRUE(cm) << s;
    EXPECT_FALSE(evalAt(cm->model, cm->world, f));
    EXPECT_FALSE(oracle::forces(toOracle(cm->model), cm->world, f));
    std::set<std::string> as = propositionalAtoms(f);
    std::size_t expected =
        oracle::smallestRefutation(f, std::vector<std::string>(as.begin(), as.end()), 3);
    EXPECT_EQ(cm->model.frame.size(), expected) << s;
    EXPECT_LE(cm->model.frame.size(), 2u) << s;
  }
}

TEST(KripkeTest, TheoremsHaveNoCountermodel) {
  for (const char* s : {"p -> p", "p & q -> q & p", "~~(p | ~p)", "(p -> q) -> ~q -> ~p"})
    EXPECT_FALSE(findCountermodel(F(s), 4)) << s;
}

TEST(KripkeTest, SearchAgreesWithOracleOnSmallFormulas) {
  for (const char* s : {"p -> q", "(p -> q) | (q -> p)", "~p | ~~p", "(~p -> q) -> p | q",
                        "p & ~p -> q"}) {
    Formula f = F(s);
    std::set<std::string> as = propositionalAtoms(f);
    std::size_t expected =
        oracle::smallestRefutation(f, std::vector<std::string>(as.begin(), as.end()), 3);
    auto cm = findCountermodel(f, 3);
    EXPECT_EQ(cm ? cm->model.frame.size() : 0u, expected) << s;
  }
}

}  // namespace
}  // namespace quill
