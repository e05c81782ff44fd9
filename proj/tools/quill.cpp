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

// quill: check proof scripts, run the corpus, search Kripke countermodels,
// apply tactics.
//
// Exit status: 0 success, 1 a script or entry was rejected, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quill/corpus.hpp"
#include "quill/kernel.hpp"
#include "quill/kripke.hpp"
#include "quill/parser.hpp"
#include "quill/report.hpp"
#include "quill/script.hpp"
#include "quill/tactics.hpp"

#ifndef QUILL_DEFAULT_CORPUS
#define QUILL_DEFAULT_CORPUS "corpus"
#endif

using namespace quill;

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

Script readScript(const std::string& path) {
  if (!std::filesystem::exists(path)) throw UsageError("no such file: " + path);
  return loadScript(path);
}

// The second key: every --allow must name an extension scheme the script
// header enables.
CheckOptions allowOptions(const Script& s, const std::vector<std::string>& allow) {
  std::set<SchemeId> keys;
  for (const auto& a : allow) {
    auto id = schemeByName(a);
    if (!id || !isExtension(*id))
      throw UsageError("--allow " + a + ": not an extension scheme "
                       "(ReleaseAxiom, ReleaseRule, UnrestrictedT)");
    bool granted = false;
    for (const auto& g : s.proof.enabled) granted = granted || g.scheme == *id;
    if (!granted) throw UsageError("--allow " + a + ": the script header does not enable it");
    keys.insert(*id);
  }
  return CheckOptions{keys};
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

// -- check -------------------------------------------------------------------------

int runCheck(const std::string& path, const std::vector<std::string>& allow, bool json) {
  Script s;
  try {
    s = readScript(path);
  } catch (const ParseError& e) {
    CheckResult r;
    r.errors.push_back({0, e.what()});
    if (json) emit(checkJson(path, s, r));
    else std::cout << checkText(path, r);
    return kRejected;
  }
  CheckResult r = checkProof(s.env, s.proof, allowOptions(s, allow));
  if (json) emit(checkJson(path, s, r));
  else std::cout << checkText(path, r);
  return r.ok() ? kOk : kRejected;
}

// -- corpus ------------------------------------------------------------------------

int runCorpusCommand(const std::string& dirArg, bool noExtensions, bool json) {
  std::string dir = dirArg.empty() ? corpusDirectory(QUILL_DEFAULT_CORPUS) : dirArg;
  if (!std::filesystem::is_directory(dir)) throw UsageError("no such corpus directory: " + dir);
  std::optional<CheckOptions> opts;
  if (noExtensions) opts = CheckOptions{std::set<SchemeId>{}};
  CorpusReport r = runCorpus(dir, opts);
  if (json) emit(corpusJson(r));
  else std::cout << corpusText(r);
  return r.ok() ? kOk : kRejected;
}

// -- countermodel ------------------------------------------------------------------

// Declares every bare identifier of the formula as a propositional atom.
Formula parsePropositional(const std::string& text) {
  Environment env;
  std::vector<Token> toks = tokenize(text);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind != Token::Kind::Ident || isReservedWord(t.text)) continue;
    bool applied = i + 1 < toks.size() && toks[i + 1].kind == Token::Kind::Punct &&
                   toks[i + 1].text == "(";
    if (!applied && !env.predicateArity(t.text)) env.declarePredicate(t.text, 0);
  }
  return parseFormula(text, env);
}

int runCountermodel(const std::string& text, std::size_t maxWorlds, bool json) {
  Formula phi;
  try {
    phi = parsePropositional(text);
  } catch (const Error& e) {
    throw UsageError(std::string("formula: ") + e.what());
  }
  if (!isPropositional(phi)) throw UsageError("countermodel search needs a propositional formula");
  if (maxWorlds < 1 || maxWorlds > kWorldLimit)
    throw UsageError("--max-worlds must be between 1 and " + std::to_string(kWorldLimit));
  auto cm = findCountermodel(phi, maxWorlds);
  if (json) emit(countermodelJson(phi, maxWorlds, cm));
  else std::cout << countermodelText(phi, maxWorlds, cm);
  return kOk;
}

// -- tactics -----------------------------------------------------------------------

int emitTactic(const std::string& name, Script s, Proof out, const std::string& outPath,
               bool json, const std::string& note) {
  s.proof = std::move(out);
  CheckResult r = checkProof(s.env, s.proof);
  std::string text = printScript(s, {note});
  if (!outPath.empty()) std::ofstream(outPath) << text;
  if (json) {
    nlohmann::json j = checkJson(outPath.empty() ? "-" : outPath, s, r);
    j["kind"] = "tactic";
    j["tactic"] = name;
    if (outPath.empty()) j["text"] = text;
    emit(j);
  } else if (outPath.empty() || !r.ok()) {
    std::cout << (r.ok() ? text : checkText(name, r));
  } else {
    std::cout << checkText(outPath, r);
  }
  return r.ok() ? kOk : kRejected;
}

// The input proof must check before any tactic touches it.
bool requireChecked(const std::string& path, const Script& s, const std::vector<std::string>& allow) {
  CheckResult r = checkProof(s.env, s.proof, allowOptions(s, allow));
  if (!r.ok()) std::cout << checkText(path, r);
  return r.ok();
}

std::vector<Formula> parseAll(const std::vector<std::string>& texts, const Environment& env) {
  std::vector<Formula> out;
  for (const auto& t : texts) out.push_back(parseFormula(t, env));
  return out;
}

int runDeduction(const std::string& path, std::size_t hyp, const std::vector<std::string>& allow,
                 const std::string& outPath, bool json) {
  Script s = readScript(path);
  if (!requireChecked(path, s, allow)) return kRejected;
  std::size_t h = hyp ? hyp : s.proof.hypotheses.size();
  if (h == 0) throw UsageError("the proof has no hypothesis to discharge");
  Proof out = deductionTheorem(s.env, s.proof, h);
  return emitTactic("deduction", s, std::move(out), outPath, json,
                    "deduction theorem applied to " + path + ", hypothesis " + std::to_string(h));
}

int runInternalize(const std::string& path, const std::vector<std::string>& base,
                   const std::string& outPath, bool json) {
  Script s = readScript(path);
  if (!requireChecked(path, s, {})) return kRejected;
  std::vector<Proof> ms = mProofsFor(s.env, s.proof, parseAll(base, s.env));
  Proof out = internalize(s.env, s.proof, ms);
  return emitTactic("internalize", s, std::move(out), outPath, json, "internalized " + path);
}

int runMClosure(const std::string& path, const std::string& formula,
                const std::vector<std::string>& base, const std::string& outPath, bool json) {
  Script s = readScript(path);
  s.proof = Proof{};
  Formula phi = parseFormula(formula, s.env);
  Proof out = meaningfulnessClosure(s.env, phi, parseAll(base, s.env));
  return emitTactic("mclosure", s, std::move(out), outPath, json,
                    "meaningfulness of " + toString(phi));
}

// -- demo --------------------------------------------------------------------------

int runDemoParadox(const std::string& dirArg) {
  std::string dir = dirArg.empty() ? corpusDirectory(QUILL_DEFAULT_CORPUS) : dirArg;
  std::string path = (std::filesystem::path(dir) / "release_paradox.pf").string();
  Script s = readScript(path);

  std::cout << "release paradox: " << path << "\n";
  for (const auto& g : s.proof.enabled) std::cout << "header grant:  enable " << grantLabel(g) << '\n';
  std::cout << "command key:   --allow ReleaseAxiom (supplied by this demo)\n\n";

  CheckResult r = checkProof(s.env, s.proof, CheckOptions{std::set<SchemeId>{SchemeId::ReleaseAxiom}});
  std::vector<std::size_t> marked;
  for (std::size_t i = 0; i < s.proof.steps.size(); ++i) {
    const ProofStep& st = s.proof.steps[i];
    bool ext = st.by.kind == Justification::Kind::Scheme && isExtension(st.by.scheme);
    if (ext) marked.push_back(i + 1);
    std::cout << (ext ? ">> " : "   ") << i + 1 << ": " << toString(st.formula) << "  by "
              << printJustification(st.by) << '\n';
  }
  std::cout << '\n';
  if (!r.ok()) {
    std::cout << checkText(path, r);
    return kRejected;
  }
  std::cout << turnstile(*r.judgment) << '\n';
  for (std::size_t k : marked) {
    const ProofStep& st = s.proof.steps[k - 1];
    // Written out without the ~ sugar: the instance is A(...) -> bot.
    std::string inst = st.formula->kind == FormulaKind::Implies
                           ? toString(st.formula->left) + " -> " + toString(st.formula->right)
                           : toString(st.formula);
    std::cout << "extension instance used at step " << k << ": " << inst << "  ["
              << extensionLabel(st.by.scheme, s.env.unquote(st.by.params[0].term)) << "]\n";
  }
  CheckResult locked = checkProof(s.env, s.proof, CheckOptions{std::set<SchemeId>{}});
  if (!locked.ok() && !locked.errors.empty())
    std::cout << "without the command key: rejected at step " << locked.errors.front().step
              << ": " << locked.errors.front().message << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quill: proof checker for assertibility, meaningfulness and truth"};
  app.require_subcommand(1);
  bool json = false;

  std::string file, dir, formula, outPath;
  std::vector<std::string> allow, base;
  bool noExtensions = false;
  std::size_t maxWorlds = kDefaultMaxWorlds, hyp = 0;

  auto* check = app.add_subcommand("check", "check one proof script");
  check->add_option("file", file, "script (.pf)")->required();
  check->add_option("--allow", allow, "extension scheme to permit (must also be enabled in the header)");
  check->add_flag("--json", json, "JSON output");

  auto* corpus = app.add_subcommand("corpus", "check every manifest entry");
  corpus->add_option("dir", dir, "corpus directory (default: $QUILL_CORPUS_DIR or the built-in corpus)");
  corpus->add_flag("--no-extensions", noExtensions, "permit no extension scheme in any entry");
  corpus->add_flag("--json", json, "JSON output");

  auto* cm = app.add_subcommand("countermodel", "search for a finite Kripke countermodel");
  cm->add_option("formula", formula, "propositional formula")->required();
  cm->add_option("--max-worlds", maxWorlds, "largest frame to try")->capture_default_str();
  cm->add_flag("--json", json, "JSON output");

  auto* tactic = app.add_subcommand("tactic", "transform a proof script");
  tactic->require_subcommand(1);
  auto* ded = tactic->add_subcommand("deduction", "discharge a hypothesis");
  ded->add_option("file", file, "script (.pf)")->required();
  ded->add_option("--hyp", hyp, "hypothesis number (default: the last)");
  ded->add_option("--allow", allow, "extension scheme to permit");
  auto* inl = tactic->add_subcommand("internalize", "lift a proof under A");
  inl->add_option("file", file, "script (.pf)")->required();
  inl->add_option("--base", base, "meaningfulness fact to assume, e.g. \"M({p})\"");
  auto* mcl = tactic->add_subcommand("mclosure", "prove M{formula} from base facts");
  mcl->add_option("file", file, "script supplying the declarations")->required();
  mcl->add_option("--formula", formula, "formula whose meaningfulness to prove")->required();
  mcl->add_option("--base", base, "meaningfulness fact to assume");
  for (auto* t : {ded, inl, mcl}) {
    t->add_option("-o,--output", outPath, "write the script here instead of stdout");
    t->add_flag("--json", json, "JSON output");
  }

  auto* demo = app.add_subcommand("demo", "demonstrations");
  demo->require_subcommand(1);
  auto* paradox = demo->add_subcommand("paradox", "replay the release paradox step by step");
  paradox->add_option("--corpus", dir, "corpus directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return runCheck(file, allow, json);
    if (*corpus) return runCorpusCommand(dir, noExtensions, json);
    if (*cm) return runCountermodel(formula, maxWorlds, json);
    if (*ded) return runDeduction(file, hyp, allow, outPath, json);
    if (*inl) return runInternalize(file, base, outPath, json);
    if (*mcl) return runMClosure(file, formula, base, outPath, json);
    if (*paradox) return runDemoParadox(dir);
  } catch (const UsageError& e) {
    std::cerr << "quill: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "quill: " << e.what() << '\n';
    return kRejected;
  }
  return kUsage;
}
