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

// A corpus is a directory of .pf scripts plus manifest.json:
//
//   {"entries": [{"script": "x.pf", "conclusion": "...",
//                 "extensions": ["ReleaseAxiom(bot)"], "locus": "..."}]}
//
// runCorpus checks every entry (in parallel) against its expected
// judgment. Expected conclusions are parsed in the script's own
// environment and compared structurally; extension sets must match exactly.

#ifndef QUILL_CORPUS_HPP
#define QUILL_CORPUS_HPP

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "quill/error.hpp"
#include "quill/kernel.hpp"
#include "quill/parser.hpp"
#include "quill/script.hpp"

namespace quill {

struct CorpusEntry {
  std::string script;
  std::string conclusion;
  std::vector<std::string> extensions;  // sorted
  std::string locus;
};

struct EntryResult {
  CorpusEntry entry;
  bool passed = false;
  std::optional<std::string> conclusion;  // as checked, when the proof checks
  std::vector<std::string> extensions;
  std::size_t steps = 0;
  std::vector<StepError> errors;     // from the checker
  std::vector<std::string> diffs;    // expected vs actual
};

struct CorpusReport {
  std::string directory;
  std::vector<EntryResult> entries;

  std::size_t passed() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const EntryResult& e) { return e.passed; }));
  }
  bool ok() const { return !entries.empty() && passed() == entries.size(); }
};

// The corpus directory: QUILL_CORPUS_DIR when set, else `fallback`.
inline std::string corpusDirectory(const std::string& fallback) {
  const char* env = std::getenv("QUILL_CORPUS_DIR");
  return env && *env ? std::string(env) : fallback;
}

inline std::vector<CorpusEntry> loadManifest(const std::string& dir) {
  std::filesystem::path path = std::filesystem::path(dir) / "manifest.json";
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed manifest '" + path.string() + "': " + e.what());
  }
  std::vector<CorpusEntry> out;
  try {
    for (const auto& e : j.at("entries")) {
      CorpusEntry c;
      c.script = e.at("script").get<std::string>();
      c.conclusion = e.at("conclusion").get<std::string>();
      c.extensions = e.value("extensions", std::vector<std::string>{});
      std::sort(c.extensions.begin(), c.extensions.end());
      c.locus = e.value("locus", std::string());
      out.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed manifest '" + path.string() + "': " + e.what());
  }
  return out;
}

// Checks one parsed script against an entry.
inline EntryResult checkEntry(const CorpusEntry& entry, const Script& s,
                              const CheckOptions& opts = {}) {
  EntryResult r;
  r.entry = entry;
  r.steps = s.proof.steps.size();
  CheckResult c = checkProof(s.env, s.proof, opts);
  r.errors = c.errors;
  if (!c.ok()) {
    r.diffs.push_back("proof does not check (" + std::to_string(c.errors.size()) + " error(s))");
    return r;
  }
  const Judgment& j = *c.judgment;
  r.conclusion = toString(j.conclusion);
  r.extensions = j.extensionsUsed;
  std::sort(r.extensions.begin(), r.extensions.end());
  if (!j.hypotheses.empty())
    r.diffs.push_back("expected a theorem, found " + std::to_string(j.hypotheses.size()) +
                      " open hypothesis(es)");
  try {
    Formula want = parseFormula(entry.conclusion, s.env);
    if (!(want == j.conclusion))
      r.diffs.push_back("conclusion: expected '" + toString(want) + "', got '" + *r.conclusion +
                        "'");
  } catch (const Error& e) {
    r.diffs.push_back(std::string("expected conclusion does not parse: ") + e.what());
  }
  if (r.extensions != entry.extensions) {
    auto show = [](const std::vector<std::string>& xs) {
      std::string out;
      for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
      return "{" + out + "}";
    };
    r.diffs.push_back("extensions: expected " + show(entry.extensions) + ", got " +
                      show(r.extensions));
  }
  r.passed = r.diffs.empty();
  return r;
}

inline EntryResult runEntry(const std::string& dir, const CorpusEntry& entry,
                            const CheckOptions& opts) {
  std::filesystem::path path = std::filesystem::path(dir) / entry.script;
  try {
    if (!std::filesystem::exists(path)) {
      EntryResult r;
      r.entry = entry;
      r.diffs.push_back("missing script '" + path.string() + "'");
      return r;
    }
    return checkEntry(entry, loadScript(path.string()), opts);
  } catch (const Error& e) {
    EntryResult r;
    r.entry = entry;
    r.diffs.push_back(e.what());
    return r;
  }
}

// By default each entry may use exactly the extension schemes its manifest
// line records; pass opts to override.
inline CorpusReport runCorpus(const std::string& dir,
                              std::optional<CheckOptions> opts = std::nullopt) {
  CorpusReport report;
  report.directory = dir;
  std::vector<CorpusEntry> entries = loadManifest(dir);
  std::vector<std::future<EntryResult>> jobs;
  for (const CorpusEntry& e : entries) {
    CheckOptions o;
    if (opts) {
      o = *opts;
    } else {
      std::set<SchemeId> keys;
      for (const auto& label : e.extensions)
        if (auto id = schemeByName(label.substr(0, label.find('(')))) keys.insert(*id);
      o.allowedExtensions = keys;
    }
    jobs.push_back(std::async(std::launch::async, runEntry, dir, e, o));
  }
  for (auto& j : jobs) report.entries.push_back(j.get());
  return report;
}

}  // namespace quill

#endif  // QUILL_CORPUS_HPP
