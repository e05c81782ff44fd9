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

// Text and JSON renderings of check, corpus and countermodel results. The
// JSON shapes are described by docs/report.schema.json; both renderings
// are built from the same values.

#ifndef QUILL_REPORT_HPP
#define QUILL_REPORT_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "quill/corpus.hpp"
#include "quill/kernel.hpp"
#include "quill/kripke.hpp"
#include "quill/script.hpp"

namespace quill {

inline constexpr int kReportVersion = 1;

inline std::string grantLabel(const ExtensionGrant& g) {
  std::string s(schemeName(g.scheme));
  if (g.instance) s += "(" + toString(*g.instance) + ")";
  return s;
}

inline std::string turnstile(const Judgment& j) {
  std::string out;
  for (std::size_t i = 0; i < j.hypotheses.size(); ++i)
    out += (i ? ", " : "") + toString(j.hypotheses[i]);
  return out + (out.empty() ? "|- " : " |- ") + toString(j.conclusion);
}

// -- check ------------------------------------------------------------------------

inline nlohmann::json errorsJson(const std::vector<StepError>& errors) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : errors) out.push_back({{"step", e.step}, {"message", e.message}});
  return out;
}

inline nlohmann::json checkJson(const std::string& path, const Script& s, const CheckResult& r) {
  nlohmann::json j = {{"kind", "check"}, {"version", kReportVersion}, {"script", path},
                      {"ok", r.ok()},     {"steps", s.proof.steps.size()}};
  nlohmann::json enabled = nlohmann::json::array();
  for (const auto& g : s.proof.enabled) enabled.push_back(grantLabel(g));
  j["enabled"] = enabled;
  if (r.judgment) {
    nlohmann::json hyps = nlohmann::json::array();
    for (const auto& h : r.judgment->hypotheses) hyps.push_back(toString(h));
    j["judgment"] = {{"hypotheses", hyps},
                     {"conclusion", toString(r.judgment->conclusion)},
                     {"extensionsUsed", r.judgment->extensionsUsed}};
  } else {
    j["judgment"] = nullptr;
  }
  j["errors"] = errorsJson(r.errors);
  return j;
}

inline std::string checkText(const std::string& path, const CheckResult& r) {
  std::ostringstream os;
  if (r.ok()) {
    os << turnstile(*r.judgment) << '\n';
    os << "extensions: ";
    if (r.judgment->extensionsUsed.empty()) os << "none";
    for (std::size_t i = 0; i < r.judgment->extensionsUsed.size(); ++i)
      os << (i ? ", " : "") << r.judgment->extensionsUsed[i];
    os << '\n';
  } else {
    os << path << ": rejected\n";
    for (const auto& e : r.errors) {
      if (e.step) os << "  step " << e.step << ": ";
      else os << "  ";
      os << e.message << '\n';
    }
  }
  return os.str();
}

// -- corpus -----------------------------------------------------------------------

inline nlohmann::json corpusJson(const CorpusReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json actual = nullptr;
    if (e.conclusion) actual = {{"conclusion", *e.conclusion}, {"extensions", e.extensions}};
    entries.push_back({{"script", e.entry.script},
                       {"locus", e.entry.locus},
                       {"passed", e.passed},
                       {"steps", e.steps},
                       {"expected",
                        {{"conclusion", e.entry.conclusion}, {"extensions", e.entry.extensions}}},
                       {"actual", actual},
                       {"diffs", e.diffs},
                       {"errors", errorsJson(e.errors)}});
  }
  return {{"kind", "corpus"},        {"version", kReportVersion},
          {"directory", r.directory}, {"ok", r.ok()},
          {"passed", r.passed()},     {"failed", r.entries.size() - r.passed()},
          {"entries", entries}};
}

inline std::string corpusText(const CorpusReport& r) {
  std::ostringstream os;
  for (const auto& e : r.entries) {
    os << (e.passed ? "PASS " : "FAIL ") << e.entry.script;
    if (e.conclusion) os << "  |- " << *e.conclusion;
    os << '\n';
    for (const auto& d : e.diffs) os << "     " << d << '\n';
    for (std::size_t i = 0; i < e.errors.size() && i < 5; ++i)
      os << "     step " << e.errors[i].step << ": " << e.errors[i].message << '\n';
  }
  os << r.passed() << "/" << r.entries.size() << " entries passed\n";
  return os.str();
}

// -- countermodel -----------------------------------------------------------------

inline nlohmann::json countermodelJson(const Formula& phi, std::size_t maxWorlds,
                                       const std::optional<Countermodel>& cm) {
  nlohmann::json j = {{"kind", "countermodel"},
                      {"version", kReportVersion},
                      {"formula", toString(phi)},
                      {"maxWorlds", maxWorlds},
                      {"found", cm.has_value()}};
  if (!cm) {
    j["model"] = nullptr;
    return j;
  }
  const KripkeFrame& f = cm->model.frame;
  nlohmann::json order = nlohmann::json::array();
  for (auto [a, b] : f.covers()) order.push_back({a, b});
  nlohmann::json val = nlohmann::json::object();
  for (const auto& [atom, s] : cm->model.valuation) {
    nlohmann::json ws = nlohmann::json::array();
    for (std::size_t w = 0; w < f.size(); ++w)
      if (s >> w & 1) ws.push_back(w);
    val[atom] = ws;
  }
  j["model"] = {{"worlds", f.size()}, {"covers", order}, {"valuation", val},
                {"refutedAt", cm->world}};
  return j;
}

inline std::string countermodelText(const Formula& phi, std::size_t maxWorlds,
                                    const std::optional<Countermodel>& cm) {
  std::ostringstream os;
  if (!cm) {
    os << "no countermodel for " << toString(phi) << " with at most " << maxWorlds
       << " worlds\n";
    return os.str();
  }
  const KripkeFrame& f = cm->model.frame;
  os << "countermodel for " << toString(phi) << " (" << f.size() << " world"
     << (f.size() == 1 ? "" : "s") << ")\n";
  os << "  order:";
  auto covers = f.covers();
  if (covers.empty()) os << " (discrete)";
  for (auto [a, b] : covers) os << " w" << a << " <= w" << b << ";";
  os << '\n';
  for (const auto& [atom, s] : cm->model.valuation) {
    os << "  " << atom << ": {";
    bool first = true;
    for (std::size_t w = 0; w < f.size(); ++w)
      if (s >> w & 1) {
        os << (first ? "" : ", ") << 'w' << w;
        first = false;
      }
    os << "}\n";
  }
  os << "  fails at w" << cm->world << '\n';
  return os.str();
}

}  // namespace quill

#endif  // QUILL_REPORT_HPP
