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

// Finite Kripke models for the propositional fragment (atoms of arity 0,
// bot, &, |, ->) and exhaustive countermodel search.
//
// Worlds are 0..n-1 and sets of worlds are bitmasks, so n is capped at
// kWorldLimit.

#ifndef QUILL_KRIPKE_HPP
#define QUILL_KRIPKE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quill/error.hpp"
#include "quill/syntax.hpp"

namespace quill {

using WorldSet = std::uint32_t;

inline constexpr std::size_t kWorldLimit = 6;
inline constexpr std::size_t kDefaultMaxWorlds = 4;

class SemanticsError : public Error {
 public:
  using Error::Error;
};

// A finite poset. leq[w] is the set of worlds above or equal to w.
class KripkeFrame {
 public:
  KripkeFrame() : KripkeFrame(1, {{0, 0}}) {}

  // Order given as the full relation; must already be a partial order.
  KripkeFrame(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& order)
      : n_(n), up_(n, 0) {
    if (n == 0 || n > kWorldLimit)
      throw SemanticsError("frame size must be between 1 and " + std::to_string(kWorldLimit));
    for (auto [a, b] : order) {
      if (a >= n || b >= n) throw SemanticsError("order mentions a world outside the frame");
      up_[a] |= bit(b);
    }
    for (std::size_t w = 0; w < n; ++w)
      if (!(up_[w] & bit(w)))
        throw SemanticsError("order is not reflexive at w" + std::to_string(w));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (!leq(a, b)) continue;
        if (a != b && leq(b, a))
          throw SemanticsError("order is not antisymmetric: w" + std::to_string(a) + ", w" +
                               std::to_string(b));
        if ((up_[b] & ~up_[a]) != 0)
          throw SemanticsError("order is not transitive through w" + std::to_string(b));
      }
  }

  // Reflexive-transitive closure of the given pairs.
  static KripkeFrame generatedBy(std::size_t n,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t w = 0; w < n; ++w) r[w][w] = true;
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) throw SemanticsError("order mentions a world outside the frame");
      r[a][b] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (r[i][k] && r[k][j]) r[i][j] = true;
    std::vector<std::pair<std::size_t, std::size_t>> full;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][j]) full.push_back({i, j});
    return KripkeFrame(n, full);
  }

  static KripkeFrame chain(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i + 1 < n; ++i) pairs.push_back({i, i + 1});
    return generatedBy(n, pairs);
  }

  std::size_t size() const { return n_; }
  WorldSet all() const { return static_cast<WorldSet>((1u << n_) - 1); }
  WorldSet up(std::size_t w) const { return up_.at(w); }
  bool leq(std::size_t a, std::size_t b) const { return (up_.at(a) & bit(b)) != 0; }
  bool isUpset(WorldSet s) const {
    for (std::size_t w = 0; w < n_; ++w)
      if ((s & bit(w)) && (up_[w] & ~s)) return false;
    return true;
  }

  // Pairs a < b with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) {
        if (a == b || !leq(a, b)) continue;
        bool direct = true;
        for (std::size_t c = 0; c < n_ && direct; ++c)
          if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
        if (direct) out.push_back({a, b});
      }
    return out;
  }

  static WorldSet bit(std::size_t w) { return static_cast<WorldSet>(1u << w); }

 private:
  std::size_t n_;
  std::vector<WorldSet> up_;
};

struct KripkeModel {
  KripkeFrame frame;
  std::map<std::string, WorldSet> valuation;  // atoms absent here hold nowhere
};

inline bool checkMonotonicity(const KripkeModel& m) {
  for (const auto& [atom, s] : m.valuation)
    if ((s & ~m.frame.all()) != 0 || !m.frame.isUpset(s)) return false;
  return true;
}

// -- propositional fragment ------------------------------------------------------

inline bool isPropositional(const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Atom:
      return f->terms.empty();
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return isPropositional(f->left) && isPropositional(f->right);
    default:
      return false;
  }
}

inline void requirePropositional(const Formula& f) {
  if (!isPropositional(f))
    throw SemanticsError("not a propositional formula: " + toString(f));
}

inline std::set<std::string> propositionalAtoms(const Formula& f) {
  requirePropositional(f);
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g->kind == FormulaKind::Atom) out.insert(g->symbol);
    if (g->left.valid()) walk(g->left);
    if (g->right.valid()) walk(g->right);
  };
  walk(f);
  return out;
}

namespace detail {
inline WorldSet truthSet(const KripkeModel& m, const Formula& f) {
  switch (f->kind) {
    case FormulaKind::Bot:
      return 0;
    case FormulaKind::Atom: {
      auto it = m.valuation.find(f->symbol);
      return it == m.valuation.end() ? 0 : it->second;
    }
    case FormulaKind::And:
      return truthSet(m, f->left) & truthSet(m, f->right);
    case FormulaKind::Or:
      return truthSet(m, f->left) | truthSet(m, f->right);
    case FormulaKind::Implies: {
      WorldSet a = truthSet(m, f->left), b = truthSet(m, f->right), out = 0;
      for (std::size_t w = 0; w < m.frame.size(); ++w)
        if ((m.frame.up(w) & a & ~b) == 0) out |= KripkeFrame::bit(w);
      return out;
    }
    default:
      throw SemanticsError("not a propositional formula: " + toString(f));
  }
}
}  // namespace detail

// Worlds forcing f.
inline WorldSet truthSet(const KripkeModel& m, const Formula& f) {
  requirePropositional(f);
  if (!checkMonotonicity(m)) throw SemanticsError("valuation is not upward closed");
  return detail::truthSet(m, f);
}

inline bool evalAt(const KripkeModel& m, std::size_t world, const Formula& f) {
  if (world >= m.frame.size()) throw SemanticsError("no world w" + std::to_string(world));
  return (truthSet(m, f) & KripkeFrame::bit(world)) != 0;
}

// -- enumeration -----------------------------------------------------------------

// All posets on n worlds, one per isomorphism class. Each is labelled so
// that a < b implies a precedes b numerically.
inline const std::vector<KripkeFrame>& posets(std::size_t n) {
  static std::map<std::size_t, std::vector<KripkeFrame>> cache;
  if (n == 0 || n > kWorldLimit)
    throw SemanticsError("frame size must be between 1 and " + std::to_string(kWorldLimit));
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) slots.push_back({a, b});
  std::vector<std::size_t> perm(n);

  auto code = [&](const std::vector<std::vector<bool>>& r, const std::vector<std::size_t>& p) {
    std::uint64_t c = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) c = (c << 1) | (r[p[a]][p[b]] ? 1 : 0);
    return c;
  };

  std::set<std::uint64_t> seen;
  std::vector<KripkeFrame> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (std::size_t w = 0; w < n; ++w) r[w][w] = true;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1) r[slots[i].first][slots[i].second] = true;
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a)
      for (std::size_t b = 0; b < n && transitive; ++b)
        for (std::size_t c = 0; c < n && transitive; ++c)
          if (r[a][b] && r[b][c] && !r[a][c]) transitive = false;
    if (!transitive) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t canon = ~std::uint64_t{0};
    do canon = std::min(canon, code(r, perm));
    while (std::next_permutation(perm.begin(), perm.end()));
    if (!seen.insert(canon).second) continue;
    std::vector<std::pair<std::size_t, std::size_t>> full;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (r[a][b]) full.push_back({a, b});
    out.emplace_back(n, full);
  }
  return cache.emplace(n, std::move(out)).first->second;
}

inline std::vector<WorldSet> upsets(const KripkeFrame& frame) {
  std::vector<WorldSet> out;
  for (WorldSet s = 0; s <= frame.all(); ++s)
    if (frame.isUpset(s)) out.push_back(s);
  return out;
}

// Calls visit on every model over `atoms` with 1..maxWorlds worlds, frames
// up to isomorphism, smaller frames first. Stops when visit returns false.
inline void forEachModel(const std::vector<std::string>& atoms, std::size_t maxWorlds,
                         const std::function<bool(const KripkeModel&)>& visit) {
  for (std::size_t n = 1; n <= maxWorlds; ++n) {
    for (const KripkeFrame& frame : posets(n)) {
      std::vector<WorldSet> ups = upsets(frame);
      std::vector<std::size_t> idx(atoms.size(), 0);
      KripkeModel m{frame, {}};
      for (;;) {
        for (std::size_t i = 0; i < atoms.size(); ++i) m.valuation[atoms[i]] = ups[idx[i]];
        if (!visit(m)) return;
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == ups.size()) idx[i++] = 0;
        if (i == idx.size()) break;
      }
    }
  }
}

struct Countermodel {
  KripkeModel model;
  std::size_t world = 0;  // a world where the formula fails
};

inline std::optional<Countermodel> findCountermodel(const Formula& phi,
                                                    std::size_t maxWorlds = kDefaultMaxWorlds) {
  if (maxWorlds == 0 || maxWorlds > kWorldLimit)
    throw SemanticsError("max worlds must be between 1 and " + std::to_string(kWorldLimit));
  std::set<std::string> as = propositionalAtoms(phi);
  std::vector<std::string> atoms(as.begin(), as.end());
  std::optional<Countermodel> found;
  forEachModel(atoms, maxWorlds, [&](const KripkeModel& m) {
    WorldSet t = detail::truthSet(m, phi);
    if (t == m.frame.all()) return true;
    std::size_t w = 0;
    while (t >> w & 1) ++w;
    found = Countermodel{m, w};
    return false;
  });
  return found;
}

}  // namespace quill

#endif  // QUILL_KRIPKE_HPP
