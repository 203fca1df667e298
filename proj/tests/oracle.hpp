#pragma once

// Deliberately naive reference computations, written against plain rationals
// so they share no code with the library beyond GMP itself.

#include <algorithm>
#include <array>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using q = mpq_class;
using triple = std::vector<q>;

inline q mod1(q x) {
  while (x >= 1) x -= 1;
  while (x < 0) x += 1;
  return x;
}

// z strictly inside the positive arc from a to b (a != b).
inline bool inside(const q& z, const q& a, const q& b) {
  if (z == a || z == b) return false;
  if (a < b) return a < z && z < b;
  return z > a || z < b;
}

inline triple sorted(triple t) {
  std::sort(t.begin(), t.end());
  return t;
}

// Complementary arc of `c` (by index 0..n-1) holding z, -1 when z is in c.
inline int arc_of(const triple& c, const q& z) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] == z) return -1;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.size() == 1 || inside(z, c[i], c[(i + 1) % c.size()])) return static_cast<int>(i);
  return -1;
}

inline bool disjoint_hulls(const triple& a, const triple& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x == y) return false;
  int first = arc_of(a, b[0]);
  for (const auto& y : b)
    if (arc_of(a, y) != first) return false;
  return true;
}

// All valid partitions of the six preimages of `parent`: bijective under
// doubling, unlinked with each other and with every class of `context`
// (equality with a context class is allowed).
inline std::vector<std::array<triple, 2>> pullback_partitions(const triple& parent,
                                                              const std::vector<triple>& context) {
  std::vector<std::pair<q, int>> pre;
  for (int i = 0; i < 3; ++i) {
    q h = parent[i] / 2;
    pre.emplace_back(h, i);
    pre.emplace_back(h + q(1, 2), i);
  }
  std::vector<std::array<triple, 2>> out;
  for (int i = 1; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      triple a, b;
      std::array<int, 3> ha{}, hb{};
      for (int k = 0; k < 6; ++k) {
        if (k == 0 || k == i || k == j) {
          a.push_back(pre[k].first);
          ++ha[pre[k].second];
        } else {
          b.push_back(pre[k].first);
          ++hb[pre[k].second];
        }
      }
      bool ok = true;
      for (int k = 0; k < 3; ++k) ok = ok && ha[k] == 1 && hb[k] == 1;
      a = sorted(a);
      b = sorted(b);
      if (!ok || !disjoint_hulls(a, b)) continue;
      for (const auto& c : context)
        for (const auto& t : {a, b})
          if (t != c && !disjoint_hulls(c, t)) ok = false;
      if (ok) out.push_back({a, b});
    }
  return out;
}

inline triple root() { return {q(1, 7), q(2, 7), q(4, 7)}; }

// Literal level-by-level pullback with every class reached so far as context;
// the first depth with zero or several valid partitions goes to ambiguous_depth.
inline std::vector<std::vector<triple>> levels(int depth, bool with_leaf, int* ambiguous_depth) {
  std::vector<std::vector<triple>> out{{root()}};
  std::vector<triple> all{root()};
  for (int k = 1; k <= depth; ++k) {
    auto context = all;
    if (with_leaf) context.push_back({q(1, 12), q(7, 12)});
    std::vector<triple> next;
    for (const auto& parent : out.back()) {
      auto parts = pullback_partitions(parent, context);
      if (parts.size() != 1) {
        if (ambiguous_depth && *ambiguous_depth < 0) *ambiguous_depth = k;
        if (parts.empty()) return out;
      }
      for (const auto& t : parts.front())
        if (t != root()) next.push_back(t);
    }
    std::sort(next.begin(), next.end());
    all.insert(all.end(), next.begin(), next.end());
    out.push_back(next);
  }
  return out;
}

}  // namespace oracle
