#include "kaleido/dendrite.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace kaleido {

namespace {

// Separation by any point with at least two angles (branch or regular).
bool splits(const gap_class& w, const gap_class& x, const gap_class& y) {
  if (w.size() < 2 || w == x || w == y) return false;
  return w.branch_toward(x) != w.branch_toward(y);
}

void require_branch(const gap_class& x, const char* what) {
  if (!x.is_branch()) throw std::invalid_argument(std::string(what) + ": " + x.str() + " is not a branch point");
}

std::vector<angle> cut_order(const gap_class& a, const angle& base) {
  std::vector<angle> as = a.angles();
  std::sort(as.begin(), as.end(), [&](const angle& u, const angle& v) {
    return positive_length(base, u) < positive_length(base, v);
  });
  return as;
}

}  // namespace

std::string to_string(point_order o) {
  switch (o) {
    case point_order::end: return "end";
    case point_order::regular: return "regular";
    case point_order::branch: return "branch";
  }
  return "?";
}

point_order order_of(const gap_class& p) {
  if (p.size() == 1) return point_order::end;
  if (p.size() == 2) return point_order::regular;
  return point_order::branch;
}

bool separates(const gap_class& z, const gap_class& x, const gap_class& y) {
  require_branch(z, "separates");
  if (x == z || y == z) throw std::invalid_argument("separates: x and y must differ from z");
  if (x == y) return false;
  return z.branch_toward(x) != z.branch_toward(y);
}

int branch_of(const gap_class& x, const gap_class& y) {
  require_branch(x, "branch_of");
  if (x == y) throw std::invalid_argument("branch_of: y must differ from x");
  return x.branch_toward(y);
}

arc plus_gap(const gap_class& a, const gap_class& b) {
  arc from_a = a.arc_at(a.branch_toward(b));
  arc from_b = b.arc_at(b.branch_toward(a));
  return arc{from_a.start, from_b.end, false};
}

arc minus_gap(const gap_class& a, const gap_class& b) {
  arc from_a = a.arc_at(a.branch_toward(b));
  arc from_b = b.arc_at(b.branch_toward(a));
  return arc{from_b.start, from_a.end, false};
}

gap_class center(const gap_class& x, const gap_class& y, const gap_class& z, const lamination& L, int budget) {
  if (x == y || y == z || x == z) throw std::invalid_argument("center: points must be pairwise distinct");
  if (splits(x, y, z)) return x;
  if (splits(y, x, z)) return y;
  if (splits(z, x, y)) return z;
  // The median has one angle in each of the three gaps between the blocks;
  // search the shortest gap.
  auto gap_opposite = [](const gap_class& u, const gap_class& v, const gap_class& w) {
    arc plus = plus_gap(u, v);
    return plus.contains(w.angles().front()) ? minus_gap(u, v) : plus;
  };
  std::vector<arc> gaps{gap_opposite(x, y, z), gap_opposite(y, z, x), gap_opposite(z, x, y)};
  auto shortest = std::min_element(gaps.begin(), gaps.end(),
                                   [](const arc& l, const arc& r) { return l.length() < r.length(); });
  auto found = L.first_class(
      {*shortest},
      [&](const gap_class& c) {
        int i = c.branch_toward(x), j = c.branch_toward(y), k = c.branch_toward(z);
        return i != j && j != k && i != k;
      },
      budget);
  if (!found) throw budget_exhausted("center: no median of " + x.str() + ", " + y.str() + ", " + z.str() +
                                     " within depth " + std::to_string(budget));
  return *found;
}

std::vector<gap_class> center_closure(std::vector<gap_class> S, const lamination& L) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  std::set<gap_class> have(S.begin(), S.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<gap_class> added;
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = i + 1; j < S.size(); ++j)
        for (std::size_t k = j + 1; k < S.size(); ++k) {
          gap_class c = center(S[i], S[j], S[k], L);
          if (have.insert(c).second) added.push_back(c);
        }
    if (!added.empty()) {
      grew = true;
      S.insert(S.end(), added.begin(), added.end());
    }
  }
  std::sort(S.begin(), S.end(), canonical_less);
  return S;
}

region region::whole_dendrite() { return region{}; }

region region::branch_at(const gap_class& a, int index) {
  require_branch(a, "region");
  if (index < 1 || index > 3) throw std::invalid_argument("region: branch index out of range");
  region r;
  r.shape_ = kind::branch;
  r.a_ = a;
  r.index_ = index;
  return r;
}

region region::between(const gap_class& a, const gap_class& b) {
  require_branch(a, "region");
  require_branch(b, "region");
  if (a == b) throw std::invalid_argument("region: D(a,a) is empty");
  region r;
  r.shape_ = kind::between;
  r.a_ = a;
  r.b_ = b;
  r.a_toward_b_ = a.branch_toward(b);
  r.b_toward_a_ = b.branch_toward(a);
  return r;
}

bool region::contains(const gap_class& y) const {
  switch (shape_) {
    case kind::whole: return true;
    case kind::branch: return !(y == a_) && a_.branch_toward(y) == index_;
    case kind::between:
      return !(y == a_) && !(y == b_) && a_.branch_toward(y) == a_toward_b_ && b_.branch_toward(y) == b_toward_a_;
  }
  return false;
}

std::vector<arc> region::arcs() const {
  switch (shape_) {
    case kind::whole: return {arc::whole()};
    case kind::branch: return {a_.arc_at(index_)};
    case kind::between: return {plus_gap(a_, b_), minus_gap(a_, b_)};
  }
  return {};
}

int region::side_count(const gap_class& y) const {
  if (shape_ != kind::between) return 0;
  arc plus = plus_gap(a_, b_);
  int n = 0;
  for (const auto& z : y.angles()) n += plus.contains(z) ? 1 : 0;
  return n;
}

std::string region::str() const {
  switch (shape_) {
    case kind::whole: return "D";
    case kind::branch: return "B(" + a_.id_str() + "," + std::to_string(index_) + ")";
    case kind::between: return "D(" + a_.id_str() + "," + b_.id_str() + ")";
  }
  return "?";
}

bool operator<(const region& l, const region& r) {
  return std::tie(l.shape_, l.a_, l.index_, l.b_) < std::tie(r.shape_, r.a_, r.index_, r.b_);
}

bool operator==(const region& l, const region& r) {
  return l.shape_ == r.shape_ && l.a_ == r.a_ && l.index_ == r.index_ && l.b_ == r.b_;
}

bool rooted_leq(const gap_class& a, const gap_class& b, const rooted_structure& R) {
  if (a == b) return true;
  require_branch(a, "rooted_leq");
  if (a.contains(R.base)) throw std::invalid_argument("rooted_leq: base angle lies in " + a.str());
  return a.arc_containing(R.base) != a.branch_toward(b);
}

namespace {

bool rooted_in_piece(const gap_class& a, const gap_class& b, const rooted_structure& R, int piece) {
  if (a == b) throw std::invalid_argument("rooted relation: a and b must differ");
  if (!rooted_leq(a, b, R)) return false;
  auto cut = cut_order(a, R.base);
  arc piece_arc{cut[piece - 1], cut[piece], false};
  return piece_arc.contains(b.angles().front());
}

}  // namespace

bool rooted_r1(const gap_class& a, const gap_class& b, const rooted_structure& R) {
  return rooted_in_piece(a, b, R, 1);
}

bool rooted_r2(const gap_class& a, const gap_class& b, const rooted_structure& R) {
  return rooted_in_piece(a, b, R, 2);
}

gap_class rooted_meet(const gap_class& a, const gap_class& b, const rooted_structure& R, const lamination& L) {
  if (rooted_leq(a, b, R)) return a;
  if (rooted_leq(b, a, R)) return b;
  return center(gap_class({R.base}), a, b, L);
}

std::vector<gap_class> meet_closure(std::vector<gap_class> S, const rooted_structure& R, const lamination& L) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  std::set<gap_class> have(S.begin(), S.end());
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      gap_class m = rooted_meet(S[i], S[j], R, L);
      if (have.insert(m).second) S.push_back(m);
    }
  std::sort(S.begin(), S.end(), canonical_less);
  return S;
}

dt2_table build_dt2_table(const std::vector<gap_class>& sample, const rooted_structure& R) {
  dt2_table t;
  std::size_t n = sample.size();
  t.leq.assign(n, std::vector<char>(n, 0));
  t.r1 = t.r2 = t.leq;
  for (const auto& s : sample) t.labels.push_back(s.id_str());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      t.leq[i][j] = rooted_leq(sample[i], sample[j], R);
      if (i != j) {
        t.r1[i][j] = rooted_r1(sample[i], sample[j], R);
        t.r2[i][j] = rooted_r2(sample[i], sample[j], R);
      }
    }
  return t;
}

std::vector<axiom_result> check_dt2_axioms(const dt2_table& t) {
  std::size_t n = t.labels.size();
  std::vector<axiom_result> out;
  for (int k = 1; k <= 6; ++k) out.push_back({k, true, ""});
  auto fail = [&](int axiom, const std::string& why) {
    auto& r = out[axiom - 1];
    if (r.pass) {
      r.pass = false;
      r.counterexample = why;
    }
  };
  auto lt = [&](std::size_t a, std::size_t b) { return a != b && t.leq[a][b]; };
  const auto& L = t.labels;

  // (1) partial order with pairwise infima
  std::vector<std::vector<long>> meet(n, std::vector<long>(n, -1));
  for (std::size_t a = 0; a < n; ++a) {
    if (!t.leq[a][a]) fail(1, "(" + L[a] + ") not reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && t.leq[a][b] && t.leq[b][a]) fail(1, "(" + L[a] + ", " + L[b] + ") antisymmetry");
      for (std::size_t c = 0; c < n; ++c)
        if (t.leq[a][b] && t.leq[b][c] && !t.leq[a][c])
          fail(1, "(" + L[a] + ", " + L[b] + ", " + L[c] + ") transitivity");
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<std::size_t> lower;
      for (std::size_t c = 0; c < n; ++c)
        if (t.leq[c][a] && t.leq[c][b]) lower.push_back(c);
      for (auto m : lower) {
        bool greatest = true;
        for (auto c : lower) greatest = greatest && t.leq[c][m];
        if (greatest) {
          meet[a][b] = static_cast<long>(m);
          break;
        }
      }
      if (meet[a][b] < 0) fail(1, "(" + L[a] + ", " + L[b] + ") has no infimum in the sample");
    }
  // (2) down-sets are chains
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t.leq[b][a] && t.leq[c][a] && !t.leq[b][c] && !t.leq[c][b])
          fail(2, "(" + L[b] + ", " + L[c] + " below " + L[a] + ") incomparable");
  // (3) at most two immediate successors
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> succ;
    for (std::size_t b = 0; b < n; ++b) {
      if (!lt(a, b)) continue;
      bool immediate = true;
      for (std::size_t c = 0; c < n && immediate; ++c)
        if (lt(a, c) && lt(c, b)) immediate = false;
      if (immediate) succ.push_back(b);
    }
    if (succ.size() > 2) fail(3, "(" + L[a] + "; " + L[succ[0]] + ", " + L[succ[1]] + ", " + L[succ[2]] + ")");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // (4) R_i(a,b) implies a < b
      if ((t.r1[a][b] || t.r2[a][b]) && !lt(a, b)) fail(4, "(" + L[a] + ", " + L[b] + ")");
      // (5) a < b implies R_1(a,b) or R_2(a,b)
      if (lt(a, b) && !t.r1[a][b] && !t.r2[a][b]) fail(5, "(" + L[a] + ", " + L[b] + ")");
      // (6) R_i(a,b) and b o c = a imply not R_i(a,c)
      for (std::size_t c = 0; c < n; ++c) {
        if (meet[b][c] != static_cast<long>(a)) continue;
        if ((t.r1[a][b] && t.r1[a][c]) || (t.r2[a][b] && t.r2[a][c]))
          fail(6, "(" + L[a] + ", " + L[b] + ", " + L[c] + ")");
      }
    }
  return out;
}

std::vector<axiom_result> check_dt2_axioms(const std::vector<gap_class>& sample, const rooted_structure& R) {
  return check_dt2_axioms(build_dt2_table(sample, R));
}

std::string rooted_dump(const std::vector<gap_class>& sample, const rooted_structure& R) {
  std::vector<gap_class> s = sample;
  std::sort(s.begin(), s.end(), canonical_less);
  std::ostringstream out;
  for (const auto& a : s)
    for (const auto& b : s) {
      if (a == b || !rooted_leq(a, b, R)) continue;
      out << a.id_str() << "\t" << b.id_str() << "\tleq\n";
      if (rooted_r1(a, b, R)) out << a.id_str() << "\t" << b.id_str() << "\tr1\n";
      if (rooted_r2(a, b, R)) out << a.id_str() << "\t" << b.id_str() << "\tr2\n";
    }
  return out.str();
}

}  // namespace kaleido
