#include "kaleido/lamination.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

#include "kaleido/errors.hpp"

namespace kaleido {

namespace {

constexpr std::size_t kLocalEnumerationCap = std::size_t{1} << 20;

// Range min/max over per-position integers.
class sparse_table {
 public:
  sparse_table() = default;
  sparse_table(const std::vector<int>& values, bool take_min) : take_min_(take_min) {
    std::size_t n = values.size();
    table_.push_back(values);
    for (std::size_t w = 1; 2 * w <= n; w *= 2) {
      const auto& prev = table_.back();
      std::vector<int> next(n - 2 * w + 1);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = pick(prev[i], prev[i + w]);
      table_.push_back(std::move(next));
    }
  }

  // Inclusive range [lo, hi], lo <= hi.
  int query(std::size_t lo, std::size_t hi) const {
    std::size_t len = hi - lo + 1;
    std::size_t level = 0;
    while ((std::size_t{2} << level) <= len) ++level;
    return pick(table_[level][lo], table_[level][hi + 1 - (std::size_t{1} << level)]);
  }

 private:
  int pick(int a, int b) const { return take_min_ ? std::min(a, b) : std::max(a, b); }
  bool take_min_ = true;
  std::vector<std::vector<int>> table_;
};

// Decides unlinkedness of a candidate triple against a fixed set of classes in
// logarithmic time: along each non-wrapping arc of the candidate, every class
// with an angle strictly inside must lie entirely inside.
class unlink_context {
 public:
  explicit unlink_context(const std::vector<gap_class>& classes) : classes_(classes) {
    for (std::uint32_t c = 0; c < classes_.size(); ++c)
      for (const auto& a : classes_[c].angles()) points_.emplace_back(a, c);
    std::sort(points_.begin(), points_.end());
    std::vector<int> lo(classes_.size(), -1), hi(classes_.size(), -1);
    for (std::size_t p = 0; p < points_.size(); ++p) {
      auto c = points_[p].second;
      if (lo[c] < 0) lo[c] = static_cast<int>(p);
      hi[c] = static_cast<int>(p);
    }
    std::vector<int> mins(points_.size()), maxs(points_.size());
    for (std::size_t p = 0; p < points_.size(); ++p) {
      mins[p] = lo[points_[p].second];
      maxs[p] = hi[points_[p].second];
    }
    if (!points_.empty()) {
      min_table_ = sparse_table(mins, true);
      max_table_ = sparse_table(maxs, false);
    }
  }

  bool admits(const gap_class& t) const {
    std::vector<std::size_t> pos;
    for (const auto& a : t.angles()) {
      auto it = std::lower_bound(points_.begin(), points_.end(), std::make_pair(a, std::uint32_t{0}));
      if (it != points_.end() && it->first == a) {
        // Sharing an angle is only fine for the very same class.
        return classes_[it->second] == t;
      }
      pos.push_back(static_cast<std::size_t>(it - points_.begin()));
    }
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
      std::size_t lo = pos[i], hi = pos[i + 1];
      if (lo == hi) continue;
      if (min_table_.query(lo, hi - 1) < static_cast<int>(lo)) return false;
      if (max_table_.query(lo, hi - 1) >= static_cast<int>(hi)) return false;
    }
    return true;
  }

 private:
  std::vector<gap_class> classes_;
  std::vector<std::pair<angle, std::uint32_t>> points_;
  sparse_table min_table_, max_table_;
};

bool on_critical_side(const angle& z) {
  static const angle lo(1, 12), hi(7, 12);
  return in_positive_arc(z, lo, hi);
}

struct preimage {
  angle value;
  int parent_index;
};

std::pair<gap_class, gap_class> brute_force_pullback(const gap_class& c, const unlink_context& ctx) {
  if (!c.is_branch()) throw std::invalid_argument("pullback: parent must be a branch class");
  std::array<preimage, 6> pre;
  for (int i = 0; i < 3; ++i) {
    auto [h1, h2] = halves(c.angles()[i]);
    pre[2 * i] = {h1, i};
    pre[2 * i + 1] = {h2, i};
  }
  int child_depth = c.depth() + 1;
  std::vector<std::pair<gap_class, gap_class>> valid;
  for (int i = 1; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      std::array<bool, 6> in_first{};
      in_first[0] = in_first[i] = in_first[j] = true;
      std::vector<angle> first, second;
      std::array<int, 3> hits_first{}, hits_second{};
      for (int k = 0; k < 6; ++k) {
        if (in_first[k]) {
          first.push_back(pre[k].value);
          ++hits_first[pre[k].parent_index];
        } else {
          second.push_back(pre[k].value);
          ++hits_second[pre[k].parent_index];
        }
      }
      bool bijective = true;
      for (int k = 0; k < 3; ++k) bijective = bijective && hits_first[k] == 1 && hits_second[k] == 1;
      if (!bijective) continue;
      gap_class a(first, child_depth), b(second, child_depth);
      if (!unlinked(a, b)) continue;
      if (!ctx.admits(a) || !ctx.admits(b)) continue;
      valid.emplace_back(a, b);
    }
  }
  if (valid.size() != 1)
    throw std::logic_error("pullback of " + c.str() + ": " + std::to_string(valid.size()) +
                           " valid partitions (expected exactly one)");
  auto [a, b] = valid.front();
  // A child equal to the (fixed) root keeps depth 0.
  if (a == root()) a = root();
  if (b == root()) b = root();
  if (canonical_less(b, a)) std::swap(a, b);
  return {a, b};
}

std::vector<gap_class> with_critical_leaf(std::vector<gap_class> classes) {
  classes.push_back(critical_leaf());
  return classes;
}

bool power_of_two(const integer& m, int& exponent) {
  if (m <= 0) return false;
  exponent = static_cast<int>(mpz_scan1(m.get_mpz_t(), 0));
  return mpz_sizeinbase(m.get_mpz_t(), 2) == static_cast<std::size_t>(exponent) + 1;
}

}  // namespace

gap_class::gap_class(std::vector<angle> angles, int depth) : angles_(std::move(angles)), depth_(depth) {
  if (angles_.empty() || angles_.size() > 3)
    throw std::invalid_argument("gap_class: expected 1 to 3 angles");
  std::sort(angles_.begin(), angles_.end());
  if (std::adjacent_find(angles_.begin(), angles_.end()) != angles_.end())
    throw std::invalid_argument("gap_class: repeated angle");
  if (depth_ < 0) throw std::invalid_argument("gap_class: negative depth");
}

bool gap_class::contains(const angle& z) const {
  return std::binary_search(angles_.begin(), angles_.end(), z);
}

arc gap_class::arc_at(int index) const {
  int n = static_cast<int>(angles_.size());
  if (index < 1 || index > n) throw std::out_of_range("gap_class: arc index out of range");
  return arc{angles_[index - 1], angles_[index % n], false};
}

int gap_class::arc_containing(const angle& z) const {
  if (contains(z)) return 0;
  int n = static_cast<int>(angles_.size());
  if (n == 1) return 1;
  auto it = std::upper_bound(angles_.begin(), angles_.end(), z);
  if (it == angles_.begin() || it == angles_.end()) return n;  // wrap arc
  return static_cast<int>(it - angles_.begin());
}

int gap_class::branch_toward(const gap_class& other) const {
  int idx = -1;
  for (const auto& z : other.angles()) {
    int i = arc_containing(z);
    if (i == 0) throw std::invalid_argument("classes " + str() + " and " + other.str() + " share an angle");
    if (idx >= 0 && idx != i)
      throw std::invalid_argument("class " + other.str() + " straddles the arcs of " + str());
    idx = i;
  }
  return idx;
}

std::string gap_class::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < angles_.size(); ++i) {
    if (i) out += ",";
    out += angles_[i].str();
  }
  return out + "}";
}

bool canonical_less(const gap_class& a, const gap_class& b) {
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  return a.id() < b.id();
}

gap_class root() { return gap_class({angle(1, 7), angle(2, 7), angle(4, 7)}, 0); }

gap_class first_child() { return gap_class({angle(1, 14), angle(9, 14), angle(11, 14)}, 1); }

gap_class critical_leaf() { return gap_class({angle(1, 12), angle(7, 12)}, 0); }

bool unlinked(const gap_class& c1, const gap_class& c2) {
  if (c1 == c2) throw std::invalid_argument("unlinked: classes are equal");
  for (const auto& z : c2.angles())
    if (c1.contains(z)) throw std::invalid_argument("unlinked: classes share an angle");
  int idx = c1.arc_containing(c2.angles().front());
  for (const auto& z : c2.angles())
    if (c1.arc_containing(z) != idx) return false;
  return true;
}

lamination::lamination(std::vector<std::vector<gap_class>> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw std::invalid_argument("lamination: no levels");
  level_angles_.resize(levels_.size());
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    auto& lv = levels_[k];
    std::sort(lv.begin(), lv.end(), [](const gap_class& a, const gap_class& b) { return a.id() < b.id(); });
    for (std::uint32_t i = 0; i < lv.size(); ++i) {
      if (lv[i].depth() != static_cast<int>(k) || !lv[i].is_branch())
        throw std::invalid_argument("lamination: class " + lv[i].str() + " misplaced at depth " + std::to_string(k));
      for (const auto& a : lv[i].angles()) {
        level_angles_[k].emplace_back(a, i);
        if (!index_.emplace(a, std::make_pair(static_cast<int>(k), i)).second)
          throw std::invalid_argument("lamination: angle " + a.str() + " appears twice");
      }
    }
    std::sort(level_angles_[k].begin(), level_angles_[k].end());
    count_ += lv.size();
  }
}

std::vector<gap_class> lamination::classes() const {
  std::vector<gap_class> out;
  out.reserve(count_);
  for (const auto& lv : levels_) out.insert(out.end(), lv.begin(), lv.end());
  return out;
}

const gap_class* lamination::find(const angle& z) const {
  auto it = index_.find(z);
  if (it == index_.end()) return nullptr;
  return &levels_[it->second.first][it->second.second];
}

bool lamination::contains(const gap_class& c) const {
  const gap_class* found = find(c.id());
  return found != nullptr && *found == c;
}

std::vector<gap_class> lamination::touching(const arc& where, int k) const {
  if (k < 0) return {};
  std::vector<gap_class> out;
  if (k <= depth()) {
    const auto& pts = level_angles_[k];
    std::vector<std::uint32_t> hits;
    auto collect = [&](auto first, auto last) {
      for (auto it = first; it != last; ++it) hits.push_back(it->second);
    };
    auto lower = [&](const angle& a) {
      return std::upper_bound(pts.begin(), pts.end(), a,
                              [](const angle& v, const auto& p) { return v < p.first; });
    };
    auto upper = [&](const angle& a) {
      return std::lower_bound(pts.begin(), pts.end(), a,
                              [](const auto& p, const angle& v) { return p.first < v; });
    };
    if (where.full) {
      collect(pts.begin(), pts.end());
    } else if (where.start < where.end) {
      collect(lower(where.start), upper(where.end));
    } else {
      // Wrapping arc, or circle minus a point.
      collect(lower(where.start), pts.end());
      collect(pts.begin(), upper(where.end));
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    for (auto i : hits) out.push_back(levels_[k][i]);
    return out;
  }
  if (k == 1) {
    gap_class t = first_child();
    for (const auto& a : t.angles())
      if (where.contains(a)) return {t};
    return {};
  }
  arc image = where.doubled();
  if (image.full && k - 1 > depth() && k - 2 >= 20)
    throw budget_exhausted("local pullback: arc too long for depth " + std::to_string(k));
  std::vector<gap_class> parents = touching(image, k - 1);
  if (parents.size() > kLocalEnumerationCap)
    throw budget_exhausted("local pullback: too many classes at depth " + std::to_string(k));
  for (const auto& d : parents) {
    for (const auto& w : d.angles()) {
      if (!image.contains(w)) continue;
      auto [h1, h2] = halves(w);
      for (const auto& h : {h1, h2}) {
        if (!where.contains(h)) continue;
        gap_class child = side_pullback(d, h);
        if (std::find(out.begin(), out.end(), child) == out.end()) out.push_back(child);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const gap_class& a, const gap_class& b) { return a.id() < b.id(); });
  return out;
}

std::optional<gap_class> lamination::classify(const angle& z) const {
  if (const gap_class* c = find(z)) return *c;
  integer den = z.denominator();
  if (den % 7 != 0) return std::nullopt;
  int k = 0;
  if (!power_of_two(integer(den / 7), k)) return std::nullopt;
  if (k <= depth()) return std::nullopt;  // would have been stored
  // Forward orbit down to the deepest stored level, then pull back along it.
  std::vector<angle> orbit{z};
  for (int j = k; j > depth(); --j) orbit.push_back(double_angle(orbit.back()));
  const gap_class* base = find(orbit.back());
  if (base == nullptr) return std::nullopt;
  gap_class c = *base;
  for (std::size_t i = orbit.size() - 1; i-- > 0;) c = side_pullback(c, orbit[i]);
  return c;
}

std::optional<gap_class> lamination::first_class(const std::vector<arc>& where,
                                                 const std::function<bool(const gap_class&)>& accept,
                                                 int max_depth) const {
  for (int k = 0; k <= max_depth; ++k) {
    std::vector<gap_class> found;
    for (const auto& w : where) {
      auto part = touching(w, k);
      found.insert(found.end(), part.begin(), part.end());
    }
    std::sort(found.begin(), found.end(), [](const gap_class& a, const gap_class& b) { return a.id() < b.id(); });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (const auto& c : found)
      if (accept(c)) return c;
  }
  return std::nullopt;
}

gap_class side_pullback(const gap_class& parent, const angle& preimage) {
  bool side = on_critical_side(preimage);
  std::vector<angle> picked;
  for (const auto& a : parent.angles()) {
    auto [h1, h2] = halves(a);
    picked.push_back(on_critical_side(h1) == side ? h1 : h2);
  }
  gap_class child(picked, parent.depth() + 1);
  if (child == root()) return root();
  return child;
}

std::pair<gap_class, gap_class> pullback_class(const gap_class& c, const lamination& context) {
  if (!context.contains(c)) throw std::invalid_argument("pullback: " + c.str() + " is not a class of the context");
  const gap_class& stored = *context.find(c.id());
  unlink_context ctx(with_critical_leaf(context.classes()));
  return brute_force_pullback(stored, ctx);
}

lamination generate(int depth) {
  if (depth < 0) throw std::invalid_argument("generate: negative depth");
  if (depth > max_generate_depth())
    throw resource_error("generate: depth " + std::to_string(depth) + " exceeds the configured maximum " +
                         std::to_string(max_generate_depth()));
  std::vector<std::vector<gap_class>> levels{{root()}};
  std::vector<gap_class> all{root()};
  for (int k = 1; k <= depth; ++k) {
    unlink_context ctx(with_critical_leaf(all));
    std::vector<gap_class> next;
    for (const auto& parent : levels.back()) {
      auto [a, b] = brute_force_pullback(parent, ctx);
      for (const auto& child : {a, b})
        if (child.depth() == k) next.push_back(child);
    }
    std::size_t expected = std::size_t{1} << (k - 1);
    if (next.size() != expected)
      throw std::logic_error("generate: depth " + std::to_string(k) + " produced " + std::to_string(next.size()) +
                             " classes");
    all.insert(all.end(), next.begin(), next.end());
    levels.push_back(std::move(next));
  }
  return lamination(std::move(levels));
}

gap_class class_of(const angle& a, const lamination& L) {
  if (const gap_class* c = L.find(a)) return *c;
  return gap_class({a}, 0);
}

bool equivalent_up_to_depth(const angle& a, const angle& b, const lamination& L) {
  if (a == b) throw std::invalid_argument("equivalent_up_to_depth: angles must differ");
  for (int k = 0; k <= L.depth(); ++k) {
    for (const auto& c : L.level(k)) {
      if (c.contains(a) || c.contains(b)) continue;
      if (c.arc_containing(a) != c.arc_containing(b)) return false;
    }
  }
  return true;
}

std::vector<rational> largest_free_arc(const lamination& L) {
  std::vector<rational> out;
  std::vector<angle> pts;
  for (int k = 0; k <= L.depth(); ++k) {
    for (const auto& c : L.level(k)) pts.insert(pts.end(), c.angles().begin(), c.angles().end());
    std::sort(pts.begin(), pts.end());
    rational best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      rational len = positive_length(pts[i], pts[(i + 1) % pts.size()]);
      if (len > best) best = len;
    }
    out.push_back(best);
  }
  return out;
}

std::string serialize(const lamination& L) {
  std::ostringstream out;
  out << "#kaleidocircle-lamination v1 depth=" << L.depth() << "\n";
  for (int k = 0; k <= L.depth(); ++k)
    for (const auto& c : L.level(k)) {
      out << k;
      for (const auto& a : c.angles()) out << "\t" << a.str();
      out << "\n";
    }
  return out.str();
}

lamination parse_lamination(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  const std::string header = "#kaleidocircle-lamination v1 depth=";
  if (!std::getline(in, line) || line.rfind(header, 0) != 0)
    throw std::invalid_argument("lamination file: missing header");
  int depth = 0;
  try {
    std::size_t used = 0;
    depth = std::stoi(line.substr(header.size()), &used);
    if (used != line.size() - header.size() || depth < 0) throw std::invalid_argument("depth");
  } catch (const std::exception&) {
    throw std::invalid_argument("lamination file: bad depth in header");
  }
  std::vector<std::vector<gap_class>> levels(depth + 1);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, '\t')) fields.push_back(f);
    if (fields.size() != 4) throw std::invalid_argument("lamination file: line " + std::to_string(lineno) + ": expected 4 fields");
    int k = -1;
    try {
      std::size_t used = 0;
      k = std::stoi(fields[0], &used);
      if (used != fields[0].size()) k = -1;
    } catch (const std::exception&) {
    }
    if (k < 0 || k > depth) throw std::invalid_argument("lamination file: line " + std::to_string(lineno) + ": bad depth");
    std::vector<angle> as;
    for (int i = 1; i < 4; ++i) as.push_back(angle::parse(fields[i]));
    levels[k].emplace_back(as, k);
  }
  lamination L(std::move(levels));
  // The file must be exactly the generated lamination.
  lamination expected = generate(depth);
  for (int k = 0; k <= depth; ++k)
    if (L.level(k) != expected.level(k))
      throw std::invalid_argument("lamination file: depth " + std::to_string(k) + " classes do not match the pullback");
  return L;
}

}  // namespace kaleido
