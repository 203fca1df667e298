#include "kaleido/coloring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kaleido {

namespace {

int mod3(int v) { return ((v % 3) + 3) % 3; }

}  // namespace

int coloring::offset(const gap_class& x) const {
  auto it = offsets_.find(x);
  if (it == offsets_.end()) throw std::invalid_argument("coloring: " + x.str() + " is not colored");
  return it->second;
}

void coloring::set_offset(const gap_class& x, int r) {
  if (!x.is_branch()) throw std::invalid_argument("coloring: only branch points carry colors");
  if (r < 0 || r > 2) throw std::invalid_argument("coloring: offset must be 0, 1 or 2");
  offsets_[x] = r;
}

int color_of_branch(const coloring& C, const gap_class& x, int i) {
  if (i < 1 || i > 3) throw std::invalid_argument("color_of_branch: index out of range");
  return mod3(i - 1 + C.offset(x)) + 1;
}

int branch_with_color(const coloring& C, const gap_class& x, int color) {
  return mod3(color - 1 - C.offset(x)) + 1;
}

int offset_for(int index, int color) { return mod3(color - index); }

bool positive_triple(int i, int k, int j) { return mod3(k - i) == 1 && mod3(j - k) == 1; }

gap_class find_z(const gap_class& x, const gap_class& y, side s, const lamination& L, int budget,
                 const std::function<bool(const gap_class&)>& accept) {
  if (!x.is_branch() || !y.is_branch() || x == y)
    throw std::invalid_argument("find_z: x and y must be distinct branch points");
  region d = region::between(x, y);
  arc gap = s == side::plus ? plus_gap(x, y) : minus_gap(x, y);
  int wanted = s == side::plus ? 2 : 1;
  auto found = L.first_class(
      {gap},
      [&](const gap_class& c) {
        return c.is_branch() && d.contains(c) && d.side_count(c) == wanted && (!accept || accept(c));
      },
      budget);
  if (!found)
    throw budget_exhausted("find_z: no branch point between " + x.id_str() + " and " + y.id_str() +
                           " within depth " + std::to_string(budget));
  return *found;
}

std::vector<gap_class> default_enumeration(const lamination& L) { return L.classes(); }

coloring build_kaleidoscopic(const lamination& L, const std::vector<gap_class>& enumeration, int budget,
                             std::size_t window) {
  coloring C;
  std::size_t n_points = enumeration.size();
  std::size_t limit = std::min(window, n_points);
  for (std::size_t n = 0; n <= n_points; ++n) {
    if (n < n_points && !C.is_colored(enumeration[n])) C.set_offset(enumeration[n], 0);
    if (n == 0 || n - 1 >= limit) continue;
    const gap_class& y = enumeration[n - 1];
    for (std::size_t m = 0; m + 1 < n; ++m) {
      const gap_class& x = enumeration[m];
      if (x == y) continue;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
          if (i == j) continue;
          int k = 6 - i - j;
          side s = positive_triple(i, k, j) ? side::plus : side::minus;
          auto forced = [&](const gap_class& z) { return offset_for(z.branch_toward(x), i); };
          gap_class z = find_z(x, y, s, L, budget, [&](const gap_class& cand) {
            return !C.is_colored(cand) || C.offset(cand) == forced(cand);
          });
          int r = forced(z);
          C.set_offset(z, r);
          if (color_of_branch(C, z, z.branch_toward(y)) != j)
            throw std::logic_error("build_kaleidoscopic: orientation mismatch at " + z.str());
          C.record({static_cast<int>(n), x, y, i, j, z});
        }
    }
  }
  return C;
}

void extend_coloring(coloring& C, const std::vector<gap_class>& points) {
  for (const auto& p : points)
    if (p.is_branch() && !C.is_colored(p)) C.set_offset(p, 0);
}

bool check_kaleidoscopic_window(const coloring& C, const gap_class& x, const gap_class& y, int i, int j) {
  if (i == j) throw std::invalid_argument("check_kaleidoscopic_window: colors must differ");
  if (x == y) throw std::invalid_argument("check_kaleidoscopic_window: points must differ");
  for (const auto& [z, r] : C.offsets()) {
    (void)r;
    if (z == x || z == y || !separates(z, x, y)) continue;
    if (color_of_branch(C, z, z.branch_toward(x)) == i && color_of_branch(C, z, z.branch_toward(y)) == j)
      return true;
  }
  return false;
}

bool verify_orientation_compatibility(const raw_coloring& raw) {
  for (const auto& [x, colors] : raw) {
    // Arcs in positive circular order starting from the arc after the
    // smallest angle; their colors must read as a cyclic shift of (1,2,3).
    std::vector<std::pair<angle, int>> by_start;
    for (int i = 1; i <= 3; ++i) by_start.emplace_back(x.arc_at(i).start, colors[i - 1]);
    std::sort(by_start.begin(), by_start.end());
    std::array<bool, 4> seen{};
    for (auto& [a, c] : by_start) {
      (void)a;
      if (c < 1 || c > 3 || seen[c]) return false;
      seen[c] = true;
    }
    for (std::size_t k = 0; k < 3; ++k) {
      int c = by_start[k].second, next = by_start[(k + 1) % 3].second;
      if (next != c % 3 + 1) return false;
    }
  }
  return true;
}

raw_coloring to_raw(const coloring& C) {
  raw_coloring raw;
  for (const auto& [x, r] : C.offsets()) {
    (void)r;
    raw[x] = {color_of_branch(C, x, 1), color_of_branch(C, x, 2), color_of_branch(C, x, 3)};
  }
  return raw;
}

bool verify_orientation_compatibility(const coloring& C, const lamination& L) {
  for (const auto& [x, r] : C.offsets()) {
    (void)r;
    auto c = L.classify(x.id());
    if (!c || !(*c == x)) return false;
  }
  return verify_orientation_compatibility(to_raw(C));
}

coloring from_raw(const raw_coloring& raw) {
  coloring C;
  for (const auto& [x, colors] : raw) {
    int r = offset_for(1, colors[0]);
    for (int i = 1; i <= 3; ++i)
      if (offset_for(i, colors[i - 1]) != r)
        throw std::invalid_argument("coloring: arc colors at " + x.id_str() + " are not a rotation");
    C.set_offset(x, r);
  }
  return C;
}

std::string serialize(const coloring& C) {
  std::ostringstream out;
  out << "#kaleidocircle-coloring v1\n";
  std::vector<std::pair<angle, int>> rows;
  for (const auto& [x, r] : C.offsets()) rows.emplace_back(x.id(), r);
  std::sort(rows.begin(), rows.end());
  for (const auto& [id, r] : rows) out << id.str() << "\t" << r << "\n";
  return out.str();
}

raw_coloring parse_coloring(std::string_view text, const lamination& L) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "#kaleidocircle-coloring v1")
    throw std::invalid_argument("coloring file: missing header");
  raw_coloring raw;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw std::invalid_argument("coloring file: line " + std::to_string(lineno) + ": expected a tab");
    angle id = angle::parse(line.substr(0, tab));
    auto x = L.classify(id);
    if (!x || !(x->id() == id))
      throw std::invalid_argument("coloring file: line " + std::to_string(lineno) + ": " + id.str() + " is not a class id");
    std::string value = line.substr(tab + 1);
    std::array<int, 3> colors{};
    if (value.size() == 1 && value[0] >= '0' && value[0] <= '2') {
      int r = value[0] - '0';
      for (int i = 1; i <= 3; ++i) colors[i - 1] = mod3(i - 1 + r) + 1;
    } else if (value.size() == 5 && value[1] == ',' && value[3] == ',') {
      for (int i = 0; i < 3; ++i) {
        char c = value[2 * i];
        if (c < '1' || c > '3') throw std::invalid_argument("coloring file: line " + std::to_string(lineno) + ": bad color");
        colors[i] = c - '0';
      }
    } else {
      throw std::invalid_argument("coloring file: line " + std::to_string(lineno) + ": bad value '" + value + "'");
    }
    if (!raw.emplace(*x, colors).second)
      throw std::invalid_argument("coloring file: line " + std::to_string(lineno) + ": duplicate class");
  }
  return raw;
}

}  // namespace kaleido
