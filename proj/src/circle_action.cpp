#include "kaleido/circle_action.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kaleido {

namespace {

int mod3(int v) { return ((v % 3) + 3) % 3; }

// Index (0-based) of z among the angles of c.
int position_in(const gap_class& c, const angle& z) {
  const auto& as = c.angles();
  return static_cast<int>(std::find(as.begin(), as.end(), z) - as.begin());
}

std::vector<gap_class> classes_upto(const lamination& L, int depth) {
  std::vector<gap_class> out;
  for (int k = 0; k <= std::min(depth, L.depth()); ++k) out.insert(out.end(), L.level(k).begin(), L.level(k).end());
  return out;
}

}  // namespace

bool is_cyclic_order_preserving(const std::map<angle, angle>& points) {
  std::vector<angle> images;
  for (const auto& [s, t] : points) images.push_back(t);
  auto sorted = images;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (images.size() < 3) return true;
  int descents = 0;
  for (std::size_t i = 0; i < images.size(); ++i) descents += images[(i + 1) % images.size()] < images[i];
  return descents == 1;
}

circle_homeo::circle_homeo(std::map<angle, angle> breakpoints, int depth)
    : points_(std::move(breakpoints)), depth_(depth) {
  if (!is_cyclic_order_preserving(points_))
    throw std::invalid_argument("circle_homeo: breakpoints are not injective and cyclically ordered");
}

angle circle_homeo::eval(const angle& z) const {
  if (points_.size() < 3) throw std::invalid_argument("circle_homeo: need at least 3 breakpoints");
  auto hit = points_.find(z);
  if (hit != points_.end()) return hit->second;
  auto next = points_.upper_bound(z);
  auto prev = next == points_.begin() ? std::prev(points_.end()) : std::prev(next);
  if (next == points_.end()) next = points_.begin();
  rational source_len = positive_length(prev->first, next->first);
  rational image_len = positive_length(prev->second, next->second);
  rational offset = positive_length(prev->first, z);
  return angle(frac(prev->second.value() + offset * image_len / source_len));
}

circle_homeo induce(const group_element& g, int depth, const std::vector<gap_class>& extra) {
  std::map<angle, angle> points;
  auto add = [&](const gap_class& x) {
    mapped m = g.evaluate(x);
    for (int i = 1; i <= 3; ++i) points[x.angles()[i - 1]] = m.point.angles()[rotate_index(i, m.rotation) - 1];
  };
  for (const auto& x : classes_upto(g.lam(), depth)) add(x);
  for (const auto& x : extra) add(x);
  return circle_homeo(std::move(points), depth);
}

bool verify_semiconjugacy(const group_element& g, const circle_homeo& h, const lamination& L) {
  const auto& bp = h.breakpoints();
  for (const auto& x : classes_upto(L, h.depth())) {
    gap_class gx = g(x);
    for (int i = 1; i <= 3; ++i) {
      region B = region::branch_at(x, i);
      auto probe = L.first_class(
          {x.arc_at(i)}, [&](const gap_class& c) { return c.is_branch() && B.contains(c); }, g.budget());
      if (!probe) return false;
      int j = gx.branch_toward(g(*probe));
      auto it = bp.find(x.arc_at(i).start);
      if (it == bp.end() || !(it->second == gx.arc_at(j).start)) return false;
    }
  }
  return true;
}

bool verify_lamination_preserved(const circle_homeo& h, const lamination& L) {
  const auto& bp = h.breakpoints();
  for (const auto& x : classes_upto(L, h.depth())) {
    std::vector<angle> image;
    for (const auto& z : x.angles()) {
      auto it = bp.find(z);
      if (it == bp.end()) return false;
      image.push_back(it->second);
    }
    std::sort(image.begin(), image.end());
    auto c = L.classify(image.front());
    if (!c || c->angles() != image) return false;
  }
  return true;
}

std::string to_string(orbit_kind k) { return k == orbit_kind::branch ? "branch" : "end_or_regular"; }

orbit_kind orbit_label(const angle& z, const lamination& L) {
  return L.classify(z) ? orbit_kind::branch : orbit_kind::end_or_regular;
}

angle act_on_class_angle(const group_element& g, const angle& z) {
  auto x = g.lam().classify(z);
  if (!x) throw std::invalid_argument("act_on_class_angle: " + z.str() + " is not a branch angle");
  mapped m = g.evaluate(*x);
  return m.point.angles()[rotate_index(position_in(*x, z) + 1, m.rotation) - 1];
}

group_element angle_transporter(const angle& a, const angle& b, const lamination& L, int budget) {
  auto x = L.classify(a), y = L.classify(b);
  if (!x || !y) throw std::invalid_argument("angle_transporter: both angles must be branch angles");
  anchor_map m;
  m.add(*x, *y, mod3(position_in(*y, b) - position_in(*x, a)));
  return group_element::from_anchors(m, L, budget);
}

tuple_invariant compute_tuple_invariant(const std::vector<angle>& zs, const lamination& L) {
  std::size_t n = zs.size();
  std::vector<std::optional<gap_class>> cls;
  for (const auto& z : zs) cls.push_back(L.classify(z));
  std::ostringstream sizes, part, cyc, off;
  std::vector<int> label(n);
  int blocks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    label[i] = blocks;
    for (std::size_t j = 0; j < i; ++j)
      if (cls[i] && cls[j] && *cls[i] == *cls[j]) {
        label[i] = label[j];
        break;
      }
    if (label[i] == blocks) ++blocks;
    sizes << (i ? "," : "") << (cls[i] ? 3 : 1);
    part << (i ? "," : "") << label[i];
  }
  // Cyclic positions relative to the first entry.
  std::vector<angle> sorted(zs.begin(), zs.end());
  std::sort(sorted.begin(), sorted.end());
  auto rank = [&](const angle& z) { return static_cast<long>(std::lower_bound(sorted.begin(), sorted.end(), z) - sorted.begin()); };
  for (std::size_t i = 0; i < n; ++i) {
    long r = (rank(zs[i]) - rank(zs[0]) + static_cast<long>(n)) % static_cast<long>(n);
    cyc << (i ? "," : "") << r;
  }
  // For a branch entry z_i at position a of its class and another entry z_j,
  // the arc (or position) of that class holding z_j, relative to a.
  for (std::size_t i = 0; i < n; ++i) {
    if (i) off << "|";
    for (std::size_t j = 0; j < n; ++j) {
      if (j) off << ",";
      if (!cls[i] || i == j) {
        off << "-";
        continue;
      }
      int a = position_in(*cls[i], zs[i]);
      int b = cls[i]->contains(zs[j]) ? position_in(*cls[i], zs[j]) : cls[i]->arc_containing(zs[j]) - 1;
      off << (cls[i]->contains(zs[j]) ? "p" : "a") << mod3(b - a);
    }
  }
  std::string kind = blocks == 1 && n > 1 && cls[0] ? "same-class" : (blocks == static_cast<int>(n) ? "distinct-classes" : "mixed");
  return {kind + "(" + sizes.str() + ");part=" + part.str() + ";cyc=" + cyc.str() + ";off=" + off.str()};
}

ratio_report modulus_ratio(const circle_homeo& h, const modulus& omega,
                           const std::vector<std::pair<angle, angle>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("modulus_ratio: no pairs");
  ratio_report best;
  bool first = true;
  for (const auto& [x, y] : pairs) {
    rational d = arc_distance(x, y);
    if (d == 0) throw std::invalid_argument("modulus_ratio: pair of equal angles");
    rational dh = arc_distance(h.eval(x), h.eval(y));
    rational hi_omega = omega.upper_bound(d), lo_omega = omega.lower_bound(d);
    if (hi_omega == 0) throw std::invalid_argument("modulus_ratio: omega vanishes at " + to_string(d));
    rational lower = dh / hi_omega;
    if (first || lower > best.lower) {
      best.lower = lower;
      best.upper = lo_omega == 0 ? rational(-1) : rational(dh / lo_omega);
      best.argmax = {x, y};
      first = false;
    }
  }
  return best;
}

bool minimality_probe(const angle& seed, const std::vector<group_element>& elements, const rational& eps,
                      int word_length, int depth) {
  if (eps <= 0) throw std::invalid_argument("minimality_probe: eps must be positive");
  std::vector<group_element> gens;
  for (const auto& g : elements) {
    gens.push_back(g);
    gens.push_back(g.inverse());
  }
  std::vector<std::optional<circle_homeo>> induced(gens.size());
  auto act = [&](std::size_t k, const angle& z) {
    if (gens[k].lam().classify(z)) return act_on_class_angle(gens[k], z);
    if (!induced[k]) induced[k] = induce(gens[k], depth);
    return induced[k]->eval(z);
  };
  std::set<angle> orbit{seed};
  std::vector<angle> frontier{seed};
  for (int w = 0; w < word_length && !frontier.empty(); ++w) {
    std::vector<angle> next;
    for (const auto& z : frontier)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        angle y = act(k, z);
        if (orbit.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<angle> pts(orbit.begin(), orbit.end());
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (positive_length(pts[i], pts[(i + 1) % pts.size()]) > eps) return false;
  return true;
}

std::string modulus_report(const nonsmooth_result& w, const modulus& omega, const circle_homeo& h) {
  std::ostringstream out;
  out << "#stage\td(x,xn)\td(hx,hxn)\tbound\tpass\n";
  angle hb = h.eval(w.accumulation);
  for (const auto& s : w.stages) {
    rational d = arc_distance(w.accumulation, s.x);
    rational dh = arc_distance(hb, h.eval(s.x));
    bool pass = omega.compare(dh, rational(s.stage), d) > 0;
    out << s.stage << "\t" << to_string(d) << "\t" << to_string(dh) << "\t" << std::to_string(s.stage) << "*"
        << omega.describe(d) << "\t" << (pass ? "pass" : "fail") << "\n";
  }
  return out.str();
}

std::string serialize(const circle_homeo& h) {
  std::ostringstream out;
  out << "#kaleidocircle-homeo v1 depth=" << h.depth() << "\n";
  for (const auto& [s, t] : h.breakpoints()) out << s.str() << "\t" << t.str() << "\n";
  return out.str();
}

circle_homeo parse_homeo(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  const std::string prefix = "#kaleidocircle-homeo v1 depth=";
  if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) throw std::invalid_argument("homeo file: missing header");
  int depth = 0;
  try {
    std::size_t used = 0;
    depth = std::stoi(line.substr(prefix.size()), &used);
    if (used != line.size() - prefix.size() || depth < 0) throw std::invalid_argument("depth");
  } catch (const std::exception&) {
    throw std::invalid_argument("homeo file: bad depth in header");
  }
  std::map<angle, angle> points;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw std::invalid_argument("homeo file: line " + std::to_string(lineno) + ": expected a tab");
    angle s = angle::parse(line.substr(0, tab)), t = angle::parse(line.substr(tab + 1));
    if (!points.empty() && !(points.rbegin()->first < s))
      throw std::invalid_argument("homeo file: line " + std::to_string(lineno) + ": sources must increase");
    points.emplace(s, t);
  }
  return circle_homeo(std::move(points), depth);
}

}  // namespace kaleido
