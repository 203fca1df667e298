#include "kaleido/group.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace kaleido {

namespace {

int mod3(int v) { return ((v % 3) + 3) % 3; }

struct emission {
  gap_class source, target;
  int rotation = 0;
};

struct step_result {
  std::vector<emission> mapped;
  std::vector<std::pair<region, region>> children;
};

using step_key = std::tuple<region, region, bool>;

}  // namespace

int rotate_index(int index, int rotation) { return mod3(index - 1 + rotation) + 1; }

void anchor_map::add(const gap_class& x, const gap_class& y, int rotation) {
  if (!x.is_branch() || !y.is_branch()) throw std::invalid_argument("anchor: " + x.str() + " -> " + y.str() + " is not between branch points");
  if (rotation < 0 || rotation > 2) throw std::invalid_argument("anchor: rotation must be 0, 1 or 2");
  if (!entries_.emplace(x, mapped{y, rotation}).second) throw std::invalid_argument("anchor: duplicate source " + x.id_str());
}

anchor_map anchor_map::inverse() const {
  anchor_map out;
  for (const auto& [x, m] : entries_) out.add(m.point, x, mod3(-m.rotation));
  return out;
}

void validate(const anchor_map& a, const lamination& L, const coloring* C, int budget) {
  std::vector<gap_class> dom, img;
  for (const auto& [x, m] : a.entries()) {
    dom.push_back(x);
    img.push_back(m.point);
  }
  {
    auto sorted = img;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("anchors: images are not distinct");
  }
  std::size_t n = dom.size();
  auto closed = [&](const std::vector<gap_class>& s, const char* what) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          gap_class m = center(s[i], s[j], s[k], L, budget);
          if (std::find(s.begin(), s.end(), m) == s.end())
            throw std::invalid_argument(std::string("anchors: ") + what + " is not center-closed: center of " +
                                        s[i].id_str() + ", " + s[j].id_str() + ", " + s[k].id_str() + " is " +
                                        m.id_str());
        }
  };
  closed(dom, "domain");
  closed(img, "image");
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        if (z == x || z == y) continue;
        if (separates(dom[z], dom[x], dom[y]) != separates(img[z], img[x], img[y]))
          throw std::invalid_argument("anchors: betweenness not preserved for " + dom[z].id_str() + " between " +
                                      dom[x].id_str() + " and " + dom[y].id_str());
      }
  for (const auto& [x, m] : a.entries())
    for (const auto& [y, my] : a.entries()) {
      if (x == y) continue;
      if (m.point.branch_toward(my.point) != rotate_index(x.branch_toward(y), m.rotation))
        throw std::invalid_argument("anchors: branch correspondence at " + x.id_str() +
                                    " is not the declared rotation (seen from " + y.id_str() + ")");
    }
  if (C) {
    for (const auto& [x, m] : a.entries()) {
      if (!C->is_colored(x) || !C->is_colored(m.point)) continue;
      std::array<int, 3> perm{};
      for (int c = 1; c <= 3; ++c)
        perm[c - 1] = color_of_branch(*C, m.point, rotate_index(branch_with_color(*C, x, c), m.rotation));
      if (!is_even(perm)) throw std::invalid_argument("anchors: color map at " + x.id_str() + " is odd");
    }
  }
}

struct group_element::node {
  const lamination* L = nullptr;
  int budget = 0;
  bool product = false;
  anchor_map anchors;
  bool forth = true;
  std::shared_ptr<const node> outer, inner;

  mutable std::mutex mu;
  mutable std::map<step_key, std::shared_ptr<const step_result>> steps;
  mutable std::map<gap_class, mapped> points;

  gap_class least(const region& R, std::optional<int> type) const {
    auto found = L->first_class(
        R.arcs(),
        [&](const gap_class& c) { return c.is_branch() && R.contains(c) && (!type || R.side_count(c) == *type); },
        budget);
    if (!found)
      throw budget_exhausted("evaluate: no branch point in " + R.str() + " within depth " + std::to_string(budget));
    return *found;
  }

  std::pair<gap_class, gap_class> pick(const region& R, const region& Rp, bool fwd) const {
    bool typed = R.shape() == region::kind::between;
    if (fwd) {
      gap_class c = least(R, std::nullopt);
      return {c, least(Rp, typed ? std::optional<int>(R.side_count(c)) : std::nullopt)};
    }
    gap_class cp = least(Rp, std::nullopt);
    return {least(R, typed ? std::optional<int>(Rp.side_count(cp)) : std::nullopt), cp};
  }

  step_result step(const region& R, const region& Rp, bool fwd) const {
    step_result out;
    auto [c, cp] = pick(R, Rp, fwd);
    switch (R.shape()) {
      case region::kind::whole:
        out.mapped.push_back({c, cp, 0});
        for (int i = 1; i <= 3; ++i) out.children.emplace_back(region::branch_at(c, i), region::branch_at(cp, i));
        return out;
      case region::kind::branch: {
        const gap_class &m = R.first(), &mp = Rp.first();
        int toward = c.branch_toward(m);
        int r = mod3(cp.branch_toward(mp) - toward);
        out.mapped.push_back({c, cp, r});
        out.children.emplace_back(region::between(m, c), region::between(mp, cp));
        for (int j = 1; j <= 3; ++j)
          if (j != toward) out.children.emplace_back(region::branch_at(c, j), region::branch_at(cp, rotate_index(j, r)));
        return out;
      }
      case region::kind::between: break;
    }
    const gap_class &a = R.first(), &b = R.second(), &ap = Rp.first(), &bp = Rp.second();
    int t = R.side_count(c);
    auto rotation = [&](const gap_class& s, const gap_class& sp, const gap_class& u, const gap_class& up,
                        const gap_class& v, const gap_class& vp) {
      int r = mod3(sp.branch_toward(up) - s.branch_toward(u));
      if (mod3(sp.branch_toward(vp) - s.branch_toward(v)) != r)
        throw std::logic_error("evaluate: inconsistent branch correspondence at " + s.str());
      return r;
    };
    if (t == 1 || t == 2) {
      int r = rotation(c, cp, a, ap, b, bp);
      out.mapped.push_back({c, cp, r});
      int third = 6 - c.branch_toward(a) - c.branch_toward(b);
      out.children.emplace_back(region::between(a, c), region::between(ap, cp));
      out.children.emplace_back(region::between(c, b), region::between(cp, bp));
      out.children.emplace_back(region::branch_at(c, third), region::branch_at(cp, rotate_index(third, r)));
      return out;
    }
    gap_class p = center(a, b, c, *L, budget), pp = center(ap, bp, cp, *L, budget);
    int rp = rotation(p, pp, a, ap, b, bp);
    if (pp.branch_toward(cp) != rotate_index(p.branch_toward(c), rp))
      throw std::logic_error("evaluate: inconsistent branch correspondence at " + p.str());
    int toward = c.branch_toward(p);
    int rc = mod3(cp.branch_toward(pp) - toward);
    out.mapped.push_back({p, pp, rp});
    out.mapped.push_back({c, cp, rc});
    out.children.emplace_back(region::between(a, p), region::between(ap, pp));
    out.children.emplace_back(region::between(p, b), region::between(pp, bp));
    out.children.emplace_back(region::between(p, c), region::between(pp, cp));
    for (int j = 1; j <= 3; ++j)
      if (j != toward) out.children.emplace_back(region::branch_at(c, j), region::branch_at(cp, rotate_index(j, rc)));
    return out;
  }

  std::shared_ptr<const step_result> cached_step(const region& R, const region& Rp, bool fwd) const {
    step_key key{R, Rp, fwd};
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = steps.find(key);
      if (it != steps.end()) return it->second;
    }
    auto fresh = std::make_shared<const step_result>(step(R, Rp, fwd));
    std::lock_guard<std::mutex> lock(mu);
    return steps.emplace(key, fresh).first->second;
  }

  // The component of the complement of the anchors holding x, and its image.
  std::pair<region, region> top(const gap_class& x) const {
    const auto& e = anchors.entries();
    if (e.empty()) return {region::whole_dendrite(), region::whole_dendrite()};
    std::vector<gap_class> visible;
    for (const auto& [a, m] : e) {
      (void)m;
      bool hidden = false;
      for (const auto& [o, mo] : e) {
        (void)mo;
        if (!(o == a) && o.branch_toward(a) != o.branch_toward(x)) {
          hidden = true;
          break;
        }
      }
      if (!hidden) visible.push_back(a);
    }
    if (visible.size() == 1) {
      const gap_class& a = visible[0];
      const mapped& m = e.at(a);
      int i = a.branch_toward(x);
      return {region::branch_at(a, i), region::branch_at(m.point, rotate_index(i, m.rotation))};
    }
    if (visible.size() == 2)
      return {region::between(visible[0], visible[1]), region::between(e.at(visible[0]).point, e.at(visible[1]).point)};
    throw std::logic_error("evaluate: anchors are not center-closed around " + x.str());
  }

  mapped evaluate(const gap_class& x) const {
    if (product) {
      mapped h = inner->evaluate(x);
      mapped g = outer->evaluate(h.point);
      return {g.point, mod3(h.rotation + g.rotation)};
    }
    if (!x.is_branch()) throw std::invalid_argument("evaluate: " + x.str() + " is not a branch point");
    auto it = anchors.entries().find(x);
    if (it != anchors.entries().end()) return it->second;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto hit = points.find(x);
      if (hit != points.end()) return hit->second;
    }
    auto [R, Rp] = top(x);
    bool fwd = forth;
    for (;;) {
      auto res = cached_step(R, Rp, fwd);
      for (const auto& e : res->mapped)
        if (e.source == x) {
          mapped out{e.target, e.rotation};
          std::lock_guard<std::mutex> lock(mu);
          points.emplace(x, out);
          return out;
        }
      bool moved = false;
      for (const auto& [S, Sp] : res->children)
        if (S.contains(x)) {
          R = S;
          Rp = Sp;
          moved = true;
          break;
        }
      if (!moved) throw std::logic_error("evaluate: " + x.str() + " left every subregion of " + R.str());
      fwd = !fwd;
    }
  }
};

group_element group_element::identity(const lamination& L, int budget) {
  return from_anchors(anchor_map{}, L, budget, true);
}

group_element group_element::from_anchors(const anchor_map& a, const lamination& L, int budget, bool forth) {
  validate(a, L, nullptr, budget);
  auto n = std::make_shared<node>();
  n->L = &L;
  n->budget = budget;
  n->anchors = a;
  n->forth = forth;
  return group_element(n);
}

mapped group_element::evaluate(const gap_class& x) const { return impl_->evaluate(x); }

group_element group_element::inverse() const {
  auto n = std::make_shared<node>();
  n->L = impl_->L;
  n->budget = impl_->budget;
  if (impl_->product) {
    n->product = true;
    n->outer = group_element(impl_->inner).inverse().impl_;
    n->inner = group_element(impl_->outer).inverse().impl_;
  } else {
    n->anchors = impl_->anchors.inverse();
    n->forth = !impl_->forth;
  }
  return group_element(n);
}

group_element compose(const group_element& g, const group_element& h) {
  if (g.impl_->L != h.impl_->L) throw std::invalid_argument("compose: elements over different laminations");
  auto n = std::make_shared<group_element::node>();
  n->L = g.impl_->L;
  n->budget = std::max(g.impl_->budget, h.impl_->budget);
  n->product = true;
  n->outer = g.impl_;
  n->inner = h.impl_;
  return group_element(n);
}

bool group_element::is_product() const { return impl_->product; }

const anchor_map& group_element::anchors() const {
  if (impl_->product) throw std::logic_error("group_element: a product has no anchor map");
  return impl_->anchors;
}

bool group_element::forth() const { return impl_->forth; }
const lamination& group_element::lam() const { return *impl_->L; }
int group_element::budget() const { return impl_->budget; }

bool is_even(const std::array<int, 3>& perm) {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) inversions += perm[i] > perm[j];
  return inversions % 2 == 0;
}

std::array<int, 3> compose_perm(const std::array<int, 3>& outer, const std::array<int, 3>& inner) {
  return {outer[inner[0] - 1], outer[inner[1] - 1], outer[inner[2] - 1]};
}

std::string perm_str(const std::array<int, 3>& perm) {
  return std::to_string(perm[0]) + std::to_string(perm[1]) + std::to_string(perm[2]);
}

std::array<int, 3> local_action(const group_element& g, const gap_class& x, const coloring& C) {
  gap_class gx = g(x);
  if (!C.is_colored(x) || !C.is_colored(gx))
    throw std::invalid_argument("local_action: " + x.id_str() + " or its image is not colored");
  std::array<int, 3> perm{};
  for (int i = 1; i <= 3; ++i) {
    region B = region::branch_at(x, i);
    auto probe = g.lam().first_class(
        {x.arc_at(i)}, [&](const gap_class& c) { return c.is_branch() && B.contains(c); }, g.budget());
    if (!probe) throw budget_exhausted("local_action: empty branch " + B.str());
    int j = gx.branch_toward(g(*probe));
    perm[color_of_branch(C, x, i) - 1] = color_of_branch(C, gx, j);
  }
  auto check = perm;
  std::sort(check.begin(), check.end());
  if (check != std::array<int, 3>{1, 2, 3}) throw std::logic_error("local_action: branches collapse at " + x.str());
  return perm;
}

group_element rotation_at(const gap_class& x, int turns, const lamination& L, int budget) {
  if (turns < 0 || turns > 2) throw std::invalid_argument("rotation_at: turns must be 0, 1 or 2");
  anchor_map a;
  a.add(x, x, turns);
  return group_element::from_anchors(a, L, budget);
}

group_element transporter(const gap_class& x, const gap_class& y, const lamination& L, int budget) {
  anchor_map a;
  a.add(x, y, 0);
  return group_element::from_anchors(a, L, budget);
}

group_element shrinker(const gap_class& x, int source_index, const gap_class& y, int target_index,
                       const lamination& L, int budget) {
  if (source_index < 1 || source_index > 3 || target_index < 1 || target_index > 3)
    throw std::invalid_argument("shrinker: branch index out of range");
  anchor_map a;
  a.add(x, y, mod3(target_index - source_index));
  return group_element::from_anchors(a, L, budget);
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

gap_class random_class(std::mt19937_64& rng, const lamination& L, int max_depth) {
  const auto& level = L.level(uniform(rng, 0, std::min(max_depth, L.depth())));
  return level[uniform(rng, 0, static_cast<int>(level.size()) - 1)];
}

group_element random_simple(std::mt19937_64& rng, const lamination& L, int max_depth, int budget) {
  switch (uniform(rng, 0, 2)) {
    case 0: {
      gap_class x = random_class(rng, L, max_depth);
      return rotation_at(x, uniform(rng, 1, 2), L, budget);
    }
    case 1: {
      gap_class x = random_class(rng, L, max_depth);
      return transporter(x, random_class(rng, L, max_depth), L, budget);
    }
    default: {
      gap_class x = random_class(rng, L, max_depth);
      int i = uniform(rng, 1, 3);
      gap_class y = random_class(rng, L, max_depth);
      int j = uniform(rng, 1, 3);
      return shrinker(x, i, y, j, L, budget);
    }
  }
}

}  // namespace

group_element random_element(std::mt19937_64& rng, const lamination& L, int max_depth, int budget) {
  group_element g = random_simple(rng, L, max_depth, budget);
  if (uniform(rng, 0, 1) == 0) return g;
  return compose(g, random_simple(rng, L, max_depth, budget));
}

nonsmooth_result nonsmooth_witness(const modulus& omega, int stages, const lamination& L, const coloring& C,
                                   int budget) {
  if (stages < 1) throw std::invalid_argument("nonsmooth_witness: need at least one stage");
  const gap_class b = root(), b_other = first_child();
  const angle beta = b.angles().front();
  const region base = region::between(b, b_other);
  anchor_map A;
  A.add(b, b, 0);
  A.add(b_other, b_other, 0);
  std::vector<witness_stage> log;
  gap_class previous = b_other;
  auto start_toward_b = [&](const gap_class& c) { return c.arc_at(c.branch_toward(b)).start; };
  for (int n = 1; n <= stages; ++n) {
    region near = region::between(previous, b);
    auto image = L.first_class(
        near.arcs(),
        [&](const gap_class& c) {
          int t = near.side_count(c);
          return c.is_branch() && near.contains(c) && (t == 1 || t == 2);
        },
        budget);
    if (!image) throw budget_exhausted("nonsmooth_witness: no image point at stage " + std::to_string(n));
    const gap_class target = *image;
    const angle x_image = start_toward_b(target);
    const rational d_image = arc_distance(beta, x_image);
    const rational factor(n);
    rational delta = d_image;
    for (int guard = 0; omega.compare(d_image, factor, delta) <= 0; ++guard) {
      if (guard > 4 * budget) throw budget_exhausted("nonsmooth_witness: omega does not vanish fast enough");
      delta /= 2;
    }
    region inner = region::between(target, b);
    arc window{angle(frac(beta.value() - delta)), beta};
    int type = base.side_count(target);
    auto source = L.first_class(
        {window},
        [&](const gap_class& c) {
          if (!c.is_branch() || !inner.contains(c) || base.side_count(c) != type) return false;
          angle x = start_toward_b(c);
          if (!window.contains(x) || omega.compare(d_image, factor, arc_distance(beta, x)) <= 0) return false;
          if (C.is_colored(c) && C.is_colored(target) &&
              color_of_branch(C, c, c.branch_toward(b)) != color_of_branch(C, target, target.branch_toward(b)))
            return false;
          return true;
        },
        budget);
    if (!source)
      throw budget_exhausted("nonsmooth_witness: stage " + std::to_string(n) + " needs depth beyond " +
                             std::to_string(budget));
    const gap_class& X = *source;
    A.add(X, target, mod3(target.branch_toward(b) - X.branch_toward(b)));
    witness_stage w;
    w.stage = n;
    w.source = X;
    w.target = target;
    w.x = start_toward_b(X);
    w.x_image = x_image;
    w.d_source = arc_distance(beta, w.x);
    w.d_image = d_image;
    w.bound = std::to_string(n) + "*" + omega.describe(w.d_source);
    w.pass = omega.compare(w.d_image, factor, w.d_source) > 0;
    log.push_back(w);
    previous = X;
  }
  return {group_element::from_anchors(A, L, budget), b, b_other, beta, log};
}

std::string serialize(const group_element& g) {
  std::ostringstream out;
  out << "#kaleidocircle-element v1\n";
  if (!g.forth()) out << "#extension back\n";
  std::vector<std::tuple<angle, angle, int>> rows;
  for (const auto& [x, m] : g.anchors().entries()) rows.emplace_back(x.id(), m.point.id(), m.rotation);
  std::sort(rows.begin(), rows.end());
  for (const auto& [x, y, r] : rows) out << x.str() << "\t" << y.str() << "\t" << r << "\n";
  return out.str();
}

group_element parse_element(std::string_view text, const lamination& L, int budget) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "#kaleidocircle-element v1")
    throw std::invalid_argument("element file: missing header");
  bool forth = true;
  anchor_map a;
  int lineno = 1;
  auto class_for = [&](const std::string& s) {
    angle id = angle::parse(s);
    auto c = L.classify(id);
    if (!c || !(c->id() == id))
      throw std::invalid_argument("element file: line " + std::to_string(lineno) + ": " + s + " is not a class id");
    return *c;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line == "#extension back") {
      forth = false;
      continue;
    }
    std::istringstream fields(line);
    std::string xs, ys, rs, extra;
    if (!std::getline(fields, xs, '\t') || !std::getline(fields, ys, '\t') || !std::getline(fields, rs, '\t') ||
        std::getline(fields, extra, '\t') || rs.size() != 1 || rs[0] < '0' || rs[0] > '2')
      throw std::invalid_argument("element file: line " + std::to_string(lineno) + ": expected x<TAB>y<TAB>rotation");
    a.add(class_for(xs), class_for(ys), rs[0] - '0');
  }
  return group_element::from_anchors(a, L, budget, forth);
}

}  // namespace kaleido
