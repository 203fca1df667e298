#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kaleido/group.hpp"

namespace kaleido {

// Orientation-preserving circle map known on finitely many breakpoints and
// extended affinely in arc length between them.
class circle_homeo {
 public:
  circle_homeo() = default;
  // Throws std::invalid_argument unless the map is injective and preserves
  // cyclic order.
  explicit circle_homeo(std::map<angle, angle> breakpoints, int depth = 0);

  const std::map<angle, angle>& breakpoints() const { return points_; }
  int depth() const { return depth_; }
  std::size_t size() const { return points_.size(); }
  angle eval(const angle& z) const;

 private:
  std::map<angle, angle> points_;
  int depth_ = 0;
};

// Injective and exactly one cyclic descent in the images read in source order.
bool is_cyclic_order_preserving(const std::map<angle, angle>& points);

// Breakpoints are the angles of all classes of depth <= depth, plus `extra`;
// the i-th angle of x goes to the first angle of arc sigma(i) of g(x).
circle_homeo induce(const group_element& g, int depth, const std::vector<gap_class>& extra = {});

// Every class of depth <= h.depth() is mapped by h onto g(x), arc i onto the
// arc of g(x) holding the image of a probe point of branch i.
bool verify_semiconjugacy(const group_element& g, const circle_homeo& h, const lamination& L);

// Every class of depth <= min(h.depth(), L.depth()) goes onto a class.
bool verify_lamination_preserved(const circle_homeo& h, const lamination& L);

enum class orbit_kind { branch, end_or_regular };
std::string to_string(orbit_kind k);
orbit_kind orbit_label(const angle& z, const lamination& L);

// Image of a class angle by the exact arc correspondence of g.
angle act_on_class_angle(const group_element& g, const angle& z);

// Element sending the branch angle a to the branch angle b on the circle.
group_element angle_transporter(const angle& a, const angle& b, const lamination& L,
                                int budget = default_search_budget());

struct tuple_invariant {
  std::string code;
  friend bool operator==(const tuple_invariant&, const tuple_invariant&) = default;
};
tuple_invariant compute_tuple_invariant(const std::vector<angle>& zs, const lamination& L);

struct ratio_report {
  rational lower;  // max over pairs of a lower bound of d(hx,hy) / omega(d(x,y))
  rational upper;  // matching upper bound at the same pair
  std::pair<angle, angle> argmax;
};
ratio_report modulus_ratio(const circle_homeo& h, const modulus& omega,
                           const std::vector<std::pair<angle, angle>>& pairs);

// The orbit of seed under words of length <= word_length in the elements and
// their inverses leaves no gap longer than eps. Class angles move exactly,
// other angles through the map induced at `depth`.
bool minimality_probe(const angle& seed, const std::vector<group_element>& elements, const rational& eps,
                      int word_length = 4, int depth = 6);

// Rows `stage d(x,xn) d(hx,hxn) bound pass` for a witness, with h induced
// from the witness element and the distances recomputed through h.
std::string modulus_report(const nonsmooth_result& w, const modulus& omega, const circle_homeo& h);

std::string serialize(const circle_homeo& h);
circle_homeo parse_homeo(std::string_view text);

}  // namespace kaleido
