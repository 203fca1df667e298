#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kaleido/angle.hpp"

namespace kaleido {

// Fiber of the Caratheodory loop: 1 angle (end), 2 (regular) or 3 (branch).
class gap_class {
 public:
  gap_class() : angles_{angle{}} {}
  explicit gap_class(std::vector<angle> angles, int depth = 0);

  const std::vector<angle>& angles() const { return angles_; }
  std::size_t size() const { return angles_.size(); }
  int depth() const { return depth_; }
  bool is_branch() const { return angles_.size() == 3; }

  const angle& id() const { return angles_.front(); }
  std::string id_str() const { return angles_.front().str(); }
  bool contains(const angle& z) const;

  // Arcs are numbered 1..size(): arc i runs from angles[i-1] to angles[i mod size].
  arc arc_at(int index) const;
  // Index of the arc containing z, 0 when z is one of our angles.
  int arc_containing(const angle& z) const;
  // Index of the arc holding every angle of `other`; throws if they share an
  // angle or straddle.
  int branch_toward(const gap_class& other) const;

  std::string str() const;

  friend bool operator==(const gap_class& a, const gap_class& b) { return a.angles_ == b.angles_; }
  friend bool operator<(const gap_class& a, const gap_class& b) { return a.angles_ < b.angles_; }

 private:
  std::vector<angle> angles_;
  int depth_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const gap_class& c) { return os << c.str(); }

// Order by (depth, minimal angle).
bool canonical_less(const gap_class& a, const gap_class& b);

gap_class root();
gap_class first_child();  // {1/14, 9/14, 11/14}

// The fiber of the critical point 0, a regular point: {1/12, 7/12}.
gap_class critical_leaf();

bool unlinked(const gap_class& c1, const gap_class& c2);

class lamination {
 public:
  // levels[k] holds the classes of depth exactly k.
  explicit lamination(std::vector<std::vector<gap_class>> levels);

  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t size() const { return count_; }
  const std::vector<gap_class>& level(int k) const { return levels_.at(k); }
  // All stored classes in canonical order.
  std::vector<gap_class> classes() const;

  // Stored class containing z, if any.
  const gap_class* find(const angle& z) const;
  bool contains(const gap_class& c) const;

  // Classes of depth exactly k with an angle in `where`, sorted by minimal
  // angle. Depths past the stored one are reached by local pullback.
  std::vector<gap_class> touching(const arc& where, int k) const;

  // The branch class of z at any depth, or nothing when z is not a branch angle.
  std::optional<gap_class> classify(const angle& z) const;

  // Minimal (depth, minimal angle) class touching one of `where` and accepted
  // by `accept`, searching depths 0..max_depth.
  std::optional<gap_class> first_class(const std::vector<arc>& where,
                                       const std::function<bool(const gap_class&)>& accept,
                                       int max_depth) const;

 private:
  std::vector<std::vector<gap_class>> levels_;
  std::vector<std::vector<std::pair<angle, std::uint32_t>>> level_angles_;
  std::map<angle, std::pair<int, std::uint32_t>> index_;
  std::size_t count_ = 0;
};

// The preimage triple of `parent` lying on the side of the critical diameter
// that contains `preimage`.
gap_class side_pullback(const gap_class& parent, const angle& preimage);

// Brute force over the 10 partitions of the six preimages; the partition must
// be unique. Output in canonical order.
std::pair<gap_class, gap_class> pullback_class(const gap_class& c, const lamination& context);

lamination generate(int depth);

gap_class class_of(const angle& a, const lamination& L);

bool equivalent_up_to_depth(const angle& a, const angle& b, const lamination& L);

// Largest arc of the circle free of class angles at each depth (density report).
std::vector<rational> largest_free_arc(const lamination& L);

std::string serialize(const lamination& L);
lamination parse_lamination(std::string_view text);

}  // namespace kaleido
