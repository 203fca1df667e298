#pragma once

#include <array>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kaleido/coloring.hpp"
#include "kaleido/modulus.hpp"

namespace kaleido {

// Image of a branch point together with the arc correspondence: arc i of the
// source goes to arc ((i - 1 + rotation) mod 3) + 1 of the target.
struct mapped {
  gap_class point;
  int rotation = 0;
};

int rotate_index(int index, int rotation);

class anchor_map {
 public:
  void add(const gap_class& x, const gap_class& y, int rotation);
  const std::map<gap_class, mapped>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  anchor_map inverse() const;

 private:
  std::map<gap_class, mapped> entries_;
};

// Throws std::invalid_argument naming the violated point or triple unless the
// domain and image are center-closed, betweenness and branch cyclic order are
// preserved, and (when a coloring is given) color maps at colored points are
// even.
void validate(const anchor_map& a, const lamination& L, const coloring* C = nullptr,
              int budget = default_search_budget());

// A group element given by finite anchor data and a deterministic
// back-and-forth extension, or a product of such elements. Copies share the
// extension cache, which is internally synchronized.
class group_element {
 public:
  static group_element identity(const lamination& L, int budget = default_search_budget());
  // Validates the anchors; `forth` selects the parity of the first extension step.
  static group_element from_anchors(const anchor_map& a, const lamination& L, int budget = default_search_budget(),
                                    bool forth = true);

  mapped evaluate(const gap_class& x) const;
  gap_class operator()(const gap_class& x) const { return evaluate(x).point; }

  group_element inverse() const;
  friend group_element compose(const group_element& g, const group_element& h);

  bool is_product() const;
  const anchor_map& anchors() const;
  bool forth() const;
  const lamination& lam() const;
  int budget() const;

  struct node;

 private:
  explicit group_element(std::shared_ptr<const node> n) : impl_(std::move(n)) {}
  std::shared_ptr<const node> impl_;
};

// g after h.
group_element compose(const group_element& g, const group_element& h);

// Color permutation at x: perm[c - 1] is the color at g(x) of the image of the
// branch colored c at x. Arc images are found by probing a point of each
// branch, not by reading the stored rotation.
std::array<int, 3> local_action(const group_element& g, const gap_class& x, const coloring& C);
bool is_even(const std::array<int, 3>& perm);
std::array<int, 3> compose_perm(const std::array<int, 3>& outer, const std::array<int, 3>& inner);
std::string perm_str(const std::array<int, 3>& perm);

group_element rotation_at(const gap_class& x, int turns, const lamination& L, int budget = default_search_budget());
group_element transporter(const gap_class& x, const gap_class& y, const lamination& L,
                          int budget = default_search_budget());
group_element shrinker(const gap_class& x, int source_index, const gap_class& y, int target_index,
                       const lamination& L, int budget = default_search_budget());

// A rotation, transporter, shrinker or product of two of them, built on
// classes of depth at most max_depth.
group_element random_element(std::mt19937_64& rng, const lamination& L, int max_depth,
                             int budget = default_search_budget());

struct witness_stage {
  int stage = 0;
  gap_class source, target;  // anchor source -> target
  angle x, x_image;           // start angles of the arcs toward the fixed point
  rational d_source, d_image;  // distances to the accumulation angle
  std::string bound;           // stage * omega(d_source), symbolic
  bool pass = false;           // d_image > stage * omega(d_source), exact
};

struct nonsmooth_result {
  group_element element;
  gap_class fixed, fixed_other;
  angle accumulation;
  std::vector<witness_stage> stages;
};

nonsmooth_result nonsmooth_witness(const modulus& omega, int stages, const lamination& L, const coloring& C,
                                   int budget = default_search_budget());

std::string serialize(const group_element& g);
group_element parse_element(std::string_view text, const lamination& L, int budget = default_search_budget());

}  // namespace kaleido
