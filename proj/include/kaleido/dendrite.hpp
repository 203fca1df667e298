#pragma once

#include <string>
#include <vector>

#include "kaleido/errors.hpp"
#include "kaleido/lamination.hpp"

namespace kaleido {

enum class point_order { end, regular, branch };

std::string to_string(point_order o);

point_order order_of(const gap_class& p);

// z separates x from y: their angles lie in different arcs of z.
bool separates(const gap_class& z, const gap_class& x, const gap_class& y);

// Index (1..3) of the branch around x containing y.
int branch_of(const gap_class& x, const gap_class& y);

gap_class center(const gap_class& x, const gap_class& y, const gap_class& z, const lamination& L,
                 int budget = default_search_budget());

std::vector<gap_class> center_closure(std::vector<gap_class> S, const lamination& L);

// The two circle pieces of the component D(a,b): `plus_gap` runs from the
// start of a's arc toward b to the end of b's arc toward a ((a3, b1) in the
// cyclic labelling a1 a2 a3 b1 b2 b3), `minus_gap` is (b3, a1).
arc plus_gap(const gap_class& a, const gap_class& b);
arc minus_gap(const gap_class& a, const gap_class& b);

// A connected piece of the dendrite bounded by at most two branch points:
// everything, one branch B_a(index), or a component D(a, b).
class region {
 public:
  enum class kind { whole, branch, between };

  static region whole_dendrite();
  static region branch_at(const gap_class& a, int index);
  static region between(const gap_class& a, const gap_class& b);

  kind shape() const { return shape_; }
  const gap_class& first() const { return a_; }
  const gap_class& second() const { return b_; }
  int index() const { return index_; }

  bool contains(const gap_class& y) const;
  std::vector<arc> arcs() const;
  // Number of y's angles in plus_gap(a, b); meaningful for `between` only.
  int side_count(const gap_class& y) const;
  std::string str() const;

  friend bool operator<(const region& l, const region& r);
  friend bool operator==(const region& l, const region& r);

 private:
  kind shape_ = kind::whole;
  gap_class a_, b_;
  int index_ = 0;
  int a_toward_b_ = 0, b_toward_a_ = 0;
};

// The end xi (default angle 0) and the rooted order of section four.
struct rooted_structure {
  angle base{};
  std::vector<gap_class> universe;
};

bool rooted_leq(const gap_class& a, const gap_class& b, const rooted_structure& R);
bool rooted_r1(const gap_class& a, const gap_class& b, const rooted_structure& R);
bool rooted_r2(const gap_class& a, const gap_class& b, const rooted_structure& R);

gap_class rooted_meet(const gap_class& a, const gap_class& b, const rooted_structure& R, const lamination& L);
std::vector<gap_class> meet_closure(std::vector<gap_class> S, const rooted_structure& R, const lamination& L);

// Finite relational structure (A, <=, R1, R2) as tables, so that faults can be
// injected independently of the geometry.
struct dt2_table {
  std::vector<std::string> labels;
  std::vector<std::vector<char>> leq, r1, r2;
};

dt2_table build_dt2_table(const std::vector<gap_class>& sample, const rooted_structure& R);

struct axiom_result {
  int axiom = 0;
  bool pass = true;
  std::string counterexample;
};

std::vector<axiom_result> check_dt2_axioms(const dt2_table& t);
std::vector<axiom_result> check_dt2_axioms(const std::vector<gap_class>& sample, const rooted_structure& R);

// Lines `a-id<TAB>b-id<TAB>rel` for strict leq, r1 and r2.
std::string rooted_dump(const std::vector<gap_class>& sample, const rooted_structure& R);

}  // namespace kaleido
