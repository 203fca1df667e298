#include <gtest/gtest.h>

#include "kaleido/coloring.hpp"
#include "oracle.hpp"

using namespace kaleido;

namespace {

oracle::triple to_oracle(const gap_class& c) {
  oracle::triple t;
  for (const auto& a : c.angles()) t.push_back(a.value());
  return t;
}

const lamination& L8() {
  static const lamination L = generate(8);
  return L;
}

// Minimal (depth, min angle) branch class with two angles strictly inside the
// given side gap of (x, y) and separating x from y, by plain scanning.
std::optional<gap_class> oracle_z(const gap_class& x, const gap_class& y, bool plus) {
  auto ox = to_oracle(x), oy = to_oracle(y);
  int ix = oracle::arc_of(ox, oy[0]), iy = oracle::arc_of(oy, ox[0]);
  oracle::q lo, hi;
  if (plus) {
    lo = ox[ix];
    hi = oy[(iy + 1) % 3];
  } else {
    lo = oy[iy];
    hi = ox[(ix + 1) % 3];
  }
  for (const auto& c : L8().classes()) {
    if (!c.is_branch()) continue;
    auto oc = to_oracle(c);
    int ax = oracle::arc_of(oc, ox[0]), ay = oracle::arc_of(oc, oy[0]);
    if (ax < 0 || ay < 0 || ax == ay) continue;
    int in = 0;
    for (const auto& a : oc) in += oracle::inside(a, lo, hi);
    if (in == 2) return c;
  }
  return std::nullopt;
}

// Colors of z's arcs toward x and y, from plain interval tests.
std::pair<int, int> oracle_colors(const raw_coloring& raw, const gap_class& z, const gap_class& x, const gap_class& y) {
  auto oz = to_oracle(z);
  const auto& cols = raw.at(z);
  return {cols[oracle::arc_of(oz, to_oracle(x)[0])], cols[oracle::arc_of(oz, to_oracle(y)[0])]};
}

gap_class wrap_class() {
  // First depth-3 branch class inside the wrap arc (4/7, 1/7) of the root.
  for (const auto& c : L8().level(3))
    if (root().branch_toward(c) == 3) return c;
  throw std::logic_error("no class");
}

}  // namespace

TEST(coloring_test, color_of_branch_examples) {
  coloring C;
  C.set_offset(root(), 0);
  EXPECT_EQ(color_of_branch(C, root(), 2), 2);
  C.set_offset(root(), 1);
  EXPECT_EQ(color_of_branch(C, root(), 3), 1);
  EXPECT_THROW(color_of_branch(C, first_child(), 1), std::invalid_argument);
  EXPECT_EQ(branch_with_color(C, root(), 1), 3);
}

TEST(coloring_test, positive_triple_signs) {
  EXPECT_TRUE(positive_triple(1, 2, 3));
  EXPECT_TRUE(positive_triple(2, 3, 1));
  EXPECT_TRUE(positive_triple(3, 1, 2));
  EXPECT_FALSE(positive_triple(1, 3, 2));
  EXPECT_FALSE(positive_triple(3, 2, 1));
}

TEST(coloring_test, find_z_matches_scan) {
  gap_class x = root(), y = wrap_class();
  for (bool plus : {true, false}) {
    auto expected = oracle_z(x, y, plus);
    ASSERT_TRUE(expected);
    gap_class z = find_z(x, y, plus ? side::plus : side::minus, L8(), 8);
    EXPECT_EQ(z, *expected) << plus;
  }
  EXPECT_NE(find_z(x, y, side::plus, L8(), 8), find_z(x, y, side::minus, L8(), 8));
}

TEST(coloring_test, find_z_matches_scan_on_many_pairs) {
  std::vector<gap_class> lv = L8().level(3);
  lv.insert(lv.end(), L8().level(4).begin(), L8().level(4).end());
  int checked = 0;
  for (std::size_t a = 0; a < lv.size(); ++a)
    for (std::size_t b = a + 1; b < lv.size(); b += 3) {
      for (bool plus : {true, false}) {
        auto expected = oracle_z(lv[a], lv[b], plus);
        if (!expected) continue;
        EXPECT_EQ(find_z(lv[a], lv[b], plus ? side::plus : side::minus, L8(), 8), *expected);
        ++checked;
      }
    }
  EXPECT_GT(checked, 10);
}

TEST(coloring_test, find_z_budget_zero) {
  EXPECT_THROW(find_z(root(), wrap_class(), side::plus, L8(), 0), budget_exhausted);
}

TEST(coloring_test, empty_enumeration) {
  coloring C = build_kaleidoscopic(L8(), {}, 40, 30);
  EXPECT_EQ(C.size(), 0u);
  EXPECT_TRUE(verify_orientation_compatibility(C, L8()));
}

TEST(coloring_test, stage_zero_offset) {
  coloring C = build_kaleidoscopic(L8(), {root()}, 40, 30);
  EXPECT_EQ(C.offset(root()), 0);
  EXPECT_EQ(C.size(), 1u);
}

TEST(coloring_test, constructor_soundness) {
  auto all = default_enumeration(L8());
  std::vector<gap_class> en(all.begin(), all.begin() + 15);
  coloring C = build_kaleidoscopic(L8(), en, 60, 30);
  EXPECT_TRUE(verify_orientation_compatibility(C, L8()));
  for (std::size_t a = 0; a < en.size(); ++a)
    for (std::size_t b = 0; b < en.size(); ++b) {
      if (a == b) continue;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          if (i != j) EXPECT_TRUE(check_kaleidoscopic_window(C, en[a], en[b], i, j));
    }
  // Each logged witness is checked with plain interval arithmetic.
  auto raw = to_raw(C);
  EXPECT_EQ(C.stage_log().size(), 15u * 14u / 2u * 6u);
  for (const auto& e : C.stage_log()) {
    auto oz = to_oracle(e.witness);
    EXPECT_NE(oracle::arc_of(oz, to_oracle(e.x)[0]), oracle::arc_of(oz, to_oracle(e.y)[0]));
    EXPECT_EQ(oracle_colors(raw, e.witness, e.x, e.y), std::make_pair(e.i, e.j));
  }
}

TEST(coloring_test, window_limits_pairs) {
  auto all = default_enumeration(L8());
  std::vector<gap_class> en(all.begin(), all.begin() + 8);
  coloring C = build_kaleidoscopic(L8(), en, 60, 4);
  EXPECT_EQ(C.stage_log().size(), 4u * 3u / 2u * 6u);
}

TEST(coloring_test, determinism) {
  auto all = default_enumeration(L8());
  std::vector<gap_class> en(all.begin(), all.begin() + 10);
  EXPECT_EQ(serialize(build_kaleidoscopic(L8(), en, 60, 30)), serialize(build_kaleidoscopic(L8(), en, 60, 30)));
}

TEST(coloring_test, window_check_errors_and_negatives) {
  coloring C;
  C.set_offset(root(), 0);
  EXPECT_THROW(check_kaleidoscopic_window(C, root(), first_child(), 1, 1), std::invalid_argument);
  EXPECT_FALSE(check_kaleidoscopic_window(C, root(), first_child(), 1, 2));
}

TEST(coloring_test, transposed_raw_is_rejected) {
  std::string text = "#kaleidocircle-coloring v1\n1/7\t2,1,3\n";
  auto raw = parse_coloring(text, L8());
  EXPECT_FALSE(verify_orientation_compatibility(raw));
  EXPECT_THROW(from_raw(raw), std::invalid_argument);
  auto even = parse_coloring("#kaleidocircle-coloring v1\n1/7\t2,3,1\n", L8());
  EXPECT_TRUE(verify_orientation_compatibility(even));
  EXPECT_EQ(from_raw(even).offset(root()), 1);
  EXPECT_TRUE(verify_orientation_compatibility(raw_coloring{}));
}

TEST(coloring_test, file_round_trip) {
  auto all = default_enumeration(L8());
  std::vector<gap_class> en(all.begin(), all.begin() + 6);
  coloring C = build_kaleidoscopic(L8(), en, 60, 30);
  std::string text = serialize(C);
  EXPECT_EQ(text.rfind("#kaleidocircle-coloring v1\n", 0), 0u);
  coloring back = from_raw(parse_coloring(text, L8()));
  EXPECT_EQ(back.offsets(), C.offsets());
  EXPECT_THROW(parse_coloring("#kaleidocircle-coloring v1\n2/7\t0\n", L8()), std::invalid_argument);
  EXPECT_THROW(parse_coloring("bad\n", L8()), std::invalid_argument);
}
