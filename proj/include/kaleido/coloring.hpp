#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kaleido/dendrite.hpp"

namespace kaleido {

enum class side { plus, minus };

struct stage_entry {
  int stage = 0;
  gap_class x, y;
  int i = 0, j = 0;
  gap_class witness;
};

// Orientation-compatible coloring: one rotation offset r in Z/3 per colored
// branch point; arc i gets color ((i - 1 + r) mod 3) + 1.
class coloring {
 public:
  bool is_colored(const gap_class& x) const { return offsets_.count(x) != 0; }
  int offset(const gap_class& x) const;
  void set_offset(const gap_class& x, int r);
  std::size_t size() const { return offsets_.size(); }
  const std::map<gap_class, int>& offsets() const { return offsets_; }

  const std::vector<stage_entry>& stage_log() const { return log_; }
  void record(stage_entry e) { log_.push_back(std::move(e)); }

 private:
  std::map<gap_class, int> offsets_;
  std::vector<stage_entry> log_;
};

// Explicit arc colors per point (arc 1, arc 2, arc 3), as read from a file;
// unlike `coloring` it can hold odd arrangements.
using raw_coloring = std::map<gap_class, std::array<int, 3>>;

int color_of_branch(const coloring& C, const gap_class& x, int i);

// Arc index of x colored `color`.
int branch_with_color(const coloring& C, const gap_class& x, int color);

// The offset that gives arc `index` the color `color`.
int offset_for(int index, int color);

// True when (i, k, j) is a cyclic shift of (1, 2, 3).
bool positive_triple(int i, int k, int j);

// Minimal (depth, minimal angle) branch point strictly between x and y whose
// third arc lies in plus_gap(x, y) (side plus) or minus_gap(x, y) (minus).
gap_class find_z(const gap_class& x, const gap_class& y, side s, const lamination& L, int budget,
                 const std::function<bool(const gap_class&)>& accept = nullptr);

// Stage n colors the n-th enumerated point (offset 0 when new) and adds
// witnesses for every ordered color pair of every pair among the first
// `window` enumerated points that became available at stage n - 1.
coloring build_kaleidoscopic(const lamination& L, const std::vector<gap_class>& enumeration, int budget,
                             std::size_t window);

// Default enumeration: classes of L in (depth, minimal angle) order.
std::vector<gap_class> default_enumeration(const lamination& L);

// Colors every uncolored branch point of `points` with offset 0, the rule
// used for newly enumerated points.
void extend_coloring(coloring& C, const std::vector<gap_class>& points);

bool check_kaleidoscopic_window(const coloring& C, const gap_class& x, const gap_class& y, int i, int j);

bool verify_orientation_compatibility(const raw_coloring& raw);
bool verify_orientation_compatibility(const coloring& C, const lamination& L);

raw_coloring to_raw(const coloring& C);
coloring from_raw(const raw_coloring& raw);

std::string serialize(const coloring& C);
// Accepts `id<TAB>offset` and explicit `id<TAB>c1,c2,c3` lines.
raw_coloring parse_coloring(std::string_view text, const lamination& L);

}  // namespace kaleido
