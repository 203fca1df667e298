#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kaleido/circle_action.hpp"

namespace kaleido {

struct svg_options {
  int size = 800;
  int digits = 12;
};

// Unit circle plus the three geodesic chords of every class of L.
std::string lamination_svg(const lamination& L, const svg_options& opts = {});

struct viewport {
  double center_re = 0, center_im = 0;
  double half_width = 1.6;  // half of the horizontal extent
};

struct raster {
  int width = 0, height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, top row first
  std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

// Pixel (row, col) samples the point center + ((2col+1-w) - i(2row+1-h)) * half/w.
std::pair<double, double> pixel_point(int row, int col, int width, int height, const viewport& v);

// Escape time of z -> z^2 + i from each pixel: the first iteration whose
// modulus exceeds 2 (capped at 255), or 0 when bounded for max_iter steps.
raster julia_raster(int width, int height, int max_iter, const viewport& v = {});
std::string to_pgm(const raster& r);

struct complex_q {
  rational re, im;
  friend bool operator<(const complex_q& a, const complex_q& b) {
    int c = cmp(a.re, b.re);
    return c != 0 ? c < 0 : cmp(a.im, b.im) < 0;
  }
  friend bool operator==(const complex_q& a, const complex_q& b) { return a.re == b.re && a.im == b.im; }
};

struct tree_iterate {
  std::vector<complex_q> points;  // sorted, distinct
  std::vector<std::pair<complex_q, complex_q>> segments;
};

// Vertices and segments of T_n, with T_0 = [-1,0] u [0,i] u [0,1] and
// T_{k+1} the union of its images under (z-1)/2, (conj z+1)/2, (conj z+i)/2.
tree_iterate csst(int iterations);
complex_q csst_map(int which, const complex_q& z);
std::string csst_svg(int iterations, const svg_options& opts = {});

// Graph of h on the unit square, with breakpoint markers.
std::string homeo_plot(const circle_homeo& h, const svg_options& opts = {});

}  // namespace kaleido
