#include "kaleido/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kaleido/errors.hpp"

namespace kaleido {

namespace {

constexpr int csst_max_iterations = 10;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

std::string svg_open(int width, int height) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  return out.str();
}

struct point2 {
  double x, y;
};

}  // namespace

std::string lamination_svg(const lamination& L, const svg_options& opts) {
  const double c = opts.size / 2.0, R = opts.size / 2.0 - 10.0;
  auto at = [&](const angle& t) {
    double th = 2 * std::numbers::pi * t.value().get_d();
    return point2{c + R * std::cos(th), c - R * std::sin(th)};
  };
  auto f = [&](double v) { return fixed(v, opts.digits); };
  std::ostringstream out;
  out << svg_open(opts.size, opts.size);
  out << "<circle cx=\"" << f(c) << "\" cy=\"" << f(c) << "\" r=\"" << f(R)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const auto& cls : L.classes())
    for (std::size_t i = 0; i < cls.size(); ++i) {
      const angle &a = cls.angles()[i], &b = cls.angles()[(i + 1) % cls.size()];
      point2 P = at(a), Q = at(b);
      rational d = arc_distance(a, b);
      out << "<path class=\"chord\" d=\"M " << f(P.x) << " " << f(P.y) << " ";
      if (d == rational(1, 2)) {
        out << "L " << f(Q.x) << " " << f(Q.y);
      } else {
        double half = std::numbers::pi * d.get_d();
        double r = R * std::tan(half);
        // The geodesic bows toward the disk center O.
        double cross = (Q.x - P.x) * (c - P.y) - (Q.y - P.y) * (c - P.x);
        out << "A " << f(r) << " " << f(r) << " 0 0 " << (cross < 0 ? 1 : 0) << " " << f(Q.x) << " " << f(Q.y);
      }
      out << "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.5\"/>\n";
    }
  out << "</svg>\n";
  return out.str();
}

std::pair<double, double> pixel_point(int row, int col, int width, int height, const viewport& v) {
  double scale = v.half_width / width;
  return {v.center_re + (2.0 * col + 1 - width) * scale, v.center_im - (2.0 * row + 1 - height) * scale};
}

raster julia_raster(int width, int height, int max_iter, const viewport& v) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("julia_raster: dimensions must be positive");
  if (max_iter < 1) throw std::invalid_argument("julia_raster: max_iter must be at least 1");
  raster out{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0)};
  for (int row = 0; row < height; ++row)
    for (int col = 0; col < width; ++col) {
      auto [x, y] = pixel_point(row, col, width, height, v);
      int value = 0;
      for (int n = 1; n <= max_iter; ++n) {
        double nx = x * x - y * y, ny = 2 * x * y + 1;
        x = nx;
        y = ny;
        if (x * x + y * y > 4) {
          value = std::min(n, 255);
          break;
        }
      }
      out.pixels[static_cast<std::size_t>(row) * width + col] = static_cast<std::uint8_t>(value);
    }
  return out;
}

std::string to_pgm(const raster& r) {
  std::string out = "P5\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n255\n";
  out.append(r.pixels.begin(), r.pixels.end());
  return out;
}

complex_q csst_map(int which, const complex_q& z) {
  switch (which) {
    case 1: return {(z.re - 1) / 2, z.im / 2};
    case 2: return {(z.re + 1) / 2, -z.im / 2};
    case 3: return {z.re / 2, (1 - z.im) / 2};
  }
  throw std::invalid_argument("csst_map: map index must be 1, 2 or 3");
}

tree_iterate csst(int iterations) {
  if (iterations < 0) throw std::invalid_argument("csst: negative iteration count");
  if (iterations > csst_max_iterations)
    throw resource_error("csst: " + std::to_string(iterations) + " iterations exceed the maximum of " +
                         std::to_string(csst_max_iterations));
  const complex_q zero{0, 0};
  std::vector<std::pair<complex_q, complex_q>> segs{
      {complex_q{-1, 0}, zero}, {zero, complex_q{0, 1}}, {zero, complex_q{1, 0}}};
  for (int k = 0; k < iterations; ++k) {
    std::vector<std::pair<complex_q, complex_q>> next;
    for (int m = 1; m <= 3; ++m)
      for (const auto& [p, q] : segs) next.emplace_back(csst_map(m, p), csst_map(m, q));
    segs = std::move(next);
  }
  std::set<complex_q> pts;
  for (const auto& [p, q] : segs) {
    pts.insert(p);
    pts.insert(q);
  }
  return {std::vector<complex_q>(pts.begin(), pts.end()), segs};
}

std::string csst_svg(int iterations, const svg_options& opts) {
  tree_iterate t = csst(iterations);
  const double c = opts.size / 2.0, R = opts.size / 2.0 - 10.0;
  auto f = [&](double v) { return fixed(v, opts.digits); };
  std::ostringstream out;
  out << svg_open(opts.size, opts.size);
  for (const auto& [p, q] : t.segments)
    out << "<line x1=\"" << f(c + R * p.re.get_d()) << "\" y1=\"" << f(c - R * p.im.get_d()) << "\" x2=\""
        << f(c + R * q.re.get_d()) << "\" y2=\"" << f(c - R * q.im.get_d())
        << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::string homeo_plot(const circle_homeo& h, const svg_options& opts) {
  const double S = opts.size, m = 10.0, W = S - 2 * m;
  auto f = [&](double v) { return fixed(v, opts.digits); };
  auto X = [&](const rational& s) { return f(m + W * s.get_d()); };
  auto Y = [&](const rational& t) { return f(m + W * (1 - t.get_d())); };
  std::ostringstream out;
  out << svg_open(opts.size, opts.size);
  out << "<rect x=\"" << f(m) << "\" y=\"" << f(m) << "\" width=\"" << f(W) << "\" height=\"" << f(W)
      << "\" fill=\"none\" stroke=\"gray\" stroke-width=\"0.5\"/>\n";
  const auto& bp = h.breakpoints();
  std::vector<std::pair<rational, rational>> pts;
  for (const auto& [s, t] : bp) pts.emplace_back(s.value(), t.value());
  if (pts.size() == 1) pts.push_back(pts.front());
  for (std::size_t k = 0; k < pts.size() && pts.size() > 1; ++k) {
    // Affine piece from breakpoint k to k+1, cut where the source or the image
    // wraps past 1.
    const auto& [s0, t0] = pts[k];
    const auto& [s1, t1] = pts[(k + 1) % pts.size()];
    rational ls = s1 - s0, lt = t1 - t0;
    if (ls <= 0) ls += 1;
    if (lt <= 0) lt += 1;
    std::vector<rational> cuts{0, 1};
    if (s0 + ls > 1) cuts.push_back((1 - s0) / ls);
    if (t0 + lt > 1) cuts.push_back((1 - t0) / lt);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      if (cuts[c] == cuts[c + 1]) continue;
      rational u0 = cuts[c], u1 = cuts[c + 1], mid = (u0 + u1) / 2;
      rational sw = s0 + mid * ls >= 1 ? rational(1) : rational(0);
      rational tw = t0 + mid * lt >= 1 ? rational(1) : rational(0);
      out << "<line x1=\"" << X(s0 + u0 * ls - sw) << "\" y1=\"" << Y(t0 + u0 * lt - tw) << "\" x2=\""
          << X(s0 + u1 * ls - sw) << "\" y2=\"" << Y(t0 + u1 * lt - tw)
          << "\" stroke=\"#1f4e9c\" stroke-width=\"1\"/>\n";
    }
  }
  for (const auto& [s, t] : bp)
    out << "<circle class=\"breakpoint\" cx=\"" << X(s.value()) << "\" cy=\"" << Y(t.value())
        << "\" r=\"2\" fill=\"#c0392b\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace kaleido
