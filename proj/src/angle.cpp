#include "kaleido/angle.hpp"

#include <cctype>
#include <stdexcept>

namespace kaleido {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

orientation operator-(orientation o) {
  return o == orientation::positive ? orientation::negative : orientation::positive;
}

rational frac(const rational& r) {
  integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  rational out = r - rational(q);
  out.canonicalize();
  return out;
}

angle::angle(const rational& value) : value_(frac(value)) {}

angle::angle(long numerator, long denominator) {
  if (denominator <= 0) throw std::invalid_argument("angle: denominator must be positive");
  rational r(numerator, denominator);
  r.canonicalize();
  value_ = frac(r);
}

angle angle::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw std::invalid_argument("angle: expected p/q, got '" + std::string(text) + "'");
  auto ps = text.substr(0, slash);
  auto qs = text.substr(slash + 1);
  if (!all_digits(ps) || !all_digits(qs))
    throw std::invalid_argument("angle: malformed '" + std::string(text) + "'");
  integer p{std::string(ps)}, q{std::string(qs)};
  if (q == 0) throw std::invalid_argument("angle: zero denominator in '" + std::string(text) + "'");
  if (p >= q) throw std::invalid_argument("angle: out of range [0,1): '" + std::string(text) + "'");
  integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw std::invalid_argument("angle: not reduced: '" + std::string(text) + "'");
  angle a;
  a.value_ = rational(p, q);
  return a;
}

std::string angle::str() const { return to_string(value_); }

std::string to_string(const rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view ps = text, qs = "1";
  if (slash != std::string_view::npos) {
    ps = text.substr(0, slash);
    qs = text.substr(slash + 1);
  }
  bool neg = !ps.empty() && ps.front() == '-';
  if (neg) ps.remove_prefix(1);
  if (!all_digits(ps) || !all_digits(qs))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  integer q{std::string(qs)};
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  rational r(integer{std::string(ps)}, q);
  r.canonicalize();
  return neg ? rational(-r) : r;
}

angle double_angle(const angle& a) { return angle(rational(a.value() * 2)); }

std::pair<angle, angle> halves(const angle& a) {
  rational h = a.value() / 2;
  return {angle(h), angle(rational(h + rational(1, 2)))};
}

orientation cyclic_orient(const angle& a, const angle& b, const angle& c) {
  if (a == b || b == c || a == c)
    throw std::invalid_argument("cyclic_orient: arguments must be pairwise distinct");
  // Counterclockwise from a, b comes before c.
  return in_positive_arc(b, a, c) ? orientation::positive : orientation::negative;
}

bool in_positive_arc(const angle& z, const angle& a, const angle& b, bool closed) {
  if (a == b) throw std::invalid_argument("in_positive_arc: endpoints must differ");
  if (z == a || z == b) return closed;
  if (a < b) return a < z && z < b;
  return z > a || z < b;
}

rational positive_length(const angle& a, const angle& b) {
  if (a == b) return rational(1);
  rational d = b.value() - a.value();
  if (sgn(d) < 0) d += 1;
  return d;
}

rational arc_distance(const angle& a, const angle& b) {
  rational d = abs(a.value() - b.value());
  rational other = 1 - d;
  return cmp(d, other) <= 0 ? d : other;
}

bool arc::contains(const angle& z) const {
  if (full) return true;
  if (start == end) return !(z == start);
  return in_positive_arc(z, start, end);
}

rational arc::length() const {
  if (full) return rational(1);
  return positive_length(start, end);
}

arc arc::doubled() const {
  if (full || cmp(length(), rational(1, 2)) >= 0) return arc::whole();
  return arc{double_angle(start), double_angle(end), false};
}

}  // namespace kaleido
