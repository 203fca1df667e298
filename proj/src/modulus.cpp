#include "kaleido/modulus.hpp"

#include <stdexcept>

namespace kaleido {

namespace {

// Bits of precision for the rational root bounds.
constexpr unsigned long root_scale_bits = 64;

unsigned long parse_positive(const integer& v, std::string_view what) {
  if (v <= 0 || !v.fits_ulong_p()) throw std::invalid_argument(std::string("modulus: bad ") + std::string(what));
  return v.get_ui();
}

}  // namespace

integer root_floor(const integer& v, unsigned long n) {
  if (v < 0 || n == 0) throw std::invalid_argument("root_floor: bad argument");
  integer out;
  mpz_root(out.get_mpz_t(), v.get_mpz_t(), n);
  return out;
}

integer root_ceil(const integer& v, unsigned long n) {
  integer out = root_floor(v, n);
  integer back;
  mpz_pow_ui(back.get_mpz_t(), out.get_mpz_t(), n);
  if (back != v) out += 1;
  return out;
}

rational pow_ui(const rational& r, unsigned long e) {
  integer n, d;
  mpz_pow_ui(n.get_mpz_t(), r.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), r.get_den_mpz_t(), e);
  rational out(n, d);
  out.canonicalize();
  return out;
}

modulus modulus::parse(std::string_view spec) {
  modulus m;
  m.spec_ = std::string(spec);
  if (spec.rfind("pow:", 0) == 0) {
    rational alpha = parse_rational(spec.substr(4));
    if (alpha <= 0) throw std::invalid_argument("modulus: omega(0) must be 0, so the exponent must be positive");
    m.p_ = parse_positive(alpha.get_num(), "exponent");
    m.q_ = parse_positive(alpha.get_den(), "exponent");
    return m;
  }
  if (spec.rfind("step:", 0) == 0) {
    m.power_ = false;
    std::string body(spec.substr(5));
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      std::size_t colon = item.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("modulus: step entries are threshold:value");
      rational t = parse_rational(item.substr(0, colon)), v = parse_rational(item.substr(colon + 1));
      if (t < 0 || v < 0) throw std::invalid_argument("modulus: negative step entry");
      if (!m.steps_.empty() && (t <= m.steps_.back().first || v < m.steps_.back().second))
        throw std::invalid_argument("modulus: step thresholds must increase and values must not decrease");
      m.steps_.emplace_back(t, v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (m.steps_.empty()) throw std::invalid_argument("modulus: empty step function");
    if (m.steps_.front().second != 0) throw std::invalid_argument("modulus: omega(0) must be 0");
    return m;
  }
  throw std::invalid_argument("modulus: unknown spec '" + std::string(spec) + "' (expected pow:a or step:...)");
}

const rational& modulus::step_value(const rational& r) const {
  for (const auto& [t, v] : steps_)
    if (r <= t) return v;
  return steps_.back().second;
}

int modulus::compare(const rational& lhs, const rational& factor, const rational& r) const {
  if (!power_) {
    rational rhs = factor * step_value(r);
    return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? 1 : 0);
  }
  // lhs vs factor * r^(p/q)  <=>  lhs^q vs factor^q * r^p
  rational l = pow_ui(lhs, q_), rhs = pow_ui(factor, q_) * pow_ui(r, p_);
  int c = cmp(l, rhs);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

rational modulus::lower_bound(const rational& r) const {
  if (!power_) return step_value(r);
  // r^(p/q) = (N * D^(q-1))^(1/q) / D with r^p = N/D; scaled for precision.
  rational rp = pow_ui(r, p_);
  integer n = rp.get_num(), d = rp.get_den(), scale = integer(1) << root_scale_bits;
  integer radicand = n * pow_ui(rational(d), q_ - 1).get_num() * pow_ui(rational(scale), q_).get_num();
  rational out(root_floor(radicand, q_), d * scale);
  out.canonicalize();
  return out;
}

rational modulus::upper_bound(const rational& r) const {
  if (!power_) return step_value(r);
  rational rp = pow_ui(r, p_);
  integer n = rp.get_num(), d = rp.get_den(), scale = integer(1) << root_scale_bits;
  integer radicand = n * pow_ui(rational(d), q_ - 1).get_num() * pow_ui(rational(scale), q_).get_num();
  rational out(root_ceil(radicand, q_), d * scale);
  out.canonicalize();
  return out;
}

std::string modulus::describe(const rational& r) const {
  if (!power_) return to_string(step_value(r));
  if (q_ == 1 && p_ == 1) return to_string(r);
  std::string e = q_ == 1 ? std::to_string(p_) : std::to_string(p_) + "/" + std::to_string(q_);
  return "(" + to_string(r) + ")^(" + e + ")";
}

}  // namespace kaleido
