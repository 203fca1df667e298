#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kaleido/angle.hpp"

namespace kaleido {

// A monotone modulus of continuity with omega(0) = 0, evaluated without
// floating point: either r^(p/q) with p/q > 0, or a right-continuous step
// function given by (threshold, value) pairs.
class modulus {
 public:
  // "pow:p/q" (or "pow:p"), or "step:t1:v1,t2:v2,..." meaning omega(r) = v_i
  // for the first i with r <= t_i and the last value beyond.
  static modulus parse(std::string_view spec);

  // Sign of lhs - factor * omega(r), exact; lhs, factor, r >= 0.
  int compare(const rational& lhs, const rational& factor, const rational& r) const;

  // Rational bounds with lower <= omega(r) <= upper.
  rational lower_bound(const rational& r) const;
  rational upper_bound(const rational& r) const;

  // Human readable omega(r), e.g. "(1/64)^(1/2)".
  std::string describe(const rational& r) const;
  std::string str() const { return spec_; }

 private:
  std::string spec_;
  bool power_ = true;
  unsigned long p_ = 1, q_ = 1;
  std::vector<std::pair<rational, rational>> steps_;

  const rational& step_value(const rational& r) const;
};

// Floor and ceiling of the n-th root of a nonnegative integer.
integer root_floor(const integer& v, unsigned long n);
integer root_ceil(const integer& v, unsigned long n);

rational pow_ui(const rational& r, unsigned long e);

}  // namespace kaleido
