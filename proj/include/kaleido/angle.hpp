#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace kaleido {

using integer = mpz_class;
using rational = mpq_class;

enum class orientation { positive, negative };

orientation operator-(orientation o);

// A point of R/Z stored as a reduced fraction in [0, 1).
class angle {
 public:
  angle() = default;
  explicit angle(const rational& value);
  angle(long numerator, long denominator);

  // Strict "p/q" parser: reduced, 0 <= p < q, zero spelled "0/1".
  static angle parse(std::string_view text);

  const rational& value() const { return value_; }
  integer numerator() const { return value_.get_num(); }
  integer denominator() const { return value_.get_den(); }
  std::string str() const;

  friend bool operator==(const angle& a, const angle& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const angle& a, const angle& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  rational value_{0};
};

inline std::ostream& operator<<(std::ostream& os, const angle& a) { return os << a.str(); }

// Reduces an arbitrary rational modulo 1.
rational frac(const rational& r);

angle double_angle(const angle& a);
std::pair<angle, angle> halves(const angle& a);

orientation cyclic_orient(const angle& a, const angle& b, const angle& c);

// Positive (counterclockwise) arc from a to b.
bool in_positive_arc(const angle& z, const angle& a, const angle& b, bool closed = false);

// Length of the positive arc from a to b, in (0, 1); 1 when a == b.
rational positive_length(const angle& a, const angle& b);

rational arc_distance(const angle& a, const angle& b);

// An open positive arc. start == end means the circle minus that point;
// `full` means the whole circle.
struct arc {
  angle start;
  angle end;
  bool full = false;

  static arc whole() { return arc{angle{}, angle{}, true}; }
  bool contains(const angle& z) const;
  rational length() const;
  // Image under doubling, whole circle once the length reaches 1/2.
  arc doubled() const;
};

std::string to_string(const rational& r);
rational parse_rational(std::string_view text);

}  // namespace kaleido
