#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace solvcontact {

/// Exact rational number. All arithmetic is exact; canonical form is kept by GMP.
using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when an operation would mix scalars from different number fields.
class FieldMismatch : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }
inline double to_double(const Rational& q) { return q.get_d(); }
long double to_long_double(const Rational& q);

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "a", "-a", "a/b". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// cos(k*pi/2), sin(k*pi/2) for integer k; values lie in {-1, 0, 1}.
Rational quarter_turn_cos(long k);
Rational quarter_turn_sin(long k);

}  // namespace solvcontact
