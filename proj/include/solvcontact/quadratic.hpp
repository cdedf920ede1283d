#pragma once

#include <iosfwd>
#include <string>

#include "solvcontact/rational.hpp"

namespace solvcontact {

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
///
/// d is a positive non-square integer fixed per field. Elements with b == 0
/// are plain rationals and combine with any field; combining two irrational
/// elements with different d throws FieldMismatch.
class Quadratic {
 public:
  Quadratic() = default;
  Quadratic(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a, Rational b, long d);

  /// sqrt(d) itself.
  static Quadratic root(long d) { return Quadratic(Rational(0), Rational(1), d); }

  const Rational& rational_part() const { return a_; }
  const Rational& root_part() const { return b_; }
  long discriminant() const { return d_; }

  bool is_rational() const { return sgn(b_) == 0; }
  bool is_integer() const { return is_rational() && a_.get_den() == 1; }

  /// Field norm a^2 - d b^2.
  Rational norm() const;
  Quadratic conjugate() const { return {a_, -b_, d_}; }
  Quadratic inverse() const;
  double to_double() const;
  int sign() const;

  Quadratic& operator+=(const Quadratic& o);
  Quadratic& operator-=(const Quadratic& o);
  Quadratic& operator*=(const Quadratic& o);
  Quadratic& operator/=(const Quadratic& o) { return *this *= o.inverse(); }

  friend Quadratic operator+(Quadratic x, const Quadratic& y) { return x += y; }
  friend Quadratic operator-(Quadratic x, const Quadratic& y) { return x -= y; }
  friend Quadratic operator*(Quadratic x, const Quadratic& y) { return x *= y; }
  friend Quadratic operator/(Quadratic x, const Quadratic& y) { return x /= y; }
  Quadratic operator-() const { return {-a_, -b_, d_}; }

  friend bool operator==(const Quadratic& x, const Quadratic& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  long merged_discriminant(const Quadratic& o) const;
  void normalize() {
    if (sgn(b_) == 0) d_ = 0;
  }

  Rational a_{0};
  Rational b_{0};
  long d_ = 0;
};

inline bool is_zero(const Quadratic& q) { return q == Quadratic(); }
std::string to_string(const Quadratic& q);
std::ostream& operator<<(std::ostream& os, const Quadratic& q);

}  // namespace solvcontact
