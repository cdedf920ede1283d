#pragma once

#include <string>
#include <utility>
#include <vector>

#include "solvcontact/matrix.hpp"
#include "solvcontact/rational.hpp"

namespace solvcontact {

/// Univariate polynomial over Q, coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
class PolynomialQ {
 public:
  PolynomialQ() = default;
  PolynomialQ(long c) : PolynomialQ(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  PolynomialQ(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (sgn(c) != 0) coeffs_.push_back(c);
  }
  explicit PolynomialQ(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// c * x^k
  static PolynomialQ monomial(const Rational& c, std::size_t k);
  static PolynomialQ x() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  double eval(double x) const;
  int sign_at(const Rational& x) const { return sgn((*this)(x)); }

  PolynomialQ derivative() const;
  PolynomialQ monic() const;

  PolynomialQ& operator+=(const PolynomialQ& o);
  PolynomialQ& operator-=(const PolynomialQ& o);
  PolynomialQ& operator*=(const PolynomialQ& o) { return *this = *this * o; }
  friend PolynomialQ operator+(PolynomialQ a, const PolynomialQ& b) { return a += b; }
  friend PolynomialQ operator-(PolynomialQ a, const PolynomialQ& b) { return a -= b; }
  friend PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b);
  PolynomialQ operator-() const;
  friend bool operator==(const PolynomialQ& a, const PolynomialQ& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<PolynomialQ, PolynomialQ> divmod(const PolynomialQ& a, const PolynomialQ& b);
  friend PolynomialQ operator/(const PolynomialQ& a, const PolynomialQ& b) { return divmod(a, b).first; }
  friend PolynomialQ operator%(const PolynomialQ& a, const PolynomialQ& b) { return divmod(a, b).second; }

  /// Evaluates the polynomial at a square matrix (Horner).
  template <typename T>
  Matrix<T> at_matrix(const Matrix<T>& m) const {
    Matrix<T> r(m.rows(), m.cols());
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      r = r * m;
      for (std::size_t i = 0; i < m.rows(); ++i) r(i, i) += from_rational<T>(*it);
    }
    return r;
  }

  bool has_integer_coefficients() const;

 private:
  void trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
PolynomialQ gcd(PolynomialQ a, PolynomialQ b);
struct Bezout {
  PolynomialQ g;  // monic gcd
  PolynomialQ u;
  PolynomialQ v;  // u a + v b = g
};
Bezout ext_gcd(const PolynomialQ& a, const PolynomialQ& b);

/// Distinct rational roots, ascending (rational root theorem).
std::vector<Rational> rational_roots(const PolynomialQ& p);

/// p / gcd(p, p'), made monic.
PolynomialQ squarefree_part(const PolynomialQ& p);

inline bool is_zero(const PolynomialQ& p) { return p.is_zero(); }
/// e.g. "X^3 - 6*X^2 + 5*X - 1"
std::string to_string(const PolynomialQ& p, const std::string& var = "X");

}  // namespace solvcontact
