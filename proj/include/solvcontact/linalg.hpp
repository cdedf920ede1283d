#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solvcontact/matrix.hpp"
#include "solvcontact/polynomial.hpp"

namespace solvcontact {

class NotNilpotent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monic characteristic polynomial det(X I - M), division-free (Berkowitz).
PolynomialQ char_poly(const MatrixQ& m);

/// Number of distinct real roots of p in (lo, hi]. p is first reduced to its
/// squarefree part, so repeated roots count once.
int sturm_count(const PolynomialQ& p, const Rational& lo, const Rational& hi);

/// Sturm chain p, p', -rem(...), ... of a squarefree p.
std::vector<PolynomialQ> sturm_chain(const PolynomialQ& p);

struct RealRoot {
  double approx;
  Rational lo;  // root lies in (lo, hi]
  Rational hi;
};

/// Distinct real roots, isolated by Sturm counts and bisected until hi - lo <= tol.
std::vector<RealRoot> real_roots(const PolynomialQ& p, const Rational& tol);

/// Every root has |x| < bound.
Rational cauchy_bound(const PolynomialQ& p);

struct JordanChevalley {
  MatrixQ m;
  MatrixQ s;  // semisimple, a polynomial in m
  MatrixQ n;  // nilpotent, m = s + n
  std::optional<MatrixQ> u;  // unipotent, m = s u (when m is invertible)
};

/// Additive (and, for invertible m, multiplicative) Jordan-Chevalley
/// decomposition over Q by Newton iteration on the squarefree part of the
/// characteristic polynomial.
JordanChevalley jordan_chevalley(const MatrixQ& m);

bool is_nilpotent(const MatrixQ& n);
/// Semisimple over C: the squarefree part of the characteristic polynomial annihilates m.
bool is_semisimple(const MatrixQ& m);

/// sum_j N^j / j! (finite); throws NotNilpotent.
MatrixQ exp_nilpotent(const MatrixQ& n);
/// exp(t N) with entries polynomial in t.
Matrix<PolynomialQ> exp_nilpotent_poly(const MatrixQ& n);
/// Entrywise evaluation of a polynomial matrix.
MatrixQ evaluate(const Matrix<PolynomialQ>& m, const Rational& t);

/// Scaling-and-squaring Taylor exponential in a single floating type.
template <typename T>
Matrix<T> exp_taylor(const Matrix<T>& a) {
  using std::abs;
  if (!a.is_square()) throw DimensionMismatch("exp of non-square matrix");
  const std::size_t n = a.rows();
  T norm = 0;
  for (std::size_t j = 0; j < n; ++j) {
    T col = 0;
    for (std::size_t i = 0; i < n; ++i) col += abs(a(i, j));
    if (col > norm) norm = col;
  }
  if (!std::isfinite(static_cast<double>(norm))) throw NumericError("exp: non-finite input");
  int squarings = 0;
  while (norm > T(0.5)) {
    norm /= 2;
    ++squarings;
  }
  Matrix<T> scaled = a * T(std::ldexp(1.0, -squarings));
  Matrix<T> result = Matrix<T>::identity(n);
  Matrix<T> term = Matrix<T>::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled * (T(1) / T(k));
    result += term;
    T tn = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) tn = std::max(tn, T(abs(term(i, j))));
    if (tn < std::numeric_limits<T>::epsilon() * T(1e-3)) break;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!std::isfinite(static_cast<double>(result(i, j)))) throw NumericError("exp: overflow");
  return result;
}

/// Double-precision exponential cross-checked against a long double rerun;
/// throws NumericError when any entry differs by more than tol relative
/// (entries below 1e-12 of the largest entry are compared absolutely).
Matrix<double> exp_numeric(const Matrix<double>& a, double tol = 1e-10);

template <typename T>
Matrix<double> to_double_matrix(const Matrix<T>& m) {
  return m.map([](const T& v) { return to_double(v); });
}

template <typename T>
bool commute(const Matrix<T>& a, const Matrix<T>& b) {
  return commutator(a, b).is_zero();
}

/// max |a_ij - b_ij|
double max_abs_diff(const Matrix<double>& a, const Matrix<double>& b);

/// One diagonal block of a simultaneous real block-diagonalization.
struct SpectralBlock {
  std::size_t offset;
  std::size_t size;  // 1 (real eigenvalue) or 2 (block [[a,-b],[b,a]])
  /// eigenvalue a + i b of each input matrix on this block
  std::vector<std::complex<double>> eigenvalues;
};

struct SimultaneousEigenbasis {
  Matrix<double> psi;  // columns form the basis
  std::vector<SpectralBlock> blocks;
  std::vector<double> residuals;  // per input: max |Psi^-1 M Psi - blockdiag|
};

/// Real basis in which each (commuting, semisimple) input is block-diagonal
/// with 1x1 real blocks and 2x2 rotation-scaling blocks. Throws
/// std::invalid_argument when the inputs do not commute or are not
/// semisimple, NumericError when the residual exceeds tol.
SimultaneousEigenbasis simultaneous_eigenbasis(const std::vector<MatrixQ>& ms, double tol = 1e-10);

}  // namespace solvcontact
