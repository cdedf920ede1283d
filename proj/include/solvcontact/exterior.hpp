#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "solvcontact/lie_algebra.hpp"

namespace solvcontact {

/// Basis multi-index i1 < ... < ik encoded as a bitmask.
using IndexMask = std::uint32_t;
constexpr std::size_t kMaxFormDim = 31;

inline int popcount(IndexMask m) { return __builtin_popcount(m); }
/// Sign of moving the sorted wedge of `a` past the sorted wedge of `b`
/// into sorted order: (-1)^{#(i in a, j in b, i > j)}.
int merge_sign(IndexMask a, IndexMask b);

/// Exterior form on the dual of a dim-dimensional algebra with exact
/// coefficients, stored sparsely over sorted multi-indices.
class KForm {
 public:
  KForm(std::size_t dim, std::size_t degree);
  /// The covector e_i^* (0-based).
  static KForm covector(std::size_t dim, std::size_t i);
  /// Linear form with the given coefficients on e_1^*..e_n^*.
  static KForm linear(const VecQ& coeffs);
  /// Constant 0-form.
  static KForm constant(std::size_t dim, const Rational& c);
  /// Coefficient on e^{i1}^...^e^{ik} for indices in any order (sign applied).
  static KForm basis_form(std::size_t dim, const std::vector<std::size_t>& indices, const Rational& c = 1);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const std::map<IndexMask, Rational>& terms() const { return terms_; }
  Rational coeff(IndexMask m) const;
  bool is_zero() const { return terms_.empty(); }

  /// Adds c on the multi-index given in any order, normalizing the sign.
  void add(const std::vector<std::size_t>& indices, const Rational& c);
  void add_mask(IndexMask m, const Rational& c);

  KForm& operator+=(const KForm& o);
  KForm& operator-=(const KForm& o);
  KForm& operator*=(const Rational& c);
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(KForm a, const Rational& c) { return a *= c; }
  friend KForm operator*(const Rational& c, KForm a) { return a *= c; }
  KForm operator-() const { return *this * Rational(-1); }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Value on basis vectors (e_{i1}, ..., e_{ik}) in the given order.
  Rational evaluate_basis(const std::vector<std::size_t>& indices) const;
  /// Value on arbitrary vectors (alternating multilinear expansion).
  Rational evaluate(const std::vector<VecQ>& vectors) const;

  /// Coefficient of the top form e^1^...^e^n (requires degree == dim).
  Rational top_coefficient() const;

 private:
  std::size_t dim_;
  std::size_t degree_;
  std::map<IndexMask, Rational> terms_;
};

std::string to_string(const KForm& f, const std::vector<std::string>& labels = {});

KForm wedge(const KForm& a, const KForm& b);
/// a^k (k-fold wedge); a^0 = 1.
KForm wedge_power(const KForm& a, std::size_t k);

/// Chevalley-Eilenberg differential with d(eta)(X,Y) = -eta([X,Y]),
/// extended as an antiderivation.
KForm ce_differential(const LieAlgebra& L, const KForm& a);

/// Antiderivation of degree -1.
KForm interior_product(const VecQ& x, const KForm& a);

/// True iff eta ^ (d eta)^n is a nonzero top form (dim = 2n+1).
bool is_contact(const LieAlgebra& L, const KForm& eta);
/// Top coefficient of eta ^ (d eta)^n.
Rational contact_volume(const LieAlgebra& L, const KForm& eta);
/// True iff d omega = 0 and omega^m != 0 (dim = 2m).
bool is_symplectic(const LieAlgebra& L, const KForm& omega);
/// Unique xi with eta(xi) = 1 and i_xi d eta = 0; throws when eta is not contact.
VecQ reeb_vector(const LieAlgebra& L, const KForm& eta);

/// Antisymmetric matrix of a 2-form: M(i,j) = f(e_i, e_j).
MatrixQ two_form_matrix(const KForm& f);

class ContactError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace solvcontact
