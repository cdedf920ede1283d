#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solvcontact/matrix.hpp"
#include "solvcontact/rational.hpp"

namespace solvcontact {

class KForm;

/// One nonzero structure constant: [e_i, e_j] has coefficient c on e_k (0-based).
struct StructureConstant {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Rational c;
};

/// Finite-dimensional Lie algebra over Q given by sparse structure constants
/// c_{ij}^k for i < j; antisymmetry is implied.
class LieAlgebra {
 public:
  LieAlgebra(std::string name, std::vector<std::string> labels,
             const std::vector<StructureConstant>& constants);

  /// Abelian algebra with labels e1..en.
  static LieAlgebra abelian(std::size_t n, std::string name = "abelian");

  const std::string& name() const { return name_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// Nonzero constants with i < j, in (i, j, k) order.
  const std::vector<StructureConstant>& constants() const { return constants_; }
  /// Sparse [e_i, e_j] for any i, j.
  std::map<std::size_t, Rational> basis_bracket(std::size_t i, std::size_t j) const;

  VecQ basis_vector(std::size_t i) const;

  /// Same constants, same dimension (labels and name ignored).
  bool same_structure(const LieAlgebra& other) const { return table_ == other.table_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Rational>> table_;
  std::vector<StructureConstant> constants_;
};

/// Bilinear, antisymmetric expansion of [x, y] over the structure constants.
template <typename T>
Vec<T> bracket(const LieAlgebra& L, const Vec<T>& x, const Vec<T>& y) {
  using solvcontact::is_zero;
  const std::size_t n = L.dim();
  if (x.size() != n || y.size() != n) throw DimensionMismatch("bracket: vector length != dim");
  Vec<T> r(n, T(0));
  for (const auto& sc : L.constants()) {
    // c [x_i y_j - x_j y_i] e_k
    T w = x[sc.i] * y[sc.j] - x[sc.j] * y[sc.i];
    if (is_zero(w)) continue;
    r[sc.k] += from_rational<T>(sc.c) * w;
  }
  return r;
}

struct JacobiViolation {
  std::size_t i, j, k;  // 0-based basis triple, i < j < k
  VecQ residual;        // [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]
};

/// Every basis triple violating the Jacobi identity; empty means pass.
std::vector<JacobiViolation> check_jacobi(const LieAlgebra& L);

/// Matrix of y -> [x, y]; column j is [x, e_j].
MatrixQ ad(const LieAlgebra& L, const VecQ& x);
bool is_unimodular(const LieAlgebra& L);

/// Linear subspace of an algebra, stored by a reduced spanning set.
class Subspace {
 public:
  Subspace(std::size_t ambient_dim, const std::vector<VecQ>& generators);
  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim, {}); }
  static Subspace whole(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  /// Basis in reduced row echelon form (rows of the RREF, as vectors).
  const std::vector<VecQ>& basis() const { return basis_; }
  bool contains(const VecQ& v) const;
  bool contains(const Subspace& s) const;
  Subspace operator+(const Subspace& o) const;
  /// Coordinates of v in basis(); nullopt when v is not in the subspace.
  std::optional<VecQ> coordinates(const VecQ& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_;
  std::vector<VecQ> basis_;
};

std::string to_string(const Subspace& s, const LieAlgebra& L);

/// span{[a, b] : a in A, b in B}
Subspace bracket_span(const LieAlgebra& L, const Subspace& A, const Subspace& B);
/// g^(0) = S, g^(k+1) = [g^(k), g^(k)], until it stabilizes (last element repeats nothing).
std::vector<Subspace> derived_series(const LieAlgebra& L, const Subspace& S);
std::vector<Subspace> derived_series(const LieAlgebra& L);
/// S_0 = S, S_{k+1} = [S_k, S], until it stabilizes.
std::vector<Subspace> lower_central_series(const LieAlgebra& L, const Subspace& S);
std::vector<Subspace> lower_central_series(const LieAlgebra& L);
Subspace center(const LieAlgebra& L);
bool is_subalgebra(const LieAlgebra& L, const Subspace& S);
bool is_ideal(const LieAlgebra& L, const Subspace& S);
/// Nilpotency of S as a subalgebra (its own lower central series reaches 0).
bool is_nilpotent(const LieAlgebra& L, const Subspace& S);
bool is_solvable(const LieAlgebra& L);
bool is_nilpotent(const LieAlgebra& L);

struct NamedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct NilradicalReport {
  std::vector<NamedCheck> checks;  // (a) ideal, (b) nilpotent, (c) contains [g,g], (d) maximal
  bool passed() const;
  std::vector<std::string> failed() const;
};

/// Checks candidate is a nilpotent ideal containing [g,g] that no single
/// ambient basis vector extends to a larger nilpotent ideal.
NilradicalReport verify_nilradical(const LieAlgebra& L, const Subspace& candidate);

class SplitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// g = n +_beta T: an ideal n with ordered basis, an abelian complement T,
/// and beta(t_i) as m x m matrices in the n-basis (column j = beta(t_i) n_j).
struct SplitData {
  std::shared_ptr<const LieAlgebra> algebra;
  std::vector<VecQ> n_basis;
  std::vector<VecQ> t_basis;
  std::vector<MatrixQ> beta;

  std::size_t n_dim() const { return n_basis.size(); }
  std::size_t t_dim() const { return t_basis.size(); }
};

/// Re-derives every SplitData invariant; returns the failures (empty = ok).
std::vector<std::string> split_violations(const SplitData& s);

/// Builds the split from brackets and verifies it; throws SplitError.
SplitData semidirect_split(std::shared_ptr<const LieAlgebra> L, std::vector<VecQ> n_basis,
                           std::vector<VecQ> t_basis);

/// [x,y]_new = [x,y] + omega(x,y) z with z central. The new direction is
/// inserted at `position` with the given label. Throws when d(omega) != 0.
LieAlgebra central_extend(const LieAlgebra& base, const KForm& omega, const std::string& label = "e1",
                          std::size_t position = 0, std::string name = {});

/// Drops basis direction `index` (which must be central): the quotient g / <e_index>.
LieAlgebra quotient_by_central(const LieAlgebra& L, std::size_t index);

/// Result of (n x|_{beta_n} T) x|_phi T with phi acting by beta_s.
struct MaltsevSplitting {
  SplitData split;   // n' = n (+) inner T, t = outer T
  Subspace nilradical;  // n x| inner T
};

/// Throws SplitError when beta_s + beta_n != beta or [beta_s, beta_n] != 0.
MaltsevSplitting maltsev_splitting(const SplitData& s, const std::vector<MatrixQ>& beta_s,
                                   const std::vector<MatrixQ>& beta_n);

}  // namespace solvcontact
