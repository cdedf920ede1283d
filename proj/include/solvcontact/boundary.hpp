#pragma once

#include <map>
#include <string>
#include <vector>

#include "solvcontact/catalog.hpp"
#include "solvcontact/exterior.hpp"
#include "solvcontact/polynomial.hpp"
#include "solvcontact/report.hpp"

namespace solvcontact {

/// Form on g x I with coefficients polynomial in the I-coordinate s.
/// Indices 0..dim-1 are the covectors of g; index dim is ds.
class SForm {
 public:
  SForm(std::size_t dim, std::size_t degree);
  /// Constant-coefficient lift of a form on g.
  static SForm lift(const KForm& f);
  static SForm ds(std::size_t dim);
  /// The 0-form p(s).
  static SForm function(std::size_t dim, const PolynomialQ& p);

  std::size_t dim() const { return dim_; }
  std::size_t ds_index() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const std::map<IndexMask, PolynomialQ>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_mask(IndexMask m, const PolynomialQ& c);

  SForm& operator+=(const SForm& o);
  SForm& operator-=(const SForm& o);
  friend SForm operator+(SForm a, const SForm& b) { return a += b; }
  friend SForm operator-(SForm a, const SForm& b) { return a -= b; }
  /// Multiplication by a polynomial in s.
  friend SForm operator*(const PolynomialQ& p, const SForm& f);
  SForm operator-() const { return PolynomialQ(-1) * *this; }
  friend bool operator==(const SForm& a, const SForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Slice at s = s0, as a form on the (dim+1)-dimensional frame.
  KForm at(const Rational& s0) const;
  /// Coefficient polynomial of the top form (degree == dim + 1).
  PolynomialQ top_coefficient() const;

 private:
  std::size_t dim_;
  std::size_t degree_;
  std::map<IndexMask, PolynomialQ> terms_;
};

std::string to_string(const SForm& f, const std::vector<std::string>& labels = {});

SForm wedge(const SForm& a, const SForm& b);
SForm wedge_power(const SForm& a, std::size_t k);
/// d(p(s) w) = p'(s) ds ^ w + p(s) dw, with the Chevalley-Eilenberg d on g and d(ds) = 0.
SForm d(const LieAlgebra& L, const SForm& f);

/// Vector field g + h(s) d/ds with constant g-part.
struct SVector {
  VecQ g;
  PolynomialQ ds;
};

SForm interior_product(const SVector& x, const SForm& f);

/// Omega = d(s eta) = ds ^ eta + s d eta. Throws ContactError without a contact form.
SForm omega_form(const CatalogEntry& e);
/// X = xi + s d/ds.
SVector liouville_field(const CatalogEntry& e);

/// Omega^{n+1} = (n+1) s^n ds ^ eta ^ (d eta)^n and the vanishing lemmas.
Report verify_nondegenerate(const CatalogEntry& e);
/// i_X Omega = +-(-ds + s eta), d Omega = 0 and L_X Omega = Omega.
Report liouville_check(const CatalogEntry& e);
/// Both of the above plus pointwise nondegeneracy at a few rational slices.
Report boundary_check(const CatalogEntry& e);

}  // namespace solvcontact
