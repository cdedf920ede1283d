#include "solvcontact/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace solvcontact {

int merge_sign(IndexMask a, IndexMask b) {
  int inversions = 0;
  for (IndexMask rest = b; rest; rest &= rest - 1) {
    const int j = __builtin_ctz(rest);
    const IndexMask above = j >= 31 ? 0u : (a >> (j + 1));
    inversions += popcount(above);
  }
  return (inversions & 1) ? -1 : 1;
}

namespace {

std::vector<std::size_t> indices_of(IndexMask m) {
  std::vector<std::size_t> out;
  for (; m; m &= m - 1) out.push_back(static_cast<std::size_t>(__builtin_ctz(m)));
  return out;
}

void require_same_dim(const KForm& a, const KForm& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionMismatch(std::string(what) + ": forms on different algebras");
}

}  // namespace

KForm::KForm(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {
  if (dim > kMaxFormDim) throw std::invalid_argument("KForm: dimension too large");
  if (degree > dim) throw std::invalid_argument("KForm: degree exceeds dimension");
}

KForm KForm::covector(std::size_t dim, std::size_t i) { return basis_form(dim, {i}); }

KForm KForm::linear(const VecQ& coeffs) {
  KForm f(coeffs.size(), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.add_mask(IndexMask(1) << i, coeffs[i]);
  return f;
}

KForm KForm::constant(std::size_t dim, const Rational& c) {
  KForm f(dim, 0);
  f.add_mask(0, c);
  return f;
}

KForm KForm::basis_form(std::size_t dim, const std::vector<std::size_t>& indices, const Rational& c) {
  KForm f(dim, indices.size());
  f.add(indices, c);
  return f;
}

Rational KForm::coeff(IndexMask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void KForm::add(const std::vector<std::size_t>& indices, const Rational& c) {
  if (indices.size() != degree_) throw DimensionMismatch("KForm::add: wrong number of indices");
  IndexMask m = 0;
  int sign = 1;
  for (std::size_t i : indices) {
    if (i >= dim_) throw std::out_of_range("KForm::add: index out of range");
    const IndexMask bit = IndexMask(1) << i;
    if (m & bit) return;  // repeated index
    sign *= merge_sign(m, bit);
    m |= bit;
  }
  add_mask(m, sign > 0 ? c : Rational(-c));
}

void KForm::add_mask(IndexMask m, const Rational& c) {
  if (static_cast<std::size_t>(popcount(m)) != degree_) throw DimensionMismatch("KForm::add_mask: wrong degree");
  if (dim_ < 32 && (m >> dim_) != 0) throw std::out_of_range("KForm::add_mask: index out of range");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

KForm& KForm::operator+=(const KForm& o) {
  require_same_dim(*this, o, "+");
  if (o.degree_ != degree_) throw DimensionMismatch("+: forms of different degree");
  for (const auto& [m, c] : o.terms_) add_mask(m, c);
  return *this;
}

KForm& KForm::operator-=(const KForm& o) {
  require_same_dim(*this, o, "-");
  if (o.degree_ != degree_) throw DimensionMismatch("-: forms of different degree");
  for (const auto& [m, c] : o.terms_) add_mask(m, -c);
  return *this;
}

KForm& KForm::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Rational KForm::evaluate_basis(const std::vector<std::size_t>& indices) const {
  if (indices.size() != degree_) throw DimensionMismatch("evaluate_basis: wrong arity");
  IndexMask m = 0;
  int sign = 1;
  for (std::size_t i : indices) {
    if (i >= dim_) throw std::out_of_range("evaluate_basis: index out of range");
    const IndexMask bit = IndexMask(1) << i;
    if (m & bit) return 0;
    sign *= merge_sign(m, bit);
    m |= bit;
  }
  Rational c = coeff(m);
  return sign > 0 ? c : Rational(-c);
}

Rational KForm::evaluate(const std::vector<VecQ>& vectors) const {
  if (vectors.size() != degree_) throw DimensionMismatch("evaluate: wrong arity");
  for (const auto& v : vectors)
    if (v.size() != dim_) throw DimensionMismatch("evaluate: vector length");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    const auto idx = indices_of(m);
    MatrixQ minor(degree_, degree_);
    for (std::size_t r = 0; r < degree_; ++r)
      for (std::size_t s = 0; s < degree_; ++s) minor(r, s) = vectors[s][idx[r]];
    total += c * determinant(std::move(minor));
  }
  return total;
}

Rational KForm::top_coefficient() const {
  if (degree_ != dim_) throw DimensionMismatch("top_coefficient: not a top-degree form");
  return coeff(dim_ == 32 ? ~IndexMask(0) : (IndexMask(1) << dim_) - 1);
}

std::string to_string(const KForm& f, const std::vector<std::string>& labels) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool neg = sgn(c) < 0;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    const Rational a = abs(c);
    if (m == 0) {
      os << to_string(a);
      continue;
    }
    if (a != 1) os << to_string(a) << "*";
    bool first_idx = true;
    for (std::size_t i : indices_of(m)) {
      os << (first_idx ? "" : "^");
      first_idx = false;
      os << (i < labels.size() ? labels[i] : "e" + std::to_string(i + 1)) << "*";
    }
  }
  return os.str();
}

KForm wedge(const KForm& a, const KForm& b) {
  require_same_dim(a, b, "wedge");
  if (a.degree() + b.degree() > a.dim()) return KForm(a.dim(), a.dim());
  KForm r(a.dim(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      const Rational c = ca * cb;
      r.add_mask(ma | mb, merge_sign(ma, mb) > 0 ? c : Rational(-c));
    }
  return r;
}

KForm wedge_power(const KForm& a, std::size_t k) {
  KForm r = KForm::constant(a.dim(), 1);
  for (std::size_t i = 0; i < k; ++i) {
    if (r.degree() + a.degree() > a.dim()) return KForm(a.dim(), a.dim());
    r = wedge(r, a);
  }
  return r;
}

namespace {

// d e^k = -sum_{i<j} c_ij^k e^i ^ e^j
std::vector<KForm> covector_differentials(const LieAlgebra& L) {
  std::vector<KForm> d(L.dim(), KForm(L.dim(), 2));
  for (const auto& sc : L.constants())
    d[sc.k].add_mask((IndexMask(1) << sc.i) | (IndexMask(1) << sc.j), -sc.c);
  return d;
}

}  // namespace

KForm ce_differential(const LieAlgebra& L, const KForm& a) {
  if (a.dim() != L.dim()) throw DimensionMismatch("ce_differential: form and algebra differ in dimension");
  const std::size_t n = L.dim();
  if (a.degree() + 1 > n) return KForm(n, n);
  KForm r(n, a.degree() + 1);
  if (a.degree() == 0) return r;
  const auto dcov = covector_differentials(L);
  for (const auto& [m, c] : a.terms()) {
    const auto idx = indices_of(m);
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      if (dcov[idx[pos]].is_zero()) continue;
      // e^{i_1..i_{pos-1}} ^ d e^{i_pos} ^ e^{i_{pos+1}..}, sign (-1)^pos
      const IndexMask before = m & ((IndexMask(1) << idx[pos]) - 1);
      const IndexMask after = m & ~before & ~(IndexMask(1) << idx[pos]);
      for (const auto& [md, cd] : dcov[idx[pos]].terms()) {
        if ((md & before) || (md & after)) continue;
        int sign = (pos & 1) ? -1 : 1;
        sign *= merge_sign(before, md);
        sign *= merge_sign(before | md, after);
        const Rational v = c * cd;
        r.add_mask(before | md | after, sign > 0 ? v : Rational(-v));
      }
    }
  }
  return r;
}

KForm interior_product(const VecQ& x, const KForm& a) {
  if (x.size() != a.dim()) throw DimensionMismatch("interior_product: vector length");
  if (a.degree() == 0) return KForm(a.dim(), 0);
  KForm r(a.dim(), a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    std::size_t pos = 0;
    for (std::size_t i : indices_of(m)) {
      if (sgn(x[i]) != 0) {
        const Rational v = c * x[i];
        r.add_mask(m & ~(IndexMask(1) << i), (pos & 1) ? Rational(-v) : v);
      }
      ++pos;
    }
  }
  return r;
}

Rational contact_volume(const LieAlgebra& L, const KForm& eta) {
  if (eta.degree() != 1 || eta.dim() != L.dim()) throw ContactError("contact form must be a 1-form on the algebra");
  if (L.dim() % 2 == 0) throw ContactError("contact condition needs odd dimension");
  const KForm top = wedge(eta, wedge_power(ce_differential(L, eta), (L.dim() - 1) / 2));
  return top.top_coefficient();
}

bool is_contact(const LieAlgebra& L, const KForm& eta) { return sgn(contact_volume(L, eta)) != 0; }

bool is_symplectic(const LieAlgebra& L, const KForm& omega) {
  if (omega.degree() != 2 || omega.dim() != L.dim()) throw std::invalid_argument("symplectic form must be a 2-form");
  if (L.dim() % 2 != 0) throw std::invalid_argument("symplectic condition needs even dimension");
  if (!ce_differential(L, omega).is_zero()) return false;
  return sgn(wedge_power(omega, L.dim() / 2).top_coefficient()) != 0;
}

MatrixQ two_form_matrix(const KForm& f) {
  if (f.degree() != 2) throw DimensionMismatch("two_form_matrix: not a 2-form");
  MatrixQ m(f.dim(), f.dim());
  for (const auto& [mask, c] : f.terms()) {
    const auto idx = indices_of(mask);
    m(idx[0], idx[1]) = c;
    m(idx[1], idx[0]) = -c;
  }
  return m;
}

VecQ reeb_vector(const LieAlgebra& L, const KForm& eta) {
  if (!is_contact(L, eta)) throw ContactError("reeb_vector: form is not contact");
  const std::size_t n = L.dim();
  const MatrixQ w = two_form_matrix(ce_differential(L, eta));
  // rows 0..n-1: (i_xi d eta)(e_j) = sum_i xi_i w(i, j); row n: eta(xi) = 1
  MatrixQ sys(n + 1, n);
  VecQ rhs(n + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) sys(j, i) = w(i, j);
  for (std::size_t i = 0; i < n; ++i) sys(n, i) = eta.coeff(IndexMask(1) << i);
  rhs[n] = 1;
  auto sol = solve_linear(sys, rhs);
  if (!sol.particular || !sol.nullspace.empty()) throw ContactError("reeb_vector: system is singular");
  return *sol.particular;
}

}  // namespace solvcontact
