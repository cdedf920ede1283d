#include "solvcontact/boundary.hpp"

#include <sstream>

namespace solvcontact {

SForm::SForm(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {
  if (dim + 1 > kMaxFormDim) throw std::invalid_argument("SForm: dimension too large");
  if (degree > dim + 1) throw std::invalid_argument("SForm: degree exceeds dimension");
}

SForm SForm::lift(const KForm& f) {
  SForm r(f.dim(), f.degree());
  for (const auto& [m, c] : f.terms()) r.add_mask(m, PolynomialQ(c));
  return r;
}

SForm SForm::ds(std::size_t dim) {
  SForm r(dim, 1);
  r.add_mask(IndexMask(1) << dim, PolynomialQ(1));
  return r;
}

SForm SForm::function(std::size_t dim, const PolynomialQ& p) {
  SForm r(dim, 0);
  r.add_mask(0, p);
  return r;
}

void SForm::add_mask(IndexMask m, const PolynomialQ& c) {
  if (static_cast<std::size_t>(popcount(m)) != degree_) throw std::invalid_argument("SForm: wrong degree term");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

SForm& SForm::operator+=(const SForm& o) {
  if (dim_ != o.dim_ || degree_ != o.degree_) throw DimensionMismatch("SForm +: shape mismatch");
  for (const auto& [m, c] : o.terms_) add_mask(m, c);
  return *this;
}

SForm& SForm::operator-=(const SForm& o) {
  if (dim_ != o.dim_ || degree_ != o.degree_) throw DimensionMismatch("SForm -: shape mismatch");
  for (const auto& [m, c] : o.terms_) add_mask(m, -c);
  return *this;
}

SForm operator*(const PolynomialQ& p, const SForm& f) {
  SForm r(f.dim_, f.degree_);
  for (const auto& [m, c] : f.terms_) r.add_mask(m, p * c);
  return r;
}

KForm SForm::at(const Rational& s0) const {
  KForm k(dim_ + 1, degree_);
  for (const auto& [m, c] : terms_) k.add_mask(m, c(s0));
  return k;
}

PolynomialQ SForm::top_coefficient() const {
  if (degree_ != dim_ + 1) throw std::invalid_argument("SForm: not a top form");
  auto it = terms_.find((IndexMask(1) << (dim_ + 1)) - 1);
  return it == terms_.end() ? PolynomialQ() : it->second;
}

std::string to_string(const SForm& f, const std::vector<std::string>& labels) {
  if (f.is_zero()) return "0";
  auto name = [&](std::size_t i) {
    if (i == f.ds_index()) return std::string("ds");
    return (i < labels.size() ? labels[i] : "e" + std::to_string(i + 1)) + "*";
  };
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c, "s") << ")";
    std::string sep = "*";
    for (std::size_t i = 0; i <= f.dim(); ++i)
      if (m & (IndexMask(1) << i)) {
        os << sep << name(i);
        sep = "^";
      }
  }
  return os.str();
}

SForm wedge(const SForm& a, const SForm& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("SForm wedge: dimension mismatch");
  const std::size_t deg = a.degree() + b.degree();
  if (deg > a.dim() + 1) return SForm(a.dim(), a.dim() + 1);
  SForm r(a.dim(), deg);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      const PolynomialQ p = ca * cb;
      r.add_mask(ma | mb, merge_sign(ma, mb) < 0 ? -p : p);
    }
  return r;
}

SForm wedge_power(const SForm& a, std::size_t k) {
  SForm r = SForm::function(a.dim(), PolynomialQ(1));
  for (std::size_t i = 0; i < k; ++i) r = wedge(r, a);
  return r;
}

SForm d(const LieAlgebra& L, const SForm& f) {
  const std::size_t n = f.dim();
  if (L.dim() != n) throw DimensionMismatch("SForm d: algebra dimension mismatch");
  const IndexMask dsbit = IndexMask(1) << n;
  SForm r(n, f.degree() + 1 > n + 1 ? n + 1 : f.degree() + 1);
  if (f.degree() + 1 > n + 1) return r;
  for (const auto& [m, c] : f.terms()) {
    const IndexMask g = m & ~dsbit;
    KForm w(n, static_cast<std::size_t>(popcount(g)));
    w.add_mask(g, 1);
    const KForm dw = ce_differential(L, w);
    // terms are stored as w ^ ds (ds has the highest index)
    for (const auto& [mk, ck] : dw.terms()) r.add_mask(mk | (m & dsbit), c * PolynomialQ(ck));
    if (!(m & dsbit)) {
      // p' ds ^ w = (-1)^deg w  p' w ^ ds
      const PolynomialQ dp = c.derivative();
      r.add_mask(g | dsbit, popcount(g) % 2 ? -dp : dp);
    }
  }
  return r;
}

SForm interior_product(const SVector& x, const SForm& f) {
  const std::size_t n = f.dim();
  if (x.g.size() != n) throw DimensionMismatch("interior_product: vector length");
  if (f.degree() == 0) return SForm(n, 0);
  SForm r(n, f.degree() - 1);
  for (const auto& [m, c] : f.terms()) {
    int pos = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      const IndexMask bit = IndexMask(1) << i;
      if (!(m & bit)) continue;
      const PolynomialQ comp = i == n ? x.ds : PolynomialQ(x.g[i]);
      const PolynomialQ p = c * comp;
      r.add_mask(m & ~bit, pos % 2 ? -p : p);
      ++pos;
    }
  }
  return r;
}

SForm omega_form(const CatalogEntry& e) {
  if (!e.contact) throw ContactError(e.name + " has no contact form");
  if (e.algebra->dim() % 2 == 0) throw ContactError(e.name + " is even-dimensional");
  const SForm eta = SForm::lift(*e.contact);
  return wedge(SForm::ds(e.algebra->dim()), eta) + PolynomialQ::x() * SForm::lift(ce_differential(*e.algebra, *e.contact));
}

SVector liouville_field(const CatalogEntry& e) {
  if (!e.contact) throw ContactError(e.name + " has no contact form");
  return {reeb_vector(*e.algebra, *e.contact), PolynomialQ::x()};
}

Report verify_nondegenerate(const CatalogEntry& e) {
  Report r;
  r.subject = e.name;
  const SForm omega = omega_form(e);
  const LieAlgebra& L = *e.algebra;
  const std::size_t dim = L.dim(), n = (dim - 1) / 2;
  const SForm eta = SForm::lift(*e.contact);
  const SForm deta = SForm::lift(ce_differential(L, *e.contact));
  const SForm ds = SForm::ds(dim);
  const SForm lhs = wedge_power(omega, n + 1);
  const PolynomialQ factor = PolynomialQ::monomial(Rational(static_cast<long>(n + 1)), n);
  const SForm rhs = factor * wedge(wedge(ds, eta), wedge_power(deta, n));
  r.add("power_formula", lhs == rhs,
        "Omega^" + std::to_string(n + 1) + " = " + to_string(lhs.top_coefficient(), "s") + " vol");
  r.add("top_nonzero", !lhs.top_coefficient().is_zero());
  const SForm dseta = wedge(ds, eta);
  r.add("vanishing_ds_eta", wedge(dseta, dseta).is_zero(), "(ds^eta)^2 = 0");
  r.add("vanishing_deta", wedge_power(deta, n + 1).is_zero(), "(d eta)^" + std::to_string(n + 1) + " = 0");
  return r;
}

Report liouville_check(const CatalogEntry& e) {
  Report r;
  r.subject = e.name;
  const LieAlgebra& L = *e.algebra;
  const SForm omega = omega_form(e);
  const SVector x = liouville_field(e);
  const SForm dOmega = d(L, omega);
  r.add("closed", dOmega.is_zero(), dOmega.is_zero() ? "" : to_string(dOmega, L.labels()));
  const SForm contraction = interior_product(x, omega);
  const SForm expected = PolynomialQ::x() * SForm::lift(*e.contact) - SForm::ds(L.dim());
  int sign = 0;
  if (contraction == expected)
    sign = 1;
  else if (contraction == -expected)
    sign = -1;
  r.add("contraction", sign != 0,
        sign == 0 ? "i_X Omega = " + to_string(contraction, L.labels())
                  : std::string("i_X Omega = ") + (sign > 0 ? "" : "-(") + "-ds + s eta" + (sign > 0 ? "" : ")"));
  const SForm lie = d(L, contraction) + interior_product(x, dOmega);
  const SForm diff = lie - omega;
  r.add("lie_derivative", diff.is_zero(), diff.is_zero() ? "L_X Omega = Omega" : to_string(diff, L.labels()));
  return r;
}

Report boundary_check(const CatalogEntry& e) {
  Report r;
  r.subject = e.name;
  r.merge(verify_nondegenerate(e));
  r.merge(liouville_check(e));
  const SForm omega = omega_form(e);
  const LieAlgebra frame = LieAlgebra::abelian(e.algebra->dim() + 1);
  for (const Rational& s0 : {Rational(1), Rational(-2), make_rational(1, 3)}) {
    r.add("symplectic[s=" + to_string(s0) + "]", is_symplectic(frame, omega.at(s0)));
  }
  return r;
}

}  // namespace solvcontact
