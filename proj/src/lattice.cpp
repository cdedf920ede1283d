#include "solvcontact/lattice.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "solvcontact/closed_form.hpp"
#include "solvcontact/exterior.hpp"

namespace solvcontact {

const char* to_string(FieldKind k) {
  switch (k) {
    case FieldKind::Rational: return "rational";
    case FieldKind::Quadratic: return "quadratic";
    default: return "quarter-turn";
  }
}

namespace {

CertScalar lift(const Quadratic& q) { return CertScalar(q); }
CertScalar lift(const Rational& q) { return CertScalar(Quadratic(q)); }

std::optional<Rational> as_rational(const CertScalar& x) {
  if (!x.is_constant()) return std::nullopt;
  const Quadratic c = x.constant_term();
  if (!c.is_rational()) return std::nullopt;
  return c.rational_part();
}

std::string scalar_string(const CertScalar& x, const std::string& unit) {
  if (x.is_zero_poly()) return "0";
  std::string s;
  for (const auto& [k, c] : x.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")";
    if (k != 0) s += "*" + unit + (k == 1 ? "" : "^" + std::to_string(k));
  }
  return s;
}

Quadratic qpow(const Quadratic& q, long k) {
  Quadratic base = k < 0 ? q.inverse() : q;
  Quadratic r(1);
  for (long i = 0; i < std::labs(k); ++i) r *= base;
  return r;
}

std::string entry_string(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

/// beta(t) restricted to the nilradical, in the coordinates of its basis.
MatrixQ beta_on_nilradical(const CatalogEntry& e, const VecQ& t) {
  const auto& nb = e.nilradical.basis();
  MatrixQ m(nb.size(), nb.size());
  for (std::size_t j = 0; j < nb.size(); ++j) {
    auto c = e.nilradical.coordinates(bracket(*e.algebra, t, nb[j]));
    if (!c) throw CertificateError(e.name + ": nilradical is not an ideal");
    for (std::size_t i = 0; i < nb.size(); ++i) m(i, j) = (*c)[i];
  }
  return m;
}

/// Lattice generator directions of T (empty for nilpotent entries).
std::vector<VecQ> t_directions(const CatalogEntry& e) {
  if (e.nilradical.rank() == e.algebra->dim() || !e.split) return {};
  return e.split->t_basis;
}

/// exp(u S) for the closed form of exp(t S), evaluated exactly at t = u.
std::optional<CertScalar> at_unit(const ExpPolyTrig& f, const LatticeCertificate& c) {
  if (c.field == FieldKind::QuarterTurn) {
    auto v = f.evaluate_quarter_turn({Rational(1)});
    if (!v) return std::nullopt;
    CertScalar out;
    for (const auto& [k, q] : v->terms()) out += CertScalar::monomial(Quadratic(q), k);
    return out;
  }
  CertScalar out;
  for (const auto& [key, coeff] : f.terms()) {
    if (key.trig != ExpPolyTrig::Trig::One) return std::nullopt;
    Quadratic v(coeff);
    int power = 0;
    for (std::size_t i = 0; i < key.powers.size(); ++i) power += static_cast<int>(key.powers[i]);
    for (const auto& a : key.exp_rates) {
      if (sgn(a) == 0) continue;
      if (!c.unit_exp || !is_integer(a) || !a.get_num().fits_slong_p()) return std::nullopt;
      v *= qpow(*c.unit_exp, a.get_num().get_si());
    }
    out += CertScalar::monomial(v, power);
  }
  return out;
}

Matrix<CertScalar> inverse_basis(const LatticeCertificate& c) {
  auto b0i = inverse(c.b0);
  auto mi = inverse(c.mix);
  if (!b0i || !mi) throw CertificateError("certificate basis is singular");
  const std::size_t m = c.unit_powers.size();
  Matrix<CertScalar> d(m, m);
  for (std::size_t i = 0; i < m; ++i) d(i, i) = CertScalar::monomial(Quadratic(1), -c.unit_powers[i]);
  return mi->map([](const Rational& q) { return lift(q); }) * d * b0i->map([](const Quadratic& q) { return lift(q); });
}

/// Exact exp(u N) for nilpotent N.
Matrix<CertScalar> exp_unit_nilpotent(const MatrixQ& n) {
  const std::size_t m = n.rows();
  const Matrix<CertScalar> un = n.map([](const Rational& q) { return CertScalar::monomial(Quadratic(q), 1); });
  Matrix<CertScalar> term = Matrix<CertScalar>::identity(m), sum(m, m);
  for (std::size_t j = 0; j <= m; ++j) {
    sum += term;
    term = term * un * CertScalar(Quadratic(Rational(1, static_cast<unsigned long>(j + 1))));
  }
  return sum;
}

/// Compares an exactly computed matrix with a rational claim; empty string on success.
std::string compare_claim(const Matrix<CertScalar>& got, const MatrixQ& claim, const std::string& unit,
                          bool require_claim) {
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j) {
      auto q = as_rational(got(i, j));
      if (!q) return "entry " + entry_string(i, j) + " = " + scalar_string(got(i, j), unit) + " is not rational";
      if (require_claim && *q != claim(i, j))
        return "entry " + entry_string(i, j) + " = " + to_string(*q) + ", claimed " + to_string(claim(i, j));
    }
  return {};
}

std::optional<std::size_t> central_position(const CatalogEntry& e) {
  if (!e.central) return std::nullopt;
  VecQ z(e.algebra->dim(), Rational(0));
  z[e.central->central_index] = 1;
  const auto& nb = e.nilradical.basis();
  for (std::size_t i = 0; i < nb.size(); ++i)
    if (nb[i] == z) return i;
  return std::nullopt;
}

MatrixQ drop(const MatrixQ& m, std::size_t p) {
  MatrixQ r(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, ri = 0; i < m.rows(); ++i) {
    if (i == p) continue;
    for (std::size_t j = 0, rj = 0; j < m.cols(); ++j) {
      if (j == p) continue;
      r(ri, rj++) = m(i, j);
    }
    ++ri;
  }
  return r;
}

bool is_integer_matrix(const MatrixQ& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

void check_integer_claim(Report& r, const MatrixQ& m, const std::string& tag) {
  r.add("claim_integer" + tag, is_integer_matrix(m), to_string(m));
  const Rational det = determinant(m);
  r.add("claim_det" + tag, det == 1 || det == -1, "det = " + to_string(det));
  r.add("claim_charpoly" + tag, char_poly(m).has_integer_coefficients(), to_string(char_poly(m), "X"));
}

}  // namespace

std::string LatticeCertificate::unit_name() const {
  if (field == FieldKind::QuarterTurn) return "pi";
  return unit_exp ? "t0" : "u";
}

Matrix<CertScalar> LatticeCertificate::basis() const {
  const std::size_t m = unit_powers.size();
  Matrix<CertScalar> d(m, m);
  for (std::size_t i = 0; i < m; ++i) d(i, i) = CertScalar::monomial(Quadratic(1), unit_powers[i]);
  return b0.map([](const Quadratic& q) { return lift(q); }) * d * mix.map([](const Rational& q) { return lift(q); });
}

LatticeCertificate LatticeCertificate::change_basis(const MatrixQ& u) const {
  auto ui = inverse(u);
  if (!ui) throw CertificateError("change_basis: singular matrix");
  LatticeCertificate c = *this;
  c.mix = mix * u;
  for (auto& m : c.claims_s) m = *ui * m * u;
  for (auto& m : c.claims_n) m = *ui * m * u;
  return c;
}

bool verify_nilpotent_qform(const CatalogEntry& e) {
  if (!is_nilpotent(*e.algebra)) throw std::domain_error(e.name + " is not nilpotent");
  // Rational storage already is the statement; re-derive the bracket table to be sure.
  const LieAlgebra& L = *e.algebra;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = 0; j < L.dim(); ++j)
      for (const auto& [k, c] : L.basis_bracket(i, j))
        if (c.get_den() == 0) return false;
  return true;
}

Report verify_certificate(const CatalogEntry& e, const LatticeCertificate& cert) {
  Report r;
  r.subject = e.name + " certificate";
  r.add("entry", cert.entry == e.name, "certificate for " + cert.entry);
  const auto& nb = e.nilradical.basis();
  const std::size_t m = nb.size();
  const std::string unit = cert.unit_name();
  const bool shapes = cert.b0.rows() == m && cert.b0.cols() == m && cert.unit_powers.size() == m &&
                      cert.mix.rows() == m && cert.mix.cols() == m;
  r.add("shape", shapes, "nilradical dimension " + std::to_string(m));
  if (!shapes) return r;
  const bool invertible = !is_zero(determinant(cert.b0)) && sgn(determinant(cert.mix)) != 0;
  r.add("basis_invertible", invertible);
  if (!invertible) return r;
  const auto dirs = t_directions(e);
  bool gens_ok = cert.claims_s.size() == cert.tgens.size() && cert.claims_n.size() == cert.tgens.size();
  for (const auto& g : cert.tgens) gens_ok = gens_ok && g.size() == dirs.size();
  for (const auto& c : cert.claims_s) gens_ok = gens_ok && c.rows() == m && c.cols() == m;
  for (const auto& c : cert.claims_n) gens_ok = gens_ok && c.rows() == m && c.cols() == m;
  r.add("generators", gens_ok,
        std::to_string(cert.tgens.size()) + " lattice generator(s), dim T = " + std::to_string(dirs.size()));
  if (!gens_ok) return r;
  if (!dirs.empty()) {
    bool independent = rank(MatrixQ::from_columns(cert.tgens, dirs.size())) == dirs.size() &&
                       cert.tgens.size() == dirs.size();
    r.add("generators_span_T", independent);
  }

  const Matrix<CertScalar> X = cert.basis();
  const Matrix<CertScalar> Xi = inverse_basis(cert);
  r.add("basis_inverse", (Xi * X) == Matrix<CertScalar>::identity(m));

  // Q-form of the nilradical: structure constants rational in the new basis
  std::vector<std::size_t> pivots;
  for (const auto& v : nb) {
    std::size_t p = 0;
    while (sgn(v[p]) == 0) ++p;
    pivots.push_back(p);
  }
  auto ambient = [&](std::size_t j) {
    Vec<CertScalar> v(e.algebra->dim(), CertScalar());
    for (std::size_t rr = 0; rr < m; ++rr)
      for (std::size_t k = 0; k < v.size(); ++k)
        if (sgn(nb[rr][k]) != 0) v[k] += X(rr, j) * lift(nb[rr][k]);
    return v;
  };
  std::string qdetail;
  for (std::size_t i = 0; i < m && qdetail.empty(); ++i)
    for (std::size_t j = i + 1; j < m && qdetail.empty(); ++j) {
      const Vec<CertScalar> b = bracket(*e.algebra, ambient(i), ambient(j));
      Vec<CertScalar> coords(m);
      for (std::size_t rr = 0; rr < m; ++rr) coords[rr] = b[pivots[rr]];
      const Vec<CertScalar> c = Xi * coords;
      for (std::size_t k = 0; k < m; ++k)
        if (!as_rational(c[k]))
          qdetail = "[X" + std::to_string(i + 1) + ",X" + std::to_string(j + 1) + "] has coefficient " +
                    scalar_string(c[k], unit) + " on X" + std::to_string(k + 1);
    }
  r.add("q_algebra", qdetail.empty(), qdetail);

  for (std::size_t a = 0; a < cert.tgens.size(); ++a) {
    const std::string tag = "[" + std::to_string(a + 1) + "]";
    check_integer_claim(r, cert.claims_s[a], tag);
    MatrixQ beta(m, m);
    for (std::size_t b = 0; b < dirs.size(); ++b) beta += beta_on_nilradical(e, dirs[b]) * cert.tgens[a][b];
    const JordanChevalley jc = jordan_chevalley(beta);
    auto cf = symbolic_exp(jc.s);
    std::optional<Matrix<CertScalar>> es;
    if (cf) {
      es = Matrix<CertScalar>(m, m);
      for (std::size_t i = 0; i < m && es; ++i)
        for (std::size_t j = 0; j < m && es; ++j) {
          auto v = at_unit((*cf)(i, j), cert);
          if (!v)
            es.reset();
          else
            (*es)(i, j) = *v;
        }
    }
    if (!es) {
      r.add("db_s" + tag, false, "exp(lambda beta_s) is not exactly representable in the " +
                                     std::string(to_string(cert.field)) + " field");
      continue;
    }
    const std::string sd = compare_claim(Xi * *es * X, cert.claims_s[a], unit, true);
    r.add("db_s" + tag, sd.empty(), sd.empty() ? to_string(cert.claims_s[a]) : sd);
    const Matrix<CertScalar> nconj = Xi * exp_unit_nilpotent(jc.n) * X;
    const std::string nr = compare_claim(nconj, cert.claims_n[a], unit, false);
    r.add("db_n_rational" + tag, nr.empty(), nr);
    if (nr.empty()) {
      const std::string nd = compare_claim(nconj, cert.claims_n[a], unit, true);
      r.add("db_n" + tag, nd.empty(), nd);
    }
  }
  return r;
}

std::vector<std::pair<std::string, CertScalar>> omega_pairings(const CatalogEntry& e, const LatticeCertificate& cert) {
  if (!e.central) throw CertificateError(e.name + " has no central-extension data");
  const auto p = central_position(e);
  if (!p) throw CertificateError(e.name + ": central direction is not a nilradical basis vector");
  const std::size_t c = e.central->central_index;
  const auto& nb = e.nilradical.basis();
  const Matrix<CertScalar> X = cert.basis();
  const auto dirs = t_directions(e);
  auto to_base = [&](const Vec<CertScalar>& v) {
    Vec<CertScalar> out;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (k != c) out.push_back(v[k]);
    return out;
  };
  std::vector<std::pair<std::string, Vec<CertScalar>>> vecs;
  for (std::size_t j = 0; j < nb.size(); ++j) {
    if (j == *p) continue;
    Vec<CertScalar> v(e.algebra->dim(), CertScalar());
    for (std::size_t rr = 0; rr < nb.size(); ++rr)
      for (std::size_t k = 0; k < v.size(); ++k)
        if (sgn(nb[rr][k]) != 0) v[k] += X(rr, j) * lift(nb[rr][k]);
    vecs.push_back({"X" + std::to_string(j + 1), to_base(v)});
  }
  for (std::size_t a = 0; a < cert.tgens.size(); ++a) {
    Vec<CertScalar> v(e.algebra->dim(), CertScalar());
    for (std::size_t b = 0; b < dirs.size(); ++b)
      for (std::size_t k = 0; k < v.size(); ++k)
        if (sgn(dirs[b][k]) != 0) v[k] += CertScalar::monomial(Quadratic(cert.tgens[a][b] * dirs[b][k]), 1);
    vecs.push_back({"lambda" + std::to_string(a + 1), to_base(v)});
  }
  const KForm& w = e.central->omega;
  std::vector<std::pair<std::string, CertScalar>> out;
  for (std::size_t i = 0; i < vecs.size(); ++i)
    for (std::size_t j = i + 1; j < vecs.size(); ++j) {
      CertScalar s;
      for (const auto& [mask, coeff] : w.terms()) {
        const std::size_t lo = __builtin_ctz(mask);
        const std::size_t hi = 31 - __builtin_clz(mask);
        s += lift(coeff) * (vecs[i].second[lo] * vecs[j].second[hi] - vecs[i].second[hi] * vecs[j].second[lo]);
      }
      out.push_back({"omega(" + vecs[i].first + "," + vecs[j].first + ")", s});
    }
  return out;
}

MatrixQ base_claim(const CatalogEntry& e, const LatticeCertificate& cert, std::size_t gen) {
  const auto p = central_position(e);
  if (!p) throw CertificateError(e.name + ": no central direction in the nilradical");
  if (gen >= cert.claims_s.size()) throw CertificateError("base_claim: no generator " + std::to_string(gen + 1));
  return drop(cert.claims_s[gen], *p);
}

Report verify_central_extension_certificate(const CatalogEntry& e, const LatticeCertificate& cert) {
  Report r;
  r.subject = e.name + " central-extension certificate";
  if (!e.central) {
    r.add("central_data", false, e.name + " is not stored as a central extension");
    return r;
  }
  r.merge(verify_certificate(e, cert), "full");
  const auto p = central_position(e);
  r.add("central_direction", p.has_value());
  if (!p || cert.unit_powers.size() != e.nilradical.rank()) return r;
  const Matrix<CertScalar> X = cert.basis();
  bool col_ok = true;
  for (std::size_t i = 0; i < X.rows(); ++i) col_ok = col_ok && X(i, *p) == CertScalar(i == *p ? 1 : 0);
  r.add("central_column", col_ok, "X" + std::to_string(*p + 1) + " is the central generator");
  for (std::size_t a = 0; a < cert.claims_s.size(); ++a) {
    const std::string tag = "[" + std::to_string(a + 1) + "]";
    bool invariant = true;
    for (const auto* m : {&cert.claims_s[a], &cert.claims_n[a]})
      for (std::size_t i = 0; i < m->rows(); ++i)
        if (i != *p && sgn((*m)(i, *p)) != 0) invariant = false;
    r.add("central_invariant" + tag, invariant);
    const MatrixQ base = drop(cert.claims_s[a], *p);
    const Rational det = determinant(base);
    r.add("base_claim" + tag, is_integer_matrix(base) && (det == 1 || det == -1), to_string(base));
  }
  bool all_rational = true;
  for (const auto& [name, v] : omega_pairings(e, cert)) {
    const auto q = as_rational(v);
    all_rational = all_rational && q.has_value();
    r.add(name, q.has_value(), scalar_string(v, cert.unit_name()));
  }
  r.add("omega_rational", all_rational);
  return r;
}

LatticeCertificate identity_certificate(const CatalogEntry& e) {
  const std::size_t m = e.nilradical.rank();
  LatticeCertificate c;
  c.entry = e.name;
  c.b0 = Matrix<Quadratic>::identity(m);
  c.unit_powers.assign(m, 0);
  c.mix = MatrixQ::identity(m);
  return c;
}

LatticeCertificate build_d5_certificate(long m0, const Rational& q) {
  if (m0 <= 2) throw InvalidParameter("build_d5_certificate: m0 >= 3 required (t0 > 0)");
  if (sgn(q) <= 0) throw InvalidParameter("build_d5_certificate: q > 0 required");
  const long d = m0 * m0 - 4;
  // e^{t0} + e^{-t0} = m0
  const Quadratic et(make_rational(m0, 2), Rational(1, 2), d);
  const Quadratic eti = et.inverse();
  const Quadratic r(q);
  const Quadratic s = Quadratic(1) / (Quadratic(q) * Quadratic::root(d));
  LatticeCertificate c;
  c.entry = "D5";
  c.field = FieldKind::Quadratic;
  c.d = d;
  c.unit_exp = et;
  c.b0 = Matrix<Quadratic>(4, 4);
  c.b0(0, 0) = 1;
  c.b0(1, 1) = r;  // X2 = r e2 + s e3
  c.b0(2, 1) = s;
  c.b0(1, 2) = r * eti;  // X3 = db(t0) X2
  c.b0(2, 2) = s * et;
  c.b0(3, 3) = 1;  // X4 = t0^-1 e4
  c.unit_powers = {0, 0, 0, -1};
  c.mix = MatrixQ::identity(4);
  c.tgens = {VecQ{Rational(1)}};
  MatrixQ ms = MatrixQ::identity(4);
  ms(1, 1) = 0;
  ms(1, 2) = -1;
  ms(2, 1) = 1;
  ms(2, 2) = m0;
  MatrixQ mn = MatrixQ::identity(4);
  mn(0, 3) = -1;
  c.claims_s = {ms};
  c.claims_n = {mn};
  return c;
}

LatticeCertificate build_d11_certificate(long k0, const Rational& q0, long eps) {
  if (k0 <= 0) throw InvalidParameter("build_d11_certificate: k0 > 0 required");
  if (sgn(q0) <= 0) throw InvalidParameter("build_d11_certificate: q0 > 0 required");
  if (eps != 1 && eps != -1) throw InvalidParameter("build_d11_certificate: eps must be +1 or -1");
  LatticeCertificate c;
  c.entry = get("D11", {{"eps", Rational(eps)}}).name;
  c.field = FieldKind::QuarterTurn;
  c.b0 = Matrix<Quadratic>::identity(4);
  c.b0(3, 3) = Quadratic(q0);  // X4 = q0 pi^-1 e4
  c.unit_powers = {0, 0, 0, -1};
  c.mix = MatrixQ::identity(4);
  const Rational t0 = make_rational(k0, 2);  // lambda = (k0/2) pi e5
  c.tgens = {VecQ{t0}};
  // beta(e5) on <e2,e3> is [[0,1],[-1,0]]: exp(theta J) = cos theta I + sin theta J
  const Rational co = quarter_turn_cos(k0), si = quarter_turn_sin(k0);
  MatrixQ ms = MatrixQ::identity(4);
  ms(1, 1) = co;
  ms(1, 2) = si;
  ms(2, 1) = -si;
  ms(2, 2) = co;
  MatrixQ mn = MatrixQ::identity(4);
  mn(0, 3) = Rational(-eps) * t0 * q0;
  c.claims_s = {ms};
  c.claims_n = {mn};
  return c;
}

std::pair<MatrixQ, MatrixQ> d18_pair() {
  return {MatrixQ{{0, 0, 1}, {1, 0, -5}, {0, 1, 6}}, MatrixQ{{-4, -4, -3}, {21, 16, 11}, {-4, -3, -2}}};
}

std::pair<MatrixQ, MatrixQ> d20_pair() {
  return {MatrixQ{{0, 0, 1}, {1, 0, -2}, {0, 1, 3}}, MatrixQ{{0, 1, 1}, {-2, -2, -1}, {1, 1, 1}}};
}

CommutingPairCertificate build_commuting_pair_certificate(const CatalogEntry& e, const MatrixQ& m1,
                                                          const MatrixQ& m2, double tol) {
  const bool d18 = e.family == "D18";
  if (!d18 && e.family != "D20") throw CertificateError("commuting-pair certificates exist for D18 and D20 only");
  if (!e.split || e.split->t_dim() != 2 || e.split->n_dim() != 3)
    throw CertificateError(e.name + ": expected R^3 x| R^2");
  CommutingPairCertificate c;
  c.entry = e.name;
  c.m1 = m1;
  c.m2 = m2;
  Report& r = c.report;
  r.subject = e.name + " commuting-pair certificate";
  for (const auto* m : {&m1, &m2})
    if (m->rows() != 3 || m->cols() != 3) throw CertificateError("matrices must be 3x3");
  if (!commute(m1, m2)) throw CertificateError("M1 M2 != M2 M1");
  r.add("commute", true, "M1 M2 = M2 M1 exactly");
  const int expected_real = d18 ? 3 : 1;
  std::size_t idx = 0;
  for (const auto* m : {&m1, &m2}) {
    const std::string tag = "[" + std::to_string(++idx) + "]";
    if (!is_integer_matrix(*m)) throw CertificateError("M" + tag + " has non-integer entries");
    const Rational det = determinant(*m);
    if (det != 1) throw CertificateError("det M" + tag + " = " + to_string(det) + ", expected 1");
    r.add("det" + tag, true, "1");
    const PolynomialQ p = char_poly(*m);
    r.add("charpoly" + tag, p.has_integer_coefficients(), to_string(p, "X"));
    const Rational b = cauchy_bound(p);
    const int real = sturm_count(p, -b, b);
    const bool distinct = squarefree_part(p).degree() == 3;
    if (real != expected_real || !distinct)
      throw CertificateError("M" + tag + " has " + std::to_string(real) + " distinct real eigenvalue(s), " +
                             e.name + " needs " + std::to_string(expected_real) + (distinct ? "" : " (repeated root)"));
    r.add("sturm" + tag, true, std::to_string(real) + " real root(s)");
  }
  try {
    c.eigen = simultaneous_eigenbasis({m1, m2}, 1e-9);
  } catch (const std::exception& ex) {
    throw CertificateError(std::string("simultaneous eigenbasis: ") + ex.what());
  }
  r.add("eigenbasis_residual", true, "", std::max(c.eigen.residuals[0], c.eigen.residuals[1]));
  const auto& bl = c.eigen.blocks;
  const bool shape = d18 ? bl.size() == 3 : (bl.size() == 2 && bl[0].size == 1 && bl[1].size == 2);
  if (!shape) throw CertificateError("block structure does not match " + e.name);
  std::vector<double>* fs[2] = {&c.f1, &c.f2};
  for (std::size_t j = 0; j < 2; ++j) {
    if (d18) {
      const double l1 = bl[0].eigenvalues[j].real(), l2 = bl[1].eigenvalues[j].real();
      if (l1 <= 0 || l2 <= 0) throw CertificateError("negative eigenvalue: no real logarithm");
      *fs[j] = {-std::log(l1), -std::log(l2)};
    } else {
      const double real = bl[0].eigenvalues[j].real();
      const std::complex<double> z = bl[1].eigenvalues[j];
      if (real <= 0) throw CertificateError("negative real eigenvalue: no real logarithm");
      *fs[j] = {-std::log(std::abs(z)), std::arg(z)};
    }
  }
  c.det_f = c.f1[0] * c.f2[1] - c.f1[1] * c.f2[0];
  if (std::fabs(c.det_f) <= 1e-6) throw CertificateError("lattice generators f1, f2 are dependent");
  r.add("independent", true, "|det(f1,f2)| = " + to_string(std::fabs(c.det_f)), std::fabs(c.det_f));
  auto psi_inv = inverse(c.eigen.psi);
  if (!psi_inv) throw CertificateError("eigenbasis is singular");
  c.basis = *psi_inv;
  const Matrix<double> xi = c.eigen.psi;
  idx = 0;
  for (const auto* f : {&c.f1, &c.f2}) {
    const MatrixQ* m = idx == 0 ? &m1 : &m2;
    const std::string tag = "[" + std::to_string(++idx) + "]";
    Matrix<double> beta(3, 3);
    for (std::size_t b = 0; b < 2; ++b) beta += to_double_matrix(e.split->beta[b]) * (*f)[b];
    const Matrix<double> db = exp_numeric(beta);
    const double res = max_abs_diff(xi * db * c.basis, to_double_matrix(*m));
    r.add("integer_claim" + tag, res <= tol, "X^-1 exp(beta(f)) X = M" + tag.substr(1, 1), res);
  }
  return c;
}

ObstructionReport obstruction_reciprocal(const CatalogEntry& e) {
  const auto dirs = t_directions(e);
  if (dirs.size() != 1) throw ObstructionInapplicable(e.name + ": T is not one-dimensional");
  const LieAlgebra& L = *e.algebra;
  ObstructionReport o;
  o.entry = e.name;
  Report& r = o.report;
  r.subject = e.name + " obstruction";
  const MatrixQ beta = beta_on_nilradical(e, dirs[0]);
  const MatrixQ s = jordan_chevalley(beta).s;
  r.add("trace_zero", sgn(s.trace()) == 0, "trace beta_s = " + to_string(s.trace()));
  o.stratum = bracket_span(L, e.nilradical, e.nilradical);
  o.stratum_text = to_string(o.stratum, L);
  if (o.stratum.is_zero()) throw ObstructionInapplicable(e.name + ": [n,n] = 0");
  // stratum in nilradical coordinates
  std::vector<VecQ> local;
  for (const auto& v : o.stratum.basis()) local.push_back(*e.nilradical.coordinates(v));
  const Subspace sub(e.nilradical.rank(), local);
  const std::size_t k = sub.rank();
  MatrixQ a(k, k);
  bool invariant = true;
  for (std::size_t j = 0; j < k; ++j) {
    auto c = sub.coordinates(s * sub.basis()[j]);
    if (!c) {
      invariant = false;
      break;
    }
    for (std::size_t i = 0; i < k; ++i) a(i, j) = (*c)[i];
  }
  r.add("stratum_invariant", invariant, "[n,n] = " + o.stratum_text);
  if (!invariant) throw ObstructionInapplicable(e.name + ": [n,n] is not beta_s-invariant");
  o.stratum_char_poly = char_poly(a);
  o.complement_char_poly = char_poly(s) / o.stratum_char_poly;
  o.stratum_sum = a.trace();
  o.complement_sum = s.trace() - o.stratum_sum;
  o.mu = abs(o.stratum_sum);
  r.add("reciprocal_weights", o.complement_sum == -o.stratum_sum,
        "stratum " + to_string(o.stratum_sum) + ", complement " + to_string(o.complement_sum));
  if (sgn(o.mu) == 0) throw ObstructionInapplicable(e.name + ": mu = 0");
  r.add("mu_nonzero", true, "mu = " + to_string(o.mu));
  const std::string m = to_string(o.mu);
  o.conclusion = "det of db(t0) on [n,n] is e^(+-" + m + " t0); it and its inverse are integers only for t0 = 0, "
                 "so no lattice";
  return o;
}

Integer reciprocal_trace(long a, long m0) {
  a = std::labs(a);
  Integer prev = 2, cur = m0;
  if (a == 0) return prev;
  for (long i = 1; i < a; ++i) {
    Integer next = Integer(m0) * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

SawaiYamadaResult sy_lattice_check(long a1, long a2, long m0) {
  if (m0 < 3) throw InvalidParameter("sy_lattice_check: m0 >= 3 required");
  SawaiYamadaResult out;
  Report& r = out.report;
  r.subject = "SY(a1=" + std::to_string(a1) + ",a2=" + std::to_string(a2) + ") m0=" + std::to_string(m0);
  const long as[3] = {a1, a2, a1 + a2};
  out.f = PolynomialQ(1);
  const double t0 = std::acosh(static_cast<double>(m0) / 2);
  double worst = 0;
  for (long a : as) {
    const Integer c = reciprocal_trace(a, m0);
    out.c.push_back(c);
    out.f = out.f * PolynomialQ({Rational(1), Rational(-c), Rational(1)});
    const double expect = 2 * std::cosh(static_cast<double>(a) * t0);
    worst = std::max(worst, std::fabs(c.get_d() - expect) / expect);
  }
  r.add("recurrence_matches_cosh", worst < 1e-9, "", worst);
  r.add("integer_coefficients", out.f.has_integer_coefficients(), to_string(out.f, "x"));
  bool palindromic = true;
  for (int k = 0; k <= out.f.degree(); ++k) palindromic = palindromic && out.f.coeff(k) == out.f.coeff(out.f.degree() - k);
  r.add("reciprocal", palindromic);
  return out;
}

Report lattice_check(const CatalogEntry& e) {
  Report r;
  r.subject = e.name;
  auto verdict = [&](bool accepted, bool obstructed) {
    const std::string v = accepted ? "accepted" : obstructed ? "obstructed" : "undecided";
    const bool ok = (e.lattice == LatticeStatus::Exists && accepted) || (e.lattice == LatticeStatus::None && obstructed);
    r.add("verdict", ok, v);
  };
  try {
    if (e.lattice == LatticeStatus::OutOfScope) {
      r.skip("verdict", "out of scope");
      return r;
    }
    if (e.lattice == LatticeStatus::None) {
      ObstructionReport o = obstruction_reciprocal(e);
      r.merge(o.report, "obstruction");
      verdict(false, o.report.passed());
      return r;
    }
    bool ok = false;
    if (e.family == "SY") {
      const Rational a1 = e.params.at("a1"), a2 = e.params.at("a2");
      auto sy = sy_lattice_check(a1.get_num().get_si(), a2.get_num().get_si(), 3);
      r.merge(sy.report, "sawai_yamada");
      ok = sy.report.passed();
    } else if (e.nilradical.rank() == e.algebra->dim()) {
      const bool q = verify_nilpotent_qform(e);
      r.add("q_form", q, "rational structure constants");
      Report c = verify_certificate(e, identity_certificate(e));
      r.merge(c, "certificate");
      ok = q && c.passed();
    } else if (e.family == "D5" || e.family == "D11") {
      const LatticeCertificate cert = e.family == "D5"
                                          ? build_d5_certificate(3)
                                          : build_d11_certificate(1, 1, e.params.at("eps").get_num().get_si());
      Report c = verify_central_extension_certificate(e, cert);
      r.merge(c, "certificate");
      ok = c.passed();
    } else if (e.family == "D18" || e.family == "D20") {
      auto [m1, m2] = e.family == "D18" ? d18_pair() : d20_pair();
      CommutingPairCertificate c = build_commuting_pair_certificate(e, m1, m2);
      r.merge(c.report, "certificate");
      ok = c.report.passed();
    } else {
      r.add("certificate", false, "no shipped certificate for " + e.name);
    }
    verdict(ok, false);
  } catch (const std::exception& ex) {
    r.add("lattice", false, ex.what());
    verdict(false, false);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

std::string qtext(const Quadratic& q) {
  return q.rational_part().get_str() + "+" + q.root_part().get_str() + "r";
}

Quadratic parse_quadratic(const std::string& s, long d, std::size_t line) {
  if (s.empty() || s.back() != 'r') throw CatalogParseError(line, "expected <a>+<b>r, got '" + s + "'");
  const auto plus = s.find('+', 1);
  if (plus == std::string::npos) throw CatalogParseError(line, "expected <a>+<b>r, got '" + s + "'");
  try {
    const Rational a = parse_rational(s.substr(0, plus));
    const Rational b = parse_rational(s.substr(plus + 1, s.size() - plus - 2));
    if (sgn(b) == 0) return Quadratic(a);
    if (d <= 0) throw CatalogParseError(line, "irrational entry in a field without sqrt");
    return Quadratic(a, b, d);
  } catch (const std::invalid_argument& ex) {
    throw CatalogParseError(line, std::string("malformed scalar '") + s + "': " + ex.what());
  }
}

std::vector<std::string> words_of(const std::string& raw) {
  const auto hash = raw.find('#');
  std::istringstream is(hash == std::string::npos ? raw : raw.substr(0, hash));
  std::vector<std::string> w;
  std::string x;
  while (is >> x) w.push_back(x);
  return w;
}

long parse_long(const std::string& s, std::size_t line) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw CatalogParseError(line, "expected an integer, got '" + s + "'");
}

Rational parse_q(const std::string& s, std::size_t line) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument&) {
    throw CatalogParseError(line, "malformed rational '" + s + "'");
  }
}

std::size_t parse_pos(const std::string& s, std::size_t bound, std::size_t line) {
  const long v = parse_long(s, line);
  if (v < 1 || static_cast<std::size_t>(v) > bound)
    throw CatalogParseError(line, "index " + s + " out of range 1.." + std::to_string(bound));
  return static_cast<std::size_t>(v - 1);
}

}  // namespace

std::string write_certificate(const LatticeCertificate& c) {
  std::ostringstream os;
  const std::size_t m = c.unit_powers.size();
  os << "cert " << c.entry << " field=";
  if (c.field == FieldKind::QuarterTurn)
    os << "pi";
  else if (c.field == FieldKind::Quadratic)
    os << c.d;
  else
    os << "rational";
  os << " dim=" << m << "\n";
  if (c.unit_exp) os << "unit t0 exp=" << qtext(*c.unit_exp) << "\n";
  for (std::size_t j = 0; j < m; ++j) {
    os << "basiscol " << j + 1;
    for (std::size_t i = 0; i < m; ++i)
      if (!is_zero(c.b0(i, j))) os << " " << i + 1 << ":" << qtext(c.b0(i, j));
    os << "\n";
    if (c.unit_powers[j] != 0) os << "unitpow " << j + 1 << " " << c.unit_powers[j] << "\n";
  }
  if (!(c.mix == MatrixQ::identity(m)))
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (sgn(c.mix(i, j)) != 0) os << "mix " << i + 1 << " " << j + 1 << " " << c.mix(i, j).get_str() << "\n";
  for (std::size_t a = 0; a < c.tgens.size(); ++a) {
    os << "tgen";
    for (const auto& v : c.tgens[a]) os << " " << v.get_str();
    os << "\n";
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (sgn(c.claims_s[a](i, j)) != 0)
          os << "claim " << a + 1 << " " << i + 1 << " " << j + 1 << " " << c.claims_s[a](i, j).get_str() << "\n";
      }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (sgn(c.claims_n[a](i, j)) != 0)
          os << "nclaim " << a + 1 << " " << i + 1 << " " << j + 1 << " " << c.claims_n[a](i, j).get_str() << "\n";
  }
  return os.str();
}

LatticeCertificate parse_certificate(std::istream& in) {
  LatticeCertificate c;
  std::string raw;
  std::size_t line = 0, m = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto w = words_of(raw);
    if (w.empty()) continue;
    if (!header) {
      if (w[0] != "cert" || w.size() != 4 || w[2].rfind("field=", 0) != 0 || w[3].rfind("dim=", 0) != 0)
        throw CatalogParseError(line, "expected 'cert <entry> field=<d|pi|rational> dim=<n>'");
      c.entry = w[1];
      const std::string f = w[2].substr(6);
      if (f == "pi") {
        c.field = FieldKind::QuarterTurn;
      } else if (f == "rational") {
        c.field = FieldKind::Rational;
      } else {
        c.field = FieldKind::Quadratic;
        c.d = parse_long(f, line);
        if (c.d <= 1) throw CatalogParseError(line, "field discriminant must be > 1");
      }
      m = static_cast<std::size_t>(parse_long(w[3].substr(4), line));
      if (m == 0 || m > 32) throw CatalogParseError(line, "dimension out of range");
      c.b0 = Matrix<Quadratic>(m, m);
      c.unit_powers.assign(m, 0);
      c.mix = MatrixQ::identity(m);
      header = true;
      continue;
    }
    const std::string& kw = w[0];
    if (kw == "unit") {
      if (w.size() != 3 || w[1] != "t0" || w[2].rfind("exp=", 0) != 0)
        throw CatalogParseError(line, "expected 'unit t0 exp=<a>+<b>r'");
      c.unit_exp = parse_quadratic(w[2].substr(4), c.d, line);
    } else if (kw == "basiscol") {
      if (w.size() < 2) throw CatalogParseError(line, "expected 'basiscol <j> <i>:<a>+<b>r ...'");
      const std::size_t j = parse_pos(w[1], m, line);
      for (std::size_t k = 2; k < w.size(); ++k) {
        const auto colon = w[k].find(':');
        if (colon == std::string::npos) throw CatalogParseError(line, "expected <i>:<a>+<b>r");
        c.b0(parse_pos(w[k].substr(0, colon), m, line), j) = parse_quadratic(w[k].substr(colon + 1), c.d, line);
      }
    } else if (kw == "unitpow") {
      if (w.size() != 3) throw CatalogParseError(line, "expected 'unitpow <j> <k>'");
      c.unit_powers[parse_pos(w[1], m, line)] = static_cast<int>(parse_long(w[2], line));
    } else if (kw == "mix") {
      if (w.size() != 4) throw CatalogParseError(line, "expected 'mix <i> <j> <q>'");
      c.mix(parse_pos(w[1], m, line), parse_pos(w[2], m, line)) = parse_q(w[3], line);
    } else if (kw == "tgen") {
      VecQ v;
      for (std::size_t k = 1; k < w.size(); ++k) v.push_back(parse_q(w[k], line));
      c.tgens.push_back(v);
      c.claims_s.push_back(MatrixQ(m, m));
      c.claims_n.push_back(MatrixQ(m, m));
    } else if (kw == "claim" || kw == "nclaim") {
      if (w.size() != 5) throw CatalogParseError(line, "expected '" + kw + " <gen> <row> <col> <value>'");
      const std::size_t g = parse_pos(w[1], c.tgens.size(), line);
      const std::size_t i = parse_pos(w[2], m, line), j = parse_pos(w[3], m, line);
      if (kw == "claim") {
        c.claims_s[g](i, j) = Rational(parse_long(w[4], line));
      } else {
        c.claims_n[g](i, j) = parse_q(w[4], line);
      }
    } else {
      throw CatalogParseError(line, "unknown directive '" + kw + "'");
    }
  }
  if (!header) throw CatalogParseError(line, "empty certificate");
  return c;
}

std::string write_pair_file(const PairFile& p) {
  std::ostringstream os;
  os << "pair " << p.entry << "\n";
  for (const auto& [tag, m] : {std::pair<const char*, const MatrixQ*>{"m1", &p.m1}, {"m2", &p.m2}})
    for (std::size_t i = 0; i < m->rows(); ++i) {
      os << tag;
      for (std::size_t j = 0; j < m->cols(); ++j) os << " " << (*m)(i, j).get_str();
      os << "\n";
    }
  return os.str();
}

PairFile parse_pair_file(std::istream& in) {
  PairFile p;
  std::vector<VecQ> rows[2];
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto w = words_of(raw);
    if (w.empty()) continue;
    if (!header) {
      if (w[0] != "pair" || w.size() != 2) throw CatalogParseError(line, "expected 'pair <entry>'");
      p.entry = w[1];
      header = true;
      continue;
    }
    if (w[0] != "m1" && w[0] != "m2") throw CatalogParseError(line, "unknown directive '" + w[0] + "'");
    if (w.size() != 4) throw CatalogParseError(line, "expected three integers per row");
    VecQ row;
    for (std::size_t k = 1; k < 4; ++k) row.push_back(Rational(parse_long(w[k], line)));
    auto& target = rows[w[0] == "m2"];
    if (target.size() == 3) throw CatalogParseError(line, "too many rows for " + w[0]);
    target.push_back(row);
  }
  if (!header) throw CatalogParseError(line, "empty pair file");
  if (rows[0].size() != 3 || rows[1].size() != 3) throw CatalogParseError(line, "m1 and m2 need three rows each");
  p.m1 = MatrixQ::from_columns(rows[0], 3).transpose();
  p.m2 = MatrixQ::from_columns(rows[1], 3).transpose();
  return p;
}

CertificateFile parse_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open certificate file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::istringstream probe(text);
  std::string raw, first;
  while (std::getline(probe, raw)) {
    const auto w = words_of(raw);
    if (!w.empty()) {
      first = w[0];
      break;
    }
  }
  std::istringstream is(text);
  CertificateFile f;
  if (first == "pair")
    f.pair = parse_pair_file(is);
  else
    f.cert = parse_certificate(is);
  return f;
}

}  // namespace solvcontact
