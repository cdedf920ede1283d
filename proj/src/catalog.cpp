#include "solvcontact/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "solvcontact/linalg.hpp"

namespace solvcontact {

const char* to_string(LatticeStatus s) {
  switch (s) {
    case LatticeStatus::Exists: return "exists";
    case LatticeStatus::None: return "none";
    default: return "out-of-scope";
  }
}

std::optional<LatticeStatus> parse_lattice_status(const std::string& s) {
  if (s == "exists") return LatticeStatus::Exists;
  if (s == "none") return LatticeStatus::None;
  if (s == "out-of-scope") return LatticeStatus::OutOfScope;
  return std::nullopt;
}

namespace {

using Target = std::vector<std::pair<std::size_t, Rational>>;

struct Br {
  std::size_t i, j;  // 1-based
  Target out;        // 1-based targets
};

std::vector<std::string> default_labels(std::size_t n, std::size_t first = 1) {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back("e" + std::to_string(i + first));
  return l;
}

std::shared_ptr<const LieAlgebra> make_algebra(const std::string& name, std::vector<std::string> labels,
                                               const std::vector<Br>& brs) {
  std::vector<StructureConstant> sc;
  for (const auto& b : brs)
    for (const auto& [k, c] : b.out) sc.push_back({b.i - 1, b.j - 1, k - 1, c});
  return std::make_shared<const LieAlgebra>(name, std::move(labels), sc);
}

VecQ unit(std::size_t n, std::size_t i) {
  VecQ v(n, Rational(0));
  v[i] = 1;
  return v;
}

std::vector<VecQ> units(std::size_t n, const std::vector<std::size_t>& one_based) {
  std::vector<VecQ> out;
  for (auto i : one_based) out.push_back(unit(n, i - 1));
  return out;
}

KForm covectors(std::size_t n, const std::vector<std::pair<std::size_t, Rational>>& one_based) {
  VecQ c(n, Rational(0));
  for (const auto& [i, q] : one_based) c[i - 1] = q;
  return KForm::linear(c);
}

/// 2-form from 0-based index pairs.
KForm two_form(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, Rational>>& terms) {
  KForm f(n, 2);
  for (const auto& [i, j, c] : terms) f.add({i, j}, c);
  return f;
}

SplitData trivial_split(std::shared_ptr<const LieAlgebra> L) {
  std::vector<VecQ> nb;
  for (std::size_t i = 0; i < L->dim(); ++i) nb.push_back(unit(L->dim(), i));
  return semidirect_split(std::move(L), nb, {});
}

std::string format_name(const std::string& family, const std::vector<std::pair<std::string, Rational>>& ps) {
  if (ps.empty()) return family;
  std::string s = family + "(";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + ps[i].first + "=" + to_string(ps[i].second);
  return s + ")";
}

using E = ExpPolyTrig;

ClosedForm diag_exp(const std::vector<Rational>& rates) {
  ClosedForm f(rates.size(), rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) f(i, i) = E::exp(0, rates[i]);
  return f;
}

CatalogEntry base_entry(const std::string& family, const Params& params, std::string name,
                        std::shared_ptr<const LieAlgebra> L) {
  return CatalogEntry{std::move(name), family, params, std::move(L), std::nullopt, std::nullopt, std::nullopt,
                      std::nullopt,    Subspace::zero(0), std::nullopt, {},     LatticeStatus::OutOfScope, {}};
}

void require_params(const std::string& family, const Params& given, const std::vector<std::string>& allowed) {
  for (const auto& [k, v] : given)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw InvalidParameter(family + ": unknown parameter '" + k + "'");
}

Rational param(const Params& p, const std::string& key, const Rational& def) {
  auto it = p.find(key);
  return it == p.end() ? def : it->second;
}

std::size_t size_param(const std::string& family, const Params& p, const std::string& key, long def, long min) {
  const Rational v = param(p, key, def);
  if (!is_integer(v) || v < min || v > 64)
    throw InvalidParameter(family + ": " + key + " must be an integer >= " + std::to_string(min));
  return static_cast<std::size_t>(v.get_num().get_ui());
}

// H3 (+) R based semidirect products with n = <e1..e4>, T = e5.
CatalogEntry h3r_product(const std::string& family, const Params& params, const std::string& name,
                         const std::vector<Br>& brs, ClosedForm db, LatticeStatus lattice) {
  auto L = make_algebra(name, default_labels(5), brs);
  CatalogEntry e = base_entry(family, params, name, L);
  e.contact = covectors(5, {{1, 1}, {4, 1}});
  e.split = semidirect_split(L, units(5, {1, 2, 3, 4}), units(5, {5}));
  e.closed_form = std::move(db);
  e.nilradical = Subspace(5, units(5, {1, 2, 3, 4}));
  e.lattice = lattice;
  return e;
}

CentralExtensionData central_data(const std::string& name, const std::vector<Br>& base_brs, KForm omega,
                                  const std::vector<std::size_t>& base_n, const std::vector<std::size_t>& base_t) {
  auto b = make_algebra("b(" + name + ")", default_labels(4, 2), base_brs);
  SplitData split = base_t.empty() ? trivial_split(b) : semidirect_split(b, units(4, base_n), units(4, base_t));
  return {b, std::move(omega), 0, std::move(split)};
}

CatalogEntry build_d(const std::string& family, const Params& params) {
  const Rational one(1);
  if (family == "D1") {
    require_params(family, params, {});
    auto L = make_algebra("D1", default_labels(5), {{2, 4, {{1, one}}}, {3, 5, {{1, one}}}});
    CatalogEntry e = base_entry(family, params, "D1", L);
    e.contact = covectors(5, {{1, 1}});
    e.split = trivial_split(L);
    e.nilradical = Subspace::whole(5);
    e.central = central_data("D1", {}, two_form(4, {{0, 2, 1}, {1, 3, 1}}), {}, {});
    e.expected.nilpotent = true;
    e.lattice = LatticeStatus::Exists;
    return e;
  }
  if (family == "D2" || family == "D3") {
    require_params(family, params, {});
    const bool d3 = family == "D3";
    std::vector<Br> brs{{3, 4, {{1, one}}}, {2, 5, {{1, one}}}, {3, 5, {{2, one}}}};
    std::vector<Br> base{{2, 4, {{1, one}}}};  // base-local indices: e2->1, ..., e5->4
    if (d3) {
      brs.push_back({4, 5, {{3, one}}});
      base.push_back({3, 4, {{2, one}}});
    }
    auto L = make_algebra(family, default_labels(5), brs);
    CatalogEntry e = base_entry(family, params, family, L);
    e.contact = covectors(5, {{1, 1}});
    // internal split n' = (e1, e3, e4, e2), T' = e5
    e.split = semidirect_split(L, units(5, {1, 3, 4, 2}), units(5, {5}));
    const E t = E::var(0);
    ClosedForm df = closed_form_from(MatrixQ::identity(4));
    df(0, 1) = E(Rational(1, 2)) * t * t;
    df(0, 3) = -t;
    df(3, 1) = -t;
    if (d3) {
      df(0, 2) = E(Rational(-1, 6)) * t * t * t;
      df(1, 2) = -t;
      df(3, 2) = E(Rational(1, 2)) * t * t;
      e.notes.push_back("df(t e5) entry (4,3) = t^2/2, as exp of ad(e5) requires");
    }
    e.closed_form = df;
    e.nilradical = Subspace::whole(5);
    e.central = central_data(family, base, two_form(4, {{1, 2, 1}, {0, 3, 1}}), {}, {});
    e.expected.nilpotent = true;
    e.lattice = LatticeStatus::Exists;
    return e;
  }
  if (family == "D4") {
    require_params(family, params, {"p"});
    const Rational p = param(params, "p", 2);
    if (p == -1) throw InvalidParameter("D4: p != -1 required");
    const std::string name = format_name("D4", {{"p", p}});
    return h3r_product(family, {{"p", p}}, name,
                       {{2, 3, {{1, one}}},
                        {1, 5, {{1, Rational(1 + p)}}},
                        {2, 5, {{2, one}}},
                        {3, 5, {{3, p}}},
                        {4, 5, {{4, Rational(-2 * (p + 1))}}}},
                       diag_exp({Rational(-(p + 1)), -1, Rational(-p), Rational(2 * (p + 1))}), LatticeStatus::None);
  }
  if (family == "D5") {
    require_params(family, params, {});
    ClosedForm db = diag_exp({0, -1, 1, 0});
    db(0, 3) = -E::var(0);
    CatalogEntry e = h3r_product(family, params, "D5",
                                 {{2, 3, {{1, one}}}, {2, 5, {{2, one}}}, {3, 5, {{3, Rational(-1)}}}, {4, 5, {{1, one}}}},
                                 db, LatticeStatus::Exists);
    e.contact = covectors(5, {{1, 1}});
    e.central = central_data("D5", {{1, 4, {{1, one}}}, {2, 4, {{2, Rational(-1)}}}},
                             two_form(4, {{0, 1, 1}, {2, 3, 1}}), {1, 2, 3}, {4});
    return e;
  }
  if (family == "D8") {
    require_params(family, params, {});
    ClosedForm db = diag_exp({-2, -1, -1, 4});
    db(2, 1) = -E::var(0) * E::exp(0, -1);
    return h3r_product(family, params, "D8",
                       {{2, 3, {{1, one}}},
                        {1, 5, {{1, Rational(2)}}},
                        {2, 5, {{2, one}, {3, one}}},
                        {3, 5, {{3, one}}},
                        {4, 5, {{4, Rational(-4)}}}},
                       db, LatticeStatus::None);
  }
  if (family == "D10") {
    require_params(family, params, {"p"});
    const Rational p = param(params, "p", 1);
    if (sgn(p) == 0) throw InvalidParameter("D10: p != 0 required");
    ClosedForm db = diag_exp({Rational(-2 * p), 0, 0, Rational(4 * p)});
    // written with cos(-t) and sin(-t)
    const E ep = E::exp(0, -p);
    db(1, 1) = ep * E::cos(0, -1);
    db(1, 2) = -(ep * E::sin(0, -1));
    db(2, 1) = ep * E::sin(0, -1);
    db(2, 2) = ep * E::cos(0, -1);
    return h3r_product(family, {{"p", p}}, format_name("D10", {{"p", p}}),
                       {{2, 3, {{1, one}}},
                        {1, 5, {{1, Rational(2 * p)}}},
                        {2, 5, {{2, p}, {3, one}}},
                        {3, 5, {{2, Rational(-1)}, {3, p}}},
                        {4, 5, {{4, Rational(-4 * p)}}}},
                       db, LatticeStatus::None);
  }
  if (family == "D11") {
    require_params(family, params, {"eps"});
    const Rational eps = param(params, "eps", 1);
    if (eps != 1 && eps != -1) throw InvalidParameter("D11: eps must be +1 or -1");
    ClosedForm db = closed_form_from(MatrixQ::identity(4));
    db(0, 3) = E(Rational(-eps)) * E::var(0);
    db(1, 1) = E::cos(0, 1);
    db(1, 2) = E::sin(0, 1);
    db(2, 1) = -E::sin(0, 1);
    db(2, 2) = E::cos(0, 1);
    CatalogEntry e = h3r_product(
        family, {{"eps", eps}}, format_name("D11", {{"eps", eps}}),
        {{2, 3, {{1, one}}}, {2, 5, {{3, one}}}, {3, 5, {{2, Rational(-1)}}}, {4, 5, {{1, eps}}}}, db,
        LatticeStatus::Exists);
    e.contact = covectors(5, {{1, 1}});
    e.central = central_data(e.name, {{1, 4, {{2, one}}}, {2, 4, {{1, Rational(-1)}}}},
                             two_form(4, {{0, 1, 1}, {2, 3, eps}}), {1, 2, 3}, {4});
    e.notes.push_back("db(t e5) rotation block is [[cos t, sin t], [-sin t, cos t]] = exp(t beta)");
    e.notes.push_back("beta(e5) entry (1,4) = -eps; omega = e2*^e3* + eps e4*^e5*");
    return e;
  }
  if (family == "D13") {
    require_params(family, params, {});
    ClosedForm db = diag_exp({Rational(1, 2), Rational(3, 2), -1, -1});
    db(3, 2) = -E::var(0) * E::exp(0, -1);
    return h3r_product(family, params, "D13",
                       {{2, 3, {{1, one}}},
                        {1, 5, {{1, Rational(-1, 2)}}},
                        {2, 5, {{2, Rational(-3, 2)}}},
                        {3, 5, {{3, one}, {4, one}}},
                        {4, 5, {{4, one}}}},
                       db, LatticeStatus::None);
  }
  if (family == "D15") {
    require_params(family, params, {});
    auto L = make_algebra("D15", default_labels(5),
                          {{2, 4, {{1, one}}},
                           {3, 4, {{2, one}}},
                           {1, 5, {{1, Rational(2, 3)}}},
                           {2, 5, {{2, Rational(-1, 3)}}},
                           {3, 5, {{3, Rational(-4, 3)}}},
                           {4, 5, {{4, one}}}});
    CatalogEntry e = base_entry(family, params, "D15", L);
    e.contact = covectors(5, {{1, 1}, {3, 1}});
    e.split = semidirect_split(L, units(5, {1, 2, 3, 4}), units(5, {5}));
    e.closed_form = diag_exp({Rational(-2, 3), Rational(1, 3), Rational(4, 3), -1});
    e.nilradical = Subspace(5, units(5, {1, 2, 3, 4}));
    e.lattice = LatticeStatus::None;
    e.notes.push_back("eta = e1* + e3*");
    e.notes.push_back("[e2,e5] = -1/3 e2 and [e3,e5] = -4/3 e3; +1/3 e2 or -4/3 p e3 would break "
                      "Jacobi and unimodularity");
    return e;
  }
  if (family == "D18" || family == "D20") {
    require_params(family, params, {});
    const bool d18 = family == "D18";
    std::vector<Br> brs = d18 ? std::vector<Br>{{1, 4, {{1, one}}},
                                                {3, 4, {{3, Rational(-1)}}},
                                                {2, 5, {{2, one}}},
                                                {3, 5, {{3, Rational(-1)}}}}
                              : std::vector<Br>{{1, 4, {{1, Rational(-2)}}},
                                                {2, 4, {{2, one}}},
                                                {3, 4, {{3, one}}},
                                                {2, 5, {{3, Rational(-1)}}},
                                                {3, 5, {{2, one}}}};
    auto L = make_algebra(family, default_labels(5), brs);
    CatalogEntry e = base_entry(family, params, family, L);
    e.contact = d18 ? covectors(5, {{1, 1}, {2, 1}, {3, 1}}) : covectors(5, {{1, 1}, {2, 1}});
    e.split = semidirect_split(L, units(5, {1, 2, 3}), units(5, {4, 5}));
    ClosedForm db(3, 3);
    if (d18) {
      db(0, 0) = E::exp(0, -1);
      db(1, 1) = E::exp(1, -1);
      db(2, 2) = E::exp(0, 1) * E::exp(1, 1);
    } else {
      db(0, 0) = E::exp(0, 2);
      db(1, 1) = E::exp(0, -1) * E::cos(1, 1);
      db(1, 2) = -(E::exp(0, -1) * E::sin(1, 1));
      db(2, 1) = E::exp(0, -1) * E::sin(1, 1);
      db(2, 2) = E::exp(0, -1) * E::cos(1, 1);
      e.notes.push_back("contact form e1* + e2*; e1* and e2* alone are degenerate");
    }
    e.closed_form = db;
    e.nilradical = Subspace(5, units(5, {1, 2, 3}));
    e.lattice = LatticeStatus::Exists;
    return e;
  }
  throw UnknownEntry("unknown catalog entry '" + family + "'");
}

}  // namespace

const std::vector<std::string>& d_list() {
  static const std::vector<std::string> names{"D1", "D2",  "D3",  "D4",  "D5",  "D8",
                                              "D10", "D11", "D13", "D15", "D18", "D20"};
  return names;
}

CatalogEntry heisenberg(std::size_t n) {
  if (n < 1) throw InvalidParameter("H: n >= 1 required");
  const std::size_t dim = 2 * n + 1;
  std::vector<Br> brs;
  for (std::size_t k = 2; k <= n + 1; ++k) brs.push_back({k, n + k, {{1, Rational(1)}}});
  const std::string name = format_name("H", {{"n", Rational(static_cast<long>(n))}});
  auto L = make_algebra(name, default_labels(dim), brs);
  CatalogEntry e = base_entry("H", {{"n", Rational(static_cast<long>(n))}}, name, L);
  e.contact = covectors(dim, {{1, 1}});
  e.split = trivial_split(L);
  e.nilradical = Subspace::whole(dim);
  KForm omega1(2 * n, 2);
  for (std::size_t k = 0; k < n; ++k) omega1.add({k, n + k}, 1);
  e.central = central_data(name, {}, omega1, {}, {});
  e.central->base = std::make_shared<const LieAlgebra>(LieAlgebra("R^" + std::to_string(2 * n), default_labels(2 * n, 2), {}));
  e.central->base_split = trivial_split(e.central->base);
  e.expected.nilpotent = true;
  e.lattice = LatticeStatus::Exists;
  return e;
}

CatalogEntry heisenberg_times_line(std::size_t n) {
  if (n < 1) throw InvalidParameter("HR: n >= 1 required");
  const std::size_t dim = 2 * n + 2;
  std::vector<Br> brs;
  for (std::size_t k = 2; k <= n + 1; ++k) brs.push_back({k, n + k, {{1, Rational(1)}}});
  const std::string name = format_name("HR", {{"n", Rational(static_cast<long>(n))}});
  auto L = make_algebra(name, default_labels(dim), brs);
  CatalogEntry e = base_entry("HR", {{"n", Rational(static_cast<long>(n))}}, name, L);
  if (n == 1) e.symplectic = two_form(4, {{0, 2, 1}, {3, 1, 1}});
  e.split = trivial_split(L);
  e.nilradical = Subspace::whole(dim);
  e.expected.nilpotent = true;
  e.lattice = LatticeStatus::Exists;
  return e;
}

CatalogEntry sa_algebra(std::size_t n) {
  if (n < 2) throw InvalidParameter("SA: n >= 2 required");
  // Basis: off-diagonal e_ij (i != j <= n), h_i = e_ii - e_{i+1,i+1}, translations e_{i,n+1}.
  const std::size_t N = n + 1;
  std::vector<std::string> labels;
  std::vector<MatrixQ> mats;
  auto label = [&](std::size_t i, std::size_t j) {
    return N <= 9 ? "e" + std::to_string(i) + std::to_string(j) : "e" + std::to_string(i) + "," + std::to_string(j);
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> offdiag;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      if (i == j) continue;
      MatrixQ m(N, N);
      m(i - 1, j - 1) = 1;
      offdiag[{i, j}] = mats.size();
      mats.push_back(m);
      labels.push_back(label(i, j));
    }
  const std::size_t h0 = mats.size();
  for (std::size_t i = 1; i < n; ++i) {
    MatrixQ m(N, N);
    m(i - 1, i - 1) = 1;
    m(i, i) = -1;
    mats.push_back(m);
    labels.push_back("h" + std::to_string(i));
  }
  const std::size_t v0 = mats.size();
  for (std::size_t i = 1; i <= n; ++i) {
    MatrixQ m(N, N);
    m(i - 1, n) = 1;
    offdiag[{i, N}] = mats.size();
    mats.push_back(m);
    labels.push_back(label(i, N));
  }
  const std::size_t dim = mats.size();
  auto coords = [&](const MatrixQ& m) {
    VecQ v(dim, Rational(0));
    for (const auto& [ij, idx] : offdiag) v[idx] = m(ij.first - 1, ij.second - 1);
    Rational running = 0;
    for (std::size_t i = 1; i < n; ++i) {
      running += m(i - 1, i - 1);
      v[h0 + i - 1] = running;
    }
    return v;
  };
  std::vector<StructureConstant> sc;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b) {
      const VecQ c = coords(commutator(mats[a], mats[b]));
      for (std::size_t k = 0; k < dim; ++k)
        if (sgn(c[k]) != 0) sc.push_back({a, b, k, c[k]});
    }
  const std::string name = format_name("SA", {{"n", Rational(static_cast<long>(n))}});
  auto L = std::make_shared<const LieAlgebra>(name, labels, sc);
  CatalogEntry e = base_entry("SA", {{"n", Rational(static_cast<long>(n))}}, name, L);
  VecQ eta(dim, Rational(0));
  for (std::size_t i = 1; i <= n; ++i) eta[offdiag.at({i, i + 1})] = 1;
  e.contact = KForm::linear(eta);
  std::vector<VecQ> radical;
  for (std::size_t i = v0; i < dim; ++i) radical.push_back(unit(dim, i));
  e.nilradical = Subspace(dim, radical);
  e.expected.solvable = false;
  e.lattice = LatticeStatus::OutOfScope;
  e.notes.push_back("Reeb vector sum_i 2i/(n(n+1)) e_{i,i+1}; (1/n) sum e_{i,i+1} is not in ker d eta");
  e.notes.push_back("uniform-lattice nonexistence rests on non-cocompactness of SL(n,Z); not verified here");
  return e;
}

CatalogEntry sy_algebra(const Rational& a1, const Rational& a2) {
  const Rational a3 = a1 + a2;
  const Rational a[3] = {a1, a2, a3};
  // A = 1, X_j = 2..4, Z_j = 5..7
  std::vector<Br> brs{{2, 3, {{4, Rational(1)}}}, {5, 6, {{7, Rational(1)}}}};
  for (std::size_t j = 0; j < 3; ++j) {
    if (sgn(a[j]) != 0) {
      brs.push_back({1, 2 + j, {{2 + j, a[j]}}});
      brs.push_back({1, 5 + j, {{5 + j, Rational(-a[j])}}});
    }
  }
  const std::string name = format_name("SY", {{"a1", a1}, {"a2", a2}});
  auto L = make_algebra(name, {"A", "X1", "X2", "X3", "Z1", "Z2", "Z3"}, brs);
  CatalogEntry e = base_entry("SY", {{"a1", a1}, {"a2", a2}}, name, L);
  e.split = semidirect_split(L, units(7, {2, 3, 4, 5, 6, 7}), units(7, {1}));
  e.closed_form = diag_exp({a1, a2, a3, Rational(-a1), Rational(-a2), Rational(-a3)});
  e.nilradical = (sgn(a1) == 0 && sgn(a2) == 0) ? Subspace::whole(7) : Subspace(7, units(7, {2, 3, 4, 5, 6, 7}));
  e.expected.nilpotent = sgn(a1) == 0 && sgn(a2) == 0;
  e.lattice = (is_integer(a1) && is_integer(a2)) ? LatticeStatus::Exists : LatticeStatus::OutOfScope;
  return e;
}

CatalogEntry get(const std::string& family, const Params& params) {
  if (family == "H" || family == "HR" || family == "SA") {
    require_params(family, params, {"n"});
    const std::size_t n = size_param(family, params, "n", family == "SA" ? 2 : 1, family == "SA" ? 2 : 1);
    if (family == "H") return heisenberg(n);
    if (family == "HR") return heisenberg_times_line(n);
    return sa_algebra(n);
  }
  if (family == "SY") {
    require_params(family, params, {"a1", "a2"});
    return sy_algebra(param(params, "a1", 1), param(params, "a2", 1));
  }
  return build_d(family, params);
}

std::pair<std::string, Params> parse_entry_spec(const std::string& spec) {
  const auto open = spec.find('(');
  if (open == std::string::npos) return {spec, {}};
  if (spec.back() != ')') throw InvalidParameter("malformed entry spec '" + spec + "'");
  std::string family = spec.substr(0, open);
  Params params;
  std::stringstream ss(spec.substr(open + 1, spec.size() - open - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidParameter("malformed parameter '" + item + "'");
    try {
      params[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw InvalidParameter("malformed parameter value '" + item + "'");
    }
  }
  return {family, params};
}

CatalogEntry get_by_spec(const std::string& spec) {
  auto [family, params] = parse_entry_spec(spec);
  return get(family, params);
}

std::vector<CatalogEntry> d_entries() {
  std::vector<CatalogEntry> out;
  for (const auto& n : d_list()) out.push_back(get(n));
  return out;
}

std::vector<CatalogEntry> all_entries() {
  std::vector<CatalogEntry> out = d_entries();
  for (std::size_t n = 1; n <= 3; ++n) out.push_back(heisenberg(n));
  out.push_back(heisenberg_times_line(1));
  out.push_back(sa_algebra(2));
  out.push_back(sa_algebra(3));
  out.push_back(sy_algebra(1, 1));
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form consistency

namespace {

MatrixQ beta_at(const SplitData& s, const VecQ& t) {
  MatrixQ b(s.n_dim(), s.n_dim());
  for (std::size_t a = 0; a < s.t_dim(); ++a) b += s.beta[a] * t[a];
  return b;
}

std::string point_string(const VecQ& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + to_string(t[i]);
  return s;
}

std::vector<VecQ> sample_points(std::size_t k, const std::vector<Rational>& values) {
  std::vector<VecQ> pts{VecQ{}};
  for (std::size_t a = 0; a < k; ++a) {
    std::vector<VecQ> next;
    for (const auto& p : pts)
      for (const auto& v : values) {
        VecQ q = p;
        q.push_back(v);
        next.push_back(q);
      }
    pts = std::move(next);
  }
  return pts;
}

}  // namespace

Report appendix_consistency(const CatalogEntry& e, double tol) {
  if (!e.closed_form) {
    Report r;
    r.subject = e.name;
    r.skip("appendix", e.split && e.split->t_dim() == 0 ? "T = (0): nothing to exponentiate" : "no closed form");
    if (e.split) r.add("beta_derivation", split_violations(*e.split).empty());
    return r;
  }
  return appendix_consistency(e, *e.closed_form, tol);
}

Report appendix_consistency(const CatalogEntry& e, const ClosedForm& claimed, double tol) {
  Report r;
  r.subject = e.name;
  if (!e.split) {
    r.add("split_present", false, "entry has no split data");
    return r;
  }
  const SplitData& s = *e.split;
  const auto bad = split_violations(s);
  r.add("beta_derivation", bad.empty(), bad.empty() ? "" : bad.front());
  if (claimed.rows() != s.n_dim() || claimed.cols() != s.n_dim()) {
    r.add("closed_form_shape", false, "closed form is not " + std::to_string(s.n_dim()) + "x" + std::to_string(s.n_dim()));
    return r;
  }
  const std::size_t k = s.t_dim();
  bool commuting = true;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) commuting = commuting && commute(s.beta[a], s.beta[b]);
  r.add("beta_commute", commuting);

  // (ii) exact symbolic identity
  std::optional<ClosedForm> symbolic = closed_form_from(MatrixQ::identity(s.n_dim()));
  for (std::size_t a = 0; a < k && symbolic; ++a) {
    auto f = symbolic_exp(s.beta[a], a);
    if (!f)
      symbolic.reset();
    else
      *symbolic = *symbolic * *f;
  }
  if (symbolic && commuting) {
    std::string where;
    for (std::size_t i = 0; i < s.n_dim() && where.empty(); ++i)
      for (std::size_t j = 0; j < s.n_dim() && where.empty(); ++j)
        if (!((*symbolic)(i, j) == claimed(i, j)))
          where = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): claimed " +
                  to_string(claimed(i, j)) + ", exp gives " + to_string((*symbolic)(i, j));
    r.add("exact_closed_form", where.empty(), where);
  } else {
    r.skip("exact_closed_form", "spectrum has no rational closed form");
  }

  // exact values: nilpotent part at t in {1, 2}; quarter turns at t in {pi/2, pi}
  if (k == 1) {
    const JordanChevalley jc = jordan_chevalley(s.beta[0]);
    if (!jc.n.is_zero()) {
      auto inv_s = symbolic_exp(-jc.s, 0);
      if (inv_s) {
        const ClosedForm unip = claimed * *inv_s;
        for (const Rational& t : {Rational(1), Rational(2)}) {
          bool ok = true;
          std::string detail;
          const MatrixQ expect = exp_nilpotent(jc.n * t);
          for (std::size_t i = 0; i < s.n_dim() && ok; ++i)
            for (std::size_t j = 0; j < s.n_dim() && ok; ++j) {
              auto v = unip(i, j).evaluate_exact({t});
              if (!v || *v != expect(i, j)) {
                ok = false;
                detail = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") of db(t) exp(-t beta_s)";
              }
            }
          r.add("exact_nilpotent_part[t=" + to_string(t) + "]", ok, detail);
        }
      }
    }
    const MatrixQ& b = jc.s;
    if (!b.is_zero() && (b * b * b + b).is_zero()) {
      for (long q : {1L, 2L}) {
        // exp(theta S) = I + sin(theta) S + (1 - cos(theta)) S^2 for S^3 = -S
        const MatrixQ es = MatrixQ::identity(s.n_dim()) + b * quarter_turn_sin(q) + b * b * Rational(1 - quarter_turn_cos(q));
        const Rational c = make_rational(q, 2);
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < s.n_dim() && ok; ++i)
          for (std::size_t j = 0; j < s.n_dim() && ok; ++j) {
            auto v = claimed(i, j).evaluate_quarter_turn({c});
            if (!v) {
              ok = false;
              detail = "entry not exactly evaluable at quarter turns";
              continue;
            }
            // compare the pi^0 part with exp(theta S); pi-dependent parts come from N
            if (v->constant_term() != es(i, j) && jc.n.is_zero()) {
              ok = false;
              detail = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            }
          }
        if (!jc.n.is_zero()) {
          // full comparison: exp(theta beta) = exp(theta S) exp(theta N) with theta N in Q[pi]
          Matrix<UnitPoly<Rational>> en(s.n_dim(), s.n_dim());
          const MatrixQ nn = jc.n;
          Matrix<UnitPoly<Rational>> term = Matrix<UnitPoly<Rational>>::identity(s.n_dim());
          const Matrix<UnitPoly<Rational>> step =
              nn.map([&](const Rational& x) { return UnitPoly<Rational>::monomial(x * c, 1); });
          for (std::size_t j = 0; j < s.n_dim(); ++j) {
            en += term;
            term = term * step * UnitPoly<Rational>(Rational(1, static_cast<unsigned long>(j + 1)));
          }
          const auto full = es.map([](const Rational& x) { return UnitPoly<Rational>(x); }) * en;
          ok = true;
          detail.clear();
          for (std::size_t i = 0; i < s.n_dim() && ok; ++i)
            for (std::size_t j = 0; j < s.n_dim() && ok; ++j) {
              auto v = claimed(i, j).evaluate_quarter_turn({c});
              if (!v || !(*v == full(i, j))) {
                ok = false;
                detail = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
              }
            }
        }
        r.add("exact_quarter_turn[t=" + std::to_string(q) + "pi/2]", ok, detail);
      }
    }
  }

  // (iii) numeric
  for (const auto& t : sample_points(k, {Rational(1, 2), Rational(1), Rational(2)})) {
    std::vector<double> td;
    for (const auto& v : t) td.push_back(v.get_d());
    try {
      const Matrix<double> num = exp_numeric(to_double_matrix(beta_at(s, t)), tol);
      const Matrix<double> cf = evaluate<double>(claimed, td);
      double worst = 0;
      for (std::size_t i = 0; i < num.rows(); ++i)
        for (std::size_t j = 0; j < num.cols(); ++j)
          worst = std::max(worst, std::fabs(num(i, j) - cf(i, j)) / std::max(1.0, std::fabs(num(i, j))));
      r.add("numeric[t=" + point_string(t) + "]", worst <= tol, "", worst);
    } catch (const NumericError& ex) {
      r.add("numeric[t=" + point_string(t) + "]", false, ex.what());
    }
  }
  return r;
}

Report verify_entry(const CatalogEntry& e, double tol) {
  Report r;
  r.subject = e.name;
  const LieAlgebra& L = *e.algebra;
  const auto jac = check_jacobi(L);
  std::string jd;
  if (!jac.empty())
    jd = "triple (" + std::to_string(jac[0].i + 1) + "," + std::to_string(jac[0].j + 1) + "," +
         std::to_string(jac[0].k + 1) + ")";
  r.add("jacobi", jac.empty(), jd);
  const bool uni = is_unimodular(L);
  r.add("unimodular", uni == e.expected.unimodular, uni ? "unimodular" : "not unimodular");
  const bool sol = is_solvable(L);
  r.add("solvable", sol == e.expected.solvable, sol ? "solvable" : "not solvable");
  const bool nil = is_nilpotent(L);
  r.add("nilpotent", nil == e.expected.nilpotent, nil ? "nilpotent" : "not nilpotent");
  if (e.contact) {
    const Rational vol = contact_volume(L, *e.contact);
    r.add("contact", sgn(vol) != 0, "eta^(d eta)^n = " + to_string(vol) + " vol");
    if (sgn(vol) != 0) {
      const VecQ xi = reeb_vector(L, *e.contact);
      const bool ok = interior_product(xi, ce_differential(L, *e.contact)).is_zero() &&
                      e.contact->evaluate({xi}) == 1;
      r.add("reeb", ok);
    }
  }
  if (e.symplectic) r.add("symplectic", is_symplectic(L, *e.symplectic));
  if (e.expected.solvable) {
    const auto nr = verify_nilradical(L, e.nilradical);
    for (const auto& c : nr.checks) r.add("nilradical." + c.name, c.passed, c.detail);
  } else {
    r.add("nilradical.radical_ideal", is_ideal(L, e.nilradical) && is_nilpotent(L, e.nilradical),
          "abelian radical of the non-solvable entry");
    const auto ds = derived_series(L);
    r.add("derived_series_stabilizes_nonzero", !ds.back().is_zero(),
          "stabilizes at dimension " + std::to_string(ds.back().rank()));
  }
  if (e.central) {
    const auto& c = *e.central;
    bool ok = false;
    std::string detail;
    try {
      LieAlgebra ext = central_extend(*c.base, c.omega, L.labels()[c.central_index], c.central_index);
      ok = ext.same_structure(L);
      if (!ok) detail = "b x_omega R differs from the bracket table";
    } catch (const std::exception& ex) {
      detail = ex.what();
    }
    r.add("central_extension", ok, detail);
  }
  if (e.split) r.merge(appendix_consistency(e, tol), "appendix");
  return r;
}

// ---------------------------------------------------------------------------
// Heisenberg group

namespace {

Rational dot(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) throw DimensionMismatch("Heisenberg: dimension mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

VecQ add(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) throw DimensionMismatch("Heisenberg: dimension mismatch");
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

VecQ neg(const VecQ& a) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

void check_point(const HeisenbergPoint& p) {
  if (p.x.size() != p.y.size()) throw DimensionMismatch("Heisenberg point: |x| != |y|");
}

}  // namespace

HeisenbergPoint heisenberg_identity(std::size_t n) { return {VecQ(n, Rational(0)), VecQ(n, Rational(0)), 0}; }

HeisenbergPoint heisenberg_mul(const HeisenbergPoint& p, const HeisenbergPoint& q) {
  check_point(p);
  check_point(q);
  return {add(p.x, q.x), add(p.y, q.y), p.z + q.z + dot(p.x, q.y)};
}

HeisenbergPoint heisenberg_inverse(const HeisenbergPoint& p) {
  check_point(p);
  return {neg(p.x), neg(p.y), -p.z + dot(p.x, p.y)};
}

HeisenbergPoint heisenberg_exp(const HeisenbergVector& v) {
  return {v.a, v.b, v.c + dot(v.a, v.b) / 2};
}

HeisenbergVector heisenberg_ln(const HeisenbergPoint& p) {
  check_point(p);
  return {p.x, p.y, p.z - dot(p.x, p.y) / 2};
}

MatrixQ heisenberg_matrix(const HeisenbergPoint& p) {
  check_point(p);
  const std::size_t n = p.n();
  MatrixQ m = MatrixQ::identity(n + 2);
  for (std::size_t k = 0; k < n; ++k) {
    m(0, k + 1) = p.x[k];
    m(k + 1, n + 1) = p.y[k];
  }
  m(0, n + 1) = p.z;
  return m;
}

HeisenbergPoint heisenberg_left_translate(const HeisenbergPoint& p, const HeisenbergVector& v) {
  // d/ds p * (s a, s b, s c) = (a, b, c + x.b)
  return {v.a, v.b, v.c + dot(p.x, v.b)};
}

Rational heisenberg_contact_form_at(const HeisenbergPoint& p, const HeisenbergPoint& velocity) {
  return velocity.z - dot(p.x, velocity.y);
}

VecQ heisenberg_coordinates(const HeisenbergVector& v) {
  VecQ c{v.c};
  c.insert(c.end(), v.a.begin(), v.a.end());
  c.insert(c.end(), v.b.begin(), v.b.end());
  return c;
}

Report integer_lattice_check(std::size_t n, long z_denominator) {
  if (z_denominator <= 0) throw std::invalid_argument("integer_lattice_check: denominator must be positive");
  Report r;
  r.subject = "H^" + std::to_string(2 * n + 1) + " lattice (x,y in Z, z in Z/" + std::to_string(z_denominator) + ")";
  auto member = [&](const HeisenbergPoint& p) {
    for (const auto& v : p.x)
      if (!is_integer(v)) return false;
    for (const auto& v : p.y)
      if (!is_integer(v)) return false;
    return is_integer(p.z * z_denominator);
  };
  std::vector<HeisenbergPoint> gens;
  for (std::size_t k = 0; k < n; ++k) {
    HeisenbergPoint gx = heisenberg_identity(n), gy = heisenberg_identity(n);
    gx.x[k] = 1;
    gy.y[k] = 1;
    gens.push_back(gx);
    gens.push_back(gy);
  }
  HeisenbergPoint gz = heisenberg_identity(n);
  gz.z = Rational(1, static_cast<unsigned long>(z_denominator));
  gens.push_back(gz);
  const std::size_t g = gens.size();
  for (std::size_t i = 0; i < g; ++i) gens.push_back(heisenberg_inverse(gens[i]));
  bool gen_ok = true;
  for (const auto& a : gens) {
    gen_ok = gen_ok && member(a) && member(heisenberg_inverse(a));
    for (const auto& b : gens) gen_ok = gen_ok && member(heisenberg_mul(a, b));
  }
  r.add("generator_closure", gen_ok);
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> d(-20, 20);
  bool rand_ok = true;
  for (int trial = 0; trial < 200; ++trial) {
    HeisenbergPoint p = heisenberg_identity(n), q = heisenberg_identity(n);
    for (std::size_t k = 0; k < n; ++k) {
      p.x[k] = d(rng);
      p.y[k] = d(rng);
      q.x[k] = d(rng);
      q.y[k] = d(rng);
    }
    p.z = Rational(d(rng), static_cast<unsigned long>(z_denominator));
    q.z = Rational(d(rng), static_cast<unsigned long>(z_denominator));
    p.z.canonicalize();
    q.z.canonicalize();
    rand_ok = rand_ok && member(heisenberg_mul(p, q)) && member(heisenberg_inverse(p)) &&
              heisenberg_mul(p, heisenberg_inverse(p)) == heisenberg_identity(n);
  }
  r.add("random_products", rand_ok);
  return r;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string rat(const Rational& q) { return q.get_str() + (is_integer(q) ? "/1" : ""); }

std::string index_list(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s;
}

/// Index of the unit vector v, if it is one.
std::optional<std::size_t> unit_index(const VecQ& v) {
  std::optional<std::size_t> idx;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    if (v[i] != 1 || idx) return std::nullopt;
    idx = i;
  }
  return idx;
}

}  // namespace

std::string write_catalog(const std::vector<CatalogEntry>& entries) {
  std::ostringstream os;
  os << "# Catalog of contact Lie algebras. Indices are 1-based.\n";
  os << "# bracket i j -> k:c ... means [e_i, e_j] = sum c e_k.\n";
  for (const auto& e : entries) {
    const LieAlgebra& L = *e.algebra;
    os << "\nalgebra " << e.name << " dim=" << L.dim() << "\n";
    if (L.labels() != default_labels(L.dim())) {
      os << "labels";
      for (const auto& l : L.labels()) os << " " << l;
      os << "\n";
    }
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rational>>> rows;
    for (const auto& sc : L.constants()) rows[{sc.i, sc.j}].push_back({sc.k, sc.c});
    for (const auto& [ij, outs] : rows) {
      os << "bracket " << ij.first + 1 << " " << ij.second + 1 << " ->";
      for (const auto& [k, c] : outs) os << " " << k + 1 << ":" << rat(c);
      os << "\n";
    }
    if (e.contact) {
      os << "contact";
      for (const auto& [m, c] : e.contact->terms()) os << " " << __builtin_ctz(m) + 1 << ":" << rat(c);
      os << "\n";
    }
    if (e.split && unit_index(VecQ(L.dim(), Rational(0))) == std::nullopt) {
      std::vector<std::size_t> ni, ti;
      bool standard = true;
      for (const auto& v : e.split->n_basis) {
        auto u = unit_index(v);
        standard = standard && u.has_value();
        if (u) ni.push_back(*u);
      }
      for (const auto& v : e.split->t_basis) {
        auto u = unit_index(v);
        standard = standard && u.has_value();
        if (u) ti.push_back(*u);
      }
      if (standard) {
        os << "split n=" << index_list(ni) << " t=" << index_list(ti) << "\n";
        for (std::size_t g = 0; g < e.split->t_dim(); ++g)
          for (std::size_t i = 0; i < e.split->n_dim(); ++i)
            for (std::size_t j = 0; j < e.split->n_dim(); ++j)
              if (sgn(e.split->beta[g](i, j)) != 0)
                os << "beta " << g + 1 << " " << i + 1 << " " << j + 1 << " " << rat(e.split->beta[g](i, j)) << "\n";
      }
    }
    os << "flag unimodular=" << (e.expected.unimodular ? "true" : "false") << "\n";
    os << "flag solvable=" << (e.expected.solvable ? "true" : "false") << "\n";
    os << "flag nilpotent=" << (e.expected.nilpotent ? "true" : "false") << "\n";
    os << "flag lattice=" << to_string(e.lattice) << "\n";
    for (const auto& note : e.notes) os << "# note: " << note << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::size_t parse_index(const std::string& s, std::size_t dim, std::size_t line) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    throw CatalogParseError(line, "expected an index, got '" + s + "'");
  }
  if (pos != s.size()) throw CatalogParseError(line, "expected an index, got '" + s + "'");
  if (v < 1 || v > dim) throw CatalogParseError(line, "index " + s + " out of range 1.." + std::to_string(dim));
  return v - 1;
}

Rational parse_coeff(const std::string& s, std::size_t line) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument&) {
    throw CatalogParseError(line, "malformed rational '" + s + "'");
  }
}

std::pair<std::size_t, Rational> parse_pair(const std::string& s, std::size_t dim, std::size_t line) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw CatalogParseError(line, "expected <index>:<num>/<den>, got '" + s + "'");
  return {parse_index(s.substr(0, colon), dim, line), parse_coeff(s.substr(colon + 1), line)};
}

std::vector<std::size_t> parse_index_list(const std::string& s, std::size_t dim, std::size_t line) {
  std::vector<std::size_t> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_index(item, dim, line));
  return out;
}

struct Pending {
  CatalogRecord rec;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<StructureConstant> sc;
  std::vector<std::pair<std::size_t, Rational>> contact;
  bool has_contact = false;
  bool has_split = false;
};

CatalogRecord finish(Pending& p) {
  if (p.labels.empty()) p.labels = default_labels(p.dim);
  p.rec.algebra = std::make_shared<const LieAlgebra>(p.rec.name, p.labels, p.sc);
  if (p.has_contact) {
    VecQ c(p.dim, Rational(0));
    for (const auto& [i, q] : p.contact) c[i] += q;
    p.rec.contact = KForm::linear(c);
  }
  return std::move(p.rec);
}

}  // namespace

std::vector<CatalogRecord> parse_catalog(std::istream& in) {
  std::vector<CatalogRecord> out;
  std::optional<Pending> cur;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const auto words = split_ws(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (words.empty()) continue;
    const std::string& kw = words[0];
    if (kw == "algebra") {
      if (cur) out.push_back(finish(*cur));
      if (words.size() != 3 || words[2].rfind("dim=", 0) != 0)
        throw CatalogParseError(line, "expected 'algebra <name> dim=<n>'");
      cur.emplace();
      cur->rec.line = line;
      cur->rec.name = words[1];
      try {
        cur->dim = std::stoul(words[2].substr(4));
      } catch (const std::exception&) {
        throw CatalogParseError(line, "malformed dimension");
      }
      if (cur->dim == 0 || cur->dim > kMaxFormDim) throw CatalogParseError(line, "dimension out of range");
      continue;
    }
    if (!cur) throw CatalogParseError(line, "'" + kw + "' before any 'algebra' line");
    const std::size_t dim = cur->dim;
    if (kw == "labels") {
      if (words.size() != dim + 1) throw CatalogParseError(line, "expected " + std::to_string(dim) + " labels");
      cur->labels.assign(words.begin() + 1, words.end());
    } else if (kw == "bracket") {
      if (words.size() < 5 || words[3] != "->") throw CatalogParseError(line, "expected 'bracket <i> <j> -> <k>:<c> ...'");
      const std::size_t i = parse_index(words[1], dim, line), j = parse_index(words[2], dim, line);
      if (i == j) throw CatalogParseError(line, "bracket of a basis vector with itself");
      for (std::size_t w = 4; w < words.size(); ++w) {
        auto [k, c] = parse_pair(words[w], dim, line);
        cur->sc.push_back({i, j, k, c});
      }
    } else if (kw == "contact") {
      cur->has_contact = true;
      for (std::size_t w = 1; w < words.size(); ++w) cur->contact.push_back(parse_pair(words[w], dim, line));
    } else if (kw == "split") {
      if (words.size() != 3 || words[1].rfind("n=", 0) != 0 || words[2].rfind("t=", 0) != 0)
        throw CatalogParseError(line, "expected 'split n=<i,...> t=<i,...>'");
      cur->rec.split_n = parse_index_list(words[1].substr(2), dim, line);
      cur->rec.split_t = parse_index_list(words[2].substr(2), dim, line);
      const std::size_t m = cur->rec.split_n.size();
      cur->rec.beta.assign(cur->rec.split_t.size(), MatrixQ(m, m));
      cur->has_split = true;
    } else if (kw == "beta") {
      if (!cur->has_split) throw CatalogParseError(line, "'beta' before 'split'");
      if (words.size() != 5) throw CatalogParseError(line, "expected 'beta <gen> <row> <col> <num>/<den>'");
      const std::size_t g = parse_index(words[1], cur->rec.split_t.size(), line);
      const std::size_t m = cur->rec.split_n.size();
      const std::size_t i = parse_index(words[2], m, line), j = parse_index(words[3], m, line);
      cur->rec.beta[g](i, j) = parse_coeff(words[4], line);
    } else if (kw == "flag") {
      if (words.size() != 2 || words[1].find('=') == std::string::npos)
        throw CatalogParseError(line, "expected 'flag <key>=<value>'");
      const auto eq = words[1].find('=');
      const std::string key = words[1].substr(0, eq), value = words[1].substr(eq + 1);
      if (key == "lattice") {
        if (!parse_lattice_status(value)) throw CatalogParseError(line, "unknown lattice status '" + value + "'");
      } else if (key == "unimodular" || key == "solvable" || key == "nilpotent") {
        if (value != "true" && value != "false") throw CatalogParseError(line, key + " must be true or false");
      } else {
        throw CatalogParseError(line, "unknown flag '" + key + "'");
      }
      if (!cur->rec.flags.emplace(key, value).second) throw CatalogParseError(line, "duplicate flag '" + key + "'");
    } else {
      throw CatalogParseError(line, "unknown directive '" + kw + "'");
    }
  }
  if (cur) out.push_back(finish(*cur));
  return out;
}

std::vector<CatalogRecord> parse_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file '" + path + "'");
  return parse_catalog(in);
}

Report verify_record(const CatalogRecord& r) {
  Report rep;
  rep.subject = r.name + " (line " + std::to_string(r.line) + ")";
  const LieAlgebra& L = *r.algebra;
  const auto jac = check_jacobi(L);
  rep.add("jacobi", jac.empty(),
          jac.empty() ? "" : "line " + std::to_string(r.line) + ": triple (" + std::to_string(jac[0].i + 1) + "," +
                                 std::to_string(jac[0].j + 1) + "," + std::to_string(jac[0].k + 1) + ")");
  auto flag = [&](const std::string& key, bool actual) {
    auto it = r.flags.find(key);
    if (it == r.flags.end()) return;
    const bool claimed = it->second == "true";
    rep.add(key, claimed == actual,
            claimed == actual ? "" : "line " + std::to_string(r.line) + ": flag " + key + "=" + it->second + " but computed " + (actual ? "true" : "false"));
  };
  flag("unimodular", is_unimodular(L));
  flag("solvable", is_solvable(L));
  flag("nilpotent", is_nilpotent(L));
  if (r.contact) {
    bool ok = false;
    try {
      ok = is_contact(L, *r.contact);
    } catch (const std::exception&) {
    }
    rep.add("contact", ok, ok ? "" : "line " + std::to_string(r.line) + ": contact form degenerate");
  }
  if (!r.split_n.empty() || !r.split_t.empty()) {
    auto shared = r.algebra;
    SplitData s{shared, {}, {}, r.beta};
    for (auto i : r.split_n) s.n_basis.push_back(unit(L.dim(), i));
    for (auto i : r.split_t) s.t_basis.push_back(unit(L.dim(), i));
    const auto bad = split_violations(s);
    rep.add("split", bad.empty(), bad.empty() ? "" : "line " + std::to_string(r.line) + ": " + bad.front());
  }
  return rep;
}

bool record_matches(const CatalogRecord& r, const CatalogEntry& e, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (r.name != e.name) return fail("name");
  if (!r.algebra->same_structure(*e.algebra) || r.algebra->labels() != e.algebra->labels()) return fail("brackets");
  if (r.contact.has_value() != e.contact.has_value() || (r.contact && !(*r.contact == *e.contact)))
    return fail("contact");
  if (e.split) {
    if (r.split_n.size() != e.split->n_dim() || r.split_t.size() != e.split->t_dim()) return fail("split");
    for (std::size_t i = 0; i < r.split_n.size(); ++i)
      if (unit(e.algebra->dim(), r.split_n[i]) != e.split->n_basis[i]) return fail("split n");
    for (std::size_t i = 0; i < r.split_t.size(); ++i)
      if (unit(e.algebra->dim(), r.split_t[i]) != e.split->t_basis[i]) return fail("split t");
    for (std::size_t g = 0; g < r.beta.size(); ++g)
      if (!(r.beta[g] == e.split->beta[g])) return fail("beta");
  } else if (!r.split_n.empty()) {
    return fail("split");
  }
  auto flag = [&](const std::string& k) {
    auto it = r.flags.find(k);
    return it == r.flags.end() ? std::string() : it->second;
  };
  if (flag("unimodular") != (e.expected.unimodular ? "true" : "false")) return fail("flag unimodular");
  if (flag("solvable") != (e.expected.solvable ? "true" : "false")) return fail("flag solvable");
  if (flag("nilpotent") != (e.expected.nilpotent ? "true" : "false")) return fail("flag nilpotent");
  if (flag("lattice") != to_string(e.lattice)) return fail("flag lattice");
  return true;
}

}  // namespace solvcontact
