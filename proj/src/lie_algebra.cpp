#include "solvcontact/lie_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "solvcontact/exterior.hpp"

namespace solvcontact {

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> labels,
                       const std::vector<StructureConstant>& constants)
    : name_(std::move(name)), labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  for (const auto& sc : constants) {
    if (sc.i >= n || sc.j >= n || sc.k >= n)
      throw std::out_of_range("structure constant index out of range in " + name_);
    if (sc.i == sc.j) {
      if (sgn(sc.c) != 0) throw std::invalid_argument("nonzero [e_i, e_i] in " + name_);
      continue;
    }
    const bool swap = sc.i > sc.j;
    auto& slot = table_[{std::min(sc.i, sc.j), std::max(sc.i, sc.j)}];
    auto [it, inserted] = slot.try_emplace(sc.k, 0);
    it->second += swap ? Rational(-sc.c) : sc.c;
    if (sgn(it->second) == 0) slot.erase(it);
  }
  for (auto it = table_.begin(); it != table_.end();) {
    if (it->second.empty())
      it = table_.erase(it);
    else
      ++it;
  }
  for (const auto& [ij, row] : table_)
    for (const auto& [k, c] : row) constants_.push_back({ij.first, ij.second, k, c});
}

LieAlgebra LieAlgebra::abelian(std::size_t n, std::string name) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  return LieAlgebra(std::move(name), std::move(labels), {});
}

std::optional<std::size_t> LieAlgebra::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::map<std::size_t, Rational> LieAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
  if (i == j) return {};
  auto it = table_.find({std::min(i, j), std::max(i, j)});
  if (it == table_.end()) return {};
  if (i < j) return it->second;
  std::map<std::size_t, Rational> neg;
  for (const auto& [k, c] : it->second) neg[k] = -c;
  return neg;
}

VecQ LieAlgebra::basis_vector(std::size_t i) const {
  VecQ v(dim(), Rational(0));
  v.at(i) = 1;
  return v;
}

std::vector<JacobiViolation> check_jacobi(const LieAlgebra& L) {
  std::vector<JacobiViolation> out;
  const std::size_t n = L.dim();
  std::vector<VecQ> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(L.basis_vector(i));
  auto br = [&](const VecQ& x, const VecQ& y) { return bracket(L, x, y); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        VecQ a = br(br(e[i], e[j]), e[k]);
        VecQ b = br(br(e[j], e[k]), e[i]);
        VecQ c = br(br(e[k], e[i]), e[j]);
        bool zero = true;
        for (std::size_t t = 0; t < n; ++t) {
          a[t] += b[t] + c[t];
          if (sgn(a[t]) != 0) zero = false;
        }
        if (!zero) out.push_back({i, j, k, a});
      }
  return out;
}

MatrixQ ad(const LieAlgebra& L, const VecQ& x) {
  if (x.size() != L.dim()) throw DimensionMismatch("ad: vector length != dim");
  const std::size_t n = L.dim();
  MatrixQ m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    VecQ col = bracket(L, x, L.basis_vector(j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

bool is_unimodular(const LieAlgebra& L) {
  for (std::size_t i = 0; i < L.dim(); ++i)
    if (sgn(ad(L, L.basis_vector(i)).trace()) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subspaces

Subspace::Subspace(std::size_t ambient_dim, const std::vector<VecQ>& generators) : ambient_(ambient_dim) {
  if (generators.empty()) return;
  MatrixQ m(generators.size(), ambient_dim);
  for (std::size_t r = 0; r < generators.size(); ++r) {
    if (generators[r].size() != ambient_dim) throw DimensionMismatch("subspace generator length");
    for (std::size_t c = 0; c < ambient_dim; ++c) m(r, c) = generators[r][c];
  }
  auto ech = row_reduce(std::move(m));
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    VecQ v(ambient_dim);
    for (std::size_t c = 0; c < ambient_dim; ++c) v[c] = ech.reduced(r, c);
    basis_.push_back(std::move(v));
  }
}

Subspace Subspace::whole(std::size_t ambient_dim) {
  std::vector<VecQ> gens;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    VecQ v(ambient_dim, Rational(0));
    v[i] = 1;
    gens.push_back(std::move(v));
  }
  return Subspace(ambient_dim, gens);
}

std::optional<VecQ> Subspace::coordinates(const VecQ& v) const {
  if (v.size() != ambient_) throw DimensionMismatch("subspace membership length");
  // RREF rows: the coordinate on row r is v at that row's pivot column.
  VecQ coords(basis_.size());
  VecQ residual = v;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    std::size_t piv = 0;
    while (sgn(basis_[r][piv]) == 0) ++piv;
    coords[r] = v[piv];
    for (std::size_t c = 0; c < ambient_; ++c) residual[c] -= coords[r] * basis_[r][c];
  }
  for (const auto& x : residual)
    if (sgn(x) != 0) return std::nullopt;
  return coords;
}

bool Subspace::contains(const VecQ& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& s) const {
  return std::all_of(s.basis_.begin(), s.basis_.end(), [&](const VecQ& v) { return contains(v); });
}

Subspace Subspace::operator+(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw DimensionMismatch("subspace sum");
  std::vector<VecQ> gens = basis_;
  gens.insert(gens.end(), o.basis_.begin(), o.basis_.end());
  return Subspace(ambient_, gens);
}

std::string to_string(const Subspace& s, const LieAlgebra& L) {
  if (s.is_zero()) return "(0)";
  std::ostringstream os;
  os << "<";
  for (std::size_t r = 0; r < s.rank(); ++r) {
    os << (r ? ", " : "");
    bool first = true;
    for (std::size_t c = 0; c < s.ambient_dim(); ++c) {
      const Rational& q = s.basis()[r][c];
      if (sgn(q) == 0) continue;
      if (!first) os << (sgn(q) > 0 ? "+" : "-");
      else if (sgn(q) < 0) os << "-";
      first = false;
      if (abs(q) != 1) os << to_string(Rational(abs(q))) << "*";
      os << L.labels()[c];
    }
  }
  os << ">";
  return os.str();
}

Subspace bracket_span(const LieAlgebra& L, const Subspace& A, const Subspace& B) {
  std::vector<VecQ> gens;
  for (const auto& a : A.basis())
    for (const auto& b : B.basis()) gens.push_back(bracket(L, a, b));
  return Subspace(L.dim(), gens);
}

std::vector<Subspace> derived_series(const LieAlgebra& L, const Subspace& S) {
  std::vector<Subspace> out{S};
  while (true) {
    Subspace next = bracket_span(L, out.back(), out.back());
    if (next == out.back()) break;
    out.push_back(std::move(next));
    if (out.back().is_zero()) break;
  }
  return out;
}

std::vector<Subspace> derived_series(const LieAlgebra& L) { return derived_series(L, Subspace::whole(L.dim())); }

std::vector<Subspace> lower_central_series(const LieAlgebra& L, const Subspace& S) {
  std::vector<Subspace> out{S};
  while (true) {
    Subspace next = bracket_span(L, out.back(), S);
    if (next == out.back()) break;
    out.push_back(std::move(next));
    if (out.back().is_zero()) break;
  }
  return out;
}

std::vector<Subspace> lower_central_series(const LieAlgebra& L) {
  return lower_central_series(L, Subspace::whole(L.dim()));
}

Subspace center(const LieAlgebra& L) {
  // x central iff ad(e_i) x = 0 for all i: stack the ad matrices.
  const std::size_t n = L.dim();
  MatrixQ stacked(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    MatrixQ a = ad(L, L.basis_vector(i));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(i * n + r, c) = a(r, c);
  }
  auto sol = solve_linear(stacked, VecQ(n * n, Rational(0)));
  return Subspace(n, sol.nullspace);
}

bool is_subalgebra(const LieAlgebra& L, const Subspace& S) { return S.contains(bracket_span(L, S, S)); }

bool is_ideal(const LieAlgebra& L, const Subspace& S) {
  return S.contains(bracket_span(L, Subspace::whole(L.dim()), S));
}

bool is_nilpotent(const LieAlgebra& L, const Subspace& S) { return lower_central_series(L, S).back().is_zero(); }

bool is_solvable(const LieAlgebra& L) { return derived_series(L).back().is_zero(); }

bool is_nilpotent(const LieAlgebra& L) { return lower_central_series(L).back().is_zero(); }

bool NilradicalReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

std::vector<std::string> NilradicalReport::failed() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

NilradicalReport verify_nilradical(const LieAlgebra& L, const Subspace& candidate) {
  NilradicalReport rep;
  const Subspace whole = Subspace::whole(L.dim());
  const bool ideal = is_ideal(L, candidate);
  rep.checks.push_back({"ideal", ideal, ideal ? "" : "[g, n] not contained in n"});
  const bool nil = is_nilpotent(L, candidate);
  rep.checks.push_back({"nilpotent", nil, nil ? "" : "lower central series of n does not reach (0)"});
  const Subspace derived = bracket_span(L, whole, whole);
  const bool contains_derived = candidate.contains(derived);
  rep.checks.push_back({"contains_derived", contains_derived,
                        contains_derived ? "" : "[g,g] = " + to_string(derived, L) + " not contained"});
  std::string extension;
  for (std::size_t i = 0; i < L.dim() && extension.empty(); ++i) {
    const VecQ e = L.basis_vector(i);
    if (candidate.contains(e)) continue;
    const Subspace bigger = candidate + Subspace(L.dim(), {e});
    if (is_ideal(L, bigger) && is_nilpotent(L, bigger))
      extension = "adjoining " + L.labels()[i] + " gives nilpotent ideal " + to_string(bigger, L);
  }
  rep.checks.push_back({"maximal", extension.empty(), extension});
  return rep;
}

// ---------------------------------------------------------------------------
// Semidirect splits

namespace {

/// Coordinates of v in the ordered basis `basis` (must be independent and contain v).
std::optional<VecQ> coordinates_in(const std::vector<VecQ>& basis, const VecQ& v) {
  if (basis.empty()) {
    for (const auto& x : v)
      if (sgn(x) != 0) return std::nullopt;
    return VecQ{};
  }
  MatrixQ m = MatrixQ::from_columns(basis, v.size());
  auto sol = solve_linear(m, v);
  if (!sol.particular) return std::nullopt;
  return sol.particular;
}

VecQ combine(const std::vector<VecQ>& basis, const VecQ& coords, std::size_t dim) {
  VecQ out(dim, Rational(0));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) out[i] += coords[j] * basis[j][i];
  return out;
}

}  // namespace

std::vector<std::string> split_violations(const SplitData& s) {
  std::vector<std::string> out;
  const LieAlgebra& L = *s.algebra;
  const std::size_t n = L.dim();
  const std::size_t m = s.n_dim();
  std::vector<VecQ> all = s.n_basis;
  all.insert(all.end(), s.t_basis.begin(), s.t_basis.end());
  if (all.size() != n || rank(MatrixQ::from_columns(all, n)) != n) out.push_back("n and T do not span g");
  if (s.beta.size() != s.t_dim()) out.push_back("one beta matrix per T generator required");
  const Subspace nsub(n, s.n_basis);
  if (!is_ideal(L, nsub)) out.push_back("n is not an ideal");
  for (std::size_t a = 0; a < s.t_dim(); ++a)
    for (std::size_t b = a + 1; b < s.t_dim(); ++b) {
      VecQ br = bracket(L, s.t_basis[a], s.t_basis[b]);
      if (std::any_of(br.begin(), br.end(), [](const Rational& q) { return sgn(q) != 0; }))
        out.push_back("T not abelian: [t" + std::to_string(a + 1) + ", t" + std::to_string(b + 1) + "] != 0");
    }
  if (!out.empty()) return out;
  for (std::size_t a = 0; a < s.t_dim(); ++a) {
    const MatrixQ& B = s.beta[a];
    if (B.rows() != m || B.cols() != m) {
      out.push_back("beta(t" + std::to_string(a + 1) + ") has wrong shape");
      continue;
    }
    // [t, n_j] = beta(t) n_j
    for (std::size_t j = 0; j < m; ++j) {
      VecQ img = bracket(L, s.t_basis[a], s.n_basis[j]);
      VecQ expect = combine(s.n_basis, B.column(j), n);
      if (img != expect)
        out.push_back("[t" + std::to_string(a + 1) + ", n" + std::to_string(j + 1) + "] != beta(t" +
                      std::to_string(a + 1) + ") n" + std::to_string(j + 1));
    }
    // derivation: beta[x,y] = [beta x, y] + [x, beta y]
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        VecQ xy = bracket(L, s.n_basis[i], s.n_basis[j]);
        auto c = coordinates_in(s.n_basis, xy);
        if (!c) continue;  // reported as non-ideal above
        VecQ lhs = combine(s.n_basis, B * *c, n);
        VecQ bx = combine(s.n_basis, B.column(i), n);
        VecQ by = combine(s.n_basis, B.column(j), n);
        VecQ rhs = bracket(L, bx, s.n_basis[j]);
        VecQ r2 = bracket(L, s.n_basis[i], by);
        for (std::size_t t = 0; t < n; ++t) rhs[t] += r2[t];
        if (lhs != rhs)
          out.push_back("beta(t" + std::to_string(a + 1) + ") is not a derivation on (n" + std::to_string(i + 1) +
                        ", n" + std::to_string(j + 1) + ")");
      }
  }
  return out;
}

SplitData semidirect_split(std::shared_ptr<const LieAlgebra> L, std::vector<VecQ> n_basis,
                           std::vector<VecQ> t_basis) {
  SplitData s{std::move(L), std::move(n_basis), std::move(t_basis), {}};
  const std::size_t n = s.algebra->dim();
  const Subspace nsub(n, s.n_basis);
  if (nsub.rank() != s.n_dim()) throw SplitError("n basis is not linearly independent");
  if (!is_ideal(*s.algebra, nsub)) throw SplitError("n is not an ideal");
  for (const auto& t : s.t_basis) {
    MatrixQ B(s.n_dim(), s.n_dim());
    for (std::size_t j = 0; j < s.n_dim(); ++j) {
      auto c = coordinates_in(s.n_basis, bracket(*s.algebra, t, s.n_basis[j]));
      if (!c) throw SplitError("[t, n] not in n");
      for (std::size_t i = 0; i < s.n_dim(); ++i) B(i, j) = (*c)[i];
    }
    s.beta.push_back(std::move(B));
  }
  auto bad = split_violations(s);
  if (!bad.empty()) throw SplitError(bad.front());
  return s;
}

// ---------------------------------------------------------------------------
// Central extensions

LieAlgebra central_extend(const LieAlgebra& base, const KForm& omega, const std::string& label,
                          std::size_t position, std::string name) {
  if (omega.dim() != base.dim() || omega.degree() != 2)
    throw std::invalid_argument("central_extend: omega must be a 2-form on the base");
  if (!ce_differential(base, omega).is_zero())
    throw std::invalid_argument("central_extend: omega is not closed");
  if (position > base.dim()) throw std::out_of_range("central_extend: position");
  const std::size_t n = base.dim();
  auto shift = [&](std::size_t i) { return i < position ? i : i + 1; };
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(base.labels()[i]);
  labels.insert(labels.begin() + static_cast<std::ptrdiff_t>(position), label);
  std::vector<StructureConstant> sc;
  for (const auto& c : base.constants()) sc.push_back({shift(c.i), shift(c.j), shift(c.k), c.c});
  for (const auto& [mask, c] : omega.terms()) {
    const std::size_t i = static_cast<std::size_t>(__builtin_ctz(mask));
    const std::size_t j = static_cast<std::size_t>(31 - __builtin_clz(mask));
    sc.push_back({shift(i), shift(j), position, c});
  }
  if (name.empty()) name = base.name() + " x_omega R";
  return LieAlgebra(std::move(name), std::move(labels), sc);
}

LieAlgebra quotient_by_central(const LieAlgebra& L, std::size_t index) {
  if (!center(L).contains(L.basis_vector(index)))
    throw std::invalid_argument("quotient_by_central: direction is not central");
  auto shrink = [&](std::size_t i) { return i < index ? i : i - 1; };
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < L.dim(); ++i)
    if (i != index) labels.push_back(L.labels()[i]);
  std::vector<StructureConstant> sc;
  for (const auto& c : L.constants())
    if (c.k != index) sc.push_back({shrink(c.i), shrink(c.j), shrink(c.k), c.c});
  return LieAlgebra(L.name() + "/center", std::move(labels), sc);
}

// ---------------------------------------------------------------------------
// Mal'tsev splitting

MaltsevSplitting maltsev_splitting(const SplitData& s, const std::vector<MatrixQ>& beta_s,
                                   const std::vector<MatrixQ>& beta_n) {
  const std::size_t m = s.n_dim();
  const std::size_t k = s.t_dim();
  if (beta_s.size() != k || beta_n.size() != k) throw SplitError("one semisimple/nilpotent part per generator");
  for (std::size_t a = 0; a < k; ++a) {
    if (beta_s[a] + beta_n[a] != s.beta[a]) throw SplitError("beta_s + beta_n != beta");
    if (!commutator(beta_s[a], beta_n[a]).is_zero()) throw SplitError("beta_s and beta_n do not commute");
  }
  const LieAlgebra& L = *s.algebra;
  // Brackets of n in its own basis.
  std::vector<StructureConstant> sc;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      auto c = coordinates_in(s.n_basis, bracket(L, s.n_basis[i], s.n_basis[j]));
      if (!c) throw SplitError("n is not a subalgebra");
      for (std::size_t t = 0; t < m; ++t)
        if (sgn((*c)[t]) != 0) sc.push_back({i, j, t, (*c)[t]});
    }
  // Inner T at m..m+k-1 acts by beta_n, outer T at m+k..m+2k-1 by beta_s.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(beta_n[a](i, j)) != 0) sc.push_back({m + a, j, i, beta_n[a](i, j)});
        if (sgn(beta_s[a](i, j)) != 0) sc.push_back({m + k + a, j, i, beta_s[a](i, j)});
      }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back("n" + std::to_string(i + 1));
  for (std::size_t a = 0; a < k; ++a) labels.push_back("u" + std::to_string(a + 1));
  for (std::size_t a = 0; a < k; ++a) labels.push_back("t" + std::to_string(a + 1));
  auto M = std::make_shared<const LieAlgebra>("M(" + L.name() + ")", std::move(labels), sc);
  std::vector<VecQ> nb, tb;
  for (std::size_t i = 0; i < m + k; ++i) nb.push_back(M->basis_vector(i));
  for (std::size_t a = 0; a < k; ++a) tb.push_back(M->basis_vector(m + k + a));
  SplitData split = semidirect_split(M, nb, tb);
  return {std::move(split), Subspace(M->dim(), nb)};
}

}  // namespace solvcontact
