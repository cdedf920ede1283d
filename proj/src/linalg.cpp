#include "solvcontact/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace solvcontact {

PolynomialQ char_poly(const MatrixQ& a) {
  if (!a.is_square()) throw DimensionMismatch("char_poly of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return PolynomialQ(1);
  // Coefficients highest degree first while building.
  std::vector<Rational> v{Rational(1), Rational(-a(0, 0))};
  for (std::size_t r = 1; r < n; ++r) {
    // Toeplitz column [1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S]
    std::vector<Rational> col{Rational(1), Rational(-a(r, r))};
    VecQ s(r);
    for (std::size_t i = 0; i < r; ++i) s[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      Rational rs = 0;
      for (std::size_t j = 0; j < r; ++j) rs += a(r, j) * s[j];
      col.push_back(-rs);
      VecQ next(r, Rational(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] += a(i, j) * s[j];
      s = std::move(next);
    }
    std::vector<Rational> w(r + 2, Rational(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < v.size(); ++j) w[i] += col[i - j] * v[j];
    v = std::move(w);
  }
  std::reverse(v.begin(), v.end());
  return PolynomialQ(std::move(v));
}

std::vector<PolynomialQ> sturm_chain(const PolynomialQ& p) {
  std::vector<PolynomialQ> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    PolynomialQ r = -(chain[chain.size() - 2] % chain.back());
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

namespace {

int sign_variations(const std::vector<PolynomialQ>& chain, const Rational& x) {
  int count = 0;
  int prev = 0;
  for (const auto& q : chain) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

}  // namespace

int sturm_count(const PolynomialQ& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::invalid_argument("sturm_count of the zero polynomial");
  if (hi < lo) throw std::invalid_argument("sturm_count: empty interval");
  if (p.degree() == 0) return 0;
  const auto chain = sturm_chain(squarefree_part(p));
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

Rational cauchy_bound(const PolynomialQ& p) {
  if (p.degree() < 1) return 1;
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(abs(p.coeff(k) / p.leading())));
  return m + 1;
}

std::vector<RealRoot> real_roots(const PolynomialQ& p, const Rational& tol) {
  if (sgn(tol) <= 0) throw std::invalid_argument("real_roots: tolerance must be positive");
  if (p.is_zero()) throw std::invalid_argument("real_roots of the zero polynomial");
  std::vector<RealRoot> out;
  if (p.degree() == 0) return out;
  const PolynomialQ q = squarefree_part(p);
  const auto chain = sturm_chain(q);
  auto count = [&](const Rational& a, const Rational& b) {
    return sign_variations(chain, a) - sign_variations(chain, b);
  };
  const Rational bound = cauchy_bound(q);
  std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
  std::vector<std::pair<Rational, Rational>> isolated;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const int c = count(a, b);
    if (c == 0) continue;
    if (c == 1) {
      isolated.emplace_back(a, b);
      continue;
    }
    Rational mid = (a + b) / 2;
    work.emplace_back(mid, b);
    work.emplace_back(a, mid);
  }
  std::sort(isolated.begin(), isolated.end());
  for (auto [a, b] : isolated) {
    while (b - a > tol) {
      if (q.sign_at(b) == 0) {
        a = b - tol;
        break;
      }
      Rational mid = (a + b) / 2;
      if (count(a, mid) == 1)
        b = mid;
      else
        a = mid;
    }
    const double approx = q.sign_at(b) == 0 ? b.get_d() : Rational((a + b) / 2).get_d();
    out.push_back({approx, a, b});
  }
  return out;
}

bool is_nilpotent(const MatrixQ& n) {
  if (!n.is_square()) throw DimensionMismatch("is_nilpotent of non-square matrix");
  return power(n, static_cast<unsigned>(n.rows())).is_zero();
}

bool is_semisimple(const MatrixQ& m) { return squarefree_part(char_poly(m)).at_matrix(m).is_zero(); }

JordanChevalley jordan_chevalley(const MatrixQ& m) {
  if (!m.is_square()) throw DimensionMismatch("jordan_chevalley of non-square matrix");
  const PolynomialQ f = squarefree_part(char_poly(m));
  const PolynomialQ df = f.derivative();
  MatrixQ s = m;
  for (int iter = 0;; ++iter) {
    MatrixQ fs = f.at_matrix(s);
    if (fs.is_zero()) break;
    if (iter > 64) throw std::runtime_error("jordan_chevalley: Newton iteration did not terminate");
    auto inv = inverse(df.at_matrix(s));
    if (!inv) throw std::runtime_error("jordan_chevalley: f'(S) singular");
    s -= fs * *inv;
  }
  JordanChevalley jc{m, s, m - s, std::nullopt};
  if (auto sinv = inverse(s)) jc.u = *sinv * m;
  return jc;
}

MatrixQ exp_nilpotent(const MatrixQ& n) {
  if (!is_nilpotent(n)) throw NotNilpotent("exp_nilpotent: matrix is not nilpotent");
  const std::size_t d = n.rows();
  MatrixQ result = MatrixQ::identity(d);
  MatrixQ term = MatrixQ::identity(d);
  for (std::size_t j = 1; j < d; ++j) {
    term = term * n * Rational(1, static_cast<unsigned long>(j));
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

Matrix<PolynomialQ> exp_nilpotent_poly(const MatrixQ& n) {
  if (!is_nilpotent(n)) throw NotNilpotent("exp_nilpotent_poly: matrix is not nilpotent");
  const std::size_t d = n.rows();
  Matrix<PolynomialQ> result(d, d);
  MatrixQ term = MatrixQ::identity(d);
  for (std::size_t j = 0; j < d; ++j) {
    if (j > 0) term = term * n * Rational(1, static_cast<unsigned long>(j));
    if (term.is_zero()) break;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (sgn(term(r, c)) != 0) result(r, c) += PolynomialQ::monomial(term(r, c), j);
  }
  return result;
}

MatrixQ evaluate(const Matrix<PolynomialQ>& m, const Rational& t) {
  return m.map([&](const PolynomialQ& p) { return p(t); });
}

Matrix<double> exp_numeric(const Matrix<double>& a, double tol) {
  const Matrix<double> lo = exp_taylor(a);
  const Matrix<long double> hi = exp_taylor(a.map([](double v) { return static_cast<long double>(v); }));
  long double scale = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) scale = std::max(scale, std::fabs(hi(i, j)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const long double ref = hi(i, j);
      const long double floor = scale * 1e-12L;
      const long double denom = std::max(std::fabs(ref), floor);
      const long double err = std::fabs(static_cast<long double>(lo(i, j)) - ref);
      if (denom > 0 && err / denom > tol)
        throw NumericError("exp_numeric: double and long double results disagree beyond tolerance");
    }
  return lo;
}

double max_abs_diff(const Matrix<double>& a, const Matrix<double>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("max_abs_diff shape");
  double m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
  return m;
}

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

struct Attempt {
  SimultaneousEigenbasis basis;
  double worst = 0;  // residual relative to input scale
};

std::optional<Attempt> try_basis(const std::vector<Matrix<double>>& ms, const std::vector<double>& weights) {
  const std::size_t n = ms.front().rows();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < ms.size(); ++k) c += weights[k] * to_eigen(ms[k]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(c);
  if (es.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXcd lambda = es.eigenvalues();
  const Eigen::MatrixXcd vecs = es.eigenvectors();
  const double cscale = std::max(1.0, c.cwiseAbs().maxCoeff());

  std::vector<std::size_t> real_idx, cplx_idx;
  for (std::size_t i = 0; i < n; ++i) {
    const double im = lambda(static_cast<Eigen::Index>(i)).imag();
    if (std::fabs(im) <= 1e-12 * cscale)
      real_idx.push_back(i);
    else if (im > 0)
      cplx_idx.push_back(i);
  }
  if (real_idx.size() + 2 * cplx_idx.size() != n) return std::nullopt;
  auto by_value = [&](std::size_t a, std::size_t b) {
    const auto la = lambda(static_cast<Eigen::Index>(a)), lb = lambda(static_cast<Eigen::Index>(b));
    return la.real() != lb.real() ? la.real() < lb.real() : la.imag() < lb.imag();
  };
  std::stable_sort(real_idx.begin(), real_idx.end(), by_value);
  std::stable_sort(cplx_idx.begin(), cplx_idx.end(), by_value);

  Attempt at;
  at.basis.psi = Matrix<double>(n, n);
  std::size_t col = 0;
  auto put = [&](const Eigen::VectorXd& v, double nv) {
    for (std::size_t i = 0; i < n; ++i) at.basis.psi(i, col) = v(static_cast<Eigen::Index>(i)) / nv;
    ++col;
  };
  for (std::size_t i : real_idx) {
    Eigen::VectorXd v = vecs.col(static_cast<Eigen::Index>(i)).real();
    // sign: largest-magnitude component positive
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0) v = -v;
    at.basis.blocks.push_back({col, 1, {}});
    put(v, v.norm());
  }
  for (std::size_t i : cplx_idx) {
    const Eigen::VectorXcd v = vecs.col(static_cast<Eigen::Index>(i));
    at.basis.blocks.push_back({col, 2, {}});
    // x and -y share one scale so the block keeps the form [[a,-b],[b,a]]
    put(v.real(), v.norm());
    put(-v.imag(), v.norm());
  }
  const Eigen::MatrixXd psi = to_eigen(at.basis.psi);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(psi);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::MatrixXd psi_inv = lu.inverse();

  for (const auto& m : ms) {
    const Eigen::MatrixXd d = psi_inv * to_eigen(m) * psi;
    const double mscale = std::max(1.0, to_eigen(m).cwiseAbs().maxCoeff());
    double res = 0;
    std::vector<int> block_of(n);
    for (std::size_t b = 0; b < at.basis.blocks.size(); ++b)
      for (std::size_t k = 0; k < at.basis.blocks[b].size; ++k) block_of[at.basis.blocks[b].offset + k] = static_cast<int>(b);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (block_of[i] != block_of[j]) res = std::max(res, std::fabs(d(i, j)));
    for (auto& blk : at.basis.blocks) {
      const auto o = static_cast<Eigen::Index>(blk.offset);
      if (blk.size == 1) {
        blk.eigenvalues.emplace_back(d(o, o), 0.0);
      } else {
        res = std::max(res, std::fabs(d(o, o) - d(o + 1, o + 1)));
        res = std::max(res, std::fabs(d(o + 1, o) + d(o, o + 1)));
        blk.eigenvalues.emplace_back((d(o, o) + d(o + 1, o + 1)) / 2, (d(o + 1, o) - d(o, o + 1)) / 2);
      }
    }
    at.basis.residuals.push_back(res);
    at.worst = std::max(at.worst, res / mscale);
  }
  return at;
}

}  // namespace

SimultaneousEigenbasis simultaneous_eigenbasis(const std::vector<MatrixQ>& ms, double tol) {
  if (ms.empty()) throw std::invalid_argument("simultaneous_eigenbasis: no matrices");
  const std::size_t n = ms.front().rows();
  for (const auto& m : ms)
    if (!m.is_square() || m.rows() != n) throw DimensionMismatch("simultaneous_eigenbasis: shapes differ");
  for (std::size_t a = 0; a < ms.size(); ++a) {
    if (!is_semisimple(ms[a])) throw std::invalid_argument("simultaneous_eigenbasis: input is not semisimple");
    for (std::size_t b = a + 1; b < ms.size(); ++b)
      if (!commute(ms[a], ms[b])) throw std::invalid_argument("simultaneous_eigenbasis: inputs do not commute");
  }
  std::vector<Matrix<double>> md;
  for (const auto& m : ms) md.push_back(to_double_matrix(m));
  // Generic combinations separate the joint eigenspaces; keep the best one.
  const double irr[] = {0.6180339887498949, 0.4142135623730950, 0.7320508075688772, 0.2360679774997897,
                        0.3247179572447460};
  std::optional<Attempt> best;
  for (std::size_t attempt = 0; attempt < 5; ++attempt) {
    std::vector<double> w(ms.size());
    for (std::size_t k = 0; k < ms.size(); ++k) w[k] = k == 0 ? 1.0 : irr[(attempt + k) % 5] * static_cast<double>(k);
    auto at = try_basis(md, w);
    if (at && (!best || at->worst < best->worst)) best = std::move(at);
    if (best && best->worst <= tol) break;
  }
  if (!best) throw NumericError("simultaneous_eigenbasis: eigen-decomposition failed");
  if (best->worst > tol) throw NumericError("simultaneous_eigenbasis: residual exceeds tolerance (defective input?)");
  return std::move(best->basis);
}

}  // namespace solvcontact
