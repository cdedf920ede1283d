#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "solvcontact/catalog.hpp"
#include "solvcontact/closed_form.hpp"
#include "solvcontact/lattice.hpp"
#include "solvcontact/linalg.hpp"

using namespace solvcontact;

namespace {

PolynomialQ poly(std::initializer_list<long> low_to_high) {
  std::vector<Rational> c;
  for (long v : low_to_high) c.emplace_back(v);
  return PolynomialQ(c);
}

std::vector<double> approx_roots(const PolynomialQ& p) {
  std::vector<double> out;
  for (const auto& r : real_roots(p, make_rational(1, 1000000))) out.push_back(r.approx);
  std::sort(out.begin(), out.end());
  return out;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < tol);
}

// P J P^-1 with random Jordan structure and rational eigenvalues
MatrixQ random_jordan_conjugate(std::size_t n) {
  MatrixQ j(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i) = Rational(testutil::uniform(-2, 2));
    if (i > 0 && testutil::uniform(0, 1) && j(i, i) == j(i - 1, i - 1)) j(i - 1, i) = 1;
    if (i > 0 && testutil::uniform(0, 2) == 0) {
      j(i, i) = j(i - 1, i - 1);
      j(i - 1, i) = 1;
    }
  }
  MatrixQ p = testutil::random_unimodular(n, 8);
  return p * j * *inverse(p);
}

}  // namespace

TEST_CASE("characteristic polynomial") {
  const auto [t1, t2] = d18_pair();
  CHECK(char_poly(t1) == poly({-1, 5, -6, 1}));
  CHECK(char_poly(t2) == poly({-1, 17, -10, 1}));
  CHECK(to_string(char_poly(t1)) == "X^3 - 6*X^2 + 5*X - 1");
  const PolynomialQ xm1 = poly({-1, 1});
  CHECK(char_poly(MatrixQ::identity(3)) == xm1 * xm1 * xm1);
  CHECK_THROWS_AS(char_poly(MatrixQ(2, 3)), DimensionMismatch);

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(testutil::uniform(1, 5));
    const MatrixQ m = testutil::random_matrix(n);
    const PolynomialQ p = char_poly(m);
    CHECK(p.degree() == static_cast<int>(n));
    CHECK(p.leading() == 1);
    CHECK(p.coeff(n - 1) == -m.trace());
    CHECK(p.at_matrix(m).is_zero());
  }
}

TEST_CASE("polynomial arithmetic") {
  const PolynomialQ a = poly({-1, 0, 1}), b = poly({1, 1});
  CHECK(a / b == poly({-1, 1}));
  CHECK((a % b).is_zero());
  CHECK(gcd(a, poly({-1, 1}) * poly({2, 1})) == poly({-1, 1}));
  const auto bz = ext_gcd(a, poly({2, 1}));
  CHECK(bz.g == PolynomialQ(1));
  CHECK(bz.u * a + bz.v * poly({2, 1}) == bz.g);
  CHECK(squarefree_part(a * a) == a);
  CHECK(rational_roots(poly({-1, 5, -6, 1})).empty());
  const auto rr = rational_roots(poly({-6, 11, -6, 1}));
  CHECK(rr == std::vector<Rational>{1, 2, 3});
}

TEST_CASE("sturm counts and real roots") {
  CHECK(sturm_count(poly({-1, 5, -6, 1}), 0, 10) == 3);
  CHECK(sturm_count(poly({-1, 2, -3, 1}), -10, 10) == 1);
  CHECK(sturm_count(poly({1, 0, 1}), -10, 10) == 0);
  // repeated roots counted once
  CHECK(sturm_count(poly({-1, 1}) * poly({-1, 1}) * poly({2, 1}), -10, 10) == 2);

  check_close(approx_roots(poly({-1, 5, -6, 1})), {0.3080, 0.6431, 5.0489}, 5e-4);
  check_close(approx_roots(poly({-1, 17, -10, 1})), {0.0610, 2.0882, 7.8509}, 5e-4);
  check_close(approx_roots(poly({-1, 0, 1, 1})), {0.7549}, 5e-4);
  check_close(approx_roots(poly({-1, 2, -3, 1})), {2.3247}, 5e-4);

  for (const auto& r : real_roots(poly({-1, 5, -6, 1}), make_rational(1, 10000))) {
    CHECK(r.hi - r.lo <= make_rational(1, 10000));
    CHECK(poly({-1, 5, -6, 1}).sign_at(r.lo) * poly({-1, 5, -6, 1}).sign_at(r.hi) <= 0);
  }

  for (int trial = 0; trial < 100; ++trial) {
    const int deg = static_cast<int>(testutil::uniform(3, 4));
    std::vector<Rational> c;
    for (int k = 0; k < deg; ++k) c.push_back(testutil::random_rational(6, 3));
    c.emplace_back(1);
    const PolynomialQ p(c);
    const Rational b = cauchy_bound(p);
    const auto roots = real_roots(p, make_rational(1, 1 << 20));
    CHECK(static_cast<int>(roots.size()) == sturm_count(p, -b, b));
    for (const auto& r : roots) {
      CHECK(std::abs(r.approx) < to_double(b));
      // the squarefree part changes sign across (lo, hi] or vanishes at hi
      const PolynomialQ q = squarefree_part(p);
      CHECK(q.sign_at(r.lo) * q.sign_at(r.hi) <= 0);
      CHECK(std::abs(p.eval(r.approx)) < 1e-3 * (1 + std::abs(to_double(b))));
    }
  }
}

TEST_CASE("jordan-chevalley") {
  const MatrixQ upper{{0, 1, 2}, {0, 0, 3}, {0, 0, 0}};
  auto jc = jordan_chevalley(upper);
  CHECK(jc.s.is_zero());
  CHECK(jc.n == upper);

  const MatrixQ swap{{0, 1}, {1, 0}};
  jc = jordan_chevalley(swap);
  CHECK(jc.s == swap);
  CHECK(jc.n.is_zero());

  const auto d13 = get("D13");
  jc = jordan_chevalley(d13.split->beta[0]);
  MatrixQ s(4, 4);
  s(0, 0) = make_rational(1, 2);
  s(1, 1) = make_rational(3, 2);
  s(2, 2) = -1;
  s(3, 3) = -1;
  CHECK(jc.s == s);
  MatrixQ n(4, 4);
  n(3, 2) = -1;
  CHECK(jc.n == n);

  int with_nilpotent = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(testutil::uniform(2, 5));
    const MatrixQ m = trial % 4 == 3 ? testutil::random_matrix(dim) : random_jordan_conjugate(dim);
    const auto d = jordan_chevalley(m);
    CHECK(d.s + d.n == m);
    CHECK(commute(d.s, d.n));
    CHECK(is_nilpotent(d.n));
    CHECK(is_semisimple(d.s));
    CHECK(squarefree_part(char_poly(m)).at_matrix(d.s).is_zero());
    CHECK(char_poly(d.s) == char_poly(m));
    if (d.u) {
      CHECK(d.s * *d.u == m);
      CHECK(is_nilpotent(*d.u - MatrixQ::identity(dim)));
      CHECK(commute(d.s, *d.u));
    }
    if (!d.n.is_zero()) ++with_nilpotent;
  }
  CHECK(with_nilpotent > 20);
}

TEST_CASE("nilpotent exponential") {
  const auto d2 = get("D2");
  const MatrixQ e2 = exp_nilpotent(d2.split->beta[0]);
  CHECK(e2(0, 1) == make_rational(1, 2));
  CHECK(e2 == d2.closed_form->map([](const ExpPolyTrig& f) { return *f.evaluate_exact({Rational(1)}); }));
  const auto d3 = get("D3");
  const MatrixQ e3 = exp_nilpotent(d3.split->beta[0]);
  CHECK(e3(0, 2) == make_rational(-1, 6));
  CHECK(exp_nilpotent(MatrixQ(3, 3)) == MatrixQ::identity(3));
  CHECK_THROWS_AS(exp_nilpotent(MatrixQ::identity(2)), NotNilpotent);

  const auto poly_exp = exp_nilpotent_poly(d3.split->beta[0]);
  for (long t : {1L, 2L, -3L}) {
    MatrixQ scaled = d3.split->beta[0] * Rational(t);
    CHECK(evaluate(poly_exp, Rational(t)) == exp_nilpotent(scaled));
    auto exact = d3.closed_form->map([&](const ExpPolyTrig& f) { return *f.evaluate_exact({Rational(t)}); });
    CHECK(exact == exp_nilpotent(scaled));
  }

  // nilpotent part times the exact diagonal part reproduces db for D13
  const auto d13 = get("D13");
  const auto jc = jordan_chevalley(d13.split->beta[0]);
  const auto sym_s = symbolic_exp(jc.s);
  REQUIRE(sym_s);
  for (double t : {0.5, 1.0, 2.0}) {
    const Matrix<double> prod = evaluate(*sym_s, std::vector<double>{t}) *
                                to_double_matrix(evaluate(exp_nilpotent_poly(jc.n), Rational(t)));
    CHECK(max_abs_diff(prod, evaluate(*d13.closed_form, std::vector<double>{t})) < 1e-12);
  }
}

TEST_CASE("numeric exponential") {
  CHECK(max_abs_diff(exp_numeric(Matrix<double>(3, 3)), Matrix<double>::identity(3)) == 0);

  const auto d10 = get("D10", {{"p", 1}});
  const Matrix<double> b10 = to_double_matrix(d10.split->beta[0]);
  CHECK(max_abs_diff(exp_numeric(b10), evaluate(*d10.closed_form, std::vector<double>{1.0})) < 1e-10);

  const auto d4 = get("D4", {{"p", 2}});
  const Matrix<double> e4 = exp_numeric(to_double_matrix(d4.split->beta[0]) * 0.5);
  const double want[4] = {std::exp(-1.5), std::exp(-0.5), std::exp(-1.0), std::exp(3.0)};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(e4(i, i) - want[i]) < 1e-10 * std::max(1.0, want[i]));

  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(testutil::uniform(2, 4));
    const MatrixQ a = testutil::random_matrix(n, 2, 4);
    const MatrixQ b = a * a * make_rational(1, 4) - a * make_rational(1, 2) + MatrixQ::identity(n);
    const Matrix<double> ea = exp_numeric(to_double_matrix(a)), eb = exp_numeric(to_double_matrix(b));
    const Matrix<double> eab = exp_numeric(to_double_matrix(a + b));
    double scale = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(eab(i, j)));
    CHECK(max_abs_diff(eab, ea * eb) < 1e-9 * scale);
  }
  Matrix<double> huge(1, 1);
  huge(0, 0) = 1e6;
  CHECK_THROWS_AS(exp_numeric(huge), NumericError);
}

TEST_CASE("symbolic exponential") {
  const MatrixQ rot{{0, -1}, {1, 0}};
  const auto f = symbolic_exp(rot);
  REQUIRE(f);
  const auto q = (*f)(0, 0).evaluate_quarter_turn({Rational(1, 2)});
  REQUIRE(q);
  CHECK(q->is_zero_poly());
  CHECK((*f)(1, 0) == ExpPolyTrig::sin(0, 1));
  const auto diag = symbolic_exp(MatrixQ{{2, 0}, {0, -1}});
  REQUIRE(diag);
  CHECK((*diag)(0, 0) == ExpPolyTrig::exp(0, 2));
  // irrational spectrum: no closed form
  CHECK_FALSE(symbolic_exp(MatrixQ{{0, 2}, {1, 0}}));
}

TEST_CASE("simultaneous eigenbasis") {
  const auto [t1, t2] = d18_pair();
  CHECK(commute(t1, t2));
  const auto sb = simultaneous_eigenbasis({t1, t2}, 1e-10);
  REQUIRE(sb.blocks.size() == 3);
  std::vector<std::pair<double, double>> pairs;
  for (const auto& b : sb.blocks) {
    CHECK(b.size == 1);
    pairs.emplace_back(b.eigenvalues[0].real(), b.eigenvalues[1].real());
  }
  std::sort(pairs.begin(), pairs.end());
  const double r1[3] = {0.3080, 0.6431, 5.0489};
  const double r2[3] = {0.0610, 2.0882, 7.8509};
  std::vector<double> firsts, seconds;
  for (const auto& [a, b] : pairs) {
    firsts.push_back(a);
    seconds.push_back(b);
  }
  for (int i = 0; i < 3; ++i) CHECK(std::abs(firsts[static_cast<std::size_t>(i)] - r1[i]) < 5e-4);
  std::sort(seconds.begin(), seconds.end());
  for (int i = 0; i < 3; ++i) CHECK(std::abs(seconds[static_cast<std::size_t>(i)] - r2[i]) < 5e-4);
  for (double r : sb.residuals) CHECK(r < 1e-10);

  const auto [u1, u2] = d20_pair();
  const auto su = simultaneous_eigenbasis({u1, u2}, 1e-10);
  REQUIRE(su.blocks.size() == 2);
  int real_blocks = 0, complex_blocks = 0;
  for (const auto& b : su.blocks) {
    if (b.size == 1) {
      ++real_blocks;
      CHECK(std::abs(b.eigenvalues[0].real() - 2.3247) < 5e-4);
      CHECK(std::abs(b.eigenvalues[1].real() - 0.7549) < 5e-4);
    } else {
      ++complex_blocks;
      CHECK(std::abs(std::abs(b.eigenvalues[0]) - 1 / std::sqrt(2.3247)) < 5e-4);
      CHECK(std::abs(std::abs(b.eigenvalues[1]) - 1 / std::sqrt(0.7549)) < 5e-4);
    }
  }
  CHECK(real_blocks == 1);
  CHECK(complex_blocks == 1);

  const auto id = simultaneous_eigenbasis({MatrixQ::identity(3), MatrixQ::identity(3)});
  CHECK(max_abs_diff(id.psi, Matrix<double>::identity(3)) < 1e-12);

  CHECK_THROWS_AS(simultaneous_eigenbasis({MatrixQ{{1, 1}, {0, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(simultaneous_eigenbasis({MatrixQ{{0, 1}, {0, 0}}, MatrixQ{{0, 0}, {1, 0}}}), std::invalid_argument);
}
