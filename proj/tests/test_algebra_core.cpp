#include "doctest.h"
#include "helpers.hpp"
#include "solvcontact/catalog.hpp"
#include "solvcontact/exterior.hpp"
#include "solvcontact/lie_algebra.hpp"
#include "solvcontact/linalg.hpp"

using namespace solvcontact;
using testutil::unit;

namespace {

VecQ e(std::size_t i, std::size_t n = 5) { return unit(n, i - 1); }

VecQ operator+(VecQ a, const VecQ& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

TEST_CASE("rational and quadratic scalars") {
  CHECK(parse_rational("4/6") == make_rational(2, 3));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK(make_rational(4, 2).get_den() == 1);

  const Quadratic u(make_rational(3, 2), make_rational(1, 2), 5);  // (3 + sqrt5)/2
  const Quadratic v(make_rational(3, 2), make_rational(-1, 2), 5);
  CHECK(u * v == Quadratic(1));
  CHECK(u + v == Quadratic(3));
  CHECK(u.inverse() == v);
  CHECK(u.sign() == 1);
  CHECK(Quadratic(1, -1, 2).sign() == -1);
  CHECK_THROWS(Quadratic(0, 1, 4));
  CHECK_THROWS_AS(Quadratic(0, 1, 2) + Quadratic(0, 1, 3), FieldMismatch);
}

TEST_CASE("bracket") {
  const auto d1 = get("D1");
  CHECK(bracket(*d1.algebra, e(2), e(4)) == e(1));
  CHECK(bracket(*d1.algebra, e(4), e(2)) == VecQ{-1, 0, 0, 0, 0});
  const auto d3 = get("D3");
  CHECK(bracket(*d3.algebra, e(4) + e(3), e(5)) == e(3) + e(2));
  CHECK_THROWS_AS(bracket(*d3.algebra, e(1, 4), e(2)), DimensionMismatch);

  for (int trial = 0; trial < 100; ++trial) {
    const auto entry = get(d_list()[static_cast<std::size_t>(trial) % 12]);
    const auto& L = *entry.algebra;
    const VecQ x = testutil::random_vector(5), y = testutil::random_vector(5), z = testutil::random_vector(5);
    const Rational a = testutil::random_rational();
    CHECK(bracket(L, x, x) == VecQ(5, Rational(0)));
    VecQ lhs = bracket(L, x + y, z), rhs = bracket(L, x, z) + bracket(L, y, z);
    CHECK(lhs == rhs);
    VecQ ax = x;
    for (auto& c : ax) c *= a;
    VecQ s = bracket(L, ax, y), t = bracket(L, x, y);
    for (auto& c : t) c *= a;
    CHECK(s == t);
  }
}

TEST_CASE("jacobi") {
  CHECK(check_jacobi(LieAlgebra::abelian(5)).empty());
  for (const auto& name : d_list()) CHECK_MESSAGE(check_jacobi(*get(name).algebra).empty(), name);
  // D1 with [e2,e4] corrupted to e5: the only violating triple is (e2,e3,e4),
  // where [[e4,e2],e3] = [e3,e5] = e1
  const LieAlgebra bad("bad", {"e1", "e2", "e3", "e4", "e5"}, {{1, 3, 4, 1}, {2, 4, 0, 1}});
  const auto v = check_jacobi(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].i == 1);
  CHECK(v[0].j == 2);
  CHECK(v[0].k == 3);
  CHECK(v[0].residual == VecQ{1, 0, 0, 0, 0});
}

TEST_CASE("ad and unimodularity") {
  const auto d5 = get("D5");
  const MatrixQ a = ad(*d5.algebra, e(5));
  CHECK(a(1, 1) == -1);
  for (std::size_t i = 0; i < 5; ++i) CHECK(a(i, 1) == (i == 1 ? Rational(-1) : Rational(0)));
  CHECK(ad(*d5.algebra, VecQ(5, Rational(0))).is_zero());
  const auto d1 = get("D1");
  for (std::size_t i = 1; i <= 5; ++i) CHECK(ad(*d1.algebra, e(i)).trace() == 0);

  for (const auto& name : d_list()) CHECK_MESSAGE(is_unimodular(*get(name).algebra), name);
  const LieAlgebra aff("aff", {"e1", "e2"}, {{0, 1, 1, 1}});
  CHECK_FALSE(is_unimodular(aff));
  CHECK(ad(aff, unit(2, 0)).trace() == 1);
  CHECK(is_unimodular(LieAlgebra::abelian(4)));
}

TEST_CASE("series and center") {
  const auto d15 = get("D15");
  const auto& L = *d15.algebra;
  const auto ds = derived_series(L, d15.nilradical);
  REQUIRE(ds.size() >= 3);
  CHECK(ds[0] == Subspace(5, {e(1), e(2), e(3), e(4)}));
  CHECK(ds[1] == Subspace(5, {e(1), e(2)}));
  CHECK(ds[2].is_zero());
  const auto lcs = lower_central_series(L, d15.nilradical);
  REQUIRE(lcs.size() == 4);
  CHECK(lcs[1] == Subspace(5, {e(1), e(2)}));
  CHECK(lcs[2] == Subspace(5, {e(1)}));
  CHECK(lcs[3].is_zero());

  const auto ab = derived_series(LieAlgebra::abelian(3));
  CHECK(ab.size() == 2);
  CHECK(ab.back().is_zero());
  CHECK(center(*get("D1").algebra) == Subspace(5, {e(1)}));

  for (const auto& name : d_list()) {
    const auto s = derived_series(*get(name).algebra);
    CHECK_MESSAGE(s.back().is_zero(), name);
    CHECK(s.size() <= 6);
  }
  const auto sa = derived_series(*sa_algebra(2).algebra);
  CHECK_FALSE(sa.back().is_zero());
}

TEST_CASE("nilradical") {
  const auto d5 = get("D5");
  CHECK(verify_nilradical(*d5.algebra, Subspace(5, {e(1), e(2), e(3), e(4)})).passed());
  CHECK(verify_nilradical(*get("D1").algebra, Subspace::whole(5)).passed());
  const auto r = verify_nilradical(*d5.algebra, Subspace(5, {e(1), e(2)}));
  CHECK_FALSE(r.passed());
  const auto failed = r.failed();
  REQUIRE(!failed.empty());
  CHECK(failed.back().find("maximal") != std::string::npos);
}

TEST_CASE("semidirect split") {
  const auto d18 = get("D18");
  const auto s = semidirect_split(d18.algebra, {e(1), e(2), e(3)}, {e(4), e(5)});
  CHECK(s.beta[0] == MatrixQ{{-1, 0, 0}, {0, 0, 0}, {0, 0, 1}});
  CHECK(s.beta[1] == MatrixQ{{0, 0, 0}, {0, -1, 0}, {0, 0, 1}});

  const auto d1 = get("D1");
  const auto trivial = semidirect_split(d1.algebra, {e(1), e(2), e(3), e(4), e(5)}, {});
  CHECK(trivial.t_dim() == 0);

  const auto d10 = get("D10", {{"p", 1}});
  const auto s10 = semidirect_split(d10.algebra, {e(1), e(2), e(3), e(4)}, {e(5)});
  CHECK(s10.beta[0](1, 1) == -1);
  CHECK(s10.beta[0](1, 2) == 1);
  CHECK(s10.beta[0](2, 1) == -1);
  CHECK(s10.beta[0](2, 2) == -1);

  // e1 is not an ideal complement
  CHECK_THROWS_AS(semidirect_split(d18.algebra, {e(1), e(4)}, {e(2), e(3), e(5)}), SplitError);

  for (const auto& name : d_list()) {
    const auto entry = get(name);
    REQUIRE(entry.split);
    CHECK_MESSAGE(split_violations(*entry.split).empty(), name);
  }
}

TEST_CASE("central extension") {
  const KForm omega1 = KForm::basis_form(4, {0, 2}) + KForm::basis_form(4, {1, 3});
  const LieAlgebra h5 = central_extend(LieAlgebra::abelian(4), omega1);
  CHECK(h5.same_structure(*get("D1").algebra));

  const auto d5 = get("D5");
  REQUIRE(d5.central);
  const LieAlgebra g = central_extend(*d5.central->base, d5.central->omega);
  CHECK(g.same_structure(*d5.algebra));
  CHECK(quotient_by_central(g, 0).same_structure(*d5.central->base));

  const LieAlgebra direct = central_extend(*d5.central->base, KForm(4, 2));
  CHECK(center(direct).contains(unit(5, 0)));
  CHECK(quotient_by_central(direct, 0).same_structure(*d5.central->base));

  // e2*^e4* on b(D5) is not closed
  CHECK_THROWS(central_extend(*d5.central->base, KForm::basis_form(4, {0, 2})));
}

TEST_CASE("maltsev splitting") {
  const auto d1 = get("D1");
  const auto m1 = maltsev_splitting(*d1.split, {}, {});
  CHECK(m1.split.algebra->dim() == 5);

  const auto d13 = get("D13");
  const auto& beta = d13.split->beta[0];
  const auto jc = jordan_chevalley(beta);
  CHECK(!jc.n.is_zero());
  const auto m = maltsev_splitting(*d13.split, {jc.s}, {jc.n});
  CHECK(m.split.algebra->dim() == 6);
  CHECK(check_jacobi(*m.split.algebra).empty());
  CHECK(is_ideal(*m.split.algebra, m.nilradical));
  CHECK(is_nilpotent(*m.split.algebra, m.nilradical));
  const auto outer = Subspace(6, m.split.t_basis);
  CHECK(bracket_span(*m.split.algebra, outer, outer).is_zero());

  const auto d5 = get("D5");
  const auto j5 = jordan_chevalley(d5.split->beta[0]);
  const auto m5 = maltsev_splitting(*d5.split, {j5.s}, {j5.n});
  CHECK(m5.split.algebra->dim() == 6);
  CHECK(verify_nilradical(*m5.split.algebra, m5.nilradical).checks.size() >= 3);

  const auto& base = d5.central->base_split;
  const auto jb = jordan_chevalley(base.beta[0]);
  CHECK(jb.n.is_zero());
  CHECK(maltsev_splitting(base, {jb.s}, {jb.n}).split.algebra->dim() == 5);

  CHECK_THROWS_AS(maltsev_splitting(*d13.split, {jc.s}, {jc.s}), SplitError);
}
