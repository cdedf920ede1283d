#include "doctest.h"
#include "helpers.hpp"
#include "solvcontact/boundary.hpp"

using namespace solvcontact;

namespace {

const PolynomialQ S(std::vector<Rational>{0, 1});

PolynomialQ s_pow(std::size_t k) {
  PolynomialQ p = 1;
  for (std::size_t i = 0; i < k; ++i) p *= S;
  return p;
}

std::vector<CatalogEntry> contact_entries() {
  std::vector<CatalogEntry> out;
  for (const auto& e : all_entries())
    if (e.contact) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("omega on D1") {
  const auto d1 = get("D1");
  const SForm omega = omega_form(d1);
  const SForm ds = SForm::ds(5);
  const SForm expected = wedge(ds, SForm::lift(KForm::covector(5, 0))) +
                         S * SForm::lift(KForm::basis_form(5, {1, 3}, -1) + KForm::basis_form(5, {2, 4}, -1));
  CHECK(omega == expected);
  CHECK(omega.degree() == 2);
  CHECK(omega.ds_index() == 5);
  // at s = 0 only ds ^ eta survives
  CHECK(omega.at(0) == KForm::basis_form(6, {5, 0}));
  CHECK(d(*d1.algebra, omega).is_zero());

  const auto h = heisenberg(1);
  const SForm oh = omega_form(h);
  CHECK(oh == wedge(SForm::ds(3), SForm::lift(*h.contact)) + S * SForm::lift(ce_differential(*h.algebra, *h.contact)));
}

TEST_CASE("top powers of omega") {
  for (const auto& e : contact_entries()) {
    const auto& L = *e.algebra;
    const std::size_t n = (L.dim() - 1) / 2;
    const SForm omega = omega_form(e);
    const SForm top = wedge_power(omega, n + 1);
    const KForm eta = *e.contact;
    const KForm deta = ce_differential(L, eta);
    const SForm rhs = s_pow(n) * SForm::lift(wedge(eta, wedge_power(deta, n)));
    const SForm expected = PolynomialQ(Rational(static_cast<long>(n + 1))) * wedge(SForm::ds(L.dim()), rhs);
    CHECK_MESSAGE(top == expected, e.name);
    CHECK(top.top_coefficient().degree() == static_cast<int>(n));
    CHECK(wedge_power(deta, n + 1).is_zero());
    CHECK(verify_nondegenerate(e).passed());
  }
  const auto h3 = heisenberg(3);
  const SForm o3 = omega_form(h3);
  const SForm four = wedge_power(o3, 4);
  const KForm deta = ce_differential(*h3.algebra, *h3.contact);
  CHECK(four == PolynomialQ(4) * wedge(SForm::ds(7), s_pow(3) * SForm::lift(wedge(*h3.contact, wedge_power(deta, 3)))));
  CHECK(four.top_coefficient() != PolynomialQ(0));
}

TEST_CASE("liouville field") {
  for (const char* name : {"D1", "D11", "D5", "D18"}) {
    const auto e = get(name);
    const SForm omega = omega_form(e);
    const SVector x = liouville_field(e);
    CHECK(x.ds == S);
    CHECK(e.contact->evaluate({x.g}) == 1);
    const SForm expected = -SForm::ds(5) + S * SForm::lift(*e.contact);
    CHECK_MESSAGE(interior_product(x, omega) == expected, name);
    // Cartan: L_X Omega = d i_X Omega, since d Omega = 0
    CHECK(d(*e.algebra, interior_product(x, omega)) == omega);
    CHECK(liouville_check(e).passed());
  }
  for (const auto& e : contact_entries()) {
    CHECK_MESSAGE(d(*e.algebra, omega_form(e)).is_zero(), e.name);
    CHECK_MESSAGE(boundary_check(e).passed(), e.name);
  }
}

TEST_CASE("symplectic slices") {
  for (const char* name : {"D1", "D8", "D20"}) {
    const auto e = get(name);
    const SForm omega = omega_form(e);
    CHECK(determinant(two_form_matrix(omega.at(0))) == 0);
    for (const Rational& s0 : {Rational(1), make_rational(-2, 3), make_rational(7, 5)}) {
      const MatrixQ m = two_form_matrix(omega.at(s0));
      CHECK(determinant(m) != 0);
      // an antisymmetric determinant is a square
      CHECK(sgn(determinant(m)) > 0);
    }
  }
}

TEST_CASE("sform algebra") {
  const SForm a = SForm::lift(KForm::covector(3, 0));
  const SForm b = SForm::ds(3);
  CHECK(wedge(a, b) == -wedge(b, a));
  CHECK(wedge(b, b).is_zero());
  const SForm f = SForm::function(3, S * S);
  const auto h = heisenberg(1);
  CHECK(d(*h.algebra, f) == PolynomialQ(std::vector<Rational>{0, 2}) * b);
  CHECK(d(*h.algebra, d(*h.algebra, wedge(f, a))).is_zero());
  for (int trial = 0; trial < 20; ++trial) {
    const Rational c = testutil::random_rational();
    CHECK((PolynomialQ(c) * a).at(1) == KForm::covector(4, 0) * c);
  }
}

TEST_CASE("omega needs a contact form") {
  CHECK_THROWS_AS(omega_form(heisenberg_times_line(1)), ContactError);
  CHECK_THROWS_AS(liouville_field(heisenberg_times_line(1)), ContactError);
}
