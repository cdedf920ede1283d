#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "solvcontact/lattice.hpp"

using namespace solvcontact;

namespace {

bool check_passed(const Report& r, const std::string& name) {
  const Check* c = r.find(name);
  return c && c->status == Status::Pass;
}

MatrixQ quarter_block(const MatrixQ& claim) {
  return MatrixQ{{claim(0, 0), claim(0, 1)}, {claim(1, 0), claim(1, 1)}};
}

/// Unimodular U with first column e1, so a central first basis vector stays put.
MatrixQ random_unimodular_fixing_first(std::size_t n) {
  const MatrixQ inner = testutil::random_unimodular(n - 1);
  MatrixQ u = MatrixQ::identity(n);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) u(i, j) = inner(i - 1, j - 1);
  for (std::size_t j = 1; j < n; ++j) u(0, j) = Rational(testutil::uniform(-2, 2));
  return u;
}

}  // namespace

TEST_CASE("nilpotent Q-forms") {
  for (const char* name : {"D1", "D2", "D3"}) {
    const auto e = get(name);
    CHECK(verify_nilpotent_qform(e));
    CHECK(verify_certificate(e, identity_certificate(e)).passed());
  }
  CHECK_THROWS(verify_nilpotent_qform(get("D5")));
  for (const char* name : {"D2", "D3"}) {
    const auto e = get(name);
    CHECK(verify_central_extension_certificate(e, identity_certificate(e)).passed());
  }
}

TEST_CASE("D5 certificate") {
  const auto d5 = get("D5");
  const auto c3 = build_d5_certificate(3);
  CHECK(c3.field == FieldKind::Quadratic);
  CHECK(c3.d == 5);
  REQUIRE(c3.unit_exp);
  CHECK(*c3.unit_exp * c3.unit_exp->inverse() == Quadratic(1));
  CHECK(*c3.unit_exp + c3.unit_exp->inverse() == Quadratic(3));
  CHECK(c3.unit_exp->norm() == 1);

  const Report r = verify_central_extension_certificate(d5, c3);
  CHECK(r.passed());
  CHECK(base_claim(d5, c3) == MatrixQ{{0, -1, 0}, {1, 3, 0}, {0, 0, 1}});
  CHECK(verify_certificate(d5, c3).passed());

  const auto pairings = omega_pairings(d5, c3);
  bool found = false;
  for (const auto& [name, v] : pairings) {
    CHECK(v.is_constant());
    CHECK(v.constant_term().is_rational());
    if (name == "omega(X2,X3)") {
      found = true;
      CHECK(v == CertScalar(Quadratic(1)));
    }
  }
  CHECK(found);

  for (long m0 : {4L, 5L, 7L}) {
    const auto c = build_d5_certificate(m0, make_rational(2, 3));
    CHECK_MESSAGE(verify_central_extension_certificate(d5, c).passed(), m0);
    const MatrixQ b = base_claim(d5, c);
    CHECK(b == MatrixQ{{0, -1, 0}, {1, Rational(m0), 0}, {0, 0, 1}});
    CHECK(b.trace() == m0 + 1);
    CHECK(determinant(b) == 1);
  }
  CHECK_THROWS_AS(build_d5_certificate(2), InvalidParameter);
  CHECK_THROWS_AS(build_d5_certificate(3, 0), InvalidParameter);

  // X3 perturbed by +e4: the conjugated db_s is no longer the claimed integer matrix
  auto bad = c3;
  bad.b0(3, 2) += Quadratic(1);
  const Report rb = verify_certificate(d5, bad);
  CHECK_FALSE(rb.passed());
  CHECK_FALSE(check_passed(rb, "db_s[1]"));
}

TEST_CASE("D11 certificate") {
  const auto d11 = get("D11");
  const auto c1 = build_d11_certificate(1, 1);
  CHECK(c1.field == FieldKind::QuarterTurn);
  CHECK(verify_central_extension_certificate(d11, c1).passed());
  const MatrixQ b1 = base_claim(d11, c1);
  CHECK(b1 == MatrixQ{{0, 1, 0}, {-1, 0, 0}, {0, 0, 1}});

  const auto pairings = omega_pairings(d11, c1);
  std::map<std::string, CertScalar> by_name(pairings.begin(), pairings.end());
  CHECK(by_name.at("omega(X2,X3)") == CertScalar(Quadratic(1)));
  CHECK(by_name.at("omega(X4,lambda1)") == CertScalar(Quadratic(make_rational(1, 2))));

  CHECK(quarter_block(base_claim(d11, build_d11_certificate(2, 1))) == MatrixQ{{-1, 0}, {0, -1}});
  CHECK(quarter_block(base_claim(d11, build_d11_certificate(4, 1))) == MatrixQ::identity(2));
  CHECK(quarter_block(base_claim(d11, build_d11_certificate(3, 1))) == MatrixQ{{0, -1}, {1, 0}});

  for (long k0 : {1L, 2L, 3L, 5L}) {
    for (const Rational& q0 : {Rational(1), make_rational(3, 2)}) {
      for (long eps : {1L, -1L}) {
        const auto e = get("D11", {{"eps", eps}});
        const auto c = build_d11_certificate(k0, q0, eps);
        CHECK(verify_central_extension_certificate(e, c).passed());
        const auto ps = omega_pairings(e, c);
        std::map<std::string, CertScalar> m(ps.begin(), ps.end());
        // zeta(X4, t0 e5) = eps k0 q0 / 2
        CHECK(m.at("omega(X4,lambda1)") == CertScalar(Quadratic(Rational(eps * k0) * q0 / 2)));
      }
    }
  }
}

TEST_CASE("certificate basis-change invariance") {
  const auto d5 = get("D5");
  const auto d11 = get("D11");
  const auto d2 = get("D2");
  const std::vector<std::pair<const CatalogEntry*, LatticeCertificate>> base{
      {&d5, build_d5_certificate(3)},
      {&d5, build_d5_certificate(4, make_rational(1, 2))},
      {&d11, build_d11_certificate(1, 1)},
      {&d11, build_d11_certificate(3, make_rational(2, 5))},
      {&d2, identity_certificate(d2)}};
  int instances = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& [entry, cert] = base[static_cast<std::size_t>(trial) % base.size()];
    const std::size_t n = cert.mix.rows();
    const MatrixQ u = testutil::random_unimodular(n);
    const auto moved = cert.change_basis(u);
    CHECK(verify_certificate(*entry, moved).passed());
    const auto ui = *inverse(u);
    for (std::size_t g = 0; g < cert.claims_s.size(); ++g) {
      CHECK(moved.claims_s[g] == ui * cert.claims_s[g] * u);
      CHECK(char_poly(moved.claims_s[g]) == char_poly(cert.claims_s[g]));
    }
    const MatrixQ uc = random_unimodular_fixing_first(n);
    CHECK(verify_central_extension_certificate(*entry, cert.change_basis(uc)).passed());
    ++instances;
  }
  CHECK(instances >= 100);
  CHECK_THROWS_AS(build_d5_certificate(3).change_basis(MatrixQ(4, 4)), CertificateError);
}

TEST_CASE("commuting-pair certificates") {
  const auto d18 = get("D18");
  const auto [t1, t2] = d18_pair();
  const auto c18 = build_commuting_pair_certificate(d18, t1, t2);
  CHECK(c18.report.passed());
  CHECK(std::fabs(c18.det_f) > 1e-6);
  // the f's are the logs of the paired eigenvalues
  std::vector<double> l1, l2;
  for (const auto& b : c18.eigen.blocks) {
    l1.push_back(std::log(b.eigenvalues[0].real()));
    l2.push_back(std::log(b.eigenvalues[1].real()));
  }
  CHECK(std::fabs(l1[0] + l1[1] + l1[2]) < 1e-9);
  CHECK(std::fabs(l2[0] + l2[1] + l2[2]) < 1e-9);

  CHECK_THROWS_AS(build_commuting_pair_certificate(d18, t1, t1), CertificateError);
  CHECK_THROWS_AS(build_commuting_pair_certificate(d18, t1, MatrixQ{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                  CertificateError);
  CHECK_THROWS_AS(build_commuting_pair_certificate(get("D5"), t1, t2), CertificateError);

  const auto d20 = get("D20");
  const auto [u1, u2] = d20_pair();
  CHECK_THROWS_AS(build_commuting_pair_certificate(d18, u1, u2), CertificateError);
  CHECK_THROWS_AS(build_commuting_pair_certificate(d20, t1, t2), CertificateError);
  const auto c20 = build_commuting_pair_certificate(d20, u1, u2);
  CHECK(c20.report.passed());
  CHECK(std::fabs(c20.f1[0] / c20.f2[0] - (-3.0)) < 1e-3);
  CHECK(std::fabs(c20.det_f) > 1e-6);
  // U1 = U2^-3 exactly, so the rotation angles satisfy beta1 = -3 beta2 mod 2 pi
  const MatrixQ u2i = *inverse(u2);
  CHECK(u1 == u2i * u2i * u2i);
  const double k = (c20.f1[1] + 3 * c20.f2[1]) / (2 * M_PI);
  CHECK(std::fabs(k - std::round(k)) < 1e-9);

  // conjugating the pair by an integer unimodular matrix gives another accepted pair
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixQ u = testutil::random_unimodular(3);
    const MatrixQ ui = *inverse(u);
    CHECK(build_commuting_pair_certificate(d18, ui * t1 * u, ui * t2 * u).report.passed());
    CHECK(build_commuting_pair_certificate(d20, ui * u1 * u, ui * u2 * u).report.passed());
  }
}

TEST_CASE("reciprocal obstruction") {
  const auto d13 = obstruction_reciprocal(get("D13"));
  CHECK(d13.stratum_text == "<e1>");
  CHECK(d13.stratum_sum == make_rational(1, 2));
  CHECK(d13.complement_sum == make_rational(-1, 2));
  CHECK(d13.mu == make_rational(1, 2));
  CHECK(d13.report.passed());

  const auto d15 = obstruction_reciprocal(get("D15"));
  CHECK(d15.stratum.rank() == 2);
  CHECK(d15.stratum_sum == make_rational(-1, 3));
  CHECK(d15.complement_sum == make_rational(1, 3));
  CHECK(d15.mu == make_rational(1, 3));

  const auto d4 = obstruction_reciprocal(get("D4", {{"p", 2}}));
  CHECK(d4.stratum_sum == -3);
  CHECK(d4.mu == 3);
  CHECK(obstruction_reciprocal(get("D8")).mu == 2);
  CHECK(obstruction_reciprocal(get("D10", {{"p", 1}})).mu == 2);

  for (int trial = 0; trial < 20; ++trial) {
    Rational p = testutil::random_rational(9, 7);
    if (p == -1 || p == 0) p = make_rational(5, 3);
    const auto r4 = obstruction_reciprocal(get("D4", {{"p", p}}));
    CHECK(r4.mu == abs(p + 1));
    const auto r10 = obstruction_reciprocal(get("D10", {{"p", p}}));
    CHECK(r10.mu == abs(2 * p));
  }
  CHECK_THROWS_AS(obstruction_reciprocal(get("D5")), ObstructionInapplicable);
  CHECK_THROWS_AS(obstruction_reciprocal(get("D18")), ObstructionInapplicable);
}

TEST_CASE("sawai-yamada lattice check") {
  CHECK(reciprocal_trace(0, 3) == 2);
  CHECK(reciprocal_trace(1, 3) == 3);
  CHECK(reciprocal_trace(2, 3) == 7);
  CHECK(reciprocal_trace(3, 3) == 18);
  CHECK(reciprocal_trace(-2, 3) == 7);

  const auto r = sy_lattice_check(1, 1, 3);
  CHECK(r.report.passed());
  const PolynomialQ q1(std::vector<Rational>{1, -3, 1}), q2(std::vector<Rational>{1, -7, 1});
  CHECK(r.f == q1 * q1 * q2);
  CHECK(sy_lattice_check(1, 2, 3).c[2] == 18);
  const auto zero = sy_lattice_check(0, 0, 3);
  const PolynomialQ xm1(std::vector<Rational>{-1, 1});
  PolynomialQ six = 1;
  for (int i = 0; i < 6; ++i) six *= xm1;
  CHECK(zero.f == six);
  for (long m0 : {3L, 4L, 5L})
    for (auto [a1, a2] : std::vector<std::pair<long, long>>{{1, 1}, {1, 2}, {2, 3}}) {
      const auto s = sy_lattice_check(a1, a2, m0);
      CHECK(s.report.passed());
      CHECK(s.f.has_integer_coefficients());
      // c_a = e^{a t0} + e^{-a t0} = 2 cosh(a t0)
      const double t0 = std::acosh(m0 / 2.0);
      CHECK(std::fabs(s.c[0].get_d() - 2 * std::cosh(static_cast<double>(a1) * t0)) < 1e-6 * s.c[0].get_d());
    }
}

TEST_CASE("lattice verdicts") {
  for (const auto& e : d_entries()) {
    const Report r = lattice_check(e);
    CHECK_MESSAGE(r.passed(), e.name);
    const Check* v = r.find("verdict");
    REQUIRE(v);
    CHECK(v->detail == (e.lattice == LatticeStatus::Exists ? "accepted" : "obstructed"));
  }
  CHECK(lattice_check(sy_algebra(1, 2)).passed());
}

TEST_CASE("certificate text format") {
  const auto d5 = get("D5");
  for (const auto& c : {build_d5_certificate(3), build_d5_certificate(5, make_rational(3, 7)),
                        build_d11_certificate(1, 1), identity_certificate(get("D1"))}) {
    const std::string text = write_certificate(c);
    std::istringstream in(text);
    const auto back = parse_certificate(in);
    CHECK(write_certificate(back) == text);
  }
  std::istringstream in(write_certificate(build_d5_certificate(3)));
  CHECK(verify_central_extension_certificate(d5, parse_certificate(in)).passed());

  const auto [t1, t2] = d18_pair();
  const PairFile pf{"D18", t1, t2};
  std::istringstream pin(write_pair_file(pf));
  const auto back = parse_pair_file(pin);
  CHECK(back.m1 == t1);
  CHECK(back.m2 == t2);

  auto error_line = [](const std::string& text) -> std::size_t {
    std::istringstream s(text);
    try {
      parse_certificate(s);
    } catch (const CatalogParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(error_line("cert D5 field=5 dim=4\nbasiscol 9 1:1+0r\n") == 2);
  CHECK(error_line("cert D5 field=5 dim=4\nunit t0 exp=x\n") == 2);
  CHECK(error_line("cert D5 field=5 dim=4\n\nwobble\n") == 3);
  CHECK(error_line("cert D5 field=1 dim=4\n") == 1);
  CHECK(error_line("") == 0 + 0);
}
