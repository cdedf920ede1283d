// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "solvcontact/boundary.hpp"
#include "solvcontact/catalog.hpp"
#include "solvcontact/exterior.hpp"
#include "solvcontact/lattice.hpp"
#include "solvcontact/linalg.hpp"

using namespace solvcontact;

namespace {

/// Collects failed sub-checks of one criterion.
struct Tally {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  int checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

PolynomialQ poly(std::initializer_list<long> low_to_high) {
  std::vector<Rational> c;
  for (long v : low_to_high) c.emplace_back(v);
  return PolynomialQ(c);
}

std::vector<double> sorted_roots(const PolynomialQ& p) {
  std::vector<double> out;
  for (const auto& r : real_roots(p, make_rational(1, 1000000))) out.push_back(r.approx);
  std::sort(out.begin(), out.end());
  return out;
}

bool close_all(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (std::fabs(got[i] - want[i]) >= tol) return false;
  return true;
}

KForm random_form(std::size_t dim, std::size_t degree) {
  KForm f(dim, degree);
  const IndexMask full = (IndexMask(1) << dim) - 1;
  for (int k = 0; k < 4; ++k) {
    IndexMask m = 0;
    while (static_cast<std::size_t>(popcount(m)) != degree)
      m = static_cast<IndexMask>(testutil::uniform(0, static_cast<long>(full)));
    f.add_mask(m, testutil::random_rational());
  }
  return f;
}

MatrixQ random_jordan_conjugate(std::size_t n) {
  MatrixQ j(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i) = Rational(testutil::uniform(-2, 2));
    if (i > 0 && testutil::uniform(0, 2) == 0) {
      j(i, i) = j(i - 1, i - 1);
      j(i - 1, i) = 1;
    }
  }
  const MatrixQ p = testutil::random_unimodular(n, 8);
  return p * j * *inverse(p);
}

PolynomialQ s_pow(std::size_t k) {
  PolynomialQ p = 1;
  for (std::size_t i = 0; i < k; ++i) p *= PolynomialQ(std::vector<Rational>{0, 1});
  return p;
}

Rational nonzero_parameter(Rational p, const Rational& fallback) {
  return p == 0 || p == -1 ? fallback : p;
}

void catalog_soundness(Tally& t) {
  const auto names = d_list();
  t.expect(names.size() == 12, "expected 12 entries");
  for (const auto& name : names) {
    const auto e = get(name);
    t.expect(check_jacobi(*e.algebra).empty(), name + " jacobi");
    t.expect(is_unimodular(*e.algebra), name + " unimodular");
    t.expect(e.contact && is_contact(*e.algebra, *e.contact), name + " contact");
  }
  t.note(std::to_string(names.size()) + " entries");
}

void appendix(Tally& t) {
  int n = 0;
  for (const auto& e : all_entries()) {
    if (!e.split) continue;
    t.expect(appendix_consistency(e).passed(), e.name);
    ++n;
  }
  for (const Rational& p : {make_rational(1, 2), Rational(2), make_rational(-3, 4)}) {
    t.expect(appendix_consistency(get("D4", {{"p", p}})).passed(), "D4 p=" + to_string(p));
    t.expect(appendix_consistency(get("D10", {{"p", p}})).passed(), "D10 p=" + to_string(p));
  }
  t.note(std::to_string(n) + " split entries");
}

void partition(Tally& t) {
  std::vector<std::string> accepted, obstructed;
  for (const auto& e : d_entries()) {
    const Report r = lattice_check(e);
    const Check* v = r.find("verdict");
    t.expect(r.passed() && v, e.name + " lattice check");
    if (!v) continue;
    (v->detail == "accepted" ? accepted : obstructed).push_back(e.family);
  }
  t.expect(accepted == std::vector<std::string>{"D1", "D2", "D3", "D5", "D11", "D18", "D20"}, "accepted set");
  t.expect(obstructed == std::vector<std::string>{"D4", "D8", "D10", "D13", "D15"}, "obstructed set");
  for (int i = 0; i < 20; ++i) {
    const Rational p = nonzero_parameter(testutil::random_rational(9, 7), make_rational(5, 3));
    const auto r4 = obstruction_reciprocal(get("D4", {{"p", p}}));
    t.expect(r4.report.passed() && r4.mu == abs(p + 1), "D4 p=" + to_string(p));
    const auto r10 = obstruction_reciprocal(get("D10", {{"p", p}}));
    t.expect(r10.report.passed() && r10.mu == abs(2 * p), "D10 p=" + to_string(p));
  }
  std::string acc, obs;
  for (const auto& a : accepted) acc += (acc.empty() ? "" : ",") + a;
  for (const auto& o : obstructed) obs += (obs.empty() ? "" : ",") + o;
  t.note("accepted {" + acc + "}, obstructed {" + obs + "}, D4/D10 at 20 random p");
}

void golden_central(Tally& t) {
  const auto d5 = get("D5");
  const auto c5 = build_d5_certificate(3);
  t.expect(verify_central_extension_certificate(d5, c5).passed(), "D5 certificate");
  t.expect(base_claim(d5, c5) == MatrixQ{{0, -1, 0}, {1, 3, 0}, {0, 0, 1}}, "D5 matrix");
  bool found = false;
  for (const auto& [name, v] : omega_pairings(d5, c5)) {
    if (name != "omega(X2,X3)") continue;
    found = true;
    t.expect(v.is_constant() && v.constant_term().is_rational(), "omega(X2,X3) rational");
  }
  t.expect(found, "omega(X2,X3) present");

  const auto d11 = get("D11");
  const auto c11 = build_d11_certificate(1, 1);
  t.expect(verify_central_extension_certificate(d11, c11).passed(), "D11 certificate");
  const auto ps = omega_pairings(d11, c11);
  const auto it = std::find_if(ps.begin(), ps.end(), [](const auto& p) { return p.first == "omega(X4,lambda1)"; });
  t.expect(it != ps.end() && it->second == CertScalar(Quadratic(make_rational(1, 2))), "zeta(X4,t0 e5) = 1/2");
  t.note("D5 matrix [[0,-1,0],[1,3,0],[0,0,1]], D11 zeta = 1/2");
}

void golden_pairs(Tally& t) {
  const auto [t1, t2] = d18_pair();
  t.expect(char_poly(t1) == poly({-1, 5, -6, 1}), "char_poly T1");
  t.expect(char_poly(t2) == poly({-1, 17, -10, 1}), "char_poly T2");
  t.expect(sturm_count(char_poly(t1), -100, 100) == 3, "sturm T1");
  t.expect(sturm_count(char_poly(t2), -100, 100) == 3, "sturm T2");
  t.expect(close_all(sorted_roots(char_poly(t1)), {0.3080, 0.6431, 5.0489}, 5e-4), "roots T1");
  t.expect(close_all(sorted_roots(char_poly(t2)), {0.0610, 2.0882, 7.8509}, 5e-4), "roots T2");
  t.expect(build_commuting_pair_certificate(get("D18"), t1, t2).report.passed(), "D18 pair");

  const auto [u1, u2] = d20_pair();
  const auto r1 = sorted_roots(char_poly(u1)), r2 = sorted_roots(char_poly(u2));
  t.expect(close_all(r1, {2.3247}, 5e-4), "real root U1");
  t.expect(close_all(r2, {0.7549}, 5e-4), "real root U2");
  const auto c = build_commuting_pair_certificate(get("D20"), u1, u2);
  t.expect(c.report.passed(), "D20 pair");
  const double ln_ratio = c.f1[0] / c.f2[0];
  const double beta_ratio = c.f1[1] / c.f2[1];
  t.expect(std::fabs(ln_ratio + 3.0) < 1e-3, "ln a1/ln a2 = " + fmt(ln_ratio));
  t.expect(std::fabs(beta_ratio - 1.4589) < 1e-3, "beta1/beta2 = " + fmt(beta_ratio, 5) + ", expected 1.4589");
  t.expect(std::fabs(c.det_f) > 1e-6, "independence");
  t.note("ln ratio " + fmt(ln_ratio) + ", beta ratio " + fmt(beta_ratio, 5) + ", |det f| " + fmt(std::fabs(c.det_f), 6));
}

void boundary_theorem(Tally& t) {
  std::vector<CatalogEntry> entries;
  for (const auto& e : d_entries())
    if (e.lattice == LatticeStatus::Exists) entries.push_back(e);
  t.expect(entries.size() == 7, "seven positive entries");
  entries.push_back(heisenberg(1));
  entries.push_back(heisenberg(3));
  for (const auto& e : entries) {
    const auto& L = *e.algebra;
    const std::size_t n = (L.dim() - 1) / 2;
    const SForm omega = omega_form(e);
    const KForm deta = ce_differential(L, *e.contact);
    const SForm expected = PolynomialQ(Rational(static_cast<long>(n + 1))) *
                           wedge(SForm::ds(L.dim()), s_pow(n) * SForm::lift(wedge(*e.contact, wedge_power(deta, n))));
    t.expect(wedge_power(omega, n + 1) == expected, e.name + " top power");
    // L_X Omega = d i_X Omega + i_X d Omega
    const SVector x = liouville_field(e);
    const SForm lie = d(L, interior_product(x, omega)) + interior_product(x, d(L, omega));
    t.expect(lie == omega, e.name + " Liouville");
  }
  t.note(std::to_string(entries.size()) + " algebras");
}

void heisenberg_forms(Tally& t) {
  for (std::size_t n : {1u, 2u}) {
    for (int i = 0; i < 100; ++i) {
      const HeisenbergPoint p{testutil::random_vector(n, 6, 5), testutil::random_vector(n, 6, 5),
                              testutil::random_rational(6, 5)};
      t.expect(heisenberg_exp(heisenberg_ln(p)) == p, "exp(ln p) on H" + std::to_string(2 * n + 1));
    }
    t.expect(integer_lattice_check(n).passed(), "integer points of H" + std::to_string(2 * n + 1));
  }
  t.note("100 points each on H3, H5");
}

void sawai_yamada(Tally& t) {
  int n = 0;
  for (auto [a1, a2] : std::vector<std::pair<long, long>>{{1, 1}, {1, 2}, {2, 3}})
    for (long m0 : {3L, 4L, 5L}) {
      const auto r = sy_lattice_check(a1, a2, m0);
      const std::string tag = "(" + std::to_string(a1) + "," + std::to_string(a2) + ") m0=" + std::to_string(m0);
      t.expect(r.report.passed() && r.f.has_integer_coefficients(), tag);
      ++n;
    }
  t.note(std::to_string(n) + " polynomials");
}

void property_suites(Tally& t) {
  const auto entries = d_entries();
  int dd = 0;
  for (int i = 0; i < 100; ++i) {
    const auto& L = *entries[static_cast<std::size_t>(i) % entries.size()].algebra;
    const KForm a = random_form(L.dim(), static_cast<std::size_t>(testutil::uniform(0, 4)));
    t.expect(ce_differential(L, ce_differential(L, a)).is_zero(), "d o d");
    ++dd;
  }
  int ch = 0;
  for (int i = 0; i < 100; ++i) {
    const MatrixQ m = testutil::random_matrix(static_cast<std::size_t>(testutil::uniform(1, 6)));
    t.expect(char_poly(m).at_matrix(m).is_zero(), "Cayley-Hamilton");
    ++ch;
  }
  int jc = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = static_cast<std::size_t>(testutil::uniform(2, 5));
    const MatrixQ m = i % 4 == 3 ? testutil::random_matrix(n) : random_jordan_conjugate(n);
    const auto d = jordan_chevalley(m);
    t.expect(d.s + d.n == m && commute(d.s, d.n) && is_nilpotent(d.n) && is_semisimple(d.s), "Jordan-Chevalley");
    ++jc;
  }
  const auto d5 = get("D5");
  const auto d11 = get("D11");
  const std::vector<std::pair<const CatalogEntry*, LatticeCertificate>> base{
      {&d5, build_d5_certificate(3)}, {&d5, build_d5_certificate(5, make_rational(1, 3))},
      {&d11, build_d11_certificate(1, 1)}, {&d11, build_d11_certificate(2, make_rational(3, 2))}};
  int bc = 0;
  for (int i = 0; i < 100; ++i) {
    const auto& [e, c] = base[static_cast<std::size_t>(i) % base.size()];
    const MatrixQ u = testutil::random_unimodular(c.mix.rows());
    t.expect(verify_certificate(*e, c.change_basis(u)).passed(), "basis change");
    ++bc;
  }
  t.note("d o d " + std::to_string(dd) + ", Cayley-Hamilton " + std::to_string(ch) + ", Jordan-Chevalley " +
         std::to_string(jc) + ", basis change " + std::to_string(bc));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria{
      {"catalog soundness", catalog_soundness},
      {"appendix consistency", appendix},
      {"lattice partition", partition},
      {"central-extension golden values", golden_central},
      {"commuting-pair golden values", golden_pairs},
      {"boundary symplectic form", boundary_theorem},
      {"Heisenberg closed forms", heisenberg_forms},
      {"Sawai-Yamada polynomials", sawai_yamada},
      {"property suites", property_suites}};
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Tally t;
    try {
      criteria[i].second(t);
    } catch (const std::exception& e) {
      t.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = t.failures.empty();
    if (!ok) ++failed;
    std::ostringstream line;
    line << "criterion " << i + 1 << " " << (ok ? "PASS" : "FAIL") << "  " << criteria[i].first << " (" << t.checks
         << " checks";
    for (const auto& n : t.notes) line << "; " << n;
    line << ")";
    for (const auto& f : t.failures) line << "\n    failed: " << f;
    std::printf("%s\n", line.str().c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu of %zu criteria passed in %.2f s\n", criteria.size() - static_cast<std::size_t>(failed),
              criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
