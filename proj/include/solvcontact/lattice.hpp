#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "solvcontact/catalog.hpp"
#include "solvcontact/linalg.hpp"
#include "solvcontact/quadratic.hpp"
#include "solvcontact/report.hpp"
#include "solvcontact/unit_poly.hpp"

namespace solvcontact {

/// Exact certificate scalar: Laurent polynomial in the certificate's unit
/// (t0 or pi) with coefficients in Q(sqrt d).
using CertScalar = UnitPoly<Quadratic>;

enum class FieldKind { Rational, Quadratic, QuarterTurn };

const char* to_string(FieldKind k);

/// Witness that b(Lambda) acts by integer matrices on a Q-form of the
/// nilradical. The basis of the nilradical is B0 * diag(u^k_j) * R, with
/// columns in the coordinates of the entry's nilradical basis. Lattice
/// generator a is lambda_a = u * sum_b tgens[a][b] T_b.
struct LatticeCertificate {
  std::string entry;
  FieldKind field = FieldKind::Rational;
  long d = 0;                    // discriminant for FieldKind::Quadratic
  std::optional<Quadratic> unit_exp;  // e^u when u = t0
  Matrix<Quadratic> b0;
  std::vector<int> unit_powers;
  MatrixQ mix;
  std::vector<VecQ> tgens;
  std::vector<MatrixQ> claims_s;  // integer
  std::vector<MatrixQ> claims_n;  // rational

  std::string unit_name() const;
  /// The full basis matrix B0 diag(u^k) R.
  Matrix<CertScalar> basis() const;
  /// Same certificate in the basis X U, for U in GL(n, Z): claims become U^-1 M U.
  LatticeCertificate change_basis(const MatrixQ& u) const;
};

class CertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structure constants of a nilpotent entry are rational in the stored basis.
bool verify_nilpotent_qform(const CatalogEntry& e);

/// Integer-action and Q-form conditions for the certificate on the entry's nilradical.
Report verify_certificate(const CatalogEntry& e, const LatticeCertificate& cert);

/// Central-extension conditions: integer representation on the base
/// nilradical and rationality of omega on basis and lattice generators.
Report verify_central_extension_certificate(const CatalogEntry& e, const LatticeCertificate& cert);

/// Integer matrix of db_s(lambda) on the base nilradical (the central
/// direction removed), as printed in the certificate narrative.
MatrixQ base_claim(const CatalogEntry& e, const LatticeCertificate& cert, std::size_t gen = 0);

/// omega(X_i, X_j) and omega(X_i, lambda_a) on the base algebra, labelled "omega(X2,X3)", ...
std::vector<std::pair<std::string, CertScalar>> omega_pairings(const CatalogEntry& e, const LatticeCertificate& cert);

/// Identity basis, no lattice generators (nilpotent entries).
LatticeCertificate identity_certificate(const CatalogEntry& e);
LatticeCertificate build_d5_certificate(long m0, const Rational& q = 1);
LatticeCertificate build_d11_certificate(long k0, const Rational& q0 = 1, long eps = 1);

/// Hybrid exact/numeric certificate for a two-dimensional T.
struct CommutingPairCertificate {
  std::string entry;
  MatrixQ m1, m2;
  SimultaneousEigenbasis eigen;
  Matrix<double> basis;  // X = Psi^-1 up to the block order of the entry
  std::vector<double> f1, f2;  // lattice generators in T coordinates
  double det_f = 0;
  Report report;
};

/// Throws CertificateError on non-commuting input, wrong spectral shape, or dependent f1, f2.
CommutingPairCertificate build_commuting_pair_certificate(const CatalogEntry& e, const MatrixQ& m1,
                                                          const MatrixQ& m2, double tol = 1e-8);

/// The two matrices of the certificate narrative.
std::pair<MatrixQ, MatrixQ> d18_pair();
std::pair<MatrixQ, MatrixQ> d20_pair();

struct ObstructionReport {
  std::string entry;
  Subspace stratum = Subspace::zero(0);
  std::string stratum_text;
  PolynomialQ stratum_char_poly;     // of beta_s on the stratum
  PolynomialQ complement_char_poly;  // of beta_s on n / stratum
  Rational stratum_sum;              // sum of exponents on the stratum
  Rational complement_sum;
  Rational mu;                       // |stratum_sum|
  std::string conclusion;
  Report report;
};

class ObstructionInapplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Reciprocal-integer obstruction for a one-dimensional T; throws
/// ObstructionInapplicable when mu = 0 or T is not one-dimensional.
ObstructionReport obstruction_reciprocal(const CatalogEntry& e);

/// Integer coefficients of prod_j (x^2 - c_{a_j} x + 1), c_a = e^{a t0} + e^{-a t0}, m0 = c_1.
struct SawaiYamadaResult {
  std::vector<Integer> c;          // c_{a_1}, c_{a_2}, c_{a_3}
  PolynomialQ f;
  Report report;
};
SawaiYamadaResult sy_lattice_check(long a1, long a2, long m0);

/// c_a by the recurrence c_a = m0 c_{a-1} - c_{a-2}.
Integer reciprocal_trace(long a, long m0);

/// Shipped certificate or obstruction per the entry's lattice status.
Report lattice_check(const CatalogEntry& e);

/// Line-oriented certificate text.
std::string write_certificate(const LatticeCertificate& c);
LatticeCertificate parse_certificate(std::istream& in);

/// Commuting-pair input: `pair <entry>` followed by `m1 <row> <col> <int>` / `m2 ...` lines.
struct PairFile {
  std::string entry;
  MatrixQ m1, m2;
};
std::string write_pair_file(const PairFile& p);
PairFile parse_pair_file(std::istream& in);

/// Either format, dispatched on the first directive.
struct CertificateFile {
  std::optional<LatticeCertificate> cert;
  std::optional<PairFile> pair;
};
CertificateFile parse_certificate_file(const std::string& path);

}  // namespace solvcontact
