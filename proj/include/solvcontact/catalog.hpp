#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solvcontact/closed_form.hpp"
#include "solvcontact/exterior.hpp"
#include "solvcontact/lie_algebra.hpp"
#include "solvcontact/report.hpp"

namespace solvcontact {

enum class LatticeStatus { Exists, None, OutOfScope };
const char* to_string(LatticeStatus s);
std::optional<LatticeStatus> parse_lattice_status(const std::string& s);

class UnknownEntry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Params = std::map<std::string, Rational>;

struct ExpectedFlags {
  bool unimodular = true;
  bool solvable = true;
  bool nilpotent = false;
};

/// g = b x_omega R z with z central at `central_index`; base_split is the
/// split of b used by the central-extension lattice criterion.
struct CentralExtensionData {
  std::shared_ptr<const LieAlgebra> base;
  KForm omega;
  std::size_t central_index = 0;
  SplitData base_split;
};

struct CatalogEntry {
  std::string name;    // display name, e.g. "D4(p=2)"
  std::string family;  // "D4", "H", "SA", ...
  Params params;
  std::shared_ptr<const LieAlgebra> algebra;
  std::optional<KForm> contact;
  std::optional<KForm> symplectic;
  /// The n +_beta T description with its closed form db (variables t_i
  /// correspond to the T generators in order).
  std::optional<SplitData> split;
  std::optional<ClosedForm> closed_form;
  Subspace nilradical;
  std::optional<CentralExtensionData> central;
  ExpectedFlags expected;
  LatticeStatus lattice = LatticeStatus::OutOfScope;
  std::vector<std::string> notes;
};

/// Names of the twelve five-dimensional unimodular solvable contact algebras.
const std::vector<std::string>& d_list();

/// Builds an entry. Families: D1 D2 D3 D4(p) D5 D8 D10(p) D11(eps) D13 D15
/// D18 D20 H(n) HR(n) SA(n) SY(a1,a2). Throws UnknownEntry / InvalidParameter.
CatalogEntry get(const std::string& family, const Params& params = {});

/// Accepts "D4", "D4(p=3)", "SY(a1=1,a2=2)", ...
CatalogEntry get_by_spec(const std::string& spec);
std::pair<std::string, Params> parse_entry_spec(const std::string& spec);

/// The twelve D-entries at default parameters.
std::vector<CatalogEntry> d_entries();
/// D-entries plus H(1..3), HR(1), SA(2), SA(3), SY(1,1).
std::vector<CatalogEntry> all_entries();

CatalogEntry heisenberg(std::size_t n);
CatalogEntry heisenberg_times_line(std::size_t n);
CatalogEntry sa_algebra(std::size_t n);
CatalogEntry sy_algebra(const Rational& a1, const Rational& a2);

/// (i) beta derivations; (ii) exact identity db(t) = exp(t beta) where the
/// spectrum allows a closed form, exact values at rational or quarter-turn
/// t where the entries permit; (iii) numeric agreement at t in {1/2, 1, 2}.
Report appendix_consistency(const CatalogEntry& e, double tol = 1e-10);
/// Same, against a supplied closed form (e.g. a verbatim transcription).
Report appendix_consistency(const CatalogEntry& e, const ClosedForm& claimed, double tol = 1e-10);

/// Re-derives Jacobi, flags, contact, nilradical and appendix consistency.
Report verify_entry(const CatalogEntry& e, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Heisenberg group H^{2n+1} in the coordinates gamma(z, x, y).

struct HeisenbergPoint {
  VecQ x;
  VecQ y;
  Rational z;
  std::size_t n() const { return x.size(); }
  friend bool operator==(const HeisenbergPoint& a, const HeisenbergPoint& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

/// Algebra element c e1 + sum a_k e_{k+1} + sum b_k e_{n+k+1}.
struct HeisenbergVector {
  VecQ a;
  VecQ b;
  Rational c;
  friend bool operator==(const HeisenbergVector& u, const HeisenbergVector& v) {
    return u.a == v.a && u.b == v.b && u.c == v.c;
  }
};

HeisenbergPoint heisenberg_identity(std::size_t n);
HeisenbergPoint heisenberg_mul(const HeisenbergPoint& p, const HeisenbergPoint& q);
HeisenbergPoint heisenberg_inverse(const HeisenbergPoint& p);
HeisenbergPoint heisenberg_exp(const HeisenbergVector& v);
HeisenbergVector heisenberg_ln(const HeisenbergPoint& p);
/// (n+2) x (n+2) matrix model.
MatrixQ heisenberg_matrix(const HeisenbergPoint& p);
/// Velocity of s -> p exp(s v) at s = 0 in (z, x, y) coordinates.
HeisenbergPoint heisenberg_left_translate(const HeisenbergPoint& p, const HeisenbergVector& v);
/// (dz - sum x_i dy_i) at p applied to a coordinate velocity.
Rational heisenberg_contact_form_at(const HeisenbergPoint& p, const HeisenbergPoint& velocity);
/// Coordinates of v in the basis e1..e_{2n+1}.
VecQ heisenberg_coordinates(const HeisenbergVector& v);

/// Closure of the points with x, y integer and z in (1/denominator) Z under
/// multiplication and inversion, checked on generators and random products.
Report integer_lattice_check(std::size_t n, long z_denominator = 1);

// ---------------------------------------------------------------------------
// Text format.

class CatalogParseError : public std::runtime_error {
 public:
  CatalogParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct CatalogRecord {
  std::size_t line = 0;  // line of the `algebra` header
  std::string name;
  std::shared_ptr<const LieAlgebra> algebra;
  std::optional<KForm> contact;
  std::vector<std::size_t> split_n;  // 0-based basis indices
  std::vector<std::size_t> split_t;
  std::vector<MatrixQ> beta;
  std::map<std::string, std::string> flags;
};

std::string write_catalog(const std::vector<CatalogEntry>& entries);
std::vector<CatalogRecord> parse_catalog(std::istream& in);
std::vector<CatalogRecord> parse_catalog_file(const std::string& path);

/// Checks a parsed record on its own (Jacobi, flags, contact, split).
Report verify_record(const CatalogRecord& r);
/// True iff the record carries exactly the entry's data.
bool record_matches(const CatalogRecord& r, const CatalogEntry& e, std::string* why = nullptr);

}  // namespace solvcontact
