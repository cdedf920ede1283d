// Batch front-end for the catalog, lattice and boundary verifiers.

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "solvcontact/boundary.hpp"
#include "solvcontact/catalog.hpp"
#include "solvcontact/lattice.hpp"

using namespace solvcontact;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool json = false;
  double tol = 1e-10;
  std::vector<std::string> params;
  std::string entry;
  std::string cert;
  std::string catalog;
  std::string output;
};

struct Outcome {
  std::string command;
  std::vector<Report> reports;
  std::vector<std::string> narrative;  // extra text lines (text mode only)
};

double rounded(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::stod(buf);
}

json to_json(const Outcome& o) {
  json j;
  j["command"] = o.command;
  j["version"] = kVersion;
  j["entries"] = json::array();
  bool all = true;
  for (const auto& r : o.reports) {
    json e;
    e["name"] = r.subject;
    e["passed"] = r.passed();
    e["checks"] = json::array();
    for (const auto& c : r.checks) {
      json cj;
      cj["name"] = c.name;
      cj["status"] = to_string(c.status);
      cj["detail"] = c.detail;
      cj["residual"] = c.residual ? json(rounded(*c.residual)) : json(nullptr);
      e["checks"].push_back(cj);
    }
    all = all && r.passed();
    j["entries"].push_back(e);
  }
  j["passed"] = all;
  return j;
}

void print_text(const Outcome& o, std::ostream& os) {
  for (const auto& r : o.reports) {
    os << (r.passed() ? "PASS " : "FAIL ") << r.subject << "\n";
    for (const auto& c : r.checks) {
      os << "  [" << to_string(c.status) << "] " << c.name;
      if (!c.detail.empty()) os << ": " << c.detail;
      if (c.residual) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", *c.residual);
        os << " (residual " << buf << ")";
      }
      os << "\n";
    }
  }
  for (const auto& line : o.narrative) os << line << "\n";
}

int exit_code(const Outcome& o) {
  for (const auto& r : o.reports)
    if (!r.passed()) return 1;
  return 0;
}

std::string matrix_rows(const MatrixQ& m, const std::string& indent) {
  std::vector<std::string> cells;
  std::size_t width = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cells.push_back(to_string(m(i, j)));
      width = std::max(width, cells.back().size());
    }
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << indent << "(";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const std::string& c = cells[i * m.cols() + j];
      os << std::string(width - c.size() + (j ? 1 : 0), ' ') << c;
    }
    os << " )" << (i + 1 < m.rows() ? "\n" : "");
  }
  return os.str();
}

/// Splits --param values into entry parameters and builder parameters.
std::pair<Params, Params> split_params(const std::vector<std::string>& raw, const std::string& family) {
  static const std::map<std::string, std::vector<std::string>> entry_keys{
      {"D4", {"p"}}, {"D10", {"p"}}, {"D11", {"eps"}}, {"H", {"n"}}, {"HR", {"n"}}, {"SA", {"n"}}, {"SY", {"a1", "a2"}}};
  static const std::vector<std::string> builder_keys{"m0", "k0", "q", "q0"};
  Params entry, builder;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    Rational v;
    try {
      v = parse_rational(item.substr(eq + 1));
    } catch (const std::invalid_argument&) {
      throw UsageError("--param " + key + ": malformed value '" + item.substr(eq + 1) + "'");
    }
    auto it = entry_keys.find(family);
    if (it != entry_keys.end() && std::find(it->second.begin(), it->second.end(), key) != it->second.end())
      entry[key] = v;
    else if (std::find(builder_keys.begin(), builder_keys.end(), key) != builder_keys.end())
      builder[key] = v;
    else
      throw UsageError("--param " + key + " does not apply to " + (family.empty() ? "this command" : family));
  }
  return {entry, builder};
}

CatalogEntry resolve_entry(const Options& o, Params* builder = nullptr) {
  auto [family, inline_params] = parse_entry_spec(o.entry);
  auto [entry_params, builder_params] = split_params(o.params, family);
  for (const auto& [k, v] : inline_params) entry_params[k] = v;
  if (builder) *builder = builder_params;
  return get(family, entry_params);
}

long integer_param(const Params& p, const std::string& key, long def) {
  auto it = p.find(key);
  if (it == p.end()) return def;
  if (!is_integer(it->second) || !it->second.get_num().fits_slong_p())
    throw UsageError("--param " + key + " must be an integer");
  return it->second.get_num().get_si();
}

Rational rational_param(const Params& p, const std::string& key, const Rational& def) {
  auto it = p.find(key);
  return it == p.end() ? def : it->second;
}

// ---------------------------------------------------------------------------

Outcome cmd_catalog_list(const Options&) {
  Outcome o{"catalog-list", {}, {}};
  Report r;
  r.subject = "catalog";
  std::size_t unimodular_solvable = 0, exists = 0;
  for (const auto& e : all_entries()) {
    const bool uni = is_unimodular(*e.algebra), sol = is_solvable(*e.algebra), nil = is_nilpotent(*e.algebra);
    std::ostringstream d;
    d << "dim " << e.algebra->dim() << ", unimodular " << (uni ? "yes" : "no") << ", solvable "
      << (sol ? "yes" : "no") << ", nilpotent " << (nil ? "yes" : "no") << ", lattice " << to_string(e.lattice);
    const bool flags = uni == e.expected.unimodular && sol == e.expected.solvable && nil == e.expected.nilpotent;
    r.add(e.name, flags, d.str());
    if (e.family.size() > 1 && e.family[0] == 'D' && uni && sol) {
      ++unimodular_solvable;
      if (e.lattice == LatticeStatus::Exists) ++exists;
    }
  }
  r.add("unimodular_solvable_count", unimodular_solvable == 12, std::to_string(unimodular_solvable) + " entries");
  r.add("lattice_exists_count", exists == 7, std::to_string(exists) + " entries");
  o.reports.push_back(r);
  return o;
}

Outcome verify_catalog_file(const Options& opt) {
  Outcome o{"verify", {}, {}};
  const auto records = parse_catalog_file(opt.catalog);
  for (const auto& rec : records) {
    if (!opt.entry.empty() && rec.name != opt.entry) continue;
    Report r = verify_record(rec);
    // records naming a built-in entry must agree with it
    try {
      const CatalogEntry e = get_by_spec(rec.name);
      std::string why;
      const bool same = record_matches(rec, e, &why);
      r.add("matches_builtin", same, same ? "" : "line " + std::to_string(rec.line) + ": " + why + " differs from built-in " + e.name);
    } catch (const UnknownEntry&) {
      r.skip("matches_builtin", "no built-in entry named " + rec.name);
    }
    o.reports.push_back(r);
  }
  if (o.reports.empty()) throw UsageError("no matching record in " + opt.catalog);
  return o;
}

Outcome cmd_verify(const Options& opt) {
  if (!opt.catalog.empty()) return verify_catalog_file(opt);
  Outcome o{"verify", {}, {}};
  if (opt.entry.empty()) {
    for (const auto& e : all_entries()) o.reports.push_back(verify_entry(e, opt.tol));
  } else {
    o.reports.push_back(verify_entry(resolve_entry(opt), opt.tol));
  }
  return o;
}

void narrate_certificate(Outcome& o, const CatalogEntry& e, const LatticeCertificate& c) {
  if (c.claims_s.empty()) return;
  const bool central = e.central.has_value();
  const MatrixQ m = central ? base_claim(e, c) : c.claims_s[0];
  o.narrative.push_back("[exp beta(lambda)]_X for " + e.name + ":");
  o.narrative.push_back(matrix_rows(m, "  "));
  if (central)
    for (const auto& [name, v] : omega_pairings(e, c))
      if (!v.is_zero_poly()) o.narrative.push_back("  " + name + " = " + to_string(v.constant_term()));
}

Report run_pair(const CatalogEntry& e, const MatrixQ& m1, const MatrixQ& m2, Outcome& o, double tol) {
  CommutingPairCertificate c = build_commuting_pair_certificate(e, m1, m2, std::max(tol, 1e-8));
  char buf[160];
  std::snprintf(buf, sizeof buf, "  f1 = (%.4f, %.4f), f2 = (%.4f, %.4f), det = %.4f", c.f1[0], c.f1[1], c.f2[0],
                c.f2[1], c.det_f);
  o.narrative.push_back("lattice generators of T for " + e.name + ":");
  o.narrative.push_back(buf);
  Report r = c.report;
  r.subject = e.name;
  r.add("verdict", c.report.passed(), "accepted");
  return r;
}

Outcome cmd_lattice(const Options& opt) {
  Outcome o{"lattice", {}, {}};
  std::vector<CatalogEntry> entries;
  Params builder;
  if (opt.entry.empty()) {
    if (!opt.cert.empty()) throw UsageError("--cert requires --entry");
    if (!opt.params.empty()) throw UsageError("--param requires --entry");
    entries = d_entries();
  } else {
    entries.push_back(resolve_entry(opt, &builder));
  }
  for (const auto& e : entries) {
    if (!opt.cert.empty()) {
      const CertificateFile f = parse_certificate_file(opt.cert);
      if (f.pair) {
        o.reports.push_back(run_pair(e, f.pair->m1, f.pair->m2, o, opt.tol));
      } else {
        Report r = e.central ? verify_central_extension_certificate(e, *f.cert) : verify_certificate(e, *f.cert);
        r.subject = e.name;
        narrate_certificate(o, e, *f.cert);
        o.reports.push_back(r);
      }
      continue;
    }
    if (e.family == "D5" && (builder.count("m0") || builder.count("q"))) {
      const auto c = build_d5_certificate(integer_param(builder, "m0", 3), rational_param(builder, "q", 1));
      Report r = verify_central_extension_certificate(e, c);
      r.subject = e.name;
      narrate_certificate(o, e, c);
      o.reports.push_back(r);
      continue;
    }
    if (e.family == "D11" && (builder.count("k0") || builder.count("q0"))) {
      const auto c = build_d11_certificate(integer_param(builder, "k0", 1), rational_param(builder, "q0", 1),
                                           e.params.at("eps").get_num().get_si());
      Report r = verify_central_extension_certificate(e, c);
      r.subject = e.name;
      narrate_certificate(o, e, c);
      o.reports.push_back(r);
      continue;
    }
    if (e.family == "SY") {
      const Rational a1 = e.params.at("a1"), a2 = e.params.at("a2");
      if (!is_integer(a1) || !is_integer(a2)) throw UsageError("SY lattice check needs integer a1, a2");
      auto sy = sy_lattice_check(a1.get_num().get_si(), a2.get_num().get_si(), integer_param(builder, "m0", 3));
      o.narrative.push_back("f(x) = " + to_string(sy.f, "x"));
      o.reports.push_back(sy.report);
      continue;
    }
    if (!builder.empty()) throw UsageError("builder parameters do not apply to " + e.name);
    o.reports.push_back(lattice_check(e));
    if (e.family == "D5") narrate_certificate(o, e, build_d5_certificate(3));
    if (e.family == "D11") narrate_certificate(o, e, build_d11_certificate(1, 1, e.params.at("eps").get_num().get_si()));
    if (e.lattice == LatticeStatus::None) {
      const ObstructionReport ob = obstruction_reciprocal(e);
      o.narrative.push_back(e.name + ": stratum " + ob.stratum_text + ", mu = " + to_string(ob.mu) + "; " + ob.conclusion);
    }
  }
  return o;
}

Outcome cmd_boundary(const Options& opt) {
  Outcome o{"boundary", {}, {}};
  if (opt.entry.empty()) {
    for (const auto& e : all_entries())
      if (e.contact) o.reports.push_back(boundary_check(e));
  } else {
    const CatalogEntry e = resolve_entry(opt);
    if (e.algebra->dim() % 2 == 0) throw UsageError(e.name + " is even-dimensional; the boundary theorem needs a contact algebra");
    if (!e.contact) throw UsageError(e.name + " has no contact form");
    o.reports.push_back(boundary_check(e));
  }
  return o;
}

Outcome cmd_all(const Options& opt) {
  Outcome o{"all", {}, {}};
  std::vector<std::future<Report>> jobs;
  for (const auto& e : all_entries()) {
    jobs.push_back(std::async(std::launch::async, [e, tol = opt.tol] {
      Report r;
      r.subject = e.name;
      r.merge(verify_entry(e, tol), "verify");
      if (e.contact) r.merge(boundary_check(e), "boundary");
      if (e.lattice != LatticeStatus::OutOfScope) r.merge(lattice_check(e), "lattice");
      return r;
    }));
  }
  for (auto& j : jobs) o.reports.push_back(j.get());
  for (const auto& r : cmd_catalog_list(opt).reports) o.reports.push_back(r);
  if (!opt.catalog.empty())
    for (const auto& r : verify_catalog_file(opt).reports) o.reports.push_back(r);
  return o;
}

Outcome cmd_catalog_export(const Options& opt) {
  Outcome o{"catalog-export", {}, {}};
  const std::string text = write_catalog(all_entries());
  Report r;
  r.subject = "catalog-export";
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.output);
    if (!out) throw UsageError("cannot write " + opt.output);
    out << text;
    r.add("written", static_cast<bool>(out), opt.output);
    o.reports.push_back(r);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suite for left-invariant contact structures and lattices on solvable Lie groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "Emit the JSON report");
  app.add_option("--tol", opt.tol, "Tolerance for numeric layers")->check(CLI::PositiveNumber);
  auto add_entry = [&](CLI::App* sub) {
    sub->add_option("--entry", opt.entry, "Catalog entry, e.g. D5, D4(p=3), H(n=2)");
    sub->add_option("--param", opt.params, "Parameters key=value (p, eps, n, a1, a2, m0, k0, q, q0)");
  };
  auto* list = app.add_subcommand("catalog-list", "List entries with flags and lattice status");
  auto* verify = app.add_subcommand("verify", "Jacobi, unimodularity, contact, nilradical, closed forms");
  add_entry(verify);
  verify->add_option("--catalog", opt.catalog, "Verify the records of a catalog file instead");
  auto* lattice = app.add_subcommand("lattice", "Lattice certificate or obstruction");
  add_entry(lattice);
  lattice->add_option("--cert", opt.cert, "Certificate or commuting-pair file");
  auto* boundary = app.add_subcommand("boundary", "Symplectic boundary identities");
  add_entry(boundary);
  auto* all = app.add_subcommand("all", "Full verification suite");
  all->add_option("--catalog", opt.catalog, "Also verify the records of a catalog file");
  auto* exp = app.add_subcommand("catalog-export", "Write the built-in catalog in text form");
  exp->add_option("--output", opt.output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome out;
    if (*list) out = cmd_catalog_list(opt);
    else if (*verify) out = cmd_verify(opt);
    else if (*lattice) out = cmd_lattice(opt);
    else if (*boundary) out = cmd_boundary(opt);
    else if (*all) out = cmd_all(opt);
    else out = cmd_catalog_export(opt);
    if (opt.json)
      std::cout << to_json(out).dump(2) << "\n";
    else
      print_text(out, std::cout);
    return exit_code(out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const CatalogParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const UnknownEntry& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const CertificateError& e) {
    std::cerr << "certificate rejected: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
