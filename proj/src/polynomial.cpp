#include "solvcontact/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace solvcontact {

PolynomialQ PolynomialQ::monomial(const Rational& c, std::size_t k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return PolynomialQ(std::move(v));
}

Rational PolynomialQ::operator()(const Rational& x) const {
  Rational r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

double PolynomialQ::eval(double x) const {
  double r = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + it->get_d();
  return r;
}

PolynomialQ PolynomialQ::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
  return PolynomialQ(std::move(d));
}

PolynomialQ PolynomialQ::monic() const {
  if (is_zero()) return {};
  PolynomialQ r(*this);
  const Rational lc = leading();
  for (auto& c : r.coeffs_) c /= lc;
  return r;
}

PolynomialQ& PolynomialQ::operator+=(const PolynomialQ& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

PolynomialQ& PolynomialQ::operator-=(const PolynomialQ& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return PolynomialQ(std::move(r));
}

PolynomialQ PolynomialQ::operator-() const {
  PolynomialQ r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

std::pair<PolynomialQ, PolynomialQ> PolynomialQ::divmod(const PolynomialQ& a, const PolynomialQ& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  PolynomialQ rem = a;
  if (a.degree() < b.degree()) return {PolynomialQ(), rem};
  std::vector<Rational> q(a.degree() - b.degree() + 1, Rational(0));
  const Rational lb = b.leading();
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const std::size_t shift = rem.degree() - b.degree();
    const Rational c = rem.leading() / lb;
    q[shift] = c;
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) rem.coeffs_[k + shift] -= c * b.coeffs_[k];
    rem.trim();
  }
  return {PolynomialQ(std::move(q)), rem};
}

bool PolynomialQ::has_integer_coefficients() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

PolynomialQ gcd(PolynomialQ a, PolynomialQ b) {
  while (!b.is_zero()) {
    PolynomialQ r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Bezout ext_gcd(const PolynomialQ& a, const PolynomialQ& b) {
  PolynomialQ r0 = a, r1 = b;
  PolynomialQ s0(1), s1, t0, t1(1);
  while (!r1.is_zero()) {
    auto [q, r] = PolynomialQ::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    PolynomialQ s2 = s0 - q * s1;
    PolynomialQ t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {};
  const Rational lc = r0.leading();
  const PolynomialQ inv(Rational(1 / lc));
  return {r0 * inv, s0 * inv, t0 * inv};
}

std::vector<Rational> rational_roots(const PolynomialQ& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
  std::vector<Rational> roots;
  PolynomialQ q = squarefree_part(p);
  if (sgn(q.coeff(0)) == 0) {
    roots.push_back(0);
    q = q / PolynomialQ::x();
  }
  if (q.degree() < 1) return roots;
  Integer scale = 1;
  for (const auto& c : q.coeffs()) scale = lcm(scale, Integer(c.get_den()));
  const Integer a0 = abs(Integer(q.coeff(0) * scale));
  const Integer an = abs(Integer(q.leading() * scale));
  const Integer limit = Integer(1) << 40;
  if (a0 > limit || an > limit) throw std::domain_error("rational_roots: coefficients too large");
  auto divisors = [](const Integer& v) {
    std::vector<Integer> d;
    for (Integer k = 1; k * k <= v; ++k)
      if (v % k == 0) {
        d.push_back(k);
        if (k * k != v) d.push_back(Integer(v / k));
      }
    return d;
  };
  for (const auto& num : divisors(a0))
    for (const auto& den : divisors(an))
      for (int sign : {1, -1}) {
        Rational r(Integer(sign * num), den);
        r.canonicalize();
        if (sgn(q(r)) == 0 && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

PolynomialQ squarefree_part(const PolynomialQ& p) {
  if (p.degree() <= 0) return p.monic();
  return (p / gcd(p, p.derivative())).monic();
}

std::string to_string(const PolynomialQ& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational c = p.coeff(k);
    if (sgn(c) == 0) continue;
    const Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (!unit || k == 0) os << to_string(mag);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace solvcontact
