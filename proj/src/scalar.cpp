#include <cmath>
#include <ostream>
#include <sstream>

#include "solvcontact/quadratic.hpp"
#include "solvcontact/rational.hpp"

namespace solvcontact {

long double to_long_double(const Rational& q) {
  mpf_class r(q, 192);
  const double head = r.get_d();
  r -= head;
  return static_cast<long double>(head) + static_cast<long double>(r.get_d());
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("malformed rational '" + s + "'");
    return Rational(Integer(strip_plus(s)));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + s + "'");
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(Integer(strip_plus(num)), d);
  q.canonicalize();
  return q;
}

Rational quarter_turn_cos(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return 1;
    case 2: return -1;
    default: return 0;
  }
}

Rational quarter_turn_sin(long k) {
  switch (((k % 4) + 4) % 4) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
  }
}

namespace {

bool is_perfect_square(long d) {
  if (d < 0) return false;
  Integer z(d);
  return mpz_perfect_square_p(z.get_mpz_t()) != 0;
}

}  // namespace

Quadratic::Quadratic(Rational a, Rational b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (sgn(b_) != 0 && (d <= 0 || is_perfect_square(d)))
    throw std::invalid_argument("Quadratic: d must be a positive non-square, got " + std::to_string(d));
  a_.canonicalize();
  b_.canonicalize();
  normalize();
}

long Quadratic::merged_discriminant(const Quadratic& o) const {
  if (d_ == 0) return o.d_;
  if (o.d_ == 0 || o.d_ == d_) return d_;
  throw FieldMismatch("Q(sqrt(" + std::to_string(d_) + ")) vs Q(sqrt(" + std::to_string(o.d_) + "))");
}

Quadratic& Quadratic::operator+=(const Quadratic& o) {
  d_ = merged_discriminant(o);
  a_ += o.a_;
  b_ += o.b_;
  normalize();
  return *this;
}

Quadratic& Quadratic::operator-=(const Quadratic& o) {
  d_ = merged_discriminant(o);
  a_ -= o.a_;
  b_ -= o.b_;
  normalize();
  return *this;
}

Quadratic& Quadratic::operator*=(const Quadratic& o) {
  const long d = merged_discriminant(o);
  Rational a = a_ * o.a_ + Rational(d) * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  normalize();
  return *this;
}

Rational Quadratic::norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

Quadratic Quadratic::inverse() const {
  const Rational n = norm();
  if (sgn(n) == 0) throw std::domain_error("Quadratic: division by zero");
  return {a_ / n, -b_ / n, d_};
}

double Quadratic::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

int Quadratic::sign() const {
  // sign(a + b sqrt d) decided exactly by comparing a^2 with d b^2.
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
  const int cmp_val = cmp(a_ * a_, Rational(d_) * b_ * b_);
  return cmp_val > 0 ? sa : (cmp_val < 0 ? sb : 0);
}

std::string to_string(const Quadratic& q) {
  if (q.is_rational()) return to_string(q.rational_part());
  std::ostringstream os;
  os << to_string(q.rational_part()) << (sgn(q.root_part()) < 0 ? "-" : "+")
     << to_string(abs(q.root_part())) << "r" << q.discriminant();
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Quadratic& q) { return os << to_string(q); }

}  // namespace solvcontact
