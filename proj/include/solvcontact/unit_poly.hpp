#pragma once

#include <map>
#include <sstream>
#include <string>

#include "solvcontact/quadratic.hpp"

namespace solvcontact {

/// Laurent polynomial sum_k c_k u^k in a single transcendental unit u
/// (e.g. u = pi, or u = t0 with e^{t0} algebraic). Since u is transcendental
/// over the coefficient field, a value is algebraic iff only the u^0 term is
/// present.
template <typename T>
class UnitPoly {
 public:
  using value_type = T;

  UnitPoly() = default;
  UnitPoly(long v) : UnitPoly(T(v)) {}  // NOLINT(google-explicit-constructor)
  UnitPoly(const T& c) {  // NOLINT(google-explicit-constructor)
    if (!is_zero(c)) terms_[0] = c;
  }
  static UnitPoly monomial(const T& c, int power) {
    UnitPoly p;
    if (!is_zero(c)) p.terms_[power] = c;
    return p;
  }

  const std::map<int, T>& terms() const { return terms_; }
  bool is_zero_poly() const { return terms_.empty(); }
  /// True iff the value carries no power of the unit.
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }
  T constant_term() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? T() : it->second;
  }
  /// Multiplies by u^k.
  UnitPoly shifted(int k) const {
    UnitPoly r;
    for (const auto& [p, c] : terms_) r.terms_[p + k] = c;
    return r;
  }

  UnitPoly& operator+=(const UnitPoly& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
  }
  UnitPoly& operator-=(const UnitPoly& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
  }
  UnitPoly& operator*=(const UnitPoly& o) { return *this = *this * o; }
  friend UnitPoly operator+(UnitPoly x, const UnitPoly& y) { return x += y; }
  friend UnitPoly operator-(UnitPoly x, const UnitPoly& y) { return x -= y; }
  friend UnitPoly operator*(const UnitPoly& x, const UnitPoly& y) {
    UnitPoly r;
    for (const auto& [p, c] : x.terms_)
      for (const auto& [q, e] : y.terms_) r.add_term(p + q, c * e);
    return r;
  }
  /// Division is only defined by a nonzero constant.
  friend UnitPoly operator/(const UnitPoly& x, const UnitPoly& y) {
    if (!y.is_constant() || y.is_zero_poly())
      throw std::domain_error("UnitPoly division by a non-constant");
    UnitPoly r;
    const T inv = T(1) / y.constant_term();
    for (const auto& [p, c] : x.terms_) r.add_term(p, c * inv);
    return r;
  }
  UnitPoly operator-() const {
    UnitPoly r;
    for (const auto& [p, c] : terms_) r.terms_[p] = -c;
    return r;
  }
  friend bool operator==(const UnitPoly& x, const UnitPoly& y) { return x.terms_ == y.terms_; }

 private:
  void add_term(int p, const T& c) {
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) it->second += c;
    if (is_zero(it->second)) terms_.erase(it);
  }

  std::map<int, T> terms_;
};

template <typename T>
bool is_zero(const UnitPoly<T>& p) {
  return p.is_zero_poly();
}

template <typename T>
std::string to_string(const UnitPoly<T>& p, const std::string& unit = "u") {
  if (p.is_zero_poly()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c) << ")";
    if (k != 0) os << "*" << unit << "^" << k;
  }
  return os.str();
}

}  // namespace solvcontact
