#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solvcontact/matrix.hpp"
#include "solvcontact/polynomial.hpp"
#include "solvcontact/unit_poly.hpp"

namespace solvcontact {

/// Exact function of real variables t_0, t_1, ...: a finite sum of
///   c * prod t_i^{k_i} * exp(sum a_i t_i) * {1, cos, sin}(sum b_i t_i)
/// with rational c, a_i, b_i. Terms are kept canonical (merged, sin/cos
/// argument normalized to a positive leading rate), so equality is exact.
class ExpPolyTrig {
 public:
  enum class Trig { One, Cos, Sin };

  struct Key {
    std::vector<unsigned> powers;
    VecQ exp_rates;
    VecQ trig_rates;
    Trig trig = Trig::One;
    bool operator<(const Key& o) const;
    bool operator==(const Key& o) const;
  };

  ExpPolyTrig() = default;
  ExpPolyTrig(long c) : ExpPolyTrig(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  ExpPolyTrig(const Rational& c);                    // NOLINT(google-explicit-constructor)
  explicit ExpPolyTrig(const PolynomialQ& p, std::size_t var = 0);

  static ExpPolyTrig var(std::size_t i);
  /// exp(a t_i), cos(b t_i), sin(b t_i)
  static ExpPolyTrig exp(std::size_t i, const Rational& a);
  static ExpPolyTrig cos(std::size_t i, const Rational& b);
  static ExpPolyTrig sin(std::size_t i, const Rational& b);
  static ExpPolyTrig term(const Rational& c, Key key);

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ExpPolyTrig& operator+=(const ExpPolyTrig& o);
  ExpPolyTrig& operator-=(const ExpPolyTrig& o);
  ExpPolyTrig& operator*=(const ExpPolyTrig& o) { return *this = *this * o; }
  friend ExpPolyTrig operator+(ExpPolyTrig a, const ExpPolyTrig& b) { return a += b; }
  friend ExpPolyTrig operator-(ExpPolyTrig a, const ExpPolyTrig& b) { return a -= b; }
  friend ExpPolyTrig operator*(const ExpPolyTrig& a, const ExpPolyTrig& b);
  ExpPolyTrig operator-() const;
  friend bool operator==(const ExpPolyTrig& a, const ExpPolyTrig& b) { return a.terms_ == b.terms_; }

  template <typename T>
  T evaluate(const std::vector<T>& t) const {
    T total = 0;
    for (const auto& [k, c] : terms_) {
      T v = from_rational<T>(c);
      T e = 0, g = 0;
      for (std::size_t i = 0; i < k.powers.size(); ++i) v *= std::pow(at(t, i), static_cast<int>(k.powers[i]));
      for (std::size_t i = 0; i < k.exp_rates.size(); ++i) e += from_rational<T>(k.exp_rates[i]) * at(t, i);
      for (std::size_t i = 0; i < k.trig_rates.size(); ++i) g += from_rational<T>(k.trig_rates[i]) * at(t, i);
      v *= std::exp(e);
      if (k.trig == Trig::Cos) v *= std::cos(g);
      if (k.trig == Trig::Sin) v *= std::sin(g);
      total += v;
    }
    return total;
  }

  /// Exact value when every term is a plain polynomial at the given point
  /// (no exponential or trigonometric factor survives); nullopt otherwise.
  std::optional<Rational> evaluate_exact(const VecQ& t) const;

  /// Exact value at t_i = c_i * pi, as a Laurent polynomial in pi. Requires
  /// no exponential factors and trigonometric arguments in (pi/2) Z.
  std::optional<UnitPoly<Rational>> evaluate_quarter_turn(const VecQ& c) const;

 private:
  template <typename T>
  static T at(const std::vector<T>& t, std::size_t i) {
    if (i >= t.size()) throw DimensionMismatch("ExpPolyTrig: too few variables");
    return t[i];
  }
  void add(Key k, const Rational& c);

  std::map<Key, Rational> terms_;
};

inline bool is_zero(const ExpPolyTrig& f) { return f.is_zero(); }
/// Readable form with variable names (default t0, t1, ...).
std::string to_string(const ExpPolyTrig& f, const std::vector<std::string>& vars = {});

using ClosedForm = Matrix<ExpPolyTrig>;

ClosedForm closed_form_from(const Matrix<PolynomialQ>& m, std::size_t var = 0);
ClosedForm closed_form_from(const MatrixQ& m);

template <typename T>
Matrix<T> evaluate(const ClosedForm& f, const std::vector<T>& t) {
  return f.map([&](const ExpPolyTrig& e) { return e.evaluate(t); });
}

/// exp(t_var * beta) as an exact closed form, available when the
/// eigenvalues of beta are rational or a single pair a +- b i with a, b
/// rational. nullopt otherwise.
std::optional<ClosedForm> symbolic_exp(const MatrixQ& beta, std::size_t var = 0);

/// Spectral projectors of a semisimple s for the given pairwise coprime
/// monic factors of its minimal polynomial.
std::vector<MatrixQ> spectral_projectors(const MatrixQ& s, const std::vector<PolynomialQ>& factors);

}  // namespace solvcontact
