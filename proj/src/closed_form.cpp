#include "solvcontact/closed_form.hpp"

#include <sstream>
#include <tuple>

#include "solvcontact/linalg.hpp"

namespace solvcontact {

namespace {

template <typename V>
void trim(std::vector<V>& v) {
  while (!v.empty() && v.back() == V(0)) v.pop_back();
}

VecQ combine(const VecQ& a, const VecQ& b, int sign) {
  VecQ r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += sign > 0 ? b[i] : Rational(-b[i]);
  trim(r);
  return r;
}

VecQ unit_rate(std::size_t i, const Rational& a) {
  VecQ v(i + 1, Rational(0));
  v[i] = a;
  trim(v);
  return v;
}

}  // namespace

bool ExpPolyTrig::Key::operator<(const Key& o) const {
  return std::tie(powers, exp_rates, trig_rates, trig) < std::tie(o.powers, o.exp_rates, o.trig_rates, o.trig);
}

bool ExpPolyTrig::Key::operator==(const Key& o) const {
  return powers == o.powers && exp_rates == o.exp_rates && trig_rates == o.trig_rates && trig == o.trig;
}

ExpPolyTrig::ExpPolyTrig(const Rational& c) { add(Key{}, c); }

ExpPolyTrig::ExpPolyTrig(const PolynomialQ& p, std::size_t var) {
  for (int k = 0; k <= p.degree(); ++k) {
    Key key;
    if (k > 0) {
      key.powers.assign(var + 1, 0);
      key.powers[var] = static_cast<unsigned>(k);
    }
    add(std::move(key), p.coeff(static_cast<std::size_t>(k)));
  }
}

ExpPolyTrig ExpPolyTrig::var(std::size_t i) {
  Key k;
  k.powers.assign(i + 1, 0);
  k.powers[i] = 1;
  return term(1, std::move(k));
}

ExpPolyTrig ExpPolyTrig::exp(std::size_t i, const Rational& a) {
  Key k;
  k.exp_rates = unit_rate(i, a);
  return term(1, std::move(k));
}

ExpPolyTrig ExpPolyTrig::cos(std::size_t i, const Rational& b) {
  Key k;
  k.trig_rates = unit_rate(i, b);
  k.trig = Trig::Cos;
  return term(1, std::move(k));
}

ExpPolyTrig ExpPolyTrig::sin(std::size_t i, const Rational& b) {
  Key k;
  k.trig_rates = unit_rate(i, b);
  k.trig = Trig::Sin;
  return term(1, std::move(k));
}

ExpPolyTrig ExpPolyTrig::term(const Rational& c, Key key) {
  ExpPolyTrig f;
  f.add(std::move(key), c);
  return f;
}

void ExpPolyTrig::add(Key k, const Rational& c) {
  if (sgn(c) == 0) return;
  trim(k.powers);
  trim(k.exp_rates);
  trim(k.trig_rates);
  Rational coeff = c;
  if (k.trig_rates.empty()) {
    if (k.trig == Trig::Sin) return;
    k.trig = Trig::One;
  } else if (k.trig == Trig::One) {
    k.trig_rates.clear();
  } else {
    auto lead = std::find_if(k.trig_rates.begin(), k.trig_rates.end(), [](const Rational& q) { return sgn(q) != 0; });
    if (sgn(*lead) < 0) {
      for (auto& q : k.trig_rates) q = -q;
      if (k.trig == Trig::Sin) coeff = -coeff;
    }
  }
  auto [it, inserted] = terms_.try_emplace(std::move(k), coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

ExpPolyTrig& ExpPolyTrig::operator+=(const ExpPolyTrig& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ExpPolyTrig& ExpPolyTrig::operator-=(const ExpPolyTrig& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

ExpPolyTrig ExpPolyTrig::operator-() const {
  ExpPolyTrig r;
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

ExpPolyTrig operator*(const ExpPolyTrig& a, const ExpPolyTrig& b) {
  using Trig = ExpPolyTrig::Trig;
  ExpPolyTrig r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      ExpPolyTrig::Key base;
      base.powers.assign(std::max(ka.powers.size(), kb.powers.size()), 0);
      for (std::size_t i = 0; i < ka.powers.size(); ++i) base.powers[i] += ka.powers[i];
      for (std::size_t i = 0; i < kb.powers.size(); ++i) base.powers[i] += kb.powers[i];
      base.exp_rates = combine(ka.exp_rates, kb.exp_rates, 1);
      const Rational c = ca * cb;
      if (ka.trig == Trig::One || kb.trig == Trig::One) {
        const auto& other = ka.trig == Trig::One ? kb : ka;
        base.trig = other.trig;
        base.trig_rates = other.trig_rates;
        r.add(std::move(base), c);
        continue;
      }
      ExpPolyTrig::Key sum = base, diff = base;
      sum.trig_rates = combine(ka.trig_rates, kb.trig_rates, 1);
      diff.trig_rates = combine(ka.trig_rates, kb.trig_rates, -1);
      const Rational h = c / 2;
      if (ka.trig == Trig::Cos && kb.trig == Trig::Cos) {
        sum.trig = diff.trig = Trig::Cos;
        r.add(sum, h);
        r.add(diff, h);
      } else if (ka.trig == Trig::Sin && kb.trig == Trig::Sin) {
        sum.trig = diff.trig = Trig::Cos;
        r.add(diff, h);
        r.add(sum, -h);
      } else if (ka.trig == Trig::Sin) {  // sin a cos b
        sum.trig = diff.trig = Trig::Sin;
        r.add(sum, h);
        r.add(diff, h);
      } else {  // cos a sin b
        sum.trig = diff.trig = Trig::Sin;
        r.add(sum, h);
        r.add(diff, -h);
      }
    }
  return r;
}

std::optional<Rational> ExpPolyTrig::evaluate_exact(const VecQ& t) const {
  Rational total = 0;
  for (const auto& [k, c] : terms_) {
    if (!k.exp_rates.empty() || k.trig != Trig::One) return std::nullopt;
    Rational v = c;
    for (std::size_t i = 0; i < k.powers.size(); ++i)
      for (unsigned p = 0; p < k.powers[i]; ++p) v *= at(t, i);
    total += v;
  }
  return total;
}

std::optional<UnitPoly<Rational>> ExpPolyTrig::evaluate_quarter_turn(const VecQ& c) const {
  UnitPoly<Rational> total;
  for (const auto& [k, coeff] : terms_) {
    if (!k.exp_rates.empty()) return std::nullopt;
    Rational v = coeff;
    int pi_power = 0;
    for (std::size_t i = 0; i < k.powers.size(); ++i)
      for (unsigned p = 0; p < k.powers[i]; ++p) {
        v *= at(c, i);
        ++pi_power;
      }
    if (k.trig != Trig::One) {
      Rational x = 0;  // argument is x * pi
      for (std::size_t i = 0; i < k.trig_rates.size(); ++i) x += k.trig_rates[i] * at(c, i);
      const Rational quarter = 2 * x;
      if (quarter.get_den() != 1 || !quarter.get_num().fits_slong_p()) return std::nullopt;
      const long q = quarter.get_num().get_si();
      v *= k.trig == Trig::Cos ? quarter_turn_cos(q) : quarter_turn_sin(q);
    }
    total += UnitPoly<Rational>::monomial(v, pi_power);
  }
  return total;
}

std::string to_string(const ExpPolyTrig& f, const std::vector<std::string>& vars) {
  if (f.is_zero()) return "0";
  auto name = [&](std::size_t i) { return i < vars.size() ? vars[i] : "t" + std::to_string(i); };
  auto linear = [&](const VecQ& r) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (sgn(r[i]) == 0) continue;
      os << (first ? (sgn(r[i]) < 0 ? "-" : "") : (sgn(r[i]) < 0 ? "-" : "+"));
      first = false;
      if (abs(r[i]) != 1) os << to_string(Rational(abs(r[i]))) << "*";
      os << name(i);
    }
    return os.str();
  };
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : f.terms()) {
    os << (first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + "));
    first = false;
    std::vector<std::string> factors;
    if (abs(c) != 1) factors.push_back(to_string(Rational(abs(c))));
    for (std::size_t i = 0; i < k.powers.size(); ++i)
      if (k.powers[i] == 1)
        factors.push_back(name(i));
      else if (k.powers[i] > 1)
        factors.push_back(name(i) + "^" + std::to_string(k.powers[i]));
    if (!k.exp_rates.empty()) factors.push_back("exp(" + linear(k.exp_rates) + ")");
    if (k.trig == ExpPolyTrig::Trig::Cos) factors.push_back("cos(" + linear(k.trig_rates) + ")");
    if (k.trig == ExpPolyTrig::Trig::Sin) factors.push_back("sin(" + linear(k.trig_rates) + ")");
    if (factors.empty()) factors.push_back("1");
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

ClosedForm closed_form_from(const Matrix<PolynomialQ>& m, std::size_t var) {
  return m.map([&](const PolynomialQ& p) { return ExpPolyTrig(p, var); });
}

ClosedForm closed_form_from(const MatrixQ& m) {
  return m.map([](const Rational& q) { return ExpPolyTrig(q); });
}

std::vector<MatrixQ> spectral_projectors(const MatrixQ& s, const std::vector<PolynomialQ>& factors) {
  PolynomialQ f(1);
  for (const auto& h : factors) f = f * h;
  std::vector<MatrixQ> out;
  for (const auto& h : factors) {
    const PolynomialQ cofactor = f / h;
    const Bezout b = ext_gcd(cofactor, h);
    if (b.g.degree() != 0) throw std::invalid_argument("spectral_projectors: factors are not coprime");
    out.push_back(((b.u * cofactor) % f).at_matrix(s));
  }
  return out;
}

std::optional<ClosedForm> symbolic_exp(const MatrixQ& beta, std::size_t var) {
  if (!beta.is_square()) throw DimensionMismatch("symbolic_exp of non-square matrix");
  const std::size_t n = beta.rows();
  const JordanChevalley jc = jordan_chevalley(beta);
  const PolynomialQ f = squarefree_part(char_poly(beta));
  const std::vector<Rational> roots = rational_roots(f);
  PolynomialQ rest = f;
  std::vector<PolynomialQ> factors;
  for (const auto& r : roots) {
    PolynomialQ lin(std::vector<Rational>{Rational(-r), Rational(1)});
    factors.push_back(lin);
    rest = rest / lin;
  }
  std::optional<std::pair<Rational, Rational>> pair;  // a, b for (x - a)^2 + b^2
  if (rest.degree() == 2) {
    const Rational a = -rest.coeff(1) / 2;
    const Rational b2 = rest.coeff(0) - a * a;
    if (sgn(b2) <= 0) return std::nullopt;
    mpz_class num = b2.get_num(), den = b2.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    Rational b(sqrt(num), sqrt(den));
    b.canonicalize();
    pair = std::make_pair(a, b);
    factors.push_back(rest);
  } else if (rest.degree() > 0) {
    return std::nullopt;
  }

  const auto proj = spectral_projectors(jc.s, factors);
  ClosedForm exp_s(n, n);
  for (std::size_t k = 0; k < roots.size(); ++k) exp_s += closed_form_from(proj[k]) * ExpPolyTrig::exp(var, roots[k]);
  if (pair) {
    const auto& [a, b] = *pair;
    const MatrixQ& p = proj.back();
    const MatrixQ rot = (jc.s - MatrixQ::identity(n) * a) * p * Rational(1 / b);
    ClosedForm block = closed_form_from(p) * ExpPolyTrig::cos(var, b) + closed_form_from(rot) * ExpPolyTrig::sin(var, b);
    exp_s += block * ExpPolyTrig::exp(var, a);
  }
  return exp_s * closed_form_from(exp_nilpotent_poly(jc.n), var);
}

}  // namespace solvcontact
