#pragma once

#include <complex>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ptb/rational.hpp"

namespace ptb {

/// Dense univariate polynomial over the rationals. Coefficients are stored
/// ascending by degree; the leading coefficient is nonzero unless the
/// polynomial is zero (empty coefficient vector). Values are immutable in
/// practice: every operation returns a fresh polynomial.
class UniPoly {
 public:
  UniPoly() : var_("y") {}
  explicit UniPoly(std::string var) : var_(std::move(var)) {}

  static UniPoly zero(std::string var = "y") { return UniPoly(std::move(var)); }

  static UniPoly constant(Rat c, std::string var = "y") {
    UniPoly p(std::move(var));
    if (sgn(c) != 0) p.c_.push_back(std::move(c));
    return p;
  }

  static UniPoly variable(std::string var = "y") { return monomial(Rat(1), 1, std::move(var)); }

  static UniPoly monomial(Rat c, long k, std::string var = "y") {
    if (k < 0) throw DomainError("UniPoly::monomial: negative exponent");
    UniPoly p(std::move(var));
    if (sgn(c) != 0) {
      p.c_.assign(static_cast<size_t>(k) + 1, Rat(0));
      p.c_.back() = std::move(c);
    }
    return p;
  }

  static UniPoly from_coeffs(std::vector<Rat> c, std::string var = "y") {
    UniPoly p(std::move(var));
    p.c_ = std::move(c);
    p.trim();
    return p;
  }

  /// Integer coefficients ascending by degree: {-2, 0, 1} is y^2 - 2.
  static UniPoly from_ints(std::initializer_list<long> c, std::string var = "y") {
    std::vector<Rat> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(x);
    return from_coeffs(std::move(v), std::move(var));
  }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  Rat coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(c_.size())) return Rat(0);
    return c_[static_cast<size_t>(k)];
  }

  const Rat& leading() const {
    if (c_.empty()) throw DomainError("UniPoly::leading: zero polynomial");
    return c_.back();
  }

  const std::string& var() const { return var_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  UniPoly operator-() const {
    UniPoly r(*this);
    for (Rat& c : r.c_) c = -c;
    return r;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r(merged_var(a, b));
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.trim();
    return r;
  }

  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly r(merged_var(a, b));
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (sgn(a.c_[i]) == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }

  friend UniPoly operator*(const UniPoly& a, const Rat& s) {
    if (sgn(s) == 0) return UniPoly::zero(a.var_);
    UniPoly r(a);
    for (Rat& c : r.c_) c *= s;
    return r;
  }
  friend UniPoly operator*(const Rat& s, const UniPoly& a) { return a * s; }

  UniPoly& operator+=(const UniPoly& b) { return *this = *this + b; }
  UniPoly& operator-=(const UniPoly& b) { return *this = *this - b; }
  UniPoly& operator*=(const UniPoly& b) { return *this = *this * b; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.c_ != b.c_) return false;
    return a.is_constant() || b.is_constant() || a.var_ == b.var_;
  }

  UniPoly derivative() const {
    UniPoly r(var_);
    if (c_.size() <= 1) return r;
    r.c_.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(c_[i] * Rat(static_cast<long>(i)));
    r.trim();
    return r;
  }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  template <class Real>
  std::complex<Real> eval(const std::complex<Real>& x) const {
    std::complex<Real> acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + to_complex<Real>(c_[i]);
    return acc;
  }

  template <class Real>
  std::vector<std::complex<Real>> to_complex_coeffs() const {
    std::vector<std::complex<Real>> v;
    v.reserve(c_.size());
    for (const Rat& c : c_) v.push_back(to_complex<Real>(c));
    return v;
  }

  UniPoly monic() const {
    if (is_zero()) throw DomainError("UniPoly::monic: zero polynomial");
    Rat inv = Rat(1) / leading();
    return *this * inv;
  }

  UniPoly pow(unsigned long e) const {
    UniPoly base(*this);
    UniPoly r = UniPoly::constant(Rat(1), var_);
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
      const Rat& c = c_[i];
      if (sgn(c) == 0) continue;
      Rat a = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
        first = false;
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      const bool unit = (a == 1);
      if (i == 0) {
        os << coeff_str(a);
      } else {
        if (!unit) os << coeff_str(a) << "*";
        os << var_;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

 private:
  static std::string coeff_str(const Rat& a) {
    std::string s = a.get_str();
    if (a.get_den() != 1) s = "(" + s + ")";
    return s;
  }

  static const std::string& merged_var(const UniPoly& a, const UniPoly& b) {
    if (a.is_constant()) return b.var_;
    if (b.is_constant()) return a.var_;
    if (a.var_ != b.var_)
      throw DomainError("UniPoly: variable mismatch: '" + a.var_ + "' vs '" + b.var_ + "'");
    return a.var_;
  }

  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<Rat> c_;
  std::string var_;
};

inline std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DomainError("divrem: division by zero polynomial");
  UniPoly q = UniPoly::zero(b.var());
  UniPoly r = a;
  const Rat lead_inv = Rat(1) / b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Rat c = r.leading() * lead_inv;
    UniPoly t = UniPoly::monomial(c, r.degree() - b.degree(), b.var());
    q += t;
    r -= t * b;
  }
  return {q, r};
}

inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw DomainError("exact_div: division is not exact");
  return q;
}

/// Monic gcd over the rationals (Euclid with monic remainders).
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("poly_gcd: both inputs zero");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  while (!b.is_zero()) {
    UniPoly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
    if (!b.is_zero()) b = b.monic();
  }
  return a.monic();
}

inline bool is_squarefree(const UniPoly& f) {
  if (f.is_zero()) throw DomainError("is_squarefree: zero polynomial");
  if (f.is_constant()) return true;
  return poly_gcd(f, f.derivative()).degree() == 0;
}

inline UniPoly differentiate(const UniPoly& f, const std::string& var) {
  if (!f.is_constant() && var != f.var())
    throw DomainError("differentiate: unknown variable '" + var + "' for polynomial in '" +
                      f.var() + "'");
  return f.derivative();
}

}  // namespace ptb
