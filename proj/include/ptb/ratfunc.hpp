#pragma once

#include <string>
#include <utility>

#include "ptb/unipoly.hpp"

namespace ptb {

/// Reduced rational function num/den over the rationals: gcd(num, den) = 1
/// and den monic, which makes the representation unique. Construct through
/// reduce() or the named factories; arithmetic re-reduces.
class RatFunc {
 public:
  RatFunc() : num_(UniPoly::zero()), den_(UniPoly::constant(Rat(1))) {}

  static RatFunc poly(UniPoly p) {
    RatFunc f;
    f.den_ = UniPoly::constant(Rat(1), p.var());
    f.num_ = std::move(p);
    return f;
  }

  static RatFunc constant(Rat c, std::string var = "y") {
    return poly(UniPoly::constant(std::move(c), std::move(var)));
  }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  const std::string& var() const { return den_.is_constant() ? num_.var() : den_.var(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.degree() == 0; }

  /// Degree as deg(num) - deg(den); the zero function reports -1.
  long degree() const { return num_.degree() - den_.degree(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return make_reduced(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return make_reduced(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return make_reduced(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DomainError("RatFunc: division by zero function");
    return make_reduced(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc operator-() const {
    RatFunc r(*this);
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const Rat& s) {
    return make_reduced(a.num_ * s, a.den_);
  }
  friend RatFunc operator*(const Rat& s, const RatFunc& a) { return a * s; }
  friend RatFunc operator+(const RatFunc& a, const Rat& s) {
    return a + RatFunc::constant(s, a.var());
  }
  friend RatFunc operator-(const RatFunc& a, const Rat& s) {
    return a - RatFunc::constant(s, a.var());
  }

  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc pow(long e) const {
    if (e >= 0) return make_reduced(num_.pow(static_cast<unsigned long>(e)),
                                    den_.pow(static_cast<unsigned long>(e)));
    if (is_zero()) throw DomainError("RatFunc::pow: negative power of zero");
    return make_reduced(den_.pow(static_cast<unsigned long>(-e)),
                        num_.pow(static_cast<unsigned long>(-e)));
  }

  /// Quotient rule, returned reduced.
  RatFunc derivative() const {
    return make_reduced(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (sgn(d) == 0) throw EvaluationError("RatFunc::eval: pole at " + x.get_str());
    return num_.eval(x) / d;
  }

  template <class Real>
  std::complex<Real> eval(const std::complex<Real>& x) const {
    return num_.eval(x) / den_.eval(x);
  }

  std::string str() const {
    if (is_poly()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
  }

  friend RatFunc reduce(UniPoly num, UniPoly den);

 private:
  static RatFunc make_reduced(UniPoly num, UniPoly den);

  UniPoly num_;
  UniPoly den_;
};

/// Reduced form of num/den: cancels the exact gcd and normalizes the
/// denominator monic. reduce(a*c, b*c) = reduce(a, b).
inline RatFunc reduce(UniPoly num, UniPoly den) {
  if (den.is_zero()) throw DomainError("reduce: zero denominator");
  RatFunc f;
  if (num.is_zero()) {
    f.num_ = UniPoly::zero(den.var());
    f.den_ = UniPoly::constant(Rat(1), den.var());
    return f;
  }
  UniPoly g = poly_gcd(num, den);
  if (g.degree() > 0) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  Rat inv = Rat(1) / den.leading();
  f.num_ = num * inv;
  f.den_ = den * inv;
  return f;
}

inline RatFunc RatFunc::make_reduced(UniPoly num, UniPoly den) {
  return reduce(std::move(num), std::move(den));
}

inline RatFunc differentiate(const RatFunc& f, const std::string& var) {
  if (!(f.num().is_constant() && f.den().is_constant()) && var != f.var())
    throw DomainError("differentiate: unknown variable '" + var + "' for function in '" +
                      f.var() + "'");
  return f.derivative();
}

/// Horner evaluation of a polynomial at a rational function: f(r).
inline RatFunc eval_poly(const UniPoly& f, const RatFunc& r) {
  RatFunc acc = RatFunc::constant(Rat(0), r.var());
  for (long i = f.degree(); i >= 0; --i) acc = acc * r + f.coeff(i);
  return acc;
}

}  // namespace ptb
