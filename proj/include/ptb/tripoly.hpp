#pragma once

#include <array>
#include <complex>
#include <map>
#include <sstream>
#include <string>

#include "ptb/unipoly.hpp"

namespace ptb {

/// Sparse trivariate polynomial in (x1, x2, x3) over the rationals.
/// Stored as exponent-triple -> coefficient with no zero entries.
class TriPoly {
 public:
  using Key = std::array<int, 3>;

  TriPoly() = default;

  static TriPoly zero() { return TriPoly(); }

  static TriPoly constant(Rat c) {
    TriPoly p;
    if (sgn(c) != 0) p.t_[{0, 0, 0}] = std::move(c);
    return p;
  }

  static TriPoly variable(int i) {
    check_index(i);
    TriPoly p;
    Key k{0, 0, 0};
    k[static_cast<size_t>(i)] = 1;
    p.t_[k] = Rat(1);
    return p;
  }

  /// The univariate polynomial f placed on variable index i: f(x_i).
  static TriPoly from_unipoly(const UniPoly& f, int i) {
    check_index(i);
    TriPoly p;
    for (long d = 0; d <= f.degree(); ++d) {
      Rat c = f.coeff(d);
      if (sgn(c) == 0) continue;
      Key k{0, 0, 0};
      k[static_cast<size_t>(i)] = static_cast<int>(d);
      p.t_[k] = std::move(c);
    }
    return p;
  }

  bool is_zero() const { return t_.empty(); }
  const std::map<Key, Rat>& terms() const { return t_; }

  friend TriPoly operator+(const TriPoly& a, const TriPoly& b) {
    TriPoly r(a);
    for (const auto& [k, c] : b.t_) r.add_term(k, c);
    return r;
  }
  friend TriPoly operator-(const TriPoly& a, const TriPoly& b) {
    TriPoly r(a);
    for (const auto& [k, c] : b.t_) r.add_term(k, -c);
    return r;
  }
  TriPoly operator-() const {
    TriPoly r(*this);
    for (auto& [k, c] : r.t_) c = -c;
    return r;
  }
  friend TriPoly operator*(const TriPoly& a, const TriPoly& b) {
    TriPoly r;
    for (const auto& [ka, ca] : a.t_) {
      for (const auto& [kb, cb] : b.t_) {
        Key k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
        r.add_term(k, ca * cb);
      }
    }
    return r;
  }
  friend TriPoly operator*(const TriPoly& a, const Rat& s) {
    TriPoly r;
    if (sgn(s) == 0) return r;
    r = a;
    for (auto& [k, c] : r.t_) c *= s;
    return r;
  }

  TriPoly& operator+=(const TriPoly& b) { return *this = *this + b; }
  TriPoly& operator-=(const TriPoly& b) { return *this = *this - b; }
  TriPoly& operator*=(const TriPoly& b) { return *this = *this * b; }

  friend bool operator==(const TriPoly& a, const TriPoly& b) { return a.t_ == b.t_; }

  TriPoly derivative(int i) const {
    check_index(i);
    TriPoly r;
    const size_t ui = static_cast<size_t>(i);
    for (const auto& [k, c] : t_) {
      if (k[ui] == 0) continue;
      Key kk = k;
      kk[ui] -= 1;
      r.add_term(kk, c * Rat(k[ui]));
    }
    return r;
  }

  template <class Real>
  std::complex<Real> eval(const std::complex<Real>& x1, const std::complex<Real>& x2,
                          const std::complex<Real>& x3) const {
    std::complex<Real> acc(0);
    for (const auto& [k, c] : t_) {
      acc += to_complex<Real>(c) * cpow_int(x1, k[0]) * cpow_int(x2, k[1]) * cpow_int(x3, k[2]);
    }
    return acc;
  }

  long total_degree() const {
    long d = -1;
    for (const auto& [k, c] : t_) d = std::max<long>(d, k[0] + k[1] + k[2]);
    return d;
  }

  std::string str(const std::array<std::string, 3>& names = {"x1", "x2", "x3"}) const {
    if (t_.empty()) return "0";
    // graded lexicographic, highest total degree first
    std::map<std::pair<long, Key>, Rat, std::greater<>> ordered;
    for (const auto& [k, c] : t_) ordered[{k[0] + k[1] + k[2], k}] = c;
    std::ostringstream os;
    bool first = true;
    for (const auto& [dk, c] : ordered) {
      const Key& k = dk.second;
      Rat a = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
        first = false;
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      std::string vars;
      for (size_t i = 0; i < 3; ++i) {
        if (k[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += names[i];
        if (k[i] > 1) vars += "^" + std::to_string(k[i]);
      }
      const bool unit = (a == 1);
      if (vars.empty()) {
        os << coeff_str(a);
      } else {
        if (!unit) os << coeff_str(a) << "*";
        os << vars;
      }
    }
    return os.str();
  }

 private:
  static void check_index(int i) {
    if (i < 0 || i > 2) throw DomainError("TriPoly: variable index out of range");
  }

  static std::string coeff_str(const Rat& a) {
    std::string s = a.get_str();
    if (a.get_den() != 1) s = "(" + s + ")";
    return s;
  }

  void add_term(const Key& k, Rat c) {
    auto it = t_.find(k);
    if (it == t_.end()) {
      if (sgn(c) != 0) t_.emplace(k, std::move(c));
      return;
    }
    it->second += c;
    if (sgn(it->second) == 0) t_.erase(it);
  }

  std::map<Key, Rat> t_;
};

inline TriPoly differentiate(const TriPoly& f, const std::string& var) {
  if (var == "x1") return f.derivative(0);
  if (var == "x2") return f.derivative(1);
  if (var == "x3") return f.derivative(2);
  throw DomainError("differentiate: unknown variable '" + var + "' for trivariate polynomial");
}

}  // namespace ptb
