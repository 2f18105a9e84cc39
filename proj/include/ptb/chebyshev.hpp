#pragma once

#include <complex>
#include <mutex>
#include <vector>

#include "ptb/ratfunc.hpp"

namespace ptb {

/// The recurrence family f_0 = 0, f_1 = 1, f_{k+1} = y f_k - f_{k-1},
/// extended to all integers by f_{-k} = -f_k. Entries are built from the
/// recurrence (never from trigonometric closed forms) and memoized.
/// Reads are internally synchronized.
class ChebCache {
 public:
  UniPoly get(long k) const {
    const bool neg = k < 0;
    const size_t a = static_cast<size_t>(neg ? -k : k);
    std::lock_guard<std::mutex> lock(mu_);
    if (tab_.empty()) {
      tab_.push_back(UniPoly::zero());                  // f_0
      tab_.push_back(UniPoly::constant(Rat(1)));        // f_1
    }
    const UniPoly y = UniPoly::variable();
    while (tab_.size() <= a) {
      const size_t m = tab_.size();
      tab_.push_back(y * tab_[m - 1] - tab_[m - 2]);
    }
    return neg ? -tab_[a] : tab_[a];
  }

 private:
  mutable std::mutex mu_;
  mutable std::vector<UniPoly> tab_;
};

inline const ChebCache& cheb_cache() {
  static ChebCache cache;
  return cache;
}

/// f_k as an exact polynomial; degree |k| - 1 for k != 0.
inline UniPoly cheb(long k) { return cheb_cache().get(k); }

/// d f_k / dy = ((k-1) f_{k+1} - (k+1) f_{k-1}) / (y^2 - 4). The division is
/// exact, so the reduced result is the derivative polynomial itself and stays
/// valid at y = +-2 where the rational form reads 0/0.
inline RatFunc cheb_derivative(long k) {
  UniPoly numer = Rat(k - 1) * cheb(k + 1) - Rat(k + 1) * cheb(k - 1);
  UniPoly q = exact_div(numer, UniPoly::from_ints({-4, 0, 1}));
  return RatFunc::poly(std::move(q));
}

/// f_k evaluated through the substitution y = b + 1/b:
/// f_k(y) = (b^k - b^{-k}) / (b - b^{-1}); undefined at b in {0, +-1}.
template <class Real>
std::complex<Real> cheb_eval_closed(const std::complex<Real>& b, long k) {
  const Real tiny = Real(1e-12);
  if (std::abs(b) < tiny || std::abs(b - std::complex<Real>(1)) < tiny ||
      std::abs(b + std::complex<Real>(1)) < tiny)
    throw DomainError("cheb_eval_closed: b in {0, 1, -1}");
  std::complex<Real> bk = cpow_int(b, k);
  std::complex<Real> bi = std::complex<Real>(1) / b;
  return (bk - std::complex<Real>(1) / bk) / (b - bi);
}

}  // namespace ptb
