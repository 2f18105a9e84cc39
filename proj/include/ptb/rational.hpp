#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "ptb/errors.hpp"

namespace ptb {

// Exact rational coefficient field. mpq_class kept canonical (gcd(num,den)=1,
// den>0) by all gmpxx arithmetic; only raw two-argument construction needs
// an explicit canonicalize, which the factory below performs.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw DomainError("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

namespace detail {

// Exact-ish integer conversion: walks limbs most-significant-first so the
// leading std::numeric_limits<Real>::digits bits survive for any Real.
template <class Real>
Real mpz_to_real(const mpz_class& z) {
  const mp_size_t n = mpz_size(z.get_mpz_t());
  const Real base = std::ldexp(Real(1), GMP_NUMB_BITS);
  Real r = 0;
  for (mp_size_t i = n; i-- > 0;) {
    r = r * base + Real(mpz_getlimbn(z.get_mpz_t(), i));
  }
  return mpz_sgn(z.get_mpz_t()) < 0 ? -r : r;
}

}  // namespace detail

// Round a rational to Real with error below one ulp: scale the quotient to
// carry digits+16 significant bits, truncate-divide, then rescale.
template <class Real>
Real to_real(const Rat& q) {
  if (sgn(q) == 0) return Real(0);
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  const long nb = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long db = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  const long shift = std::numeric_limits<Real>::digits + 16 - (nb - db);
  mpz_class sn = num;
  mpz_class sd = den;
  if (shift > 0) {
    mpz_mul_2exp(sn.get_mpz_t(), sn.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else if (shift < 0) {
    mpz_mul_2exp(sd.get_mpz_t(), sd.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  mpz_class quo;
  mpz_tdiv_q(quo.get_mpz_t(), sn.get_mpz_t(), sd.get_mpz_t());
  return std::ldexp(detail::mpz_to_real<Real>(quo), static_cast<int>(-shift));
}

template <class Real>
std::complex<Real> to_complex(const Rat& q) {
  return std::complex<Real>(to_real<Real>(q), Real(0));
}

inline Rat binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rat(b);
}

// Integer power of a complex number, negative exponents via the reciprocal.
template <class Real>
std::complex<Real> cpow_int(std::complex<Real> base, long e) {
  if (e < 0) {
    base = std::complex<Real>(1) / base;
    e = -e;
  }
  std::complex<Real> r(1);
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace ptb
