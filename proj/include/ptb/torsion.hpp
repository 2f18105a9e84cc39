#pragma once

#include <numeric>
#include <string>

#include "ptb/charvariety.hpp"

namespace ptb {

/// A boundary slope gamma = mu^p lambda^q. Slopes are primitive classes
/// (gcd(p,q) = 1) normalized to q >= 0; since inverting the slope only flips
/// the sign of the torsion, nothing is lost by the normalization.
struct SlopeParam {
  long p = 0;
  long q = 0;

  bool primitive() const { return std::gcd(p, q) == 1; }
  bool even_p() const { return p % 2 == 0; }

  SlopeParam normalized() const {
    if (q < 0 || (q == 0 && p < 0)) return {-p, -q};
    return *this;
  }

  std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

  friend bool operator==(const SlopeParam&, const SlopeParam&) = default;
};

inline void require_slope(const SlopeParam& sp, const std::string& what) {
  if (!sp.primitive())
    throw DomainError(what + ": slope " + sp.str() + " is not primitive (gcd(p,q) != 1)");
  if (sp.q < 0) throw DomainError(what + ": slope " + sp.str() + " must have q >= 0");
}

/// delta_r = sum_{k=0}^q C(q,k) u^k v^{q-k} f_{k+r}(s), the coefficient
/// functions of the m^2-reduction of m^p ell^q.
inline RatFunc delta(const BoundaryFns& bf, long q, long r) {
  if (q < 0) throw DomainError("delta: q must be >= 0");
  RatFunc acc = RatFunc::constant(Rat(0));
  for (long k = 0; k <= q; ++k) {
    RatFunc term = RatFunc::constant(binomial(static_cast<unsigned long>(q),
                                              static_cast<unsigned long>(k)));
    term = term * bf.u.pow(k) * bf.v.pow(q - k);
    term = term * eval_poly(cheb(k + r), bf.s);
    acc += term;
  }
  return acc;
}

enum class TorsionPathway { trace_derivative, jacobian_direct, extra_closed_form };

inline const char* pathway_name(TorsionPathway p) {
  switch (p) {
    case TorsionPathway::trace_derivative: return "trace-derivative";
    case TorsionPathway::jacobian_direct: return "jacobian-direct";
    case TorsionPathway::extra_closed_form: return "extra-closed-form";
  }
  return "?";
}

template <class Real>
struct TorsionValue {
  std::complex<Real> value{};
  SlopeParam slope;
  TorsionPathway pathway = TorsionPathway::trace_derivative;
};

/// Slope-dependent machinery on the geometric component. For even p the trace
/// function is P = s g - 2 h with g = delta_{p/2-2q}, h = delta_{p/2-2q-1};
/// for odd p it is Q - 2 = (s+2)(g-h)^2 - 2 with g = delta_{(p+1)/2-2q},
/// h = delta_{(p-1)/2-2q}. pair_fn is the divisor of the trace derivative in
/// the torsion formula (g, resp. g^2 - h^2), and G = (f_n-y)/(1-f_{n-1}) *
/// pair_fn is the residue numerator function. The quadratic identities
/// relating these functions are certified exactly at construction.
struct SlopeFns {
  long n = 0;
  SlopeParam sp;
  bool even_p = true;
  RatFunc g, h;
  RatFunc trace_fn;     // P (even p) or Q - 2 (odd p)
  RatFunc trace_deriv;  // d/dy of trace_fn
  RatFunc pair_fn;      // g (even p) or g^2 - h^2 (odd p)
  RatFunc G;
};

inline SlopeFns slope_fns(const BoundaryFns& bf, const SlopeParam& sp) {
  if (sp.q < 0) throw DomainError("slope_fns: q must be >= 0");
  if (sp.p == 0 && sp.q == 0) throw DomainError("slope_fns: (0,0) is not a slope");

  SlopeFns sf;
  sf.n = bf.n;
  sf.sp = sp;
  sf.even_p = sp.even_p();

  const RatFunc one = RatFunc::constant(Rat(1));
  if (sf.even_p) {
    sf.g = delta(bf, sp.q, sp.p / 2 - 2 * sp.q);
    sf.h = delta(bf, sp.q, sp.p / 2 - 2 * sp.q - 1);
    sf.trace_fn = bf.s * sf.g - Rat(2) * sf.h;
    sf.pair_fn = sf.g;
  } else {
    sf.g = delta(bf, sp.q, (sp.p + 1) / 2 - 2 * sp.q);
    sf.h = delta(bf, sp.q, (sp.p - 1) / 2 - 2 * sp.q);
    sf.trace_fn = (bf.s + Rat(2)) * (sf.g - sf.h) * (sf.g - sf.h) - Rat(2);
    sf.pair_fn = sf.g * sf.g - sf.h * sf.h;
  }
  sf.trace_deriv = sf.trace_fn.derivative();
  sf.G = reduce(bf.A, bf.B) * sf.pair_fn;

  // construction-time certification; must never fire
  if (sf.g * sf.g + sf.h * sf.h - bf.s * sf.g * sf.h != one)
    throw InternalError("slope_fns: g^2 + h^2 - s g h != 1 at n = " + std::to_string(bf.n) +
                        ", slope " + sp.str());
  const RatFunc s2m4 = bf.s * bf.s - Rat(4);
  if (sf.trace_fn * sf.trace_fn - Rat(4) != s2m4 * sf.pair_fn * sf.pair_fn)
    throw InternalError("slope_fns: trace-function square identity failed at n = " +
                        std::to_string(bf.n) + ", slope " + sp.str());
  return sf;
}

inline SlopeFns slope_fns(const BundleParam& bp, const SlopeParam& sp) {
  return slope_fns(boundary_functions(bp), sp);
}

/// T_{M_n, lambda} as an exact rational function of y on the geometric
/// component:
///   3 + f_{n+1} + y (f_n - y)/(f_{n-1} - 1) f_n' - y f_{n+1}'.
inline RatFunc torsion_lambda(const BundleParam& bp) {
  require_hyperbolic(bp, "torsion_lambda");
  const UniPoly y = UniPoly::variable();
  const UniPoly fn = cheb(bp.n);
  const UniPoly fnm1 = cheb(bp.n - 1);
  const UniPoly fnp1 = cheb(bp.n + 1);
  RatFunc t = RatFunc::poly(UniPoly::constant(Rat(3)) + fnp1);
  t += RatFunc::poly(y) * reduce(fn - y, fnm1 - UniPoly::constant(Rat(1))) *
       RatFunc::poly(fn.derivative());
  t -= RatFunc::poly(y * fnp1.derivative());
  return t;
}

/// The same torsion evaluated at an arbitrary trace triple (x1, x2, x3),
/// by 3 + f_{n+1}(x3) + x2 f_n'(x3) - x1 f_{n+1}'(x3).
template <class Real>
std::complex<Real> torsion_lambda_at_triple(long n, const std::complex<Real>& x1,
                                            const std::complex<Real>& x2,
                                            const std::complex<Real>& x3) {
  return detail::lambda_torsion_at(n, x1, x2, x3);
}

namespace detail {

template <class Real>
std::complex<Real> eval_checked(const RatFunc& f, const std::complex<Real>& y,
                                const std::string& name) {
  const std::complex<Real> den = f.den().template eval<Real>(y);
  if (std::abs(den) < Real(1e-12))
    throw EvaluationError("evaluation: denominator of " + name + " vanishes at sample point");
  return f.num().template eval<Real>(y) / den;
}

}  // namespace detail

/// Adjoint torsion at a geometric fiber point from the trace-function
/// derivative:
///   T = (1 - f_{n-1})/(f_n - y) * P'/g          (even p)
///   T = (1 - f_{n-1})/(f_n - y) * Q'/(2(g^2-h^2)) (odd p)
template <class Real>
TorsionValue<Real> torsion_gamma_from_trace(const BoundaryFns& bf, const SlopeFns& sf,
                                            const std::complex<Real>& y) {
  const RatFunc pre = reduce(bf.B, bf.A);  // (1 - f_{n-1})/(f_n - y) reduced
  const std::complex<Real> prefactor = detail::eval_checked(pre, y, "(1-f_{n-1})/(f_n-y)");
  const std::complex<Real> dtrace = detail::eval_checked(sf.trace_deriv, y, "trace derivative");
  const std::complex<Real> divisor =
      detail::eval_checked(sf.pair_fn, y, sf.even_p ? "g" : "g^2 - h^2");
  if (std::abs(divisor) < Real(1e-12))
    throw EvaluationError(std::string("torsion_gamma_from_trace: ") +
                          (sf.even_p ? "g" : "g^2 - h^2") + " vanishes at sample point");
  const Real c = sf.even_p ? Real(1) : Real(2);
  TorsionValue<Real> t;
  t.value = prefactor * dtrace / (c * divisor);
  t.slope = sf.sp;
  t.pathway = TorsionPathway::trace_derivative;
  if (!std::isfinite(t.value.real()) || !std::isfinite(t.value.imag()))
    throw EvaluationError("torsion_gamma_from_trace: non-finite value");
  return t;
}

/// Change-of-curve factor d log(m^p ell^q) / d log(ell) = p (ell/m) dm/dell + q
/// at a fiber point. On the geometric component dm/dell is obtained by
/// implicit differentiation along F(m, y) = m^2 + m^-2 - s(y) = 0 with
/// ell = u m^-2 + v m^-4; on the extra component ell = m^-4 gives -p/4 + q.
template <class Real>
std::complex<Real> curve_change_factor(const BoundaryFns& bf, const SlopeParam& sp,
                                       const FiberPoint<Real>& pt) {
  using C = std::complex<Real>;
  if (pt.component == ComponentTag::extra)
    return C(-Real(sp.p) / Real(4) + Real(sp.q));
  if (pt.component != ComponentTag::geometric)
    throw DomainError("curve_change_factor: point must lie on the geometric or extra component");
  if (sp.p == 0) return C(Real(sp.q));

  const C y = pt.y;
  const C m = pt.m;
  const C mi = C(1) / m;
  const C uv = detail::eval_checked(bf.u, y, "u");
  const C vv = detail::eval_checked(bf.v, y, "v");
  const C du = detail::eval_checked(bf.u.derivative(), y, "u'");
  const C dv = detail::eval_checked(bf.v.derivative(), y, "v'");
  const C ds = detail::eval_checked(bf.s.derivative(), y, "s'");
  if (std::abs(ds) < Real(1e-10))
    throw BranchPointError("curve_change_factor: s'(y) = 0, branch point");

  const C ell = uv * mi * mi + vv * mi * mi * mi * mi;
  const C dF_dm = Real(2) * m - Real(2) * mi * mi * mi;
  const C dy_dm = dF_dm / ds;  // -dF/dm / dF/dy with dF/dy = -s'
  const C dell_dm = (-Real(2) * uv * mi * mi * mi - Real(4) * vv * mi * mi * mi * mi * mi) +
                    (du * mi * mi + dv * mi * mi * mi * mi) * dy_dm;
  if (std::abs(dell_dm) < Real(1e-10))
    throw BranchPointError("curve_change_factor: d ell/d m = 0, branch point");
  return Real(sp.p) * ell / (m * dell_dm) + C(Real(sp.q));
}

template <class Real>
struct ExtraTorsion {
  TorsionValue<Real> torsion;
  std::complex<Real> trace;  // tr rho(mu^p lambda^q) = m^{p-4q} + m^{-(p-4q)}
};

/// Closed-form adjoint torsion on the extra component:
///   T = (-p/4 + q) (2 + (m^2 + m^-2) n/2).
template <class Real>
ExtraTorsion<Real> extra_torsion(const BundleParam& bp, const SlopeParam& sp,
                                 const std::complex<Real>& m) {
  using C = std::complex<Real>;
  if (!bp.has_extra_component())
    throw DomainError("extra_torsion: requires n = 2 (mod 4), got n = " + std::to_string(bp.n));
  if (sp.p == 4 * sp.q)
    throw DegenerateSlopeError("extra_torsion: p = 4q has constant trace on the component");
  if (std::abs(m) < Real(1e-300)) throw DomainError("extra_torsion: m = 0");

  const C mi = C(1) / m;
  ExtraTorsion<Real> r;
  r.torsion.value =
      C(-Real(sp.p) / Real(4) + Real(sp.q)) * (C(2) + (m * m + mi * mi) * (Real(bp.n) / Real(2)));
  r.torsion.slope = sp;
  r.torsion.pathway = TorsionPathway::extra_closed_form;
  r.trace = cpow_int(m, sp.p - 4 * sp.q) + cpow_int(mi, sp.p - 4 * sp.q);
  return r;
}

}  // namespace ptb
