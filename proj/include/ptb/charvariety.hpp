#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ptb/chebyshev.hpp"
#include "ptb/ratfunc.hpp"
#include "ptb/tripoly.hpp"

namespace ptb {

/// The integer parameter of the bundle M_n. The bundle is hyperbolic iff
/// |n| > 2; an extra character-variety component exists iff n = 2 (mod 4).
struct BundleParam {
  long n = 0;

  bool hyperbolic() const { return n > 2 || n < -2; }
  bool has_extra_component() const { return ((n % 4) + 4) % 4 == 2; }
};

inline void require_hyperbolic(const BundleParam& bp, const std::string& what) {
  if (!bp.hyperbolic())
    throw DomainError(what + ": requires |n| > 2 (hyperbolic bundle), got n = " +
                      std::to_string(bp.n));
}

/// Defining polynomials of the character variety in the trace coordinates
/// (x, y, z) (variable indices 0, 1, 2):
///   x^2 - 1 + f_{n-1}(y),  xz - y + f_n(y),  x (f_{n+1}(y) - 1) - z f_n(y).
inline std::array<TriPoly, 3> defining_polys(const BundleParam& bp) {
  const TriPoly x = TriPoly::variable(0);
  const TriPoly z = TriPoly::variable(2);
  const TriPoly one = TriPoly::constant(Rat(1));
  const TriPoly y = TriPoly::variable(1);
  auto f_at_y = [](long k) { return TriPoly::from_unipoly(cheb(k), 1); };
  return {x * x - one + f_at_y(bp.n - 1),
          x * z - y + f_at_y(bp.n),
          x * (f_at_y(bp.n + 1) - one) - z * f_at_y(bp.n)};
}

/// Boundary eigenvalue data on the geometric component: the functions u, v, s
/// with ell = u m^-2 + v m^-4 and m^2 + m^-2 = s, together with the coprime
/// factorization f_n - y = A d, 1 - f_{n-1} = B d (d the monic gcd). All
/// stated identities are certified exactly at construction.
struct BoundaryFns {
  long n = 0;
  RatFunc u, v, s;
  UniPoly A, B, d;
};

inline BoundaryFns boundary_functions(const BundleParam& bp) {
  require_hyperbolic(bp, "boundary_functions");
  const UniPoly y = UniPoly::variable();
  const UniPoly fn = cheb(bp.n);
  const UniPoly fnm1 = cheb(bp.n - 1);
  const UniPoly fnm2 = cheb(bp.n - 2);
  const UniPoly one = UniPoly::constant(Rat(1));

  BoundaryFns bf;
  bf.n = bp.n;
  bf.d = poly_gcd(fn - y, one - fnm1);
  bf.A = exact_div(fn - y, bf.d);
  bf.B = exact_div(one - fnm1, bf.d);
  bf.u = reduce(-((one - fnm1) * fn), y - fn);
  bf.v = reduce(fnm2, y - fn);
  bf.s = reduce((y - fn) * (y - fn), one - fnm1) - Rat(2);

  // construction-time certification; must never fire
  const RatFunc one_rf = RatFunc::constant(Rat(1));
  if (bf.u * bf.u + bf.v * bf.v + bf.s * bf.u * bf.v != one_rf)
    throw InternalError("boundary_functions: u^2 + v^2 + s u v != 1 for n = " +
                        std::to_string(bp.n));
  if (bf.A * bf.d != fn - y || bf.B * bf.d != one - fnm1)
    throw InternalError("boundary_functions: A d / B d factorization failed");
  if (poly_gcd(bf.A, bf.B).degree() != 0)
    throw InternalError("boundary_functions: A and B are not coprime");
  if (bf.u != reduce(bf.B * fn, bf.A) || bf.v != reduce(bf.A + y * bf.B, bf.A))
    throw InternalError("boundary_functions: u, v do not match their A/B forms");
  return bf;
}

/// Trace values y of the isolated x = z = 0 characters:
/// {2 cos(2 pi k / (n-2))}. At these characters tr rho(mu^p lambda^q) lies in
/// {+-2, 0}, so they never meet a generic trace fiber.
inline std::vector<double> fibered_traces(const BundleParam& bp) {
  if (bp.n == 2) throw DomainError("fibered_traces: n = 2 has no such set");
  const long order = bp.n > 2 ? bp.n - 2 : 2 - bp.n;
  std::vector<double> vals;
  for (long k = 0; k < order; ++k) {
    vals.push_back(2.0 * std::cos(2.0 * 3.141592653589793238462643 * double(k) / double(order)));
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             vals.end());
  return vals;
}

enum class ComponentTag { geometric, extra, fibered_case2 };

inline const char* component_name(ComponentTag t) {
  switch (t) {
    case ComponentTag::geometric: return "geometric";
    case ComponentTag::extra: return "extra";
    case ComponentTag::fibered_case2: return "fibered-case2";
  }
  return "?";
}

/// One numeric character in a trace fiber, with its eigenvalue data and the
/// adjoint torsion for the fiber-boundary slope, plus named defect magnitudes
/// recorded during reconstruction.
template <class Real>
struct FiberPoint {
  std::complex<Real> y{}, x{}, z{}, m{}, ell{};
  int eps = +1;
  ComponentTag component = ComponentTag::geometric;
  std::complex<Real> torsion{};
  std::map<std::string, Real> residuals;
};

template <class Real>
struct Mat2 {
  std::complex<Real> a{}, b{}, c{}, d{};

  static Mat2 identity() { return {1, 0, 0, 1}; }

  friend Mat2 operator*(const Mat2& p, const Mat2& q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d,
            p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
  }
  friend Mat2 operator-(const Mat2& p, const Mat2& q) {
    return {p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d};
  }

  std::complex<Real> det() const { return a * d - b * c; }
  std::complex<Real> trace() const { return a + d; }

  // determinant-1 inverse
  Mat2 inv() const { return {d, -b, -c, a}; }

  Mat2 pow(long k) const {
    Mat2 base = k < 0 ? inv() : *this;
    if (k < 0) k = -k;
    Mat2 r = identity();
    while (k > 0) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  Real maxnorm() const {
    return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
  }
};

namespace detail {

// T_{M_n,lambda} = 3 + f_{n+1}(x3) + x2 f_n'(x3) - x1 f_{n+1}'(x3)
template <class Real>
std::complex<Real> lambda_torsion_at(long n, const std::complex<Real>& x1,
                                     const std::complex<Real>& x2,
                                     const std::complex<Real>& x3) {
  return std::complex<Real>(3) + cheb(n + 1).eval(x3) + x2 * cheb(n).derivative().eval(x3) -
         x1 * cheb(n + 1).derivative().eval(x3);
}

}  // namespace detail

template <class Real>
struct ReconstructedRep {
  FiberPoint<Real> point;
  Mat2<Real> rho_mu, rho_beta;

  Mat2<Real> rho_alpha() const { return rho_beta.inv() * rho_mu; }

  // lambda = alpha beta alpha^-1 beta alpha beta^-1 alpha^-1 beta^-1
  Mat2<Real> rho_lambda() const {
    const Mat2<Real> al = rho_alpha();
    const Mat2<Real> ali = al.inv();
    const Mat2<Real> bi = rho_beta.inv();
    return al * rho_beta * ali * rho_beta * al * bi * ali * bi;
  }
};

/// Rebuild an SL2(C) representation over a geometric-component character:
/// x = eps sqrt(1 - f_{n-1}(y)), z = eps (y - f_n(y)) / sqrt(1 - f_{n-1}(y)),
/// m a root of m^2 - z m + 1 selected by m_branch, and the explicit matrices
///   rho(mu) = [[m, 1], [0, 1/m]],  rho(beta) = [[b, 0], [-x + b/m + m/b, 1/b]]
/// with y = b + 1/b. The group relation beta^-n = alpha^-1 beta alpha^2 beta
/// alpha^-1 and the mu/lambda commutation are checked to within tol and all
/// defect magnitudes are recorded on the returned point.
template <class Real>
ReconstructedRep<Real> build_representation(const BundleParam& bp, const std::complex<Real>& y,
                                            int eps, int m_branch, Real tol) {
  using C = std::complex<Real>;
  if (eps != 1 && eps != -1) throw DomainError("build_representation: eps must be +-1");
  if (m_branch != 1 && m_branch != -1)
    throw DomainError("build_representation: m_branch must be +-1");

  const C fnm1 = cheb(bp.n - 1).eval(y);
  const C fn = cheb(bp.n).eval(y);
  const C fnp1 = cheb(bp.n + 1).eval(y);
  const Real guard = Real(1e-12);
  if (std::abs(C(1) - fnm1) < guard)
    throw DomainError("build_representation: f_{n-1}(y) = 1 (excluded)");

  const C sx = std::sqrt(C(1) - fnm1);
  const C x = Real(eps) * sx;
  const C z = Real(eps) * (y - fn) / sx;
  const C m = (z + Real(m_branch) * std::sqrt(z * z - C(4))) / Real(2);
  if (std::abs(m) < guard) throw DomainError("build_representation: m = 0");
  const C mi = C(1) / m;
  const C ell = mi * mi * mi * mi - x * y * mi * mi * mi + x * x * mi * mi;

  const C b = (y + std::sqrt(y * y - C(4))) / Real(2);
  if (std::abs(b) < guard) throw DomainError("build_representation: b = 0");
  const C w = -x + b / m + m / b;

  ReconstructedRep<Real> rep;
  rep.rho_mu = {m, C(1), C(0), mi};
  rep.rho_beta = {b, C(0), w, C(1) / b};

  const Mat2<Real> al = rep.rho_alpha();
  const Mat2<Real> ali = al.inv();
  const Mat2<Real> lhs = rep.rho_beta.pow(-bp.n);
  const Mat2<Real> rhs = ali * rep.rho_beta * al * al * rep.rho_beta * ali;
  const Real rel_res = (lhs - rhs).maxnorm();

  const Mat2<Real> lam = rep.rho_lambda();
  const Real comm_res = (rep.rho_mu * lam - lam * rep.rho_mu).maxnorm();

  FiberPoint<Real>& pt = rep.point;
  pt.y = y;
  pt.x = x;
  pt.z = z;
  pt.m = m;
  pt.ell = ell;
  pt.eps = eps;
  pt.component = ComponentTag::geometric;

  const C x2 = x * x + y * y + z * z - x * y * z - C(2);
  pt.torsion = detail::lambda_torsion_at(bp.n, y, x2, y);

  pt.residuals["relation"] = rel_res;
  pt.residuals["mu_lambda_commutation"] = comm_res;
  pt.residuals["defining_eq1"] = std::abs(x * x - C(1) + fnm1);
  pt.residuals["defining_eq2"] = std::abs(x * z - y + fn);
  pt.residuals["defining_eq3"] = std::abs(x * (fnp1 - C(1)) - z * fn);
  pt.residuals["ell_inverse"] =
      std::abs(ell * (m * m * m * m - x * y * m * m * m + x * x * m * m) - C(1));
  pt.residuals["lambda_eigenvalue"] = std::abs(lam.a - ell);
  pt.residuals["lambda_lower_left"] = std::abs(lam.c);
  pt.residuals["irreducibility_guard"] = std::abs(w);

  if (std::abs(w) < guard)
    throw ReconstructionError("build_representation: reducible point, -x + b/m + m/b = 0");
  if (rel_res > tol || comm_res > tol)
    throw ReconstructionError("build_representation: relation residual " +
                              std::to_string(static_cast<double>(std::max(rel_res, comm_res))) +
                              " exceeds tolerance");
  return rep;
}

/// A character on the extra component: x = y = 0, m^4 ell = 1, local
/// coordinate x2 = z^2 - 2 = m^2 + m^-2. Exists only when n = 2 (mod 4).
template <class Real>
FiberPoint<Real> extra_component_point(const BundleParam& bp, const std::complex<Real>& m) {
  using C = std::complex<Real>;
  if (!bp.has_extra_component())
    throw DomainError("extra_component_point: requires n = 2 (mod 4), got n = " +
                      std::to_string(bp.n));
  if (std::abs(m) < Real(1e-300)) throw DomainError("extra_component_point: m = 0");

  FiberPoint<Real> pt;
  const C mi = C(1) / m;
  pt.y = C(0);
  pt.x = C(0);
  pt.z = m + mi;
  pt.m = m;
  pt.ell = mi * mi * mi * mi;
  pt.eps = +1;
  pt.component = ComponentTag::extra;
  const C x2 = m * m + mi * mi;
  pt.torsion = C(2) + x2 * (Real(bp.n) / Real(2));
  pt.residuals["m4_ell"] = std::abs(m * m * m * m * pt.ell - C(1));
  return pt;
}

/// A case-(2) character: x = z = 0, y in the fibered trace set, m^2 = -1,
/// ell = 1.
template <class Real>
FiberPoint<Real> case2_point(const BundleParam& bp, Real y) {
  FiberPoint<Real> pt;
  pt.y = std::complex<Real>(y);
  pt.x = std::complex<Real>(0);
  pt.z = std::complex<Real>(0);
  pt.m = std::complex<Real>(0, 1);
  pt.ell = std::complex<Real>(1);
  pt.component = ComponentTag::fibered_case2;
  pt.torsion = detail::lambda_torsion_at(bp.n, pt.y, pt.z * pt.z - std::complex<Real>(2), pt.y);
  return pt;
}

}  // namespace ptb
