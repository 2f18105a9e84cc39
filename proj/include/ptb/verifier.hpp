#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ptb/monodromy.hpp"
#include "ptb/roots.hpp"
#include "ptb/torsion.hpp"

namespace ptb {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace detail {

inline std::string clip(std::string s, size_t n = 160) {
  if (s.size() > n) s = s.substr(0, n) + "...";
  return s;
}

}  // namespace detail

/// Per-slope exact structure checks, shared by the identity suite and the
/// slope-fns report.
inline std::vector<CheckResult> slope_structure_checks(const BundleParam& bp,
                                                       const BoundaryFns& bf, const SlopeFns& sf,
                                                       const std::string& prefix) {
  std::vector<CheckResult> out;
  const RatFunc one = RatFunc::constant(Rat(1));
  auto push_eq = [&out](const std::string& name, const RatFunc& lhs, const RatFunc& rhs) {
    if (lhs == rhs)
      out.push_back({name, true, ""});
    else
      out.push_back({name, false, "difference " + detail::clip((lhs - rhs).str())});
  };
  push_eq(prefix + "unit_circle", sf.g * sf.g + sf.h * sf.h - bf.s * sf.g * sf.h, one);
  push_eq(prefix + "trace_square", sf.trace_fn * sf.trace_fn - Rat(4),
          (bf.s * bf.s - Rat(4)) * sf.pair_fn * sf.pair_fn);
  // den(G) = y^e den(traceFn); e >= 1 exactly when the extra component exists
  {
    bool pass = false;
    std::string det;
    auto [quot, rem] = divrem(sf.G.den(), sf.trace_fn.den());
    if (rem.is_zero()) {
      const long e = quot.degree();
      if (quot == UniPoly::monomial(Rat(1), e)) {
        pass = bp.has_extra_component() ? true : (e == 0);
        det = "e = " + std::to_string(e);
      } else {
        det = "cofactor " + detail::clip(quot.str());
      }
    } else {
      det = "den(traceFn) does not divide den(G)";
    }
    out.push_back({prefix + "denominator_structure", pass, det});
  }
  {
    const long margin = sf.trace_fn.degree() - sf.G.degree();
    out.push_back({prefix + "degree_margin", margin >= 2, "margin = " + std::to_string(margin)});
  }
  return out;
}

/// Exact identity suite over one bundle and a list of slopes. Failures are
/// report entries (with the reduced difference), never exceptions.
inline std::vector<CheckResult> identity_suite(const BundleParam& bp,
                                               const std::vector<SlopeParam>& slopes) {
  require_hyperbolic(bp, "identity_suite");
  std::vector<CheckResult> out;
  const UniPoly y = UniPoly::variable();
  const RatFunc one = RatFunc::constant(Rat(1));

  auto push_eq = [&out](const std::string& name, const RatFunc& lhs, const RatFunc& rhs) {
    if (lhs == rhs)
      out.push_back({name, true, ""});
    else
      out.push_back({name, false, "difference " + detail::clip((lhs - rhs).str())});
  };

  const BoundaryFns bf = boundary_functions(bp);
  push_eq("boundary.unit_circle", bf.u * bf.u + bf.v * bf.v + bf.s * bf.u * bf.v, one);
  out.push_back({"boundary.A_d_split", bf.A * bf.d == cheb(bp.n) - y, ""});
  out.push_back({"boundary.B_d_split",
                 bf.B * bf.d == UniPoly::constant(Rat(1)) - cheb(bp.n - 1), ""});
  out.push_back({"boundary.A_B_coprime", poly_gcd(bf.A, bf.B).degree() == 0, ""});
  {
    const long want = bp.n >= 3 ? bp.n : -bp.n - 2;
    out.push_back({"boundary.s_degree", bf.s.degree() == want,
                   "deg s = " + std::to_string(bf.s.degree())});
  }

  // Lemma-level identity: 2vs' + 2u' + v's = v (y - f_n)/(1 - f_{n-1}) * T_lambda
  {
    RatFunc lhs = Rat(2) * bf.v * bf.s.derivative() + Rat(2) * bf.u.derivative() +
                  bf.v.derivative() * bf.s;
    RatFunc rhs = bf.v * reduce(y - cheb(bp.n), UniPoly::constant(Rat(1)) - cheb(bp.n - 1)) *
                  torsion_lambda(bp);
    push_eq("torsion.trace_derivative_lemma", lhs, rhs);
  }

  for (const SlopeParam& sp : slopes) {
    SlopeFns sf = slope_fns(bf, sp);
    auto sc = slope_structure_checks(bp, bf, sf, "slope" + sp.str() + ".");
    out.insert(out.end(), sc.begin(), sc.end());
  }

  // monodromy closed forms (bundle-independent, pinned by the suite anyway)
  {
    bool ok = true;
    for (long k = -10; k <= 10 && ok; ++k)
      ok = closed_form_LR(k) ==
           apply_word(parse_word("L R^" + std::to_string(k)), TraceTriple::identity());
    out.push_back({"monodromy.LR_closed_form", ok, ""});
  }
  {
    bool ok = true;
    const UniPoly y2m4 = UniPoly::from_ints({-4, 0, 1});
    for (long k = -12; k <= 12 && ok; ++k)
      ok = y2m4 * cheb(k).derivative() == Rat(k - 1) * cheb(k + 1) - Rat(k + 1) * cheb(k - 1);
    out.push_back({"chebyshev.derivative_divisibility", ok, ""});
  }
  {
    MonodromyWord w = parse_word("L R^" + std::to_string(-(bp.n + 2)));
    const TriPoly x1 = TriPoly::variable(0);
    const TriPoly x2 = TriPoly::variable(1);
    TriPoly expected = TriPoly::constant(Rat(3)) + TriPoly::from_unipoly(cheb(bp.n + 1), 2) +
                       x2 * TriPoly::from_unipoly(cheb(bp.n).derivative(), 2) -
                       x1 * TriPoly::from_unipoly(cheb(bp.n + 1).derivative(), 2);
    out.push_back({"monodromy.torsion_polynomial_form", torsion_polynomial(w) == expected, ""});
  }
  return out;
}

// -------------------------------------------------------------------------
// Fiber sums

struct GenericityConfig {
  double min_separation = 1e-4;       // accept only well-separated fibers
  double squarefree_separation = 1e-7;
  double const_coeff_tol = 1e-10;     // |F(0)| floor, relative to max |coeff|
  double leading_coeff_tol = 1e-10;   // |lc F| floor, relative to max |coeff|
  double excluded_value_tol = 1e-6;   // reject c near the fibered values {0, +-2}
  int max_redraws = 32;
};

struct Genericity {
  bool squarefree = false;
  bool const_nonzero = false;
  double min_separation = 0.0;
};

struct FiberQuery {
  BundleParam bp;
  SlopeParam sp;
  std::complex<double> c{};
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

template <class Real>
struct FiberRoot {
  std::complex<Real> y{};        // enumeration variable (y on C, z = m + 1/m on L)
  std::complex<Real> torsion{};
  std::complex<Real> inv_torsion{};
};

template <class Real>
struct FiberReport {
  ComponentTag component = ComponentTag::geometric;
  std::complex<Real> c{};
  long fiber_degree = 0;
  std::vector<FiberRoot<Real>> roots;
  std::complex<Real> sum{};
  Real normalized_residual{};
  Genericity genericity;
  // Residue-theorem prediction for the sum: 0 unless the bundle carries an
  // extra component, in which case the pole of G at y = 0 contributes.
  std::optional<std::complex<Real>> expected_sum;
};

namespace detail {

template <class Real>
Real root_tolerance() {
  return Real(1e7) * std::numeric_limits<Real>::epsilon();
}

template <class Real>
Genericity screen_roots(const std::vector<std::complex<Real>>& roots,
                        const std::vector<std::complex<Real>>& coeffs,
                        const GenericityConfig& cfg) {
  Genericity g;
  Real min_sep = std::numeric_limits<Real>::infinity();
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      min_sep = std::min(min_sep, std::abs(roots[i] - roots[j]));
  if (roots.size() < 2) min_sep = std::numeric_limits<Real>::infinity();
  Real maxc = 0;
  for (const auto& c : coeffs) maxc = std::max(maxc, std::abs(c));
  g.min_separation = static_cast<double>(min_sep);
  g.squarefree = min_sep > Real(cfg.squarefree_separation);
  g.const_nonzero = std::abs(coeffs[0]) > Real(cfg.const_coeff_tol) * maxc;
  return g;
}

template <class Real>
void require_generic_target(const std::complex<Real>& c, const GenericityConfig& cfg) {
  using C = std::complex<Real>;
  for (const C excluded : {C(0), C(2), C(-2)}) {
    if (std::abs(c - excluded) < Real(cfg.excluded_value_tol))
      throw NonGenericError("trace target too close to the fibered values {0, +2, -2}");
  }
}

// Laurent coefficient of order -1 of num / (y^e den) at y = 0, i.e. the
// coefficient of y^{e-1} in the Taylor series of num/den.
template <class Real>
std::complex<Real> residue_at_zero(const std::vector<std::complex<Real>>& num,
                                   const std::vector<std::complex<Real>>& den, long e) {
  using C = std::complex<Real>;
  std::vector<C> series(static_cast<size_t>(e), C(0));
  for (long j = 0; j < e; ++j) {
    C acc = static_cast<size_t>(j) < num.size() ? num[static_cast<size_t>(j)] : C(0);
    for (long i = 0; i < j; ++i)
      acc -= series[static_cast<size_t>(i)] * den[static_cast<size_t>(j - i)];
    series[static_cast<size_t>(j)] = acc / den[0];
  }
  return series[static_cast<size_t>(e - 1)];
}

}  // namespace detail

/// Sum of 1/T over the trace fiber of the geometric component, computed from
/// the cleared fiber polynomial F = T1 - target*T2 (target = c for even p,
/// c^2 - 2 for odd p). Per-root terms follow the residue normal form
/// R~(y) / (y^e F'(y)) with R~ = num(G); the reported sum is the plain term
/// sum for even p and half the fiber sum of 1/T for odd p, which is the same
/// expression. Per-root torsion values are the true per-character ones.
template <class Real>
FiberReport<Real> fiber_sum_geometric(const BoundaryFns& bf, const SlopeFns& sf,
                                      const std::complex<Real>& c, Real tol,
                                      const GenericityConfig& cfg = {}) {
  using C = std::complex<Real>;
  detail::require_generic_target(c, cfg);

  const C target = sf.even_p ? c : c * c - C(2);
  const auto t1 = sf.trace_fn.num().template to_complex_coeffs<Real>();
  const auto t2 = sf.trace_fn.den().template to_complex_coeffs<Real>();
  std::vector<C> F(std::max(t1.size(), t2.size()), C(0));
  for (size_t i = 0; i < t1.size(); ++i) F[i] += t1[i];
  for (size_t i = 0; i < t2.size(); ++i) F[i] -= target * t2[i];

  Real maxc = 0;
  for (const auto& a : F) maxc = std::max(maxc, std::abs(a));
  if (std::abs(F.back()) < Real(cfg.leading_coeff_tol) * maxc)
    throw NonGenericError("fiber polynomial drops degree at this trace target");

  const UniPoly cof = exact_div(sf.G.den(), sf.trace_fn.den());
  const long e = cof.degree();

  FiberReport<Real> rep;
  rep.component = ComponentTag::geometric;
  rep.c = c;
  rep.fiber_degree = static_cast<long>(F.size()) - 1;

  auto roots = find_roots(F, detail::root_tolerance<Real>());
  rep.genericity = detail::screen_roots(roots, F, cfg);
  if (!rep.genericity.squarefree || !rep.genericity.const_nonzero ||
      rep.genericity.min_separation < cfg.min_separation)
    throw NonGenericError(
        "fiber fails the genericity screen (squarefree=" +
        std::to_string(rep.genericity.squarefree) +
        ", const_nonzero=" + std::to_string(rep.genericity.const_nonzero) +
        ", min_separation=" + std::to_string(rep.genericity.min_separation) + ")");

  std::vector<C> dF(F.size() - 1);
  for (size_t i = 1; i < F.size(); ++i) dF[i - 1] = F[i] * Real(i);
  const auto rt = sf.G.num().template to_complex_coeffs<Real>();
  const Real kappa = sf.even_p ? Real(1) : Real(2);

  C sum(0);
  Real max_inv = 0;
  for (const C& yv : roots) {
    const C term = detail::horner(rt, yv) / (cpow_int(yv, e) * detail::horner(dF, yv));
    const C inv = kappa * term;
    const C tor = C(1) / inv;
    rep.roots.push_back({yv, tor, inv});
    sum += term;
    max_inv = std::max(max_inv, std::abs(inv));
  }
  rep.sum = sum;
  rep.normalized_residual = std::abs(sum) / std::max(max_inv, Real(1e-300));

  if (e > 0) {
    rep.expected_sum = -detail::residue_at_zero(rt, F, e);
  } else {
    rep.expected_sum = C(0);
  }
  (void)tol;
  return rep;
}

/// Trace polynomial z -> m^k + m^-k in z = m + 1/m (k >= 0).
inline UniPoly symmetric_power_trace(long k) {
  if (k < 0) k = -k;
  UniPoly p0 = UniPoly::constant(Rat(2), "z");
  UniPoly p1 = UniPoly::variable("z");
  if (k == 0) return p0;
  for (long j = 2; j <= k; ++j) {
    UniPoly p2 = p1 * UniPoly::variable("z") - p0;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return p1;
}

/// Sum of 1/T over the trace fiber of the extra component (one character per
/// root z of the cleared trace polynomial; z = m + 1/m removes the m <-> 1/m
/// double counting). When p = 4q + 1 the closed form -4/(2 + (c^2-2) n/2) is
/// attached as the expected sum.
template <class Real>
FiberReport<Real> fiber_sum_extra(const BundleParam& bp, const SlopeParam& sp,
                                  const std::complex<Real>& c, Real tol,
                                  const GenericityConfig& cfg = {}) {
  using C = std::complex<Real>;
  if (!bp.has_extra_component())
    throw DomainError("fiber_sum_extra: requires n = 2 (mod 4), got n = " + std::to_string(bp.n));
  if (sp.p == 4 * sp.q)
    throw DegenerateSlopeError("fiber_sum_extra: p = 4q has constant trace on the component");
  detail::require_generic_target(c, cfg);

  const long k = sp.p > 4 * sp.q ? sp.p - 4 * sp.q : 4 * sp.q - sp.p;
  std::vector<C> F = symmetric_power_trace(k).to_complex_coeffs<Real>();
  F[0] -= c;

  FiberReport<Real> rep;
  rep.component = ComponentTag::extra;
  rep.c = c;
  rep.fiber_degree = static_cast<long>(F.size()) - 1;

  auto roots = k == 1 ? std::vector<C>{c} : find_roots(F, detail::root_tolerance<Real>());
  rep.genericity = detail::screen_roots(roots, F, cfg);
  if (!rep.genericity.squarefree || !rep.genericity.const_nonzero ||
      rep.genericity.min_separation < cfg.min_separation)
    throw NonGenericError("extra-component fiber fails the genericity screen");

  C sum(0);
  Real max_inv = 0;
  for (const C& z : roots) {
    const C tor = C(-Real(sp.p) / Real(4) + Real(sp.q)) *
                  (C(2) + (z * z - C(2)) * (Real(bp.n) / Real(2)));
    const C inv = C(1) / tor;
    rep.roots.push_back({z, tor, inv});
    sum += inv;
    max_inv = std::max(max_inv, std::abs(inv));
  }
  rep.sum = sum;
  rep.normalized_residual = std::abs(sum) / std::max(max_inv, Real(1e-300));
  if (sp.p == 4 * sp.q + 1)
    rep.expected_sum = C(-4) / (C(2) + (c * c - C(2)) * (Real(bp.n) / Real(2)));
  (void)tol;
  return rep;
}

/// Character-count normalization: the geometric trace fiber carries both
/// square-root branches per y-root when p is even and one when p is odd, so
/// the character-level sum over the component is twice the reported sum in
/// both parities.
template <class Real>
std::complex<Real> geometric_character_sum(const SlopeFns& sf, const FiberReport<Real>& rep) {
  (void)sf;
  return Real(2) * rep.sum;
}

// -------------------------------------------------------------------------
// Exact component sums (independent oracle, rational arithmetic throughout)

struct ExactComponentSums {
  Rat geometric;   // character sum over the geometric component
  Rat extra;       // character sum over the extra component (0 if none)
  Rat total;
  long pole_order = 0;  // e in den(G) = y^e den(traceFn)
};

inline bool slope_meets_extra_component(const SlopeParam& sp) { return sp.p != 4 * sp.q; }

namespace detail {

// s * a = gcd(a, b) (mod b)
inline std::pair<UniPoly, UniPoly> half_ext_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly r0 = b, r1 = divrem(a, b).second;
  UniPoly s0 = UniPoly::zero(b.var()), s1 = UniPoly::constant(Rat(1), b.var());
  while (!r1.is_zero()) {
    auto [q, r2] = divrem(r0, r1);
    UniPoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return {r0, s0};
}

}  // namespace detail

/// Both component sums over the trace fiber at a rational target c, computed
/// exactly: the geometric sum by the residue theorem applied to
/// R~ / (y^e F) (the only finite pole of the summand away from the fiber is
/// y = 0), the extra sum as the trace of 1/T on Q[z]/(Phi) via Newton power
/// sums. Requires the fiber polynomials to be squarefree at c.
inline ExactComponentSums exact_component_sums(const BundleParam& bp, const BoundaryFns& bf,
                                               const SlopeFns& sf, const Rat& c) {
  ExactComponentSums out;
  const Rat target = sf.even_p ? c : Rat(c * c - Rat(2));
  const UniPoly F = sf.trace_fn.num() - UniPoly::constant(target) * sf.trace_fn.den();
  if (F.degree() < 1 || !is_squarefree(F) || sgn(F.eval(Rat(0))) == 0)
    throw NonGenericError("exact_component_sums: fiber polynomial degenerate at this target");
  const UniPoly cof = exact_div(sf.G.den(), sf.trace_fn.den());
  const long e = cof.degree();
  if (!(cof == UniPoly::monomial(Rat(1), e)))
    throw InternalError("exact_component_sums: unexpected denominator cofactor " + cof.str());
  out.pole_order = e;

  if (e == 0) {
    out.geometric = Rat(0);  // plain residue theorem, degree margin certified
  } else {
    // coefficient of y^{e-1} in the Taylor series of R~/F at 0
    const UniPoly& rt = sf.G.num();
    std::vector<Rat> series(static_cast<size_t>(e), Rat(0));
    const Rat f0 = F.eval(Rat(0));
    for (long j = 0; j < e; ++j) {
      Rat acc = rt.coeff(j);
      for (long i = 0; i < j; ++i) acc -= series[static_cast<size_t>(i)] * F.coeff(j - i);
      series[static_cast<size_t>(j)] = acc / f0;
    }
    out.geometric = Rat(-2) * series[static_cast<size_t>(e - 1)];
  }

  out.extra = Rat(0);
  if (bp.has_extra_component() && slope_meets_extra_component(sf.sp)) {
    const long k = sf.sp.p > 4 * sf.sp.q ? sf.sp.p - 4 * sf.sp.q : 4 * sf.sp.q - sf.sp.p;
    UniPoly phi = symmetric_power_trace(k) - UniPoly::constant(c, "z");
    const UniPoly z = UniPoly::variable("z");
    UniPoly tor = UniPoly::constant(rat(-sf.sp.p, 4) + Rat(sf.sp.q), "z") *
                  (UniPoly::constant(Rat(2), "z") +
                   (z * z - UniPoly::constant(Rat(2), "z")) * UniPoly::constant(rat(bp.n, 2), "z"));
    auto [g, s] = detail::half_ext_gcd(tor, phi);
    if (g.degree() != 0)
      throw NonGenericError("exact_component_sums: torsion vanishes on the extra fiber");
    UniPoly inv = divrem(s * UniPoly::constant(Rat(1) / g.leading(), "z"), phi).second;
    // Newton power sums of the roots of the monic phi
    std::vector<Rat> power(static_cast<size_t>(k), Rat(0));
    power[0] = Rat(k);
    for (long m = 1; m < k; ++m) {
      Rat acc = Rat(-m) * phi.coeff(k - m);
      for (long i = 1; i < m; ++i)
        acc -= phi.coeff(k - i) * power[static_cast<size_t>(m - i)];
      power[static_cast<size_t>(m)] = acc;
    }
    for (long j = 0; j <= inv.degree(); ++j)
      out.extra += inv.coeff(j) * power[static_cast<size_t>(j)];
  }
  out.total = out.geometric + out.extra;
  return out;
}

// -------------------------------------------------------------------------
// Cross-pathway check and generic draws

template <class Real>
struct CrossCheckReport {
  int samples_used = 0;
  int skipped = 0;
  Real max_rel_deviation{};
  std::vector<std::string> skip_reasons;
};

/// At up to `samples` fiber points, rebuild the representation, evaluate the
/// torsion through the monodromy Jacobian times the change-of-curve factor,
/// and compare with the trace-derivative pathway.
template <class Real>
CrossCheckReport<Real> cross_check(const BundleParam& bp, const BoundaryFns& bf,
                                   const SlopeFns& sf, const std::complex<Real>& c, int samples,
                                   Real tol, const GenericityConfig& cfg = {}) {
  FiberReport<Real> fib = fiber_sum_geometric(bf, sf, c, tol, cfg);
  CrossCheckReport<Real> rep;
  rep.max_rel_deviation = Real(0);
  for (const auto& root : fib.roots) {
    if (rep.samples_used >= samples) break;
    try {
      auto rec = build_representation<Real>(bp, root.y, +1, +1, Real(1e-6));
      const std::complex<Real> factor = curve_change_factor(bf, sf.sp, rec.point);
      const std::complex<Real> jac = factor * rec.point.torsion;
      const std::complex<Real> trace = torsion_gamma_from_trace(bf, sf, root.y).value;
      const Real dev = std::abs(jac - trace) / std::max(std::abs(trace), Real(1e-30));
      rep.max_rel_deviation = std::max(rep.max_rel_deviation, dev);
      ++rep.samples_used;
    } catch (const Error& err) {
      ++rep.skipped;
      rep.skip_reasons.push_back(err.what());
    }
  }
  return rep;
}

/// Seeded draw of trace targets, area-uniform on the annulus 1 <= |c| <= 3.
class TraceDraw {
 public:
  explicit TraceDraw(std::uint64_t seed) : rng_(seed) {}

  std::complex<double> next() {
    const double u1 = double(rng_() >> 11) * 0x1.0p-53;
    const double u2 = double(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(1.0 + 8.0 * u1);
    const double th = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(th), r * std::sin(th)};
  }

 private:
  std::mt19937_64 rng_;
};

/// Runs `attempt` on freshly drawn targets until it stops throwing
/// NonGenericError, up to cfg.max_redraws times.
template <class Real, class Fn>
auto with_generic_target(std::uint64_t seed, const GenericityConfig& cfg, Fn&& attempt) {
  TraceDraw draw(seed);
  std::string last;
  for (int i = 0; i < cfg.max_redraws; ++i) {
    const std::complex<double> c = draw.next();
    try {
      return attempt(std::complex<Real>(Real(c.real()), Real(c.imag())));
    } catch (const NonGenericError& e) {
      last = e.what();
    }
  }
  throw NonGenericError("no generic trace target found after " +
                        std::to_string(cfg.max_redraws) + " draws; last failure: " + last);
}

// -------------------------------------------------------------------------
// Residue-theorem self test

struct JacobiReport {
  int trials = 0;
  int failures = 0;
  double worst_residual = 0.0;
  bool negative_control_pass = true;
  std::vector<std::string> details;
};

/// Seeded random (f, g) with f squarefree, f(0) != 0, deg g <= deg f - 2:
/// checks |sum g(r)/f'(r)| < 1e-9 * scale over the roots of f, plus a
/// negative control with deg g = deg f - 1 whose sum must be lc(g)/lc(f).
inline JacobiReport jacobi_selftest(std::uint64_t seed, int trials) {
  if (trials < 1) throw DomainError("jacobi_selftest: trials must be >= 1");
  using C = std::complex<double>;
  std::mt19937_64 rng(seed);
  auto rand_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  JacobiReport rep;
  rep.trials = trials;
  int done = 0;
  while (done < trials) {
    const int deg = rand_int(3, 25);
    std::vector<Rat> fc(static_cast<size_t>(deg) + 1);
    for (auto& x : fc) x = Rat(rand_int(-9, 9));
    if (sgn(fc[0]) == 0 || sgn(fc.back()) == 0) continue;
    UniPoly f = UniPoly::from_coeffs(fc);
    if (!is_squarefree(f)) continue;

    const int gdeg = rand_int(0, deg - 2);
    std::vector<Rat> gc(static_cast<size_t>(gdeg) + 1);
    for (auto& x : gc) x = Rat(rand_int(-9, 9));
    UniPoly g = UniPoly::from_coeffs(gc);
    if (g.is_zero()) continue;

    auto roots = find_roots(f, 1e-9);
    UniPoly df = f.derivative();
    C sum(0);
    double scale = 0;
    for (const C& r : roots) {
      const C term = g.eval(r) / df.eval(r);
      sum += term;
      scale = std::max(scale, std::abs(term));
    }
    scale = std::max(scale, 1.0);
    rep.worst_residual = std::max(rep.worst_residual, std::abs(sum) / scale);
    if (std::abs(sum) >= 1e-9 * scale) {
      ++rep.failures;
      if (rep.details.size() < 8)
        rep.details.push_back("positive control residual " + std::to_string(std::abs(sum)) +
                              " at trial " + std::to_string(done));
    }

    // negative control: deg g = deg f - 1 makes the sum lc(g)/lc(f) != 0
    UniPoly gneg = UniPoly::monomial(Rat(rand_int(1, 9)), deg - 1) + g;
    C nsum(0);
    for (const C& r : roots) nsum += gneg.eval(r) / df.eval(r);
    const C want = to_complex<double>(Rat(gneg.leading() / f.leading()));
    if (std::abs(nsum) < 1e-6 || std::abs(nsum - want) > 1e-6 * std::max(1.0, std::abs(want))) {
      rep.negative_control_pass = false;
      if (rep.details.size() < 8)
        rep.details.push_back("negative control got " + std::to_string(nsum.real()) +
                              " expected " + std::to_string(want.real()));
    }
    ++done;
  }
  return rep;
}

}  // namespace ptb
