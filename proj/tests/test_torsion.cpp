#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "ptb/torsion.hpp"

using namespace ptb;
using C = std::complex<double>;

namespace {

const long kTestBundles[] = {3, 4, 5, 6, 7, 8, -3, -4, -5, -6, -7, -8};
const SlopeParam kTestSlopes[] = {{1, 0}, {2, 1}, {3, 1}, {0, 1}, {5, 1}, {4, 1}, {7, 2}};

C random_sample_y(std::mt19937_64& rng) {
  auto u = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  double r = 0.4 + 1.8 * u();
  double th = 2 * 3.14159265358979 * u();
  return C(r * std::cos(th), r * std::sin(th));
}

}  // namespace

TEST_CASE("slope normalization and validation") {
  CHECK(SlopeParam{3, -1}.normalized() == SlopeParam{-3, 1});
  CHECK(SlopeParam{-1, 0}.normalized() == SlopeParam{1, 0});
  CHECK(SlopeParam{5, 1}.normalized() == SlopeParam{5, 1});
  CHECK_THROWS_AS(require_slope({4, 2}, "test"), DomainError);
  CHECK_THROWS_AS(require_slope({1, -1}, "test"), DomainError);
  require_slope({1, 0}, "test");
}

TEST_CASE("delta: pinned values") {
  BoundaryFns bf = boundary_functions({4});
  CHECK(delta(bf, 0, 0).is_zero());
  CHECK(delta(bf, 0, 1) == RatFunc::constant(Rat(1)));
  for (long r : {-3L, 2L, 5L}) CHECK(delta(bf, 0, r) == eval_poly(cheb(r), bf.s));
  CHECK(delta(bf, 1, -2) == -(bf.v * bf.s) - bf.u);
  CHECK_THROWS_AS(delta(bf, -1, 0), DomainError);
}

TEST_CASE("slope functions: forced sanity cases") {
  BoundaryFns bf = boundary_functions({4});

  SlopeFns mu2 = slope_fns(bf, {2, 0});  // tr rho(mu^2) = s
  CHECK(mu2.g == RatFunc::constant(Rat(1)));
  CHECK(mu2.h.is_zero());
  CHECK(mu2.trace_fn == bf.s);

  SlopeFns mu = slope_fns(bf, {1, 0});  // E_gamma = m forces Q - 2 = s
  CHECK(mu.g == RatFunc::constant(Rat(1)));
  CHECK(mu.h.is_zero());
  CHECK(mu.trace_fn == bf.s);

  SlopeFns lam = slope_fns(bf, {0, 1});  // tr rho(lambda) = v(s^2-2) + u s
  CHECK(lam.trace_fn == bf.v * (bf.s * bf.s - Rat(2)) + bf.u * bf.s);

  CHECK_THROWS_AS(slope_fns(bf, {1, -1}), DomainError);
  CHECK_THROWS_AS(slope_fns(bf, {0, 0}), DomainError);
}

TEST_CASE("slope functions: exact identities across bundles and slopes") {
  const RatFunc one = RatFunc::constant(Rat(1));
  for (long n : kTestBundles) {
    BundleParam bp{n};
    BoundaryFns bf = boundary_functions(bp);
    const RatFunc s2m4 = bf.s * bf.s - Rat(4);
    for (const SlopeParam& sp : kTestSlopes) {
      SlopeFns sf = slope_fns(bf, sp);
      INFO("n = " << n << " slope " << sp.str());
      CHECK(sf.g * sf.g + sf.h * sf.h - bf.s * sf.g * sf.h == one);
      CHECK(sf.trace_fn * sf.trace_fn - Rat(4) == s2m4 * sf.pair_fn * sf.pair_fn);
      // den(G) = y^e den(traceFn), a pole at 0 appearing exactly on the
      // bundles that carry an extra component (and slopes meeting it)
      auto [cof, rem] = divrem(sf.G.den(), sf.trace_fn.den());
      REQUIRE(rem.is_zero());
      const long e = cof.degree();
      CHECK(cof == UniPoly::monomial(Rat(1), e));
      if (!bp.has_extra_component()) CHECK(e == 0);
      if (bp.has_extra_component() && sp.p != 4 * sp.q) CHECK(e >= 1);
      CHECK(sf.trace_fn.degree() - sf.G.degree() >= 2);
    }
  }
}

TEST_CASE("torsion of the fiber slope: pinned values and denominator shape") {
  RatFunc t4 = torsion_lambda({4});
  CHECK(t4.eval(Rat(0)) == Rat(4));

  // denominator divides a power of f_{n-1}(y) - 1
  for (long n : {3L, 4L, -5L, 6L}) {
    RatFunc t = torsion_lambda({n});
    UniPoly rem = t.den();
    UniPoly base = cheb(n - 1) - UniPoly::constant(Rat(1));
    while (rem.degree() > 0) {
      UniPoly g = poly_gcd(rem, base);
      REQUIRE(g.degree() > 0);
      rem = exact_div(rem, g);
    }
    CHECK(rem.degree() == 0);
  }
  CHECK_THROWS_AS(torsion_lambda({1}), DomainError);
}

TEST_CASE("torsion at a trace triple agrees with the y-substitution") {
  for (long n : {3L, 4L, -6L}) {
    RatFunc t = torsion_lambda({n});
    RatFunc x2 = RatFunc::poly(UniPoly::variable()) *
                 reduce(cheb(n) - UniPoly::variable(), cheb(n - 1) - UniPoly::constant(Rat(1)));
    for (double yv : {3.0, 0.7, -1.3}) {
      C y(yv, 0.25);
      C lhs = t.eval(y);
      C rhs = torsion_lambda_at_triple(n, y, x2.eval(y), y);
      CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
    }
  }
  CHECK(std::abs(torsion_lambda_at_triple(4, C(0), C(0), C(0)) - C(4)) < 1e-15);
}

TEST_CASE("derivative values entering the extra-component formula") {
  for (long n : {6L, 10L, -6L}) {
    CHECK(cheb(n).derivative().eval(Rat(0)) == rat(n, 2));
    CHECK(cheb(n + 1).derivative().eval(Rat(0)) == Rat(0));
    C m(0.8, 0.55);
    C x2 = m * m + C(1) / (m * m);
    C expected = C(2) + x2 * (double(n) / 2.0);
    CHECK(std::abs(torsion_lambda_at_triple(n, C(0), x2, C(0)) - expected) < 1e-12);
  }
}

TEST_CASE("lemma identity: 2vs' + 2u' + v's against the fiber-slope torsion") {
  const UniPoly y = UniPoly::variable();
  for (long n : kTestBundles) {
    BoundaryFns bf = boundary_functions({n});
    RatFunc lhs = Rat(2) * bf.v * bf.s.derivative() + Rat(2) * bf.u.derivative() +
                  bf.v.derivative() * bf.s;
    RatFunc rhs = bf.v * reduce(y - cheb(n), UniPoly::constant(Rat(1)) - cheb(n - 1)) *
                  torsion_lambda({n});
    CHECK(lhs == rhs);
  }
}

TEST_CASE("trace-derivative torsion recovers the fiber slope at (0,1)") {
  std::mt19937_64 rng(777);
  for (long n : {3L, 4L, -5L, 6L, -8L}) {
    BoundaryFns bf = boundary_functions({n});
    SlopeFns sf = slope_fns(bf, {0, 1});
    RatFunc tl = torsion_lambda({n});
    int done = 0;
    while (done < 6) {
      C yv = random_sample_y(rng);
      try {
        TorsionValue<double> t = torsion_gamma_from_trace(bf, sf, yv);
        C ref = tl.eval(yv);
        CHECK(std::abs(t.value - ref) < 1e-9 * std::max(1.0, std::abs(ref)));
        CHECK(t.pathway == TorsionPathway::trace_derivative);
      } catch (const EvaluationError&) {
        continue;
      }
      ++done;
    }
  }
}

TEST_CASE("trace-derivative torsion for the doubled meridian is (B/A) s'") {
  BoundaryFns bf = boundary_functions({5});
  SlopeFns sf = slope_fns(bf, {2, 0});
  C yv(1.21, 0.43);
  TorsionValue<double> t = torsion_gamma_from_trace(bf, sf, yv);
  C expected = (bf.B.eval(yv) / bf.A.eval(yv)) * bf.s.derivative().eval(yv);
  CHECK(std::abs(t.value - expected) < 1e-10 * std::abs(expected));
}

TEST_CASE("curve change factor: pinned and cross-pathway values") {
  BoundaryFns bf4 = boundary_functions({4});

  // fiber slope: identity factor
  auto rep = build_representation<double>({4}, C(0.9, 0.4), +1, +1, 1e-6);
  CHECK(std::abs(curve_change_factor(bf4, {0, 1}, rep.point) - C(1)) < 1e-15);

  // extra component: -p/4 + q
  FiberPoint<double> extra = extra_component_point<double>({6}, C(0, 1));
  CHECK(std::abs(curve_change_factor(bf4, {1, 0}, extra) - C(-0.25)) < 1e-15);

  // meridian slope on the geometric component against the trace pathway
  SlopeFns sf = slope_fns(bf4, {1, 0});
  std::mt19937_64 rng(99);
  int done = 0;
  while (done < 6) {
    C yv = random_sample_y(rng);
    try {
      auto r = build_representation<double>({4}, yv, +1, +1, 1e-6);
      C factor = curve_change_factor(bf4, {1, 0}, r.point);
      C jac = factor * r.point.torsion;
      C ref = torsion_gamma_from_trace(bf4, sf, yv).value;
      CHECK(std::abs(jac - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
      // both m-branches give the same factor
      auto r2 = build_representation<double>({4}, yv, +1, -1, 1e-6);
      CHECK(std::abs(curve_change_factor(bf4, {1, 0}, r2.point) - factor) < 1e-9);
    } catch (const Error&) {
      continue;
    }
    ++done;
  }
}

TEST_CASE("extra-component torsion: pinned values") {
  auto t1 = extra_torsion<double>({6}, {1, 0}, C(0, 1));
  CHECK(std::abs(t1.torsion.value - C(1)) < 1e-15);
  CHECK(t1.torsion.pathway == TorsionPathway::extra_closed_form);
  CHECK(std::abs(t1.trace - C(0, 0)) < 1e-15);  // i + 1/i

  auto t2 = extra_torsion<double>({6}, {5, 1}, C(1));
  CHECK(std::abs(t2.torsion.value - C(-2)) < 1e-15);
  CHECK(std::abs(t2.trace - C(2)) < 1e-15);

  auto t3 = extra_torsion<double>({6}, {0, 1}, C(0, 1));
  CHECK(std::abs(t3.torsion.value - C(-4)) < 1e-15);

  CHECK_THROWS_AS((extra_torsion<double>({6}, {4, 1}, C(0, 1))), DegenerateSlopeError);
  CHECK_THROWS_AS((extra_torsion<double>({5}, {1, 0}, C(0, 1))), DomainError);
}
