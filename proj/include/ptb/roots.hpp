#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ptb/unipoly.hpp"

namespace ptb {

struct RootDiagnostics {
  int iterations = 0;
  int restarts = 0;
  double worst_residual = 0.0;
};

namespace detail {

template <class Real>
std::complex<Real> horner(const std::vector<std::complex<Real>>& c, std::complex<Real> x) {
  std::complex<Real> acc(0);
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// Backward-error scale of an evaluation at x: sum |a_i| |x|^i.
template <class Real>
Real eval_scale(const std::vector<std::complex<Real>>& c, Real ax) {
  Real acc = 0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * ax + std::abs(c[i]);
  return acc;
}

// Initial moduli from the upper convex hull of (i, log|a_i|): each hull
// segment (k1, k2) contributes k2 - k1 start points with modulus
// (|a_k1|/|a_k2|)^(1/(k2-k1)). Handles coefficients spanning many orders of
// magnitude far better than a single circle.
template <class Real>
std::vector<Real> start_moduli(const std::vector<std::complex<Real>>& a) {
  const size_t n = a.size() - 1;
  std::vector<double> lg(a.size());
  for (size_t i = 0; i <= n; ++i) {
    const double m = static_cast<double>(std::abs(a[i]));
    lg[i] = m > 0 ? std::log(m) : -1e300;
  }
  std::vector<size_t> hull;  // indices of the upper convex hull
  for (size_t i = 0; i <= n; ++i) {
    if (lg[i] <= -1e299) continue;
    while (hull.size() >= 2) {
      const size_t j = hull[hull.size() - 1], k = hull[hull.size() - 2];
      if ((lg[i] - lg[k]) * double(j - k) >= (lg[j] - lg[k]) * double(i - k))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<Real> r;
  r.reserve(n);
  for (size_t s = 0; s + 1 < hull.size(); ++s) {
    const size_t k1 = hull[s], k2 = hull[s + 1];
    const double u = std::exp((lg[k1] - lg[k2]) / double(k2 - k1));
    for (size_t t = 0; t < k2 - k1; ++t) r.push_back(Real(u));
  }
  while (r.size() < n) r.push_back(Real(1));
  return r;
}

}  // namespace detail

/// All complex roots, with multiplicity, of the polynomial with coefficients
/// coeffs (ascending by degree, leading coefficient nonzero). Aberth-Ehrlich
/// simultaneous iteration with convex-hull start moduli, seeded perturbation
/// restarts, and a final Newton polish. Each returned root r satisfies
/// |f(r)| <= tol * sum_i |a_i||r|^i; otherwise ConvergenceError is thrown.
/// Output is sorted by (real, imag): deterministic for fixed input/precision.
template <class Real>
std::vector<std::complex<Real>> find_roots(std::vector<std::complex<Real>> coeffs, Real tol,
                                           RootDiagnostics* diag = nullptr) {
  using C = std::complex<Real>;
  const Real eps = std::numeric_limits<Real>::epsilon();

  while (!coeffs.empty() && coeffs.back() == C(0)) coeffs.pop_back();
  if (coeffs.size() <= 1) throw DomainError("find_roots: polynomial must have degree >= 1");

  // roots at the origin come off exactly
  std::vector<C> roots;
  size_t nz = 0;
  while (nz < coeffs.size() - 1 && coeffs[nz] == C(0)) ++nz;
  roots.assign(nz, C(0));
  if (nz > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(nz));

  const size_t n = coeffs.size() - 1;
  auto sort_roots = [](std::vector<C>& v) {
    std::sort(v.begin(), v.end(), [](const C& x, const C& y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
  };
  if (n == 0) {
    sort_roots(roots);
    return roots;
  }

  std::vector<C> a(coeffs);
  for (auto& c : a) c /= coeffs.back();
  std::vector<C> da(n);
  for (size_t i = 1; i <= n; ++i) da[i - 1] = a[i] * Real(i);

  const std::vector<Real> moduli = detail::start_moduli(a);
  std::vector<C> z(n);
  auto init_points = [&](Real jitter, std::mt19937_64* rng) {
    const Real two_pi = Real(2) * Real(3.14159265358979323846L);
    for (size_t k = 0; k < n; ++k) {
      Real r = moduli[k];
      Real th = two_pi * Real(k) / Real(n) + Real(0.3964) + Real(0.5) * Real(k % 7);
      if (rng) {
        auto u = [&] { return Real((*rng)() >> 11) * Real(0x1.0p-53); };
        r *= Real(1) + jitter * (u() - Real(0.5));
        th += jitter * Real(6.28) * (u() - Real(0.5));
      }
      z[k] = C(r * std::cos(th), r * std::sin(th));
    }
  };

  auto worst_residual = [&](const std::vector<C>& pts) {
    Real worst = 0;
    for (const C& p : pts) {
      const Real sc = detail::eval_scale(a, std::abs(p));
      worst = std::max(worst, std::abs(detail::horner(a, p)) / sc);
    }
    return worst;
  };

  const int max_iter = 1000;
  int total_iters = 0;
  int restarts = 0;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::vector<C> best;
  Real best_worst = std::numeric_limits<Real>::infinity();

  for (int attempt = 0; attempt < 4; ++attempt) {
    if (attempt == 0) {
      init_points(Real(0), nullptr);
    } else {
      ++restarts;
      init_points(Real(0.5), &rng);
    }
    for (int iter = 0; iter < max_iter; ++iter) {
      ++total_iters;
      Real max_step = 0;
      for (size_t i = 0; i < n; ++i) {
        const C f = detail::horner(a, z[i]);
        const C df = detail::horner(da, z[i]);
        const Real sc = detail::eval_scale(a, std::abs(z[i]));
        if (std::abs(df) < eps * sc / (Real(1) + std::abs(z[i]))) {
          // critical point; nudge deterministically
          z[i] += C(Real(1e-3) * (Real(1) + std::abs(z[i])), Real(1e-3));
          max_step = std::max(max_step, Real(1));
          continue;
        }
        const C newton = f / df;
        C s(0);
        for (size_t j = 0; j < n; ++j)
          if (j != i) s += C(1) / (z[i] - z[j]);
        const C denom = C(1) - newton * s;
        const C w = (std::abs(denom) < eps) ? newton : newton / denom;
        z[i] -= w;
        max_step = std::max(max_step, std::abs(w) / (Real(1) + std::abs(z[i])));
      }
      if (max_step < Real(8) * eps) break;
      if (iter >= 8 && iter % 8 == 0 && worst_residual(z) <= tol * Real(0.01)) break;
    }
    const Real worst = worst_residual(z);
    if (worst < best_worst) {
      best_worst = worst;
      best = z;
    }
    if (best_worst <= tol * Real(0.01) || (attempt >= 1 && best_worst <= tol)) break;
    if (attempt == 0 && best_worst <= tol) break;
  }
  z = best;

  // Newton polish (skipped near critical points, where it would drift)
  for (size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) {
      const C f = detail::horner(a, z[i]);
      const C df = detail::horner(da, z[i]);
      const Real sc = detail::eval_scale(a, std::abs(z[i]));
      if (std::abs(df) < std::sqrt(eps) * sc) break;
      const C step = f / df;
      if (std::abs(step) > Real(0.1) * (Real(1) + std::abs(z[i]))) break;
      z[i] -= step;
    }
  }

  const Real worst = worst_residual(z);
  if (diag) {
    diag->iterations = total_iters;
    diag->restarts = restarts;
    diag->worst_residual = static_cast<double>(worst);
  }
  if (worst > tol)
    throw ConvergenceError("find_roots: residual " + std::to_string(static_cast<double>(worst)) +
                               " above tolerance after " + std::to_string(total_iters) +
                               " iterations",
                           total_iters, static_cast<double>(worst));

  roots.insert(roots.end(), z.begin(), z.end());
  sort_roots(roots);
  return roots;
}

template <class Real>
std::vector<std::complex<Real>> find_roots(const UniPoly& f, Real tol,
                                           RootDiagnostics* diag = nullptr) {
  if (f.degree() < 1) throw DomainError("find_roots: polynomial must have degree >= 1");
  return find_roots(f.to_complex_coeffs<Real>(), tol, diag);
}

}  // namespace ptb
