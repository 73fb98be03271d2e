#pragma once

/**
 * @file spectral.hpp
 * @brief Band spectrum, eigenvalues and m-function of periodic generalized
 * Jacobi operators, read off the monodromy matrix.
 *
 * With Δ = tr T the bands are E = {λ : Δ(λ) ∈ [−2, 2]}. Eigenvalues sit at the
 * zeros z of P_{s−1} where |b_{s−1}Q_{s−1}(z)| > |P_s(z)|; in the scaled
 * entries this is |m11(z)| > |m22(z)|.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pellab/monodromy.hpp"
#include "pellab/roots.hpp"

namespace pellab {

using cplx = std::complex<double>;

/// Δ = (P̂_s − ε_{s−1}β_{s−1}Q̂_{s−1})/√D, the trace of the monodromy.
struct Discriminant {
  ScaledPoly delta;
};

inline Discriminant discriminant(const PeriodData& period) { return {monodromy(period).trace()}; }

struct Spectrum {
  std::vector<cplx> band_endpoints;
  std::vector<std::vector<cplx>> arcs;
  std::vector<cplx> eigenvalues;
};

namespace detail {

/// Greedy nearest-neighbour assignment of `next` to `prev` (same size).
inline std::vector<std::size_t> match_roots(const std::vector<cplx>& prev, const std::vector<cplx>& next) {
  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < prev.size(); ++i)
    for (std::size_t j = 0; j < next.size(); ++j) pairs.push_back({std::abs(prev[i] - next[j]), i, j});
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });
  std::vector<std::size_t> assign(prev.size(), SIZE_MAX);
  std::vector<bool> used(next.size(), false);
  for (const auto& p : pairs) {
    if (assign[p.i] != SIZE_MAX || used[p.j]) continue;
    assign[p.i] = p.j;
    used[p.j] = true;
  }
  return assign;
}

/// Joins polylines whose ends lie within `join` of each other.
inline std::vector<std::vector<cplx>> join_arcs(std::vector<std::vector<cplx>> arcs, double join) {
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t a = 0; a < arcs.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < arcs.size() && !merged; ++b) {
        auto& x = arcs[a];
        auto& y = arcs[b];
        if (std::abs(x.back() - y.front()) <= join) {
          x.insert(x.end(), y.begin() + 1, y.end());
        } else if (std::abs(x.back() - y.back()) <= join) {
          x.insert(x.end(), y.rbegin() + 1, y.rend());
        } else if (std::abs(x.front() - y.back()) <= join) {
          y.insert(y.end(), x.begin() + 1, x.end());
          x = y;
        } else if (std::abs(x.front() - y.front()) <= join) {
          std::vector<cplx> r(y.rbegin(), y.rend());
          r.insert(r.end(), x.begin() + 1, x.end());
          x = r;
        } else {
          continue;
        }
        arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(b));
        merged = true;
      }
    }
  }
  // Deterministic orientation and order.
  auto less = [](cplx u, cplx v) { return u.real() != v.real() ? u.real() < v.real() : u.imag() < v.imag(); };
  for (auto& a : arcs)
    if (less(a.back(), a.front())) std::reverse(a.begin(), a.end());
  std::sort(arcs.begin(), arcs.end(), [&](const auto& u, const auto& v) { return less(u.front(), v.front()); });
  return arcs;
}

}  // namespace detail

/// Band endpoints (roots of D·Δ² − 4D with multiplicity), arcs traced by
/// solving Δ(λ) = 2cos θ on a uniform θ-grid of `grid` points, and the
/// eigenvalues.
inline Spectrum bands(const PeriodData& period, int grid = 512, double tol = 1e-10) {
  if (grid < 2) fail(ErrorKind::InvalidInput, "grid must be >= 2");
  ScaledMatrixPoly t = monodromy(period);
  const Poly tr = t.t(0, 0) + t.t(1, 1);
  Spectrum sp;
  sp.band_endpoints = find_roots(tr * tr - Poly::constant(4 * t.D), tol);

  // Eigenvalues: zeros of P̂_{s−1} (∝ m21) with |m11| > |m22|.
  if (!t.t(1, 0).is_constant()) {
    for (cplx z : distinct_roots(t.t(1, 0), tol)) {
      const double lhs = std::abs(t.t(0, 0).eval(z));
      const double rhs = std::abs(t.t(1, 1).eval(z));
      if (lhs - rhs > tol * std::max(1.0, rhs)) sp.eigenvalues.push_back(z);
    }
  }

  // Arcs: tr(λ) = 2cos θ·√D.
  const double sqrt_d = std::sqrt(t.D.get_d());
  std::vector<double> base;
  for (const auto& a : tr.coeffs()) base.push_back(a.get_d());
  const double h = std::numbers::pi / (grid - 1);
  std::vector<std::vector<cplx>> tracks;
  std::vector<cplx> prev;
  double scale = 1.0;
  std::vector<std::vector<cplx>> clouds(static_cast<std::size_t>(grid));
  for (int g = 0; g < grid; ++g) {
    std::vector<double> c = base;
    c[0] -= 2.0 * std::cos(h * g) * sqrt_d;
    clouds[static_cast<std::size_t>(g)] = companion_roots(c);
    for (cplx z : clouds[static_cast<std::size_t>(g)]) scale = std::max(scale, std::abs(z));
  }
  const double threshold = 10.0 * h * scale;
  std::vector<std::vector<cplx>> finished;
  prev = clouds[0];
  for (cplx z : prev) tracks.push_back({z});
  for (int g = 1; g < grid; ++g) {
    const auto& next = clouds[static_cast<std::size_t>(g)];
    auto assign = detail::match_roots(prev, next);
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      cplx z = next[assign[i]];
      if (std::abs(z - tracks[i].back()) > threshold) {
        finished.push_back(std::move(tracks[i]));
        tracks[i].clear();
      }
      tracks[i].push_back(z);
    }
    std::vector<cplx> reordered(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) reordered[i] = next[assign[i]];
    prev = std::move(reordered);
  }
  for (auto& tr_ : tracks) finished.push_back(std::move(tr_));
  sp.arcs = detail::join_arcs(std::move(finished), threshold);
  return sp;
}

/// Result of evaluating the m-function, with the diagnostics used to
/// validate the branch.
struct MValue {
  cplx m;
  cplx multiplier;  // w = t21·m + t22
  double residual;  // |t21 m² + (t22 − t11) m − t12|
  bool linear;      // t21(λ) = 0: the quadratic degenerated
};

/// m(λ) as the root of t21 m² + (t22 − t11) m − t12 = 0 whose multiplier
/// w = t21 m + t22 satisfies |w| > 1 ((m, 1) is an eigenvector of T(λ)
/// with eigenvalue w).
inline MValue m_eval_detail(const ScaledMatrixPoly& t, cplx lambda, double tol) {
  auto T = t.eval(lambda);
  const cplx a = T[1][0], b = T[1][1] - T[0][0], c = -T[0][1];
  auto residual = [&](cplx m) { return std::abs((a * m + b) * m + c); };
  MValue out{};
  if (a == 0.0) {
    // Multipliers are t11 and t22; (m, 1) belongs to t22.
    if (std::abs(T[1][1]) <= 1.0 + tol)
      fail(ErrorKind::OnSpectrum, "λ is on the spectrum (degenerate quadratic, |t22| <= 1)");
    if (b == 0.0) fail(ErrorKind::OnSpectrum, "degenerate m-function equation");
    out.m = -c / b;
    out.multiplier = T[1][1];
    out.residual = residual(out.m);
    out.linear = true;
    return out;
  }
  const cplx disc = std::sqrt(b * b - 4.0 * a * c);
  const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
  cplx r1, r2;
  if (q == 0.0) {
    r1 = r2 = 0.0;
  } else {
    r1 = q / a;
    r2 = c / q;
  }
  const cplx w1 = a * r1 + T[1][1], w2 = a * r2 + T[1][1];
  cplx m = std::abs(w1) >= std::abs(w2) ? r1 : r2;
  cplx w = std::abs(w1) >= std::abs(w2) ? w1 : w2;
  if (std::abs(w) - 1.0 <= tol) fail(ErrorKind::OnSpectrum, "λ is on the spectrum (|w1| = |w2| = 1)");
  // One Newton polish on the quadratic.
  const cplx f = (a * m + b) * m + c;
  const cplx fp = 2.0 * a * m + b;
  if (fp != 0.0) {
    cplx polished = m - f / fp;
    if (residual(polished) <= residual(m)) m = polished;
  }
  out.m = m;
  out.multiplier = a * m + T[1][1];
  out.residual = residual(m);
  out.linear = false;
  return out;
}

inline cplx m_eval(const PeriodData& period, cplx lambda, double tol = 1e-10) {
  return m_eval_detail(monodromy(period), lambda, tol).m;
}

}  // namespace pellab
