#pragma once

// Test helpers and independent oracles. Nothing here calls into the code
// being checked except for the basic Rat/Poly value types.

#include <complex>
#include <initializer_list>
#include <random>
#include <vector>

#include "pellab/pellab.hpp"

namespace pt {

using pellab::Poly;
using pellab::Rat;
using cplx = std::complex<double>;

inline Rat q(long n, long d = 1) { return pellab::make_rat(n, d); }

/// Polynomial from ascending coefficients.
inline Poly P(std::initializer_list<Rat> c) { return Poly(std::vector<Rat>(c)); }

inline Poly lam() { return Poly::x(); }

inline pellab::PStep blk(Poly p, int eps, Rat beta) { return {std::move(p), eps, std::move(beta)}; }

/// Free Jacobi: p = λ, ε = +1, β = 1.
inline pellab::PeriodData free_period() { return {{blk(lam(), 1, 1)}}; }
/// The mixed-sign period-2 fixture.
inline pellab::PeriodData mixed_period() { return {{blk(lam(), 1, 1), blk(lam(), -1, 1)}}; }
/// Period-2 fixture with an eigenvalue at 0.
inline pellab::PeriodData eigen_period() { return {{blk(lam(), 1, 1), blk(lam(), -1, 4)}}; }

/// Random period data: s <= max_s, deg p <= max_deg, coefficients in
/// [-3, 3], β from {1/4, 1, 9/4, 4}, ε mixed.
inline pellab::PeriodData random_period(std::mt19937& rng, int max_s = 4, int max_deg = 3) {
  std::uniform_int_distribution<int> s_dist(1, max_s), deg_dist(1, max_deg), c_dist(-3, 3), b_dist(0, 3), e_dist(0, 1);
  const Rat betas[] = {q(1, 4), q(1), q(9, 4), q(4)};
  pellab::PeriodData out;
  const int s = s_dist(rng);
  for (int j = 0; j < s; ++j) {
    const int k = deg_dist(rng);
    std::vector<Rat> c(static_cast<std::size_t>(k + 1));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = c_dist(rng);
    c[static_cast<std::size_t>(k)] = 1;
    out.blocks.push_back({Poly(std::move(c)), e_dist(rng) ? 1 : -1, betas[b_dist(rng)]});
  }
  return out;
}

inline Poly random_monic(std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> deg_dist(1, max_deg), c_dist(-5, 5);
  const int k = deg_dist(rng);
  std::vector<Rat> c(static_cast<std::size_t>(k + 1));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = c_dist(rng);
  c[static_cast<std::size_t>(k)] = 1;
  return Poly(std::move(c));
}

// ---- oracles ----

/// Determinant by cofactor expansion along the first row (small n only).
inline Rat laplace_det(const std::vector<std::vector<Rat>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Rat total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    std::vector<std::vector<Rat>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rat> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    Rat term = a[0][c] * laplace_det(minor);
    total += (c % 2 == 0) ? term : Rat(-term);
  }
  return total;
}

/// Indices n <= limit with det(s_{i+k})_{i,k<n} != 0, by cofactor expansion.
inline std::vector<int> hankel_oracle(const std::vector<Rat>& s, int limit) {
  std::vector<int> out;
  for (int n = 1; n <= limit; ++n) {
    std::vector<std::vector<Rat>> h(static_cast<std::size_t>(n), std::vector<Rat>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) h[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(i + k)];
    if (laplace_det(h) != 0) out.push_back(n);
  }
  return out;
}

/// Moments s_j = [H^j e, e] = (G H^j e)_0 computed on a dense truncation
/// large enough that no boundary effect reaches the first entry.
inline std::vector<Rat> matrix_moments(const pellab::PeriodData& p, int n) {
  int min_deg = 1 << 20;
  for (const auto& b : p.blocks) min_deg = std::min(min_deg, b.p.degree());
  const int blocks = n / min_deg + 2;
  pellab::DenseKreinPair kp = pellab::truncate(p, blocks);
  const std::size_t dim = kp.H.rows();
  std::vector<Rat> v(dim);
  v[0] = 1;
  std::vector<Rat> out;
  for (int j = 0; j < n; ++j) {
    Rat s = 0;
    for (std::size_t k = 0; k < dim; ++k) s += kp.G(0, k) * v[k];
    out.push_back(s);
    std::vector<Rat> w(dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t k = 0; k < dim; ++k)
        if (kp.H(r, k) != 0) w[r] += kp.H(r, k) * v[k];
    v = std::move(w);
  }
  return out;
}

/// 2x2 product of transfer matrices written out with plain polynomials.
inline std::array<std::array<Poly, 2>, 2> hand_product(const pellab::PeriodData& p) {
  std::array<std::array<Poly, 2>, 2> m{{{Poly::constant(1), Poly()}, {Poly(), Poly::constant(1)}}};
  for (const auto& b : p.blocks) {
    const Poly w00, w01 = Poly::constant(Rat(-b.epsilon)), w10 = Poly::constant(b.beta * b.epsilon), w11 = b.p;
    std::array<std::array<Poly, 2>, 2> r;
    r[0][0] = m[0][0] * w00 + m[0][1] * w10;
    r[0][1] = m[0][0] * w01 + m[0][1] * w11;
    r[1][0] = m[1][0] * w00 + m[1][1] * w10;
    r[1][1] = m[1][0] * w01 + m[1][1] * w11;
    m = r;
  }
  return m;
}

/// Evaluate a polynomial with complex<double> by plain Horner (test side).
inline cplx ev(const Poly& p, cplx z) {
  cplx acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * z + it->get_d();
  return acc;
}

/// Free-Jacobi m-function (−λ + √(λ²−4))/2 on the decaying branch.
inline cplx free_m(cplx z) {
  cplx r = std::sqrt(z * z - 4.0);
  cplx a = (-z + r) / 2.0, b = (-z - r) / 2.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

/// Mixed period-2 m-function (λ − √(λ²+4))/2 on the decaying branch.
inline cplx mixed_m(cplx z) {
  cplx r = std::sqrt(z * z + 4.0);
  cplx a = (z - r) / 2.0, b = (z + r) / 2.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

}  // namespace pt
