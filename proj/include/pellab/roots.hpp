#pragma once

// Numeric roots of exact rational polynomials.
//
// Initial approximations come from the eigenvalues of the companion matrix in
// double precision; each root of a squarefree factor is then polished by
// Newton steps with the polynomial evaluated in double-double arithmetic.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pellab/error.hpp"
#include "pellab/poly.hpp"

namespace pellab {

namespace dd {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct Real {
  double hi = 0, lo = 0;
};

inline Real two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}

inline Real quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline Real two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Real operator+(Real a, Real b) {
  Real s = two_sum(a.hi, b.hi);
  Real t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Real operator-(Real a) { return {-a.hi, -a.lo}; }
inline Real operator-(Real a, Real b) { return a + (-b); }

inline Real operator*(Real a, double b) {
  Real p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline Real from_rat(const Rat& q) {
  double hi = q.get_d();
  Rat rest = q - Rat(hi);
  return {hi, rest.get_d()};
}

/// p(z) with double-double coefficients and accumulation; z is double.
inline std::complex<double> horner(const std::vector<Real>& c, std::complex<double> z) {
  Real re, im;
  const double zr = z.real(), zi = z.imag();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    Real nr = re * zr - im * zi + *it;
    Real ni = re * zi + im * zr;
    re = nr;
    im = ni;
  }
  return {re.hi + re.lo, im.hi + im.lo};
}

}  // namespace dd

inline void sort_roots(std::vector<std::complex<double>>& r) {
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

/// Eigenvalues of the companion matrix of a (double) polynomial.
inline std::vector<std::complex<double>> companion_roots(const std::vector<double>& coeffs) {
  int n = static_cast<int>(coeffs.size()) - 1;
  while (n > 0 && coeffs[static_cast<std::size_t>(n)] == 0.0) --n;
  if (n < 1) return {};
  const double lead = coeffs[static_cast<std::size_t>(n)];
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  sort_roots(out);
  return out;
}

/// Roots of a squarefree rational polynomial, polished to tol.
inline std::vector<std::complex<double>> simple_roots(const Poly& f, double tol) {
  if (f.degree() < 1) return {};
  if (f.degree() == 1) {
    Rat r = -f.coeff(0) / f.coeff(1);
    return {std::complex<double>(r.get_d(), 0.0)};
  }
  Poly m = f.monic();
  std::vector<double> cd;
  std::vector<dd::Real> cdd;
  for (const auto& a : m.coeffs()) {
    cd.push_back(a.get_d());
    cdd.push_back(dd::from_rat(a));
  }
  Poly deriv = m.derivative();
  std::vector<std::complex<double>> roots = companion_roots(cd);
  for (auto& z : roots) {
    const bool real_start = z.imag() == 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      std::complex<double> fz = dd::horner(cdd, z);
      std::complex<double> dz = deriv.eval(z);
      if (fz == 0.0) {
        converged = true;
        break;
      }
      if (dz == 0.0) break;
      std::complex<double> step = fz / dz;
      if (real_start) step.imag(0.0);
      z -= step;
      const double scale = std::max(1.0, std::abs(z));
      if (std::abs(step) <= 1e-3 * tol * scale || std::abs(step) <= 4e-16 * scale) {
        converged = true;
        break;
      }
    }
    if (!converged)
      fail(ErrorKind::RootFindingFailure, "Newton refinement did not converge for a root of " + m.str("λ"));
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= tol * std::max(1.0, std::abs(roots[i])))
        fail(ErrorKind::RootFindingFailure, "refinement merged two roots of a squarefree polynomial");
  sort_roots(roots);
  return roots;
}

/// All roots listed with multiplicity (via squarefree decomposition).
inline std::vector<std::complex<double>> find_roots(const Poly& p, double tol) {
  if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<std::complex<double>> out;
  auto factors = squarefree_factors(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (const auto& z : simple_roots(factors[i], tol))
      for (std::size_t k = 0; k <= i; ++k) out.push_back(z);
  }
  sort_roots(out);
  return out;
}

/// Distinct roots, each once.
inline std::vector<std::complex<double>> distinct_roots(const Poly& p, double tol) {
  if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
  std::vector<std::complex<double>> out;
  for (const auto& f : squarefree_factors(p))
    for (const auto& z : simple_roots(f, tol)) out.push_back(z);
  sort_roots(out);
  return out;
}

}  // namespace pellab
