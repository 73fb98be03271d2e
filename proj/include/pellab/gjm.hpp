#pragma once

/**
 * @file gjm.hpp
 * @brief Dense truncations of generalized Jacobi matrices and their Gram
 * (Krein metric) matrices.
 *
 * Block j of H is the companion matrix of p_j. The coupling below the
 * diagonal, B_j, holds b_j in its top-right corner; the coupling above,
 * B̃_j, holds ε_jε_{j+1}b_j in its top-right corner. The Gram matrix is
 * block diagonal with blocks ε_j·E_{p_j}^{-1}.
 */

#include <complex>

#include <Eigen/Dense>

#include "pellab/matrix.hpp"
#include "pellab/period.hpp"

namespace pellab {

/// Companion matrix with det(λI − C_p) = p(λ): ones on the subdiagonal and
/// −p_0, …, −p_{n−1} in the last column.
inline RatMatrix companion(const Poly& p) {
  if (p.degree() < 1 || !p.is_monic()) fail(ErrorKind::NotMonic, "companion needs a monic polynomial of degree >= 1");
  const auto n = static_cast<std::size_t>(p.degree());
  RatMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -p.coeff(static_cast<int>(i));
  return c;
}

/// Symmetrizator E_p: (E_p)_{ik} = p_{i+k+1} (zero past p_n), so that
/// C_p E_p = E_p C_pᵀ.
inline RatMatrix symmetrizator(const Poly& p) {
  if (p.degree() < 1 || !p.is_monic()) fail(ErrorKind::NotMonic, "symmetrizator needs a monic polynomial of degree >= 1");
  const auto n = static_cast<std::size_t>(p.degree());
  RatMatrix e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; i + k < n; ++k) e(i, k) = p.coeff(static_cast<int>(i + k + 1));
  return e;
}

struct DenseKreinPair {
  RatMatrix H;
  RatMatrix G;
};

/// H_{[first, first+n_blocks−1]} and its Gram matrix. Every coupling b_j that
/// enters the matrix must be rational.
inline DenseKreinPair truncate(const PeriodData& period, int n_blocks, int first_block = 0) {
  validate(period);
  if (n_blocks < 1) fail(ErrorKind::InvalidInput, "n_blocks must be >= 1");
  if (first_block < 0) fail(ErrorKind::InvalidInput, "first_block must be >= 0");
  std::vector<std::size_t> offset{0};
  for (int j = 0; j < n_blocks; ++j)
    offset.push_back(offset.back() + static_cast<std::size_t>(period[static_cast<std::size_t>(first_block + j)].p.degree()));
  const std::size_t dim = offset.back();
  DenseKreinPair out{RatMatrix(dim, dim), RatMatrix(dim, dim)};
  for (int j = 0; j < n_blocks; ++j) {
    const PStep& blk = period[static_cast<std::size_t>(first_block + j)];
    const std::size_t o = offset[static_cast<std::size_t>(j)];
    const std::size_t k = static_cast<std::size_t>(blk.p.degree());
    RatMatrix a = companion(blk.p);
    RatMatrix g = inverse(symmetrizator(blk.p));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) {
        out.H(o + r, o + c) = a(r, c);
        out.G(o + r, o + c) = g(r, c) * Rat(blk.epsilon);
      }
    if (j + 1 < n_blocks) {
      const PStep& nxt = period[static_cast<std::size_t>(first_block + j + 1)];
      auto b = rational_sqrt(blk.beta);
      if (!b)
        fail(ErrorKind::IrrationalCoupling,
             "coupling b = sqrt(" + to_string(blk.beta) + ") is irrational; dense truncation unavailable");
      const std::size_t on = offset[static_cast<std::size_t>(j + 1)];
      const std::size_t kn = static_cast<std::size_t>(nxt.p.degree());
      // B_j (k_{j+1} x k_j): b at its top-right corner.
      out.H(on, o + k - 1) = *b;
      // B̃_j (k_j x k_{j+1}): ε_jε_{j+1}b at its top-right corner.
      out.H(o, on + kn - 1) = *b * Rat(blk.epsilon * nxt.epsilon);
    }
  }
  return out;
}

/// [(H − λ)^{-1}e, e] = (G(H − λ)^{-1}e)_0 on the truncation H_{[0,n_blocks−1]}.
inline std::complex<double> resolvent_m(const PeriodData& period, int n_blocks, std::complex<double> lambda) {
  DenseKreinPair kp = truncate(period, n_blocks);
  const auto n = static_cast<Eigen::Index>(kp.H.rows());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = kp.H(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
  a.diagonal().array() -= lambda;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  if (!(lu.rcond() > 1e-14)) fail(ErrorKind::SingularSystem, "λ is (numerically) an eigenvalue of the truncation");
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  e(0) = 1.0;
  Eigen::VectorXcd x = lu.solve(e);
  std::complex<double> m = 0;
  const std::size_t k0 = static_cast<std::size_t>(period[0].p.degree());
  for (std::size_t j = 0; j < k0; ++j) m += kp.G(0, j).get_d() * x(static_cast<Eigen::Index>(j));
  return m;
}

}  // namespace pellab
