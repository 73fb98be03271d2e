#pragma once

// Small dense matrices of exact rationals.

#include <string>
#include <vector>

#include "pellab/error.hpp"
#include "pellab/poly.hpp"
#include "pellab/rational.hpp"

namespace pellab {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend RatMatrix operator*(const RatMatrix& x, const RatMatrix& y) {
    if (x.cols_ != y.rows_) fail(ErrorKind::InvalidInput, "matrix dimension mismatch");
    RatMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Rat& v = x(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += v * y(k, j);
      }
    return r;
  }

  friend bool operator==(const RatMatrix& x, const RatMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

/// Exact determinant by Gaussian elimination.
inline Rat determinant(RatMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) fail(ErrorKind::InvalidInput, "determinant of a non-square matrix");
  Rat det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

/// Exact inverse; throws SingularSystem for a singular matrix.
inline RatMatrix inverse(RatMatrix m) {
  const std::size_t n = m.rows();
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) fail(ErrorKind::SingularSystem, "singular matrix");
    if (piv != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(k, j), m(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    Rat p = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= p;
      inv(k, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rat f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// det(λI − A) by the Faddeev–LeVerrier recursion (exact over Q).
inline Poly characteristic_polynomial(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) fail(ErrorKind::InvalidInput, "characteristic polynomial of a non-square matrix");
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  RatMatrix m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    RatMatrix am = a * m;
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
    m = am;
    RatMatrix amk = a * m;
    Rat tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  return Poly(std::move(c));
}

/// Indices n ≤ limit with det(s_{i+k})_{i,k<n} ≠ 0.
/// Needs the moments s_0, ..., s_{2·limit−2}.
inline std::vector<int> normal_indices(const std::vector<Rat>& s, int limit) {
  if (limit < 0) fail(ErrorKind::InvalidInput, "normal_indices limit must be nonnegative");
  if (limit > 0 && s.size() < static_cast<std::size_t>(2 * limit - 1))
    fail(ErrorKind::InvalidInput,
         "normal_indices up to " + std::to_string(limit) + " needs " +
             std::to_string(2 * limit - 1) + " moments, got " + std::to_string(s.size()));
  std::vector<int> out;
  for (int n = 1; n <= limit; ++n) {
    RatMatrix h(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) h(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = s[static_cast<std::size_t>(i + k)];
    if (determinant(std::move(h)) != 0) out.push_back(n);
  }
  return out;
}

}  // namespace pellab
