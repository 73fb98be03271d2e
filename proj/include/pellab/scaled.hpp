#pragma once

/**
 * @file scaled.hpp
 * @brief Polynomials and 2x2 matrix polynomials divided by √D.
 *
 * Square roots of positive rationals are never evaluated. A value poly/√D is
 * carried as the pair (poly, D); the canonical form has D a squarefree
 * positive integer, with the rational square factor of D absorbed into the
 * polynomial part.
 */

#include <array>
#include <complex>

#include "pellab/poly.hpp"
#include "pellab/rational.hpp"

namespace pellab {

/// poly / √sqrt_scale, stored canonically.
class ScaledPoly {
 public:
  ScaledPoly() : poly_(), scale_(1) {}
  ScaledPoly(Poly p, const Rat& sqrt_scale) : poly_(std::move(p)), scale_(sqrt_scale) {
    if (sgn(scale_) <= 0) fail(ErrorKind::InvalidInput, "scale must be positive");
    auto [factor, core] = square_split(scale_);
    // √D = factor·√core
    poly_ /= factor;
    scale_ = Rat(core);
  }

  const Poly& poly() const { return poly_; }
  const Rat& sqrt_scale() const { return scale_; }

  /// Square as an exact rational polynomial.
  Poly squared() const { return (poly_ * poly_) / scale_; }

  std::complex<double> eval(std::complex<double> z) const {
    return poly_.eval(z) / std::sqrt(scale_.get_d());
  }

  friend bool operator==(const ScaledPoly& a, const ScaledPoly& b) {
    return a.poly_ == b.poly_ && a.scale_ == b.scale_;
  }

 private:
  Poly poly_;
  Rat scale_;
};

using PolyMatrix2 = std::array<std::array<Poly, 2>, 2>;

inline PolyMatrix2 operator*(const PolyMatrix2& a, const PolyMatrix2& b) {
  PolyMatrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

inline Poly det(const PolyMatrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

inline PolyMatrix2 transpose(const PolyMatrix2& m) {
  return {{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}};
}

/// 2x2 matrix polynomial T = M/√D.
///
/// The stored pair is kept as produced (D is the product of the β values for
/// a monodromy); equality compares canonical forms.
struct ScaledMatrixPoly {
  PolyMatrix2 M;
  Rat D{1};

  const Poly& t(int i, int j) const { return M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  /// Same matrix with D reduced to a squarefree integer.
  ScaledMatrixPoly canonical() const {
    auto [factor, core] = square_split(D);
    ScaledMatrixPoly r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.M[i][j] = M[i][j] / factor;
    r.D = Rat(core);
    return r;
  }

  ScaledMatrixPoly operator*(const ScaledMatrixPoly& o) const { return {M * o.M, D * o.D}; }

  friend bool operator==(const ScaledMatrixPoly& a, const ScaledMatrixPoly& b) {
    ScaledMatrixPoly ca = a.canonical(), cb = b.canonical();
    return ca.M == cb.M && ca.D == cb.D;
  }

  /// Trace (M11 + M22)/√D.
  ScaledPoly trace() const { return ScaledPoly(M[0][0] + M[1][1], D); }

  /// Numeric T(z).
  std::array<std::array<std::complex<double>, 2>, 2> eval(std::complex<double> z) const {
    const double s = std::sqrt(D.get_d());
    std::array<std::array<std::complex<double>, 2>, 2> out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[i][j] = M[i][j].eval(z) / s;
    return out;
  }
};

/// J' = [[0,-1],[1,0]]; M J' Mᵀ = det(M) J' holds for every 2x2 matrix.
inline PolyMatrix2 j_prime() {
  return {{{Poly{}, Poly::constant(-1)}, {Poly::constant(1), Poly{}}}};
}

}  // namespace pellab
