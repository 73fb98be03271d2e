#pragma once

/**
 * @file series.hpp
 * @brief Truncated Laurent series in 1/λ (germs at infinity).
 *
 * A series stores the coefficients of λ^top, λ^(top-1), ... down to the
 * precision floor λ^floor. Every stored coefficient is exact; nothing is
 * known below the floor. Operations propagate the floor so a result never
 * claims more precision than its inputs support.
 */

#include <algorithm>
#include <climits>
#include <optional>
#include <vector>

#include "pellab/error.hpp"
#include "pellab/poly.hpp"
#include "pellab/rational.hpp"

namespace pellab {

class SeriesAtInfinity {
 public:
  SeriesAtInfinity() = default;

  /// Series with coefficients for λ^top, λ^(top-1), ...
  SeriesAtInfinity(int top, std::vector<Rat> coeffs) : top_(top), c_(std::move(coeffs)) {
    normalize();
  }

  /// Zero known exactly down to λ^floor.
  static SeriesAtInfinity zero(int floor) {
    SeriesAtInfinity s;
    s.top_ = floor - 1;
    return s;
  }

  /// Exact polynomial viewed as a series, known down to λ^floor.
  static SeriesAtInfinity from_poly(const Poly& p, int floor) {
    if (p.is_zero() || p.degree() < floor) return zero(floor);
    std::vector<Rat> c;
    for (int e = p.degree(); e >= floor; --e) c.push_back(p.coeff(e));
    return SeriesAtInfinity(p.degree(), std::move(c));
  }

  /// φ(λ) = -Σ s_j λ^{-j-1} from the moments s_0..s_{n-1}.
  static SeriesAtInfinity from_moments(const std::vector<Rat>& moments) {
    std::vector<Rat> c;
    c.reserve(moments.size());
    for (const auto& s : moments) c.push_back(-s);
    return SeriesAtInfinity(-1, std::move(c));
  }

  /// Exponent of the leading stored coefficient (nonzero unless is_zero()).
  int top_degree() const { return top_; }
  int floor() const { return top_ - static_cast<int>(c_.size()) + 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  /// Coefficient of λ^e; e must be at or above the floor.
  Rat coeff(int e) const {
    if (e < floor()) fail(ErrorKind::SeriesExhausted, "coefficient below series precision");
    if (e > top_) return Rat(0);
    return c_[static_cast<std::size_t>(top_ - e)];
  }

  /// Moments s_j = -coeff(λ^{-j-1}) for all j with λ^{-j-1} at or above the floor.
  std::vector<Rat> moments() const {
    std::vector<Rat> out;
    for (int e = -1; e >= floor(); --e) out.push_back(-coeff(e));
    return out;
  }

  /// Exact part with nonnegative exponents; requires floor <= 0.
  Poly polynomial_part() const {
    if (floor() > 0) fail(ErrorKind::SeriesExhausted, "polynomial part below series precision");
    std::vector<Rat> c(static_cast<std::size_t>(std::max(top_, -1) + 1));
    for (int e = 0; e <= top_; ++e) c[static_cast<std::size_t>(e)] = coeff(e);
    return Poly(std::move(c));
  }

  /// Drops exponents >= 0.
  SeriesAtInfinity principal_part() const {
    const int f = floor();
    if (top_ < 0) return *this;
    std::vector<Rat> c;
    for (int e = -1; e >= f; --e) c.push_back(coeff(e));
    if (c.empty()) return zero(f);
    return SeriesAtInfinity(-1, std::move(c));
  }

  /// Lowers the precision to the given floor (no-op if already coarser).
  SeriesAtInfinity truncated(int new_floor) const {
    if (new_floor <= floor()) return *this;
    if (new_floor > top_) return zero(new_floor);
    std::vector<Rat> c(c_.begin(), c_.begin() + (top_ - new_floor + 1));
    return SeriesAtInfinity(top_, std::move(c));
  }

  SeriesAtInfinity operator-() const {
    SeriesAtInfinity r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }

  friend SeriesAtInfinity operator+(const SeriesAtInfinity& a, const SeriesAtInfinity& b) {
    const int f = std::max(a.floor(), b.floor());
    const int t = std::max(a.top_, b.top_);
    if (t < f) return zero(f);
    std::vector<Rat> c(static_cast<std::size_t>(t - f + 1));
    for (int e = t; e >= f; --e) {
      Rat v(0);
      if (e <= a.top_) v += a.coeff(e);
      if (e <= b.top_) v += b.coeff(e);
      c[static_cast<std::size_t>(t - e)] = v;
    }
    return SeriesAtInfinity(t, std::move(c));
  }
  friend SeriesAtInfinity operator-(const SeriesAtInfinity& a, const SeriesAtInfinity& b) {
    return a + (-b);
  }

  friend SeriesAtInfinity operator*(const SeriesAtInfinity& a, const Rat& s) {
    if (s == 0) return zero(a.floor());
    SeriesAtInfinity r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  friend SeriesAtInfinity operator*(const SeriesAtInfinity& a, const SeriesAtInfinity& b) {
    if (a.is_zero() || b.is_zero()) {
      // Best bound available: the nonzero factor's top times the zero's floor.
      int f;
      if (a.is_zero() && b.is_zero()) f = a.floor() + b.floor();
      else if (a.is_zero()) f = a.floor() + b.top_;
      else f = b.floor() + a.top_;
      return zero(f);
    }
    const int f = std::max(a.floor() + b.top_, b.floor() + a.top_);
    const int t = a.top_ + b.top_;
    std::vector<Rat> c(static_cast<std::size_t>(t - f + 1));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size() && i + j < c.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return SeriesAtInfinity(t, std::move(c));
  }

  /// Product with an exact polynomial (no precision lost beyond the shift).
  SeriesAtInfinity times_poly(const Poly& p) const {
    if (p.is_zero()) return zero(INT_MIN / 4);
    const int f = floor() + p.degree();
    if (is_zero()) return zero(f);
    const int t = top_ + p.degree();
    std::vector<Rat> c(static_cast<std::size_t>(t - f + 1));
    for (int e = t; e >= f; --e) {
      Rat v(0);
      for (int k = 0; k <= p.degree(); ++k) {
        int src = e - k;
        if (src > top_ || src < floor()) continue;
        v += p.coeff(k) * coeff(src);
      }
      c[static_cast<std::size_t>(t - e)] = v;
    }
    return SeriesAtInfinity(t, std::move(c));
  }

  /// Exact division by a nonzero polynomial.
  SeriesAtInfinity divided_by_poly(const Poly& d) const {
    if (d.is_zero()) fail(ErrorKind::DivisionByZeroPoly, "series divided by zero polynomial");
    const int dd = d.degree();
    const int f = floor() - dd;
    if (is_zero()) return zero(f);
    const int t = top_ - dd;
    std::vector<Rat> q(static_cast<std::size_t>(t - f + 1));
    const Rat& lead = d.lead();
    // coefficient of λ^e in this = Σ_k d_k q_{e-k}
    for (int e = t; e >= f; --e) {
      Rat v = coeff(e + dd);
      for (int k = 0; k < dd; ++k) {
        int qe = e + dd - k;
        if (qe > t) continue;
        v -= d.coeff(k) * q[static_cast<std::size_t>(t - qe)];
      }
      q[static_cast<std::size_t>(t - e)] = v / lead;
    }
    return SeriesAtInfinity(t, std::move(q));
  }

  /// Multiplicative inverse; the leading coefficient must be known nonzero.
  SeriesAtInfinity inverse() const {
    if (is_zero()) fail(ErrorKind::SeriesExhausted, "inverse of a series that is zero to precision");
    const std::size_t n = c_.size();
    std::vector<Rat> r(n);
    const Rat& a0 = c_[0];
    r[0] = Rat(1) / a0;
    for (std::size_t k = 1; k < n; ++k) {
      Rat acc(0);
      for (std::size_t i = 1; i <= k; ++i) acc += c_[i] * r[k - i];
      r[k] = -acc / a0;
    }
    return SeriesAtInfinity(-top_, std::move(r));
  }

  friend bool operator==(const SeriesAtInfinity& a, const SeriesAtInfinity& b) {
    return a.top_ == b.top_ && a.c_ == b.c_;
  }

 private:
  void normalize() {
    const int f = floor();
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      top_ = f - 1;
      return;
    }
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      top_ -= static_cast<int>(lead);
    }
  }

  int top_ = -1;
  std::vector<Rat> c_;
};

/// √R as a series at infinity with positive leading coefficient, holding
/// `terms` coefficients from λ^n downwards (n = deg R / 2).
inline SeriesAtInfinity sqrt_series(const Poly& R, int terms) {
  if (R.is_zero() || R.degree() % 2 != 0)
    fail(ErrorKind::OddDegree, "sqrt_series needs a polynomial of even degree");
  auto r0 = rational_sqrt(R.lead());
  if (!r0)
    fail(ErrorKind::LeadingCoeffNotSquare,
         "leading coefficient " + to_string(R.lead()) +
             " is not the square of a positive rational; an algebraic extension of Q "
             "would be required");
  if (terms < 1) terms = 1;
  const int n = R.degree() / 2;
  const int two_n = R.degree();
  std::vector<Rat> s(static_cast<std::size_t>(terms));
  s[0] = *r0;
  const Rat two_s0 = 2 * s[0];
  for (int k = 1; k < terms; ++k) {
    Rat acc = R.coeff(two_n - k);
    for (int i = 1; i < k; ++i) acc -= s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(k - i)];
    s[static_cast<std::size_t>(k)] = acc / two_s0;
  }
  return SeriesAtInfinity(n, std::move(s));
}

/// Series of (a + b√R)/d, exact down to λ^floor (R must have a square
/// rational leading coefficient).
inline SeriesAtInfinity surd_series(const Poly& a, const Poly& b, const Poly& d, const Poly& R,
                                    int floor) {
  const int n = R.degree() / 2;
  const int need = floor + d.degree();  // floor required before dividing by d
  SeriesAtInfinity num;
  if (b.is_zero()) {
    num = SeriesAtInfinity::from_poly(a, need);
  } else {
    // b*S has floor = floor(S) + deg b
    int terms = n + b.degree() - need + 1;
    SeriesAtInfinity s = sqrt_series(R, std::max(terms, 1));
    num = s.times_poly(b).truncated(need) + SeriesAtInfinity::from_poly(a, need);
  }
  return num.divided_by_poly(d);
}

}  // namespace pellab
