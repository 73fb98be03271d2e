#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over the rationals.
 *
 * Coefficients are stored in ascending degree with no trailing zeros, so the
 * zero polynomial is the empty vector and has degree -1.
 */

#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "pellab/error.hpp"
#include "pellab/rational.hpp"

namespace pellab {

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const Rat& a) { return Poly(std::vector<Rat>{a}); }
  static Poly monomial(const Rat& a, int degree) {
    std::vector<Rat> c(static_cast<std::size_t>(degree) + 1);
    c.back() = a;
    return Poly(std::move(c));
  }
  /// The indeterminate λ.
  static Poly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int k) const {
    if (k < 0 || k > degree()) return Rat(0);
    return c_[static_cast<std::size_t>(k)];
  }
  const Rat& lead() const {
    if (c_.empty()) fail(ErrorKind::ZeroPolynomial, "leading coefficient of zero polynomial");
    return c_.back();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Rat& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& a : c_) a *= s;
    return *this;
  }
  Poly& operator/=(const Rat& s) {
    if (s == 0) fail(ErrorKind::InvalidInput, "polynomial divided by zero scalar");
    for (auto& a : c_) a /= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, const Rat& s) { return a /= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Rat operator()(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  template <class T>
  std::complex<T> eval(std::complex<T> z) const {
    std::complex<T> acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = acc * z + std::complex<T>(static_cast<T>(it->get_d()));
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(d));
  }

  /// p / lead(p); the zero polynomial stays zero.
  Poly monic() const {
    if (is_zero()) return {};
    return *this / lead();
  }

  /// Least common multiple of coefficient denominators.
  Int denominator_lcm() const {
    Int l(1);
    for (const auto& a : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den().get_mpz_t());
    return l;
  }
  /// Gcd of the numerators of an integer-coefficient polynomial.
  Int numerator_gcd() const {
    Int g(0);
    for (const auto& a : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_num().get_mpz_t());
    return g;
  }

  Poly pow(unsigned k) const {
    Poly result = constant(1);
    Poly base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  std::string str(const char* var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const Rat& a = c_[static_cast<std::size_t>(k)];
      if (a == 0) continue;
      std::string term;
      Rat mag = abs_rat(a);
      if (!out.empty()) out += sgn(a) < 0 ? " - " : " + ";
      else if (sgn(a) < 0) out += "-";
      if (mag != 1 || k == 0) term = to_string(mag);
      if (k >= 1) {
        if (!term.empty()) term += "*";
        term += var;
        if (k > 1) term += "^" + std::to_string(k);
      }
      out += term;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

/// Euclidean division a = b*q + r with deg r < deg b.
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZeroPoly, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Rat> rem = a.coeffs();
  std::vector<Rat> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto& bc = b.coeffs();
  const Rat& lb = b.lead();
  const int db = b.degree();
  for (int k = a.degree(); k >= db; --k) {
    Rat q = rem[static_cast<std::size_t>(k)] / lb;
    quo[static_cast<std::size_t>(k - db)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

/// Quotient of an exact division; fails when b does not divide a.
inline std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

inline bool divides(const Poly& b, const Poly& a) { return poly_divmod(a, b).second.is_zero(); }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Splits p = core * square_part^2 with core squarefree and square_part
/// monic. core carries p's leading-coefficient sign.
inline std::pair<Poly, Poly> squarefree_split(const Poly& p) {
  if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "squarefree_split of the zero polynomial");
  // Yun's algorithm: p = lead * prod f_i^i.
  Poly square_part = Poly::constant(1);
  Poly core = Poly::constant(p.lead());
  if (p.degree() >= 1) {
    Poly a = p.monic();
    Poly b = a.derivative();
    Poly g = poly_gcd(a, b);
    Poly c = *exact_div(a, g);
    Poly d = *exact_div(b, g) - c.derivative();
    for (unsigned i = 1; !c.is_constant(); ++i) {
      Poly f = poly_gcd(c, d);
      c = *exact_div(c, f);
      d = *exact_div(d, f) - c.derivative();
      if (i % 2 == 1) core *= f;
      square_part *= f.pow(i / 2);
    }
  }
  return {core, square_part};
}

/// Yun factors: result[i] is the product of the irreducible factors of
/// multiplicity i+1 (monic). Leading coefficient is dropped.
inline std::vector<Poly> squarefree_factors(const Poly& p) {
  if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "squarefree_factors of the zero polynomial");
  std::vector<Poly> out;
  if (p.degree() < 1) return out;
  Poly a = p.monic();
  Poly b = a.derivative();
  Poly g = poly_gcd(a, b);
  Poly c = *exact_div(a, g);
  Poly d = *exact_div(b, g) - c.derivative();
  while (!c.is_constant()) {
    Poly f = poly_gcd(c, d);
    c = *exact_div(c, f);
    d = *exact_div(d, f) - c.derivative();
    out.push_back(f);
  }
  while (!out.empty() && out.back().is_constant()) out.pop_back();
  return out;
}

/// True when p = q^2 for a rational polynomial q.
inline bool is_perfect_square(const Poly& p) {
  if (p.is_zero()) return true;
  if (p.degree() % 2 != 0) return false;
  auto [core, sq] = squarefree_split(p);
  return core.is_constant() && is_rational_square(core.lead());
}

/// Scales p by a positive rational so that it has integer coefficients with
/// content 1. Returns the scaled polynomial and the factor used.
inline std::pair<Poly, Rat> primitive_part(const Poly& p) {
  if (p.is_zero()) return {p, Rat(1)};
  Rat f(p.denominator_lcm());
  Poly q = p * f;
  Int g = q.numerator_gcd();
  Rat s = f / Rat(g);
  return {q / Rat(g), s};
}

}  // namespace pellab
