#pragma once

/**
 * @file pfrac.hpp
 * @brief P-fraction expansion of functions decaying at infinity.
 *
 * One step of the expansion writes
 *
 *     -1/φ = ε·p + β·φ_next,
 *
 * with p monic, ε = ±1, β > 0 and φ_next decaying and normalized (its first
 * nonvanishing moment is ±1). Tails are rational functions, quadratic surds
 * (a + b√R)/d, or truncated moment series.
 */

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pellab/error.hpp"
#include "pellab/poly.hpp"
#include "pellab/rational.hpp"
#include "pellab/scaled.hpp"
#include "pellab/series.hpp"

namespace pellab {

/// One partial denominator: p (monic), sign ε and coupling β = b².
struct PStep {
  Poly p;
  int epsilon = 1;
  Rat beta{1};

  friend bool operator==(const PStep& a, const PStep& b) {
    return a.p == b.p && a.epsilon == b.epsilon && a.beta == b.beta;
  }
};

inline void validate(const PStep& s) {
  if (s.p.degree() < 1 || !s.p.is_monic())
    fail(ErrorKind::NotMonic, "step polynomial must be monic of degree >= 1");
  if (s.epsilon != 1 && s.epsilon != -1) fail(ErrorKind::InvalidInput, "epsilon must be +1 or -1");
  if (sgn(s.beta) <= 0) fail(ErrorKind::InvalidInput, "beta must be positive");
}

struct RationalTail {
  Poly num, den;
};
struct SurdTail {
  Poly a, b, d, R;
};
struct SeriesTail {
  SeriesAtInfinity series;
};
using Tail = std::variant<RationalTail, SurdTail, SeriesTail>;

/// num/den with gcd removed and den monic.
inline RationalTail canonical(RationalTail t) {
  if (t.den.is_zero()) fail(ErrorKind::DivisionByZeroPoly, "rational tail with zero denominator");
  if (t.num.is_zero()) return {Poly{}, Poly::constant(1)};
  Poly g = poly_gcd(t.num, t.den);
  t.num = *exact_div(t.num, g);
  t.den = *exact_div(t.den, g);
  Rat l = t.den.lead();
  t.num /= l;
  t.den /= l;
  return t;
}

/// (a + b√R)/d with common polynomial factor and rational content removed,
/// integer coefficients, and lead(d) > 0.
inline SurdTail canonical(SurdTail t) {
  if (t.d.is_zero()) fail(ErrorKind::DivisionByZeroPoly, "surd tail with zero denominator");
  if (t.b.is_zero()) fail(ErrorKind::InvalidInput, "surd tail needs b != 0");
  Poly g = poly_gcd(poly_gcd(t.b, t.d), t.a);
  if (!g.is_constant()) {
    t.a = *exact_div(t.a, g);
    t.b = *exact_div(t.b, g);
    t.d = *exact_div(t.d, g);
  }
  Int l(1);
  for (const Poly* p : {&t.a, &t.b, &t.d}) {
    Int pl = p->denominator_lcm();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), pl.get_mpz_t());
  }
  Rat lr(l);
  t.a *= lr;
  t.b *= lr;
  t.d *= lr;
  Int c(0);
  for (const Poly* p : {&t.a, &t.b, &t.d}) {
    Int pc = p->numerator_gcd();
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), pc.get_mpz_t());
  }
  Rat scale(c);
  if (sgn(t.d.lead()) < 0) scale = -scale;
  t.a /= scale;
  t.b /= scale;
  t.d /= scale;
  return t;
}

inline bool operator==(const SurdTail& x, const SurdTail& y) {
  return x.a == y.a && x.b == y.b && x.d == y.d && x.R == y.R;
}

inline void validate_surd(const SurdTail& t) {
  if (t.R.is_zero() || t.R.degree() % 2 != 0)
    fail(ErrorKind::OddDegree, "surd radicand must have even degree");
  if (!is_rational_square(t.R.lead()))
    fail(ErrorKind::LeadingCoeffNotSquare,
         "radicand leading coefficient is not a rational square; an algebraic extension of Q "
         "would be required");
  if (is_perfect_square(t.R)) fail(ErrorKind::PerfectSquareR, "radicand is a perfect square");
}

/// Series of a surd, exact down to a floor guaranteed to contain its first
/// nonzero coefficient: top(A + B√R) >= -max(deg A, deg B + n) because
/// (A + B√R)(A − B√R) = A² − B²R is a nonzero polynomial.
inline SeriesAtInfinity surd_leading_series(const SurdTail& t, int extra = 0) {
  const int n = t.R.degree() / 2;
  int bound = std::max(t.a.degree(), t.b.degree() + n);
  int floor = -bound - t.d.degree() - extra;
  return surd_series(t.a, t.b, t.d, t.R, floor);
}

struct StepResult {
  PStep step;
  std::optional<Tail> next;  // empty: the expansion terminated
};

namespace detail {

inline PStep polynomial_part_step(const Poly& q, ErrorKind norm_error) {
  if (q.degree() < 1)
    fail(ErrorKind::NotExpandable, "tail does not decay at infinity (polynomial part is constant)");
  const Rat& l = q.lead();
  if (l != 1 && l != -1)
    fail(norm_error, "polynomial part " + q.str("λ") + " has leading coefficient " + to_string(l) +
                         ", not ±1 (first nonvanishing moment is not ±1)");
  PStep s;
  s.epsilon = l == 1 ? 1 : -1;
  s.p = q * Rat(s.epsilon);
  return s;
}

inline StepResult step_rational(const RationalTail& in) {
  RationalTail t = canonical(in);
  if (t.num.is_zero()) fail(ErrorKind::NotExpandable, "zero tail");
  // -1/φ = -den/num
  auto [q, rem] = poly_divmod(-t.den, t.num);
  StepResult out{polynomial_part_step(q, ErrorKind::NotExpandable), std::nullopt};
  if (rem.is_zero()) return out;
  Rat beta = abs_rat(rem.lead() / t.num.lead());
  out.step.beta = beta;
  out.next = canonical(RationalTail{rem / beta, t.num});
  return out;
}

inline StepResult step_surd(const SurdTail& in) {
  validate_surd(in);
  SurdTail t = canonical(in);
  // -1/φ = -d(a - b√R)/(a² - b²R)
  SurdTail inv{-(t.d * t.a), t.d * t.b, t.a * t.a - t.b * t.b * t.R, t.R};
  SeriesAtInfinity s = surd_series(inv.a, inv.b, inv.d, inv.R, 0);
  Poly q = s.polynomial_part();
  StepResult out{polynomial_part_step(q, ErrorKind::NotExpandable), std::nullopt};
  SurdTail rem{inv.a - q * inv.d, inv.b, inv.d, inv.R};
  SeriesAtInfinity rs = surd_leading_series(rem);
  if (rs.is_zero()) fail(ErrorKind::NotExpandable, "surd remainder vanished");  // unreachable for nonsquare R
  Rat beta = abs_rat(rs.coeffs().front());
  out.step.beta = beta;
  rem.d *= beta;
  out.next = canonical(rem);
  return out;
}

inline StepResult step_series(const SeriesTail& in) {
  const SeriesAtInfinity& phi = in.series;
  if (phi.is_zero())
    fail(ErrorKind::SeriesExhausted, "series tail is zero to the available precision");
  if (phi.top_degree() >= 0)
    fail(ErrorKind::NotExpandable, "series tail does not decay at infinity");
  SeriesAtInfinity inv = -phi.inverse();
  if (inv.floor() > 0)
    fail(ErrorKind::SeriesExhausted, "too few coefficients to determine the polynomial part");
  Poly q = inv.polynomial_part();
  StepResult out{polynomial_part_step(q, ErrorKind::NotNormalized), std::nullopt};
  SeriesAtInfinity rem = inv.principal_part();
  if (rem.is_zero())
    fail(ErrorKind::SeriesExhausted, "too few coefficients to determine the coupling and next tail");
  Rat beta = abs_rat(rem.coeffs().front());
  out.step.beta = beta;
  out.next = SeriesTail{rem * (Rat(1) / beta)};
  return out;
}

}  // namespace detail

/// One expansion step: -1/tail = ε·p + β·next.
inline StepResult step(const Tail& tail) {
  return std::visit(
      [](const auto& t) -> StepResult {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, RationalTail>) return detail::step_rational(t);
        else if constexpr (std::is_same_v<T, SurdTail>) return detail::step_surd(t);
        else return detail::step_series(t);
      },
      tail);
}

enum class Terminal { Terminated, Periodic, PrePeriodic, Truncated };

inline const char* terminal_name(Terminal t) {
  switch (t) {
    case Terminal::Terminated: return "terminated";
    case Terminal::Periodic: return "periodic";
    case Terminal::PrePeriodic: return "preperiodic";
    case Terminal::Truncated: return "truncated";
  }
  return "?";
}

struct PFraction {
  std::vector<PStep> steps;
  Terminal terminal = Terminal::Truncated;
  int period = 0;     // Periodic: s
  int pre_start = 0;  // PrePeriodic: first step of the cycle
  int cycle_len = 0;  // PrePeriodic: cycle length
};

/// Iterates step() up to max_steps times. For surd tails, a return to the
/// initial canonical tail is reported as Periodic and a return to any later
/// tail as PrePeriodic. The final step of a Terminated expansion carries
/// β = 1 as a placeholder (its coupling is not defined).
inline PFraction expand(const Tail& tail, int max_steps) {
  if (max_steps < 1) fail(ErrorKind::InvalidInput, "max_steps must be >= 1");
  PFraction out;
  std::vector<SurdTail> seen;
  Tail cur = tail;
  if (auto* s = std::get_if<SurdTail>(&cur)) {
    validate_surd(*s);
    cur = canonical(*s);
    seen.push_back(std::get<SurdTail>(cur));
  }
  for (int j = 0; j < max_steps; ++j) {
    StepResult r = step(cur);
    out.steps.push_back(r.step);
    if (!r.next) {
      out.terminal = Terminal::Terminated;
      return out;
    }
    cur = std::move(*r.next);
    if (const auto* s = std::get_if<SurdTail>(&cur)) {
      for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] == *s) {
          if (i == 0) {
            out.terminal = Terminal::Periodic;
            out.period = j + 1;
          } else {
            out.terminal = Terminal::PrePeriodic;
            out.pre_start = static_cast<int>(i);
            out.cycle_len = j + 1 - static_cast<int>(i);
          }
          return out;
        }
      }
      seen.push_back(*s);
    }
  }
  out.terminal = Terminal::Truncated;
  return out;
}

/// W_j = M/√β with M = [[0, −ε], [εβ, p]].
inline ScaledMatrixPoly transfer_matrix(const PStep& s) {
  ScaledMatrixPoly w;
  w.M[0][0] = Poly{};
  w.M[0][1] = Poly::constant(-s.epsilon);
  w.M[1][0] = Poly::constant(s.beta * s.epsilon);
  w.M[1][1] = s.p;
  w.D = s.beta;
  return w;
}

/// Ordered product of scaled matrices; scales multiply.
inline ScaledMatrixPoly product(const std::vector<ScaledMatrixPoly>& ms) {
  if (ms.empty()) fail(ErrorKind::InvalidInput, "product of an empty list");
  ScaledMatrixPoly r = ms.front();
  for (std::size_t i = 1; i < ms.size(); ++i) r = r * ms[i];
  return r;
}

/// Rescaled solutions P̂_j = b_0⋯b_{j−1}·P_j and Q̂_j = b_0⋯b_{j−1}·Q_j.
struct RecurrencePair {
  std::vector<Poly> Phat, Qhat;
};

/// P̂_{j+1} = p_j P̂_j − ε_{j−1}ε_j β_{j−1} P̂_{j−1}, with P̂_0 = 1, P̂_1 = p_0,
/// Q̂_0 = 0, Q̂_1 = ε_0. Lists run through index s = steps.size().
inline RecurrencePair recurrence(const std::vector<PStep>& steps) {
  if (steps.empty()) fail(ErrorKind::InvalidInput, "recurrence needs at least one step");
  RecurrencePair r;
  r.Phat = {Poly::constant(1), steps[0].p};
  r.Qhat = {Poly{}, Poly::constant(steps[0].epsilon)};
  for (std::size_t j = 1; j < steps.size(); ++j) {
    Rat c = Rat(steps[j - 1].epsilon * steps[j].epsilon) * steps[j - 1].beta;
    r.Phat.push_back(steps[j].p * r.Phat[j] - r.Phat[j - 1] * c);
    r.Qhat.push_back(steps[j].p * r.Qhat[j] - r.Qhat[j - 1] * c);
  }
  return r;
}

/// First n moments of the function represented by the P-fraction.
/// With `periodic` the step list is cycled; otherwise the fraction is
/// finite and represents −Q̂_s/P̂_s.
inline std::vector<Rat> to_series(const std::vector<PStep>& steps, int n_moments,
                                  bool periodic = true) {
  if (steps.empty()) fail(ErrorKind::InvalidInput, "to_series needs at least one step");
  if (n_moments < 0) fail(ErrorKind::InvalidInput, "n_moments must be nonnegative");
  std::vector<PStep> used = steps;
  if (periodic) {
    // The convergent −Q̂_L/P̂_L agrees with the limit through λ^{-(deg P̂_L + deg P̂_{L+1}) }.
    // Requiring deg P̂_L > n is a comfortable margin.
    int deg = 0;
    for (const auto& s : used) deg += s.p.degree();
    std::size_t k = 0;
    while (deg <= n_moments + 1) {
      used.push_back(steps[k % steps.size()]);
      deg += steps[k % steps.size()].p.degree();
      ++k;
    }
  }
  RecurrencePair rp = recurrence(used);
  const Poly& P = rp.Phat.back();
  const Poly& Q = rp.Qhat.back();
  SeriesAtInfinity num = SeriesAtInfinity::from_poly(-Q, P.degree() - n_moments);
  SeriesAtInfinity phi = num.divided_by_poly(P);
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(n_moments));
  for (int j = 0; j < n_moments; ++j) out.push_back(-phi.coeff(-j - 1));
  return out;
}

}  // namespace pellab
