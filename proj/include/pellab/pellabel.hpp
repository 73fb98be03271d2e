#pragma once

/**
 * @file pellabel.hpp
 * @brief Polynomial Pell–Abel equations and realizability of (√R − U)/V as
 * the m-function of a periodic generalized Jacobi matrix.
 *
 * Two independent routes decide realizability:
 *  - Route A builds candidate monodromies T = [[X − YU, ·], [·, X + YU]]
 *    from solutions of X² − RY² = 1, (U² − R)Y = VZ and inverts them;
 *  - Route B expands the surd (√R − U)/V as a P-fraction directly and looks
 *    for a purely periodic expansion.
 */

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pellab/monodromy.hpp"
#include "pellab/roots.hpp"
#include "pellab/series.hpp"
#include "pellab/spectral.hpp"

namespace pellab {

/// State of the classical expansion of (√R + U_j)/V_j.
struct SurdState {
  Poly U, V, R;
};

struct SurdCfStep {
  Poly a;            // partial quotient
  SurdState state;   // state a was computed from
  Poly x, y;         // convergent x/y
  std::optional<Rat> c;  // x² − R y² when it is a nonzero constant
};

inline void validate_radicand(const Poly& R) {
  if (R.is_zero() || R.degree() % 2 != 0 || R.degree() < 2)
    fail(ErrorKind::OddDegree, "radicand must have even degree >= 2");
  if (!is_rational_square(R.lead()))
    fail(ErrorKind::LeadingCoeffNotSquare,
         "leading coefficient of R is not a rational square; an algebraic extension of Q would be "
         "required");
  if (is_perfect_square(R)) fail(ErrorKind::PerfectSquareR, "R is a perfect square");
}

/// Regular continued fraction of √R with polynomial partial quotients.
/// With stop_at_constant the expansion ends at the first constant norm.
inline std::vector<SurdCfStep> surd_cf(const Poly& R, int max_steps, bool stop_at_constant = false) {
  validate_radicand(R);
  std::vector<SurdCfStep> out;
  Poly U, V = Poly::constant(1);
  Poly x_prev = Poly::constant(1), x_prev2;  // x_{-1}, x_{-2}
  Poly y_prev, y_prev2 = Poly::constant(1);  // y_{-1}, y_{-2}
  for (int j = 0; j < max_steps; ++j) {
    SurdCfStep st;
    st.state = {U, V, R};
    st.a = surd_series(U, Poly::constant(1), V, R, 0).polynomial_part();
    st.x = st.a * x_prev + x_prev2;
    st.y = st.a * y_prev + y_prev2;
    Poly nU = st.a * V - U;
    auto nV = exact_div(R - nU * nU, V);
    if (!nV) fail(ErrorKind::InvalidInput, "surd recursion lost divisibility");  // cannot happen
    // x_j² − R·y_j² = (−1)^{j+1}·V_{j+1}
    if (nV->is_constant()) st.c = j % 2 == 0 ? Rat(-nV->coeff(0)) : nV->coeff(0);
    out.push_back(st);
    if (stop_at_constant && st.c) break;
    x_prev2 = x_prev;
    x_prev = st.x;
    y_prev2 = y_prev;
    y_prev = st.y;
    U = nU;
    V = *nV;
  }
  return out;
}

struct PellSolution {
  Poly X, Y;
};

namespace detail {
inline PellSolution normalize_signs(PellSolution s) {
  if (sgn(s.X.lead()) < 0) s.X = -s.X;
  if (sgn(s.Y.lead()) < 0) s.Y = -s.Y;
  return s;
}
}  // namespace detail

/// Minimal-degree nontrivial solution of X² − RY² = 1 found among the
/// convergents of √R within max_steps; nullopt when none is reached.
inline std::optional<PellSolution> pell_fundamental(const Poly& R, int max_steps) {
  auto cf = surd_cf(R, max_steps, true);
  for (const auto& st : cf) {
    if (!st.c) continue;
    std::vector<PellSolution> cand;
    if (auto d = rational_sqrt(*st.c)) cand.push_back({st.x / *d, st.y / *d});
    cand.push_back({(st.x * st.x + R * st.y * st.y) / *st.c, (st.x * st.y * Rat(2)) / *st.c});
    PellSolution best = cand.front();
    for (const auto& c : cand)
      if (c.X.degree() < best.X.degree()) best = c;
    best = detail::normalize_signs(best);
    if (best.X * best.X - R * best.Y * best.Y != Poly::constant(1))
      fail(ErrorKind::InvalidInput, "internal: Pell identity failed");
    return best;
  }
  return std::nullopt;
}

/// X_k + Y_k√R = (X + Y√R)^k.
inline PellSolution pell_power(const PellSolution& sol, const Poly& R, int k) {
  if (k < 1) fail(ErrorKind::InvalidInput, "pell_power needs k >= 1");
  PellSolution cur = sol;
  for (int i = 1; i < k; ++i) {
    PellSolution nxt{sol.X * cur.X + R * sol.Y * cur.Y, sol.X * cur.Y + sol.Y * cur.X};
    cur = std::move(nxt);
  }
  return cur;
}

enum class RealizeStatus { Realized, NotRealizable, Inconclusive };

inline const char* status_name(RealizeStatus s) {
  switch (s) {
    case RealizeStatus::Realized: return "realized";
    case RealizeStatus::NotRealizable: return "not_realizable";
    case RealizeStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Off-diagonal placements tried for a Pell–Abel candidate, as (t12, t21).
enum class Orientation { YV_negZ, negYV_Z, negZ_YV, Z_negYV };

inline const char* orientation_name(Orientation o) {
  switch (o) {
    case Orientation::YV_negZ: return "t12=YV,t21=-Z";
    case Orientation::negYV_Z: return "t12=-YV,t21=Z";
    case Orientation::negZ_YV: return "t12=-Z,t21=YV";
    case Orientation::Z_negYV: return "t12=Z,t21=-YV";
  }
  return "?";
}

struct RouteA {
  bool attempted = false;
  bool succeeded = false;
  bool pell_found = false;
  std::string note;
  int power = 0;
  int sign = 0;
  Orientation orientation = Orientation::YV_negZ;
  std::optional<PeriodData> period;
  std::optional<PellCertificate> certificate;
};

struct RouteB {
  bool periodic = false;
  bool structural_failure = false;
  std::string note;
  std::optional<PeriodData> period;
};

struct RealizeReport {
  RealizeStatus status = RealizeStatus::Inconclusive;
  std::string reason;
  AlgebraicForm form;  // canonicalized input
  std::optional<PeriodData> period;
  std::optional<ScaledMatrixPoly> T;
  std::optional<PellCertificate> certificate;
  bool cross_check = false;
  bool m_verified = false;
  RouteA route_a;
  RouteB route_b;
};

/// (√R − U)/V evaluated on the branch with √R ~ +r·λ^n, for |λ| beyond every
/// root of R: √R(λ) = r·λ^n·Π sqrt(1 − z_i/λ) with principal square roots.
struct SurdEvaluator {
  AlgebraicForm form;
  Rat r;
  std::vector<cplx> roots;
  double radius = 0;

  SurdEvaluator(const AlgebraicForm& f, double tol) : form(f) {
    r = *rational_sqrt(f.R.lead());
    roots = find_roots(f.R, tol);
    for (cplx z : roots) radius = std::max(radius, std::abs(z));
  }

  cplx operator()(cplx lambda) const {
    cplx s = r.get_d() * std::pow(lambda, form.R.degree() / 2);
    for (cplx z : roots) s *= std::sqrt(1.0 - z / lambda);
    return (s - form.U.eval(lambda)) / form.V.eval(lambda);
  }
};

namespace detail {

/// Bound on |λ| for λ in the band set, the eigenvalues and the roots of R:
/// Cauchy bound of tr(λ) − c√D over |c| <= 2, and of m21.
inline double spectral_radius_bound(const ScaledMatrixPoly& t) {
  auto cauchy = [](const Poly& p, double extra0) {
    if (p.degree() < 1) return 0.0;
    const double l = std::abs(p.lead().get_d());
    double m = 0;
    for (int k = 0; k < p.degree(); ++k) {
      double a = std::abs(p.coeff(k).get_d());
      if (k == 0) a += extra0;
      m = std::max(m, a / l);
    }
    return 1.0 + m;
  };
  const Poly tr = t.t(0, 0) + t.t(1, 1);
  return std::max(cauchy(tr, 2.0 * std::sqrt(t.D.get_d())), cauchy(t.t(1, 0), 0.0));
}

/// Compares m_eval of the period with (√R − U)/V at 8 points off the real
/// axis, outside every spectral set.
inline bool verify_m_function(const PeriodData& period, const SurdEvaluator& phi, double tol) {
  ScaledMatrixPoly t = monodromy(period);
  const double radius = 2.0 * std::max({1.0, phi.radius, spectral_radius_bound(t)});
  for (int k = 0; k < 8; ++k) {
    const double angle = std::numbers::pi * (2 * k + 1) / 8.0;
    const cplx lambda = std::polar(radius, angle);
    try {
      MValue mv = m_eval_detail(t, lambda, tol);
      if (std::abs(mv.m - phi(lambda)) > 1e-9) return false;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::OnSpectrum) return false;
      throw;
    }
  }
  return true;
}

inline PolyMatrix2 candidate_matrix(const Poly& X, const Poly& Y, const Poly& Z, const AlgebraicForm& f,
                                    Orientation o) {
  PolyMatrix2 m;
  m[0][0] = X - Y * f.U;
  m[1][1] = X + Y * f.U;
  const Poly yv = Y * f.V;
  switch (o) {
    case Orientation::YV_negZ: m[0][1] = yv; m[1][0] = -Z; break;
    case Orientation::negYV_Z: m[0][1] = -yv; m[1][0] = Z; break;
    case Orientation::negZ_YV: m[0][1] = -Z; m[1][0] = yv; break;
    case Orientation::Z_negYV: m[0][1] = Z; m[1][0] = -yv; break;
  }
  return m;
}

/// Certificate for the reported monodromy T = M/√D against the form:
/// X = (m11 + m22)/2, Y = (m22 − m11)/(2U), Z from whichever off-diagonal
/// placement satisfies (U² − R)Y = VZ.
inline std::optional<PellCertificate> certificate_for(const ScaledMatrixPoly& t, const AlgebraicForm& f) {
  PellCertificate c;
  c.X = (t.t(0, 0) + t.t(1, 1)) / Rat(2);
  auto y = exact_div(t.t(1, 1) - t.t(0, 0), f.U * Rat(2));
  if (!y || y->is_zero()) return std::nullopt;
  c.Y = *y;
  c.sqrt_scale = t.D;
  for (const Poly& z : {-t.t(0, 1), t.t(0, 1), -t.t(1, 0), t.t(1, 0)}) {
    c.Z = z;
    if (verify_certificate(f, c)) return c;
  }
  return std::nullopt;
}

}  // namespace detail

struct RealizeOptions {
  int max_cf_steps = 64;
  int max_power = 16;
  double tol = 1e-10;
};

/// Decides whether a branch of (√R − U)/V is the m-function of a periodic
/// generalized Jacobi matrix, and reconstructs it when it is.
inline RealizeReport realize(const AlgebraicForm& input, const RealizeOptions& opt = {}) {
  const Poly& R0 = input.R;
  if (R0.is_zero() || R0.degree() % 2 != 0)
    fail(ErrorKind::DegreeConstraintViolated, "deg R must be even (deg R = 2n)");
  const int n = R0.degree() / 2;
  if (n < 1 || input.U.degree() != n)
    fail(ErrorKind::DegreeConstraintViolated, "need deg R = 2n, deg U = n with n >= 1");
  if (input.V.is_zero() || input.V.degree() >= n)
    fail(ErrorKind::DegreeConstraintViolated, "need V != 0 and deg V < deg U");
  if (!is_rational_square(R0.lead()))
    fail(ErrorKind::LeadingCoeffNotSquare,
         "leading coefficient of R is not a rational square; an algebraic extension of Q would be "
         "required");
  if (is_perfect_square(R0)) fail(ErrorKind::PerfectSquareR, "R is a perfect square");

  RealizeReport rep;
  // Pick the decaying branch: (√R − U) must vanish to order deg V at infinity.
  AlgebraicForm form = input;
  {
    const int floor = form.V.degree();
    SeriesAtInfinity s = sqrt_series(R0, n - floor + 1);
    SeriesAtInfinity plus = s - SeriesAtInfinity::from_poly(form.U, floor);
    SeriesAtInfinity minus = -s - SeriesAtInfinity::from_poly(form.U, floor);
    if (plus.is_zero()) {
      // (√R − U)/V decays on the positive branch.
    } else if (minus.is_zero()) {
      form.U = -form.U;
      form.V = -form.V;
    } else {
      fail(ErrorKind::DegreeConstraintViolated, "no branch of (√R − U)/V decays at infinity");
    }
  }
  // Minimal V: remove g with g | U, g | V, g² | R.
  {
    auto [core, sq] = squarefree_split(form.R);
    Poly g = poly_gcd(poly_gcd(form.U, form.V), sq);
    if (!g.is_constant()) {
      form.R = *exact_div(form.R, g * g);
      form.U = *exact_div(form.U, g);
      form.V = *exact_div(form.V, g);
    }
  }
  rep.form = form;
  SurdEvaluator phi(form, opt.tol);

  // Route B: direct expansion of the surd.
  try {
    PFraction pf = expand(SurdTail{-form.U, Poly::constant(1), form.V, form.R}, opt.max_cf_steps);
    switch (pf.terminal) {
      case Terminal::Periodic:
        rep.route_b.periodic = true;
        rep.route_b.period = PeriodData{pf.steps};
        rep.route_b.note = "periodic with period " + std::to_string(pf.period);
        break;
      case Terminal::PrePeriodic:
        rep.route_b.structural_failure = true;
        rep.route_b.note = "pre-periodic expansion (cycle starts at step " + std::to_string(pf.pre_start) + ")";
        break;
      case Terminal::Terminated:
        rep.route_b.structural_failure = true;
        rep.route_b.note = "terminating expansion (rational function)";
        break;
      case Terminal::Truncated:
        rep.route_b.note = "no period within max_cf_steps";
        break;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotExpandable && e.kind() != ErrorKind::NotNormalized) throw;
    rep.route_b.structural_failure = true;
    rep.route_b.note = std::string("normalization obstruction: ") + e.what();
  }

  // Route A: Pell–Abel candidates.
  rep.route_a.attempted = true;
  if (auto fund = pell_fundamental(form.R, opt.max_cf_steps)) {
    rep.route_a.pell_found = true;
    bool any_admissible = false;
    for (int k = 1; k <= opt.max_power && !rep.route_a.succeeded; ++k) {
      PellSolution pk = pell_power(*fund, form.R, k);
      const Poly num = (form.U * form.U - form.R);
      for (int sign : {1, -1}) {
        if (rep.route_a.succeeded) break;
        Poly X = pk.X * Rat(sign), Y = pk.Y * Rat(sign);
        auto z = exact_div(num * Y, form.V);
        if (!z) continue;
        for (Orientation o : {Orientation::YV_negZ, Orientation::negYV_Z, Orientation::negZ_YV,
                              Orientation::Z_negYV}) {
          ScaledMatrixPoly t{detail::candidate_matrix(X, Y, *z, form, o), Rat(1)};
          if (det(t.M) != Poly::constant(1)) continue;
          if (!check_admissible(t).verdict()) continue;
          any_admissible = true;
          PeriodData p = reconstruct(t);
          if (!detail::verify_m_function(p, phi, opt.tol)) continue;
          rep.route_a.succeeded = true;
          rep.route_a.power = k;
          rep.route_a.sign = sign;
          rep.route_a.orientation = o;
          rep.route_a.period = minimal_period(p);
          rep.route_a.certificate = PellCertificate{X, Y, *z, Rat(1)};
          break;
        }
      }
    }
    if (!rep.route_a.succeeded)
      rep.route_a.note = any_admissible ? "admissible candidates found but none reproduces the m-function"
                                        : "no admissible candidate among Pell powers up to max_power";
  } else {
    rep.route_a.note = "no Pell solution within max_cf_steps";
  }

  if (rep.route_b.periodic) {
    rep.status = RealizeStatus::Realized;
    rep.period = rep.route_b.period;
    rep.cross_check = rep.route_a.succeeded && rep.route_a.period == rep.route_b.period;
  } else if (rep.route_a.succeeded) {
    rep.status = RealizeStatus::Realized;
    rep.period = rep.route_a.period;
    rep.cross_check = false;
  } else if (rep.route_b.structural_failure) {
    rep.status = RealizeStatus::NotRealizable;
    rep.reason = rep.route_b.note;
  } else {
    rep.status = RealizeStatus::Inconclusive;
    rep.reason = "bound hit: " + rep.route_b.note + "; " + rep.route_a.note;
  }

  if (rep.period) {
    rep.T = monodromy(*rep.period);
    rep.certificate = detail::certificate_for(*rep.T, form);
    rep.m_verified = detail::verify_m_function(*rep.period, phi, opt.tol);
  }
  return rep;
}

}  // namespace pellab
