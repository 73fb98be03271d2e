#pragma once

/**
 * @file monodromy.hpp
 * @brief Monodromy matrices of periodic generalized Jacobi matrices and the
 * inverse map from admissible 2x2 matrix polynomials back to period data.
 *
 * Everything is carried in the scaled form T = M/√D, where D = β_0⋯β_{s−1}
 * for a monodromy, so det T = 1 reads det M = D.
 */

#include <optional>
#include <utility>

#include "pellab/period.hpp"
#include "pellab/pfrac.hpp"
#include "pellab/scaled.hpp"

namespace pellab {

/// T = W_0 W_1 ⋯ W_{s−1}.
inline ScaledMatrixPoly monodromy(const PeriodData& period) {
  validate(period);
  std::vector<ScaledMatrixPoly> ws;
  ws.reserve(period.size());
  for (const auto& b : period.blocks) ws.push_back(transfer_matrix(b));
  return product(ws);
}

/// The same matrix assembled from the recurrence:
/// M = [[−ε_{s−1}β_{s−1}Q̂_{s−1}, −Q̂_s], [ε_{s−1}β_{s−1}P̂_{s−1}, P̂_s]].
inline ScaledMatrixPoly monodromy_from_recurrence(const PeriodData& period) {
  validate(period);
  RecurrencePair rp = recurrence(period.blocks);
  const std::size_t s = period.size();
  const PStep& last = period.blocks.back();
  Rat eb = last.beta * Rat(last.epsilon);
  ScaledMatrixPoly t;
  t.M[0][0] = -(rp.Qhat[s - 1] * eb);
  t.M[0][1] = -rp.Qhat[s];
  t.M[1][0] = rp.Phat[s - 1] * eb;
  t.M[1][1] = rp.Phat[s];
  t.D = 1;
  for (const auto& b : period.blocks) t.D *= b.beta;
  return t;
}

struct AdmissibilityReport {
  bool det_one = false;
  bool j_unitary = false;
  bool degrees_ok = false;
  bool lead_t22_positive = false;
  bool strict_leading_equality = false;
  bool expandable = false;

  /// The literal leading-coefficient equality is reported separately and
  /// does not gate the verdict.
  bool verdict() const { return det_one && degrees_ok && lead_t22_positive && expandable; }
};

namespace detail {

/// P-fraction of t12/t22 if it terminates with normalized steps.
inline std::optional<PFraction> expand_t12_over_t22(const ScaledMatrixPoly& t) {
  if (t.t(0, 1).is_zero() || t.t(1, 1).is_zero()) return std::nullopt;
  try {
    PFraction pf = expand(RationalTail{t.t(0, 1), t.t(1, 1)}, t.t(1, 1).degree() + 1);
    if (pf.terminal != Terminal::Terminated) return std::nullopt;
    return pf;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotExpandable || e.kind() == ErrorKind::NotNormalized) return std::nullopt;
    throw;
  }
}

}  // namespace detail

inline AdmissibilityReport check_admissible(const ScaledMatrixPoly& t) {
  AdmissibilityReport r;
  if (sgn(t.D) <= 0) fail(ErrorKind::InvalidInput, "scale D must be positive");
  const Poly d = det(t.M);
  r.det_one = d == Poly::constant(t.D);
  // M J' Mᵀ = det(M)·J' always; J-unitarity of T = M/√D is det M = D.
  PolyMatrix2 mjm = t.M * j_prime() * transpose(t.M);
  PolyMatrix2 dj = j_prime();
  for (auto& row : dj)
    for (auto& e : row) e *= Poly::constant(t.D);
  r.j_unitary = mjm == dj;
  const int d22 = t.t(1, 1).degree();
  r.degrees_ok = !t.t(1, 1).is_zero() && t.t(0, 1).degree() < d22 && t.t(1, 0).degree() < d22;
  r.lead_t22_positive = !t.t(1, 1).is_zero() && sgn(t.t(1, 1).lead()) > 0;
  r.strict_leading_equality = !t.t(1, 0).is_zero() && !t.t(1, 1).is_zero() &&
                              abs_rat(t.t(1, 0).lead()) == abs_rat(t.t(1, 1).lead());
  r.expandable = detail::expand_t12_over_t22(t).has_value();
  return r;
}

/// Period data whose monodromy is T.
///
/// The P-fraction of t12/t22 = −Q̂_s/P̂_s gives p_j, ε_j and β_0…β_{s−2};
/// β_{s−1} is fixed by t22 = P̂_s/√(β_0⋯β_{s−1}) with P̂_s monic.
inline PeriodData reconstruct(const ScaledMatrixPoly& t) {
  AdmissibilityReport rep = check_admissible(t);
  if (!rep.verdict()) fail(ErrorKind::NotAdmissible, "matrix polynomial is not admissible");
  PFraction pf = *detail::expand_t12_over_t22(t);
  PeriodData out{pf.steps};
  Rat partial(1);
  for (std::size_t j = 0; j + 1 < out.blocks.size(); ++j) partial *= out.blocks[j].beta;
  const Rat& c = t.t(1, 1).lead();
  Rat last = t.D / (c * c * partial);
  if (sgn(last) <= 0) fail(ErrorKind::InconsistentScale, "no positive coupling matches the scale");
  out.blocks.back().beta = last;
  if (!(monodromy(out) == t))
    fail(ErrorKind::InconsistentScale, "reconstructed period does not reproduce the matrix");
  return out;
}

/// (√R − U)/V with deg R = 2n, deg U = n, deg V < n.
struct AlgebraicForm {
  Poly R, U, V;
  friend bool operator==(const AlgebraicForm& a, const AlgebraicForm& b) {
    return a.R == b.R && a.U == b.U && a.V == b.V;
  }
};

/// Polynomials (X, Y, Z) with X² − R·Y² = scale and (U² − R)·Y = V·Z.
/// The unscaled solution is (X, Y, Z)/√scale.
struct PellCertificate {
  Poly X, Y, Z;
  Rat sqrt_scale{1};
};

/// Both Pell–Abel identities, exactly, in the scaled sense.
inline bool verify_certificate(const AlgebraicForm& f, const PellCertificate& c) {
  if (c.Y.is_zero() || sgn(c.sqrt_scale) <= 0) return false;
  const bool pell = c.X * c.X - f.R * c.Y * c.Y == Poly::constant(c.sqrt_scale);
  const bool abel = (f.U * f.U - f.R) * c.Y == f.V * c.Z;
  return pell && abel;
}

/// Recovers (R, U, V) and a certificate from a monodromy matrix.
///
/// X = (m11 + m22)/2 and X² − D = R·Y² with R squarefree and monic. Y is
/// taken with positive leading coefficient so that U = (m22 − m11)/(2Y) has a
/// positive leading coefficient; then V = m21/Y and Z = −m12, which puts the
/// m-function on the branch (√R − U)/V that decays with √R ~ +λ^n.
inline std::pair<AlgebraicForm, PellCertificate> algebraic_form(const ScaledMatrixPoly& t) {
  const Poly& m11 = t.t(0, 0);
  const Poly& m12 = t.t(0, 1);
  const Poly& m21 = t.t(1, 0);
  const Poly& m22 = t.t(1, 1);
  Poly X = (m11 + m22) / Rat(2);
  if (X.degree() < 1) fail(ErrorKind::NonsquareObstruction, "trace is constant; no algebraic form with deg U >= 1");
  Poly w = X * X - Poly::constant(t.D);
  auto [core, sq] = squarefree_split(w);
  if (core.degree() < 1)
    fail(ErrorKind::NonsquareObstruction, "X² − D is a perfect square; no hyperelliptic radicand");
  Rat lc = core.lead();
  auto root = rational_sqrt(lc);
  if (!root) fail(ErrorKind::NonsquareObstruction, "radicand leading coefficient is not a rational square");
  Poly R = core.monic();
  Poly Y = sq * *root;
  auto U = exact_div(m22 - m11, Y * Rat(2));
  if (!U) fail(ErrorKind::NonsquareObstruction, "2Y does not divide t22 − t11");
  auto V = exact_div(m21, Y);
  if (!V) fail(ErrorKind::NonsquareObstruction, "Y does not divide t21");
  AlgebraicForm form{R, *U, *V};
  PellCertificate cert{X, Y, -m12, t.D};
  if (!verify_certificate(form, cert))
    fail(ErrorKind::NonsquareObstruction, "Pell–Abel identities failed for the extracted form");
  return {form, cert};
}

}  // namespace pellab
