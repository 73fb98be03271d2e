#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace pellab;
using pt::blk;
using pt::lam;
using pt::P;
using pt::q;

namespace {

ScaledMatrixPoly smp(Poly a, Poly b, Poly c, Poly d, Rat D) { return {{{{a, b}, {c, d}}}, D}; }

const ScaledMatrixPoly kMixedT = smp(P({1}), P({0, -1}), P({0, -1}), P({1, 0, 1}), 1);
const ScaledMatrixPoly kFreeT = smp(Poly(), P({-1}), P({1}), lam(), 1);

}  // namespace

TEST(Monodromy, Examples) {
  EXPECT_EQ(monodromy(pt::free_period()), kFreeT);
  EXPECT_EQ(monodromy(pt::mixed_period()), kMixedT);
  ScaledMatrixPoly e = monodromy(pt::eigen_period());
  EXPECT_EQ(e.M, smp(P({4}), P({0, -1}), P({0, -4}), P({1, 0, 1}), 4).M);
  EXPECT_EQ(e.D, 4);
  EXPECT_EQ(det(e.M), P({4}));
}

TEST(Monodromy, Properties) {
  std::mt19937 rng(2024);
  for (int it = 0; it < 200; ++it) {
    PeriodData p = pt::random_period(rng);
    ScaledMatrixPoly t = monodromy(p);
    EXPECT_EQ(t, monodromy_from_recurrence(p));
    EXPECT_EQ(det(t.M), Poly::constant(t.D));
    PolyMatrix2 dj = j_prime();
    for (auto& row : dj)
      for (auto& x : row) x = x * t.D;
    EXPECT_EQ(t.M * j_prime() * transpose(t.M), dj);
    EXPECT_LT(t.t(0, 1).degree(), t.t(1, 1).degree());
    EXPECT_LT(t.t(1, 0).degree(), t.t(1, 1).degree());
    EXPECT_TRUE(t.t(1, 1).is_monic());
  }
}

TEST(Admissible, Examples) {
  AdmissibilityReport a = check_admissible(kMixedT);
  EXPECT_TRUE(a.det_one && a.j_unitary && a.degrees_ok && a.lead_t22_positive && a.strict_leading_equality && a.expandable);
  EXPECT_TRUE(a.verdict());

  AdmissibilityReport b = check_admissible(smp(Poly(), P({1}), P({-1}), P({0, 2}), 1));
  EXPECT_TRUE(b.det_one);
  EXPECT_TRUE(b.degrees_ok);
  EXPECT_FALSE(b.expandable);
  EXPECT_FALSE(b.verdict());

  AdmissibilityReport c = check_admissible(smp(Poly(), P({-1}), P({4}), lam(), 4));
  EXPECT_TRUE(c.det_one);
  EXPECT_FALSE(c.strict_leading_equality);
  EXPECT_TRUE(c.expandable);
  EXPECT_TRUE(c.verdict());
}

TEST(Admissible, RejectsBadMatrices) {
  EXPECT_FALSE(check_admissible(smp(P({1}), P({0, -1}), P({0, -1}), P({2, 0, 1}), 1)).det_one);
  EXPECT_FALSE(check_admissible(smp(Poly(), P({1}), P({-1}), P({0, -1}), 1)).lead_t22_positive);
  EXPECT_FALSE(check_admissible(smp(P({0, 0, 1}), P({-1}), P({1}), Poly(), 1)).degrees_ok);
}

TEST(Reconstruct, Examples) {
  EXPECT_EQ(reconstruct(kMixedT), pt::mixed_period());
  EXPECT_EQ(reconstruct(kFreeT), pt::free_period());
  EXPECT_EQ(reconstruct(smp(Poly(), P({-1}), P({4}), lam(), 4)), (PeriodData{{blk(lam(), 1, 4)}}));
  try {
    reconstruct(smp(Poly(), P({1}), P({-1}), P({0, 2}), 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAdmissible);
  }
}

TEST(Reconstruct, InconsistentScale) {
  // det M = D with an off-diagonal entry that does not fit the recurrence.
  try {
    reconstruct(smp(P({1}), P({0, -1}), P({0, -2}), P({q(1, 2), 0, 2}), 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::InconsistentScale || e.kind() == ErrorKind::NotAdmissible) << e.what();
  }
}

TEST(Reconstruct, RoundTripProperty) {
  std::mt19937 rng(99);
  for (int it = 0; it < 200; ++it) {
    PeriodData p = pt::random_period(rng);
    ScaledMatrixPoly t = monodromy(p);
    ASSERT_TRUE(check_admissible(t).verdict());
    PeriodData back = reconstruct(t);
    EXPECT_EQ(back, p);
    EXPECT_EQ(monodromy(back), t);
  }
}

TEST(AlgebraicForm, Examples) {
  auto [f1, c1] = algebraic_form(kMixedT);
  EXPECT_EQ(f1.R, P({4, 0, 1}));
  EXPECT_EQ(f1.U, lam());
  EXPECT_EQ(f1.V, P({-2}));
  EXPECT_EQ(c1.X, P({1, 0, q(1, 2)}));
  EXPECT_EQ(c1.Y, P({0, q(1, 2)}));
  EXPECT_EQ(c1.Z, lam());

  // Free Jacobi: the branch (√R − U)/V must be the decaying m-function
  // (√(λ²−4) − λ)/2, which fixes V = 2 with U = λ.
  auto [f2, c2] = algebraic_form(kFreeT);
  EXPECT_EQ(f2.R, P({-4, 0, 1}));
  EXPECT_EQ(f2.U, lam());
  EXPECT_EQ(f2.V, P({2}));
  EXPECT_EQ(c2.X, P({0, q(1, 2)}));
  EXPECT_EQ(c2.Y, P({q(1, 2)}));
  EXPECT_EQ(c2.Z, P({1}));

  auto [f3, c3] = algebraic_form(kFreeT * kFreeT);
  EXPECT_EQ(f3.R, P({-4, 0, 1}));
  EXPECT_EQ(f3.U, lam());
  EXPECT_EQ(f3.V, P({2}));
  EXPECT_TRUE(verify_certificate(f3, c3));
}

TEST(AlgebraicForm, ConstantTraceRejected) {
  try {
    algebraic_form(smp(P({1}), Poly(), Poly(), P({1}), 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonsquareObstruction);
  }
}

// The extracted form must describe the m-function of the period: its surd
// expansion is periodic and reproduces the (minimal) period.
TEST(AlgebraicForm, SurdExpansionReproducesPeriod) {
  std::mt19937 rng(313);
  int checked = 0;
  for (int it = 0; it < 150; ++it) {
    PeriodData p = pt::random_period(rng, 3, 2);
    std::pair<AlgebraicForm, PellCertificate> fc;
    try {
      fc = algebraic_form(monodromy(p));
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::NonsquareObstruction);
      continue;
    }
    const auto& [f, c] = fc;
    EXPECT_TRUE(verify_certificate(f, c));
    EXPECT_FALSE(is_perfect_square(f.R));
    PFraction pf = expand(SurdTail{-f.U, P({1}), f.V, f.R}, 64);
    ASSERT_EQ(pf.terminal, Terminal::Periodic);
    EXPECT_EQ(PeriodData{pf.steps}, minimal_period(p));
    ++checked;
  }
  EXPECT_GT(checked, 50);
}
