#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace pellab;
using pt::blk;
using pt::lam;
using pt::P;
using pt::q;

namespace {

const Poly kR4 = P({4, 0, 1});  // λ²+4

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST(Step, SurdMixed) {
  StepResult r = step(SurdTail{-lam(), P({1}), P({-2}), kR4});
  EXPECT_EQ(r.step, blk(lam(), 1, 1));
  ASSERT_TRUE(r.next.has_value());
  const auto* next = std::get_if<SurdTail>(&*r.next);
  ASSERT_NE(next, nullptr);
  EXPECT_EQ(canonical(*next), canonical(SurdTail{-lam(), P({1}), P({2}), kR4}));
}

TEST(Step, RationalEnds) {
  StepResult r = step(RationalTail{P({-1}), P({-1, 0, 1})});
  EXPECT_EQ(r.step.p, P({-1, 0, 1}));
  EXPECT_EQ(r.step.epsilon, 1);
  EXPECT_FALSE(r.next.has_value());
}

TEST(Step, NotExpandable) {
  EXPECT_EQ(kind_of([] { step(RationalTail{P({1}), P({0, 2})}); }), ErrorKind::NotExpandable);
  EXPECT_EQ(kind_of([] { step(SurdTail{-lam(), P({1}), P({1}), P({-1, 0, 1})}); }), ErrorKind::NotExpandable);
}

TEST(Step, SeriesTailErrors) {
  // 1/(2λ) as a moment series: s_0 = −1/2 is not of modulus 1.
  EXPECT_EQ(kind_of([] { step(SeriesTail{SeriesAtInfinity::from_moments({q(-1, 2), 0, 0, 0})}); }),
            ErrorKind::NotNormalized);
  // One moment cannot certify β and the next tail.
  EXPECT_EQ(kind_of([] { step(SeriesTail{SeriesAtInfinity::from_moments({1})}); }), ErrorKind::SeriesExhausted);
}

TEST(Step, IdentityProperty) {
  // −1/φ = ε·p + β·φ_next, checked through series arithmetic along the
  // expansion of m-functions of random periods (taken in surd form).
  std::mt19937 rng(909);
  int checked = 0;
  for (int it = 0; it < 40; ++it) {
    PeriodData p = pt::random_period(rng, 3, 2);
    AlgebraicForm f;
    try {
      f = algebraic_form(monodromy(p)).first;
    } catch (const Error&) {
      continue;
    }
    Tail t = SurdTail{-f.U, P({1}), f.V, f.R};
    for (int k = 0; k < 4; ++k) {
      const auto& st = std::get<SurdTail>(t);
      StepResult r = step(t);
      ASSERT_TRUE(r.next);
      const auto& nt = std::get<SurdTail>(*r.next);
      SeriesAtInfinity phi = surd_series(st.a, st.b, st.d, st.R, -12);
      SeriesAtInfinity next = surd_series(nt.a, nt.b, nt.d, nt.R, -6);
      SeriesAtInfinity lhs = -phi.inverse();
      SeriesAtInfinity rhs = SeriesAtInfinity::from_poly(r.step.p * Rat(r.step.epsilon), -6) + next * r.step.beta;
      for (int e = lhs.top_degree(); e >= -4; --e) EXPECT_EQ(lhs.coeff(e), rhs.coeff(e));
      t = *r.next;
      ++checked;
    }
  }
  EXPECT_GT(checked, 40);
}

TEST(Expand, Examples) {
  PFraction a = expand(SurdTail{-lam(), P({1}), P({-2}), kR4}, 10);
  EXPECT_EQ(a.terminal, Terminal::Periodic);
  EXPECT_EQ(a.period, 2);
  EXPECT_EQ(a.steps, (std::vector<PStep>{blk(lam(), 1, 1), blk(lam(), -1, 1)}));

  PFraction b = expand(RationalTail{-lam(), P({1, 0, 1})}, 10);
  EXPECT_EQ(b.terminal, Terminal::Terminated);
  ASSERT_EQ(b.steps.size(), 2u);
  EXPECT_EQ(b.steps[0], blk(lam(), 1, 1));
  EXPECT_EQ(b.steps[1].p, lam());
  EXPECT_EQ(b.steps[1].epsilon, -1);

  EXPECT_EQ(kind_of([] { expand(SurdTail{-lam(), P({1}), P({1}), P({-1, 0, 1})}, 10); }), ErrorKind::NotExpandable);
}

TEST(Expand, TruncatedAndPrePeriodic) {
  PFraction t = expand(SurdTail{-lam(), P({1}), P({-2}), kR4}, 1);
  EXPECT_EQ(t.terminal, Terminal::Truncated);
  EXPECT_EQ(t.steps.size(), 1u);

  // ψ' = −1/((λ+1) + ψ) with ψ = (√(λ²−4) − λ)/2 the free-Jacobi tail; the
  // expansion enters the 1-cycle of ψ after one step:
  // ψ' = −2(λ + 2 − √(λ²−4))/((λ+2)² − (λ²−4)) = (√(λ²−4) − λ − 2)/(2λ + 4).
  PFraction pp = expand(SurdTail{P({-2, -1}), P({1}), P({4, 2}), P({-4, 0, 1})}, 10);
  EXPECT_EQ(pp.terminal, Terminal::PrePeriodic);
  EXPECT_EQ(pp.pre_start, 1);
  EXPECT_EQ(pp.cycle_len, 1);
  EXPECT_EQ(pp.steps[0], blk(P({1, 1}), 1, 1));
}

TEST(Transfer, Examples) {
  ScaledMatrixPoly a = transfer_matrix(blk(lam(), 1, 1));
  EXPECT_EQ(a.M, (PolyMatrix2{{{Poly(), P({-1})}, {P({1}), lam()}}}));
  EXPECT_EQ(a.D, 1);
  ScaledMatrixPoly b = transfer_matrix(blk(lam(), -1, 1));
  EXPECT_EQ(b.M, (PolyMatrix2{{{Poly(), P({1})}, {P({-1}), lam()}}}));
  ScaledMatrixPoly c = transfer_matrix(blk(P({-1, 0, 1}), 1, 4));
  EXPECT_EQ(c.M, (PolyMatrix2{{{Poly(), P({-1})}, {P({4}), P({-1, 0, 1})}}}));
  EXPECT_EQ(c.D, 4);
  EXPECT_EQ(det(c.M), P({4}));
}

TEST(Product, Examples) {
  ScaledMatrixPoly m = product({transfer_matrix(blk(lam(), 1, 1)), transfer_matrix(blk(lam(), -1, 1))});
  EXPECT_EQ(m.M, (PolyMatrix2{{{P({1}), P({0, -1})}, {P({0, -1}), P({1, 0, 1})}}}));
  EXPECT_EQ(m.D, 1);
  ScaledMatrixPoly one = product({transfer_matrix(blk(lam(), 1, 1))});
  EXPECT_EQ(one, transfer_matrix(blk(lam(), 1, 1)));
  ScaledMatrixPoly e = product({transfer_matrix(blk(lam(), 1, 1)), transfer_matrix(blk(lam(), -1, 4))});
  EXPECT_EQ(e.M, (PolyMatrix2{{{P({4}), P({0, -1})}, {P({0, -4}), P({1, 0, 1})}}}));
  EXPECT_EQ(e.D, 4);
}

TEST(Recurrence, Examples) {
  RecurrencePair a = recurrence({blk(lam(), 1, 1)});
  EXPECT_EQ(a.Phat, (std::vector<Poly>{P({1}), lam()}));
  EXPECT_EQ(a.Qhat, (std::vector<Poly>{Poly(), P({1})}));
  RecurrencePair b = recurrence({blk(lam(), 1, 1), blk(lam(), -1, 1)});
  EXPECT_EQ(b.Phat[2], P({1, 0, 1}));
  EXPECT_EQ(b.Qhat[2], lam());
  RecurrencePair c = recurrence({blk(lam(), 1, 1), blk(lam(), -1, 4)});
  EXPECT_EQ(c.Phat[2], P({1, 0, 1}));
  EXPECT_EQ(c.Qhat[2], lam());
}

TEST(Recurrence, WronskianCoprimalityAndProductProperty) {
  std::mt19937 rng(101);
  for (int it = 0; it < 200; ++it) {
    PeriodData p = pt::random_period(rng);
    RecurrencePair rp = recurrence(p.blocks);
    Rat prod = 1;
    for (std::size_t j = 0; j < p.size(); ++j) {
      EXPECT_EQ((rp.Qhat[j + 1] * rp.Phat[j] - rp.Qhat[j] * rp.Phat[j + 1]) * Rat(p.blocks[j].epsilon), Poly::constant(prod));
      prod *= p.blocks[j].beta;
      if (j >= 1) {
        EXPECT_TRUE(poly_gcd(rp.Phat[j], rp.Phat[j + 1]).is_constant());
        EXPECT_TRUE(poly_gcd(rp.Qhat[j], rp.Qhat[j + 1]).is_constant());
        EXPECT_TRUE(poly_gcd(rp.Phat[j], rp.Qhat[j]).is_constant());
      }
    }
    std::vector<ScaledMatrixPoly> ws;
    for (const auto& b : p.blocks) ws.push_back(transfer_matrix(b));
    ScaledMatrixPoly m = product(ws);
    EXPECT_EQ(m.M, pt::hand_product(p));
    EXPECT_EQ(det(m.M), Poly::constant(prod));
    EXPECT_EQ(m.D, prod);
    const std::size_t s = p.size();
    const Rat eb = p.blocks[s - 1].beta * Rat(p.blocks[s - 1].epsilon);
    EXPECT_EQ(m.t(0, 0), -(rp.Qhat[s - 1] * eb));
    EXPECT_EQ(m.t(0, 1), -rp.Qhat[s]);
    EXPECT_EQ(m.t(1, 0), rp.Phat[s - 1] * eb);
    EXPECT_EQ(m.t(1, 1), rp.Phat[s]);
  }
}

TEST(ToSeries, Examples) {
  EXPECT_EQ(to_series({blk(lam(), 1, 1)}, 6), (std::vector<Rat>{1, 0, 1, 0, 2, 0}));
  EXPECT_EQ(to_series({blk(lam(), -1, 1)}, 4), (std::vector<Rat>{-1, 0, -1, 0}));
  PFraction f = expand(RationalTail{P({-1}), P({-1, 0, 1})}, 4);
  EXPECT_EQ(to_series(f.steps, 5, false), (std::vector<Rat>{0, 1, 0, 1, 0}));
}

// Oracle: moments of the dense truncation, s_j = (G H^j e)_0, which never
// touches the P-fraction code.
TEST(ToSeries, AgreesWithMatrixMoments) {
  std::mt19937 rng(77);
  for (int it = 0; it < 60; ++it) {
    PeriodData p = pt::random_period(rng, 3, 3);
    EXPECT_EQ(to_series(p.blocks, 12), pt::matrix_moments(p, 12)) << "iteration " << it;
  }
}

TEST(ToSeries, RoundTripProperty) {
  std::mt19937 rng(4242);
  for (int it = 0; it < 100; ++it) {
    PeriodData p = pt::random_period(rng);
    int sum = 0;
    for (const auto& b : p.blocks) sum += b.p.degree();
    const int n = 2 * sum + p.blocks[0].p.degree();
    std::vector<Rat> s = to_series(p.blocks, n);
    PFraction f = expand(SeriesTail{SeriesAtInfinity::from_moments(s)}, static_cast<int>(p.size()));
    EXPECT_EQ(f.steps, p.blocks) << "iteration " << it;
  }
}
