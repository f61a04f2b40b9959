#include <gtest/gtest.h>

#include <random>

#include "dkplab/error.hpp"
#include "dkplab/lp.hpp"

namespace dkplab {
namespace {

OptRational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// beta1 <= a x <= beta2 with 0 <= x <= u (nullopt = unbounded).
IpInstance knapsack(const IntVec& a, long beta1, long beta2, const std::vector<std::optional<long>>& u) {
  const std::size_t n = a.size();
  IpInstance inst;
  inst.a = IntMat(n + 1, n);
  inst.a.set_row(0, a);
  inst.lo.push_back(q(beta1));
  inst.hi.push_back(q(beta2));
  for (std::size_t i = 0; i < n; ++i) {
    inst.a(i + 1, i) = 1;
    inst.lo.push_back(q(0));
    inst.hi.push_back(u[i] ? q(*u[i]) : OptRational());
  }
  return inst;
}

IpInstance example1() { return knapsack(make_intvec({21, 19}), 106, 113, {6, 6}); }

TEST(LpTest, TwoVarKnapsackExtremes) {
  IpInstance inst = example1();
  LpOutcome hi = lp_optimize(inst, make_intvec({1, 1}), Sense::kMax);
  LpOutcome lo = lp_optimize(inst, make_intvec({1, 1}), Sense::kMin);
  ASSERT_EQ(hi.status, LpStatus::kOptimal);
  ASSERT_EQ(lo.status, LpStatus::kOptimal);
  // Greedy oracle: max puts x2 = 113/19 (ratio 1/19 best), min puts x1 = 106/21.
  EXPECT_EQ(hi.value, Rational(113, 19));
  EXPECT_EQ(lo.value, Rational(106, 21));
  // Rounded to two decimals these are 5.94 and 5.04.
  EXPECT_EQ(floor_of(hi.value * 100), 594);
  EXPECT_EQ(floor_of(lo.value * 100), 504);
}

TEST(LpTest, EmptyInterval) {
  IpInstance inst;
  inst.a = IntMat{{1}};
  inst.lo = {q(1)};
  inst.hi = {q(0)};
  EXPECT_EQ(lp_optimize(inst, make_intvec({1}), Sense::kMax).status, LpStatus::kInfeasible);
}

TEST(LpTest, KpEqRatioMax) {
  IpInstance inst = knapsack(make_intvec({18, 34}), 35, 35, {std::nullopt, std::nullopt});
  LpOutcome out = lp_optimize(inst, make_intvec({1, 0}), Sense::kMax);
  ASSERT_EQ(out.status, LpStatus::kOptimal);
  EXPECT_EQ(out.value, Rational(35, 18));
}

TEST(LpTest, UnboundedDetected) {
  IpInstance inst = knapsack(make_intvec({1, -1}), 0, 0, {std::nullopt, std::nullopt});
  EXPECT_EQ(lp_optimize(inst, make_intvec({1, 0}), Sense::kMax).status, LpStatus::kUnbounded);
  EXPECT_EQ(lp_optimize(inst, make_intvec({1, 0}), Sense::kMin).value, 0);
}

TEST(LpTest, BealeCyclingExampleTerminates) {
  // Classic degenerate instance on which the textbook largest-coefficient
  // rule cycles; rows and costs scaled by 100 to be integral.
  IpInstance inst;
  inst.a = IntMat{{25, -6000, -4, 900}, {50, -9000, -2, 300}, {0, 0, 1, 0},
                  {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  inst.lo = {std::nullopt, std::nullopt, std::nullopt, q(0), q(0), q(0), q(0)};
  inst.hi = {q(0), q(0), q(1), std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  LpOutcome out = lp_optimize(inst, make_intvec({-75, 15000, -2, 600}), Sense::kMin);
  ASSERT_EQ(out.status, LpStatus::kOptimal);
  EXPECT_EQ(out.value, -5);
}

TEST(LpTest, FreeVariablesAndGeneralRows) {
  // x + y >= 3/2, x - y <= 1/2, -x + 2y <= 4; max x + y is attained at (5, 9/2)
  IpInstance inst;
  inst.a = IntMat{{1, 1}, {1, -1}, {-1, 2}, {1, 0}};
  inst.lo = {q(3, 2), std::nullopt, std::nullopt, std::nullopt};
  inst.hi = {std::nullopt, q(1, 2), q(4), q(5)};
  LpOutcome out = lp_optimize(inst, make_intvec({1, 1}), Sense::kMax);
  ASSERT_EQ(out.status, LpStatus::kOptimal);
  EXPECT_EQ(out.value, Rational(19, 2));
  EXPECT_EQ(out.point, (RatVec{Rational(5), Rational(9, 2)}));
}

TEST(WidthTest, TwoVarKnapsack) {
  WidthReport rep = width(example1(), make_intvec({1, 1}));
  EXPECT_EQ(rep.width, Extended(Rational(359, 399)));
  EXPECT_EQ(rep.iwidth, Integer(0));
  EXPECT_EQ(iwidth(example1(), make_intvec({1, 1})), 0);
  EXPECT_EQ(iwidth(example1(), make_intvec({1, 0})), 6);
}

TEST(WidthTest, JeroslowSevenSumFixed) {
  const long n = 7;
  IpInstance inst = knapsack(IntVec(n, Integer(2)), n, n, std::vector<std::optional<long>>(n, 1L));
  WidthReport rep = width(inst, IntVec(n, Integer(1)));
  EXPECT_EQ(rep.max, Extended(Rational(7, 2)));
  EXPECT_EQ(rep.min, Extended(Rational(7, 2)));
  EXPECT_EQ(rep.iwidth, Integer(0));
}

TEST(WidthTest, KpEqDirectionP) {
  IpInstance inst = knapsack(make_intvec({18, 34}), 35, 35, {std::nullopt, std::nullopt});
  WidthReport rep = width(inst, make_intvec({1, 1}));
  EXPECT_EQ(rep.width, Extended(Rational(140, 153)));
  EXPECT_EQ(rep.iwidth, Integer(0));
}

TEST(WidthTest, UnboundedFlagged) {
  IpInstance inst = knapsack(make_intvec({1, -1}), 0, 0, {std::nullopt, std::nullopt});
  WidthReport rep = width(inst, make_intvec({1, 0}));
  EXPECT_FALSE(rep.bounded());
  EXPECT_FALSE(rep.iwidth.has_value());
  EXPECT_THROW(iwidth(inst, make_intvec({1, 0})), Error);
}

TEST(WidthTest, IwidthZeroIffNoIntegerInRange) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 7);
  for (int t = 0; t < 300; ++t) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    if (a < b) std::swap(a, b);
    bool has_integer = false;
    for (long z = -50; z <= 50; ++z) {
      if (Rational(z) >= b && Rational(z) <= a) has_integer = true;
    }
    EXPECT_EQ(integer_width(a, b) == 0, !has_integer);
  }
}

TEST(KnapsackExtremeTest, TwoVarKnapsackValues) {
  UpperBounds u{Integer(6), Integer(6)};
  EXPECT_EQ(knapsack_extreme(make_intvec({1, -1}), make_intvec({1, 1}), 5, u, Sense::kMax),
            Extended(Rational(5)));
  EXPECT_EQ(knapsack_extreme(make_intvec({1, -1}), make_intvec({1, 1}), 6, u, Sense::kMin),
            Extended(Rational(-6)));
}

TEST(KnapsackExtremeTest, ZeroObjective) {
  UpperBounds u(5, Integer(1));
  IntVec zero(5), p(5, Integer(1));
  EXPECT_EQ(knapsack_extreme(zero, p, 2, u, Sense::kMax), Extended(Rational(0)));
  EXPECT_EQ(knapsack_extreme(zero, p, 3, u, Sense::kMin), Extended(Rational(0)));
}

TEST(KnapsackExtremeTest, UnboundedBoxUsesExtremeRatios) {
  // r = (1,2,3), p = e: both extreme ratios are positive here.
  UpperBounds inf(3);
  IntVec r = make_intvec({1, 2, 3}), p = make_intvec({1, 1, 1});
  EXPECT_EQ(knapsack_extreme(r, p, 9, inf, Sense::kMax), Extended(Rational(27)));
  EXPECT_EQ(knapsack_extreme(r, p, 10, inf, Sense::kMin), Extended(Rational(10)));
  // A negative ratio with an unbounded variable makes the minimum -infinity.
  EXPECT_EQ(knapsack_extreme(make_intvec({-1, 2}), make_intvec({1, 1}), 2, UpperBounds(2), Sense::kMin),
            Extended::neg_inf());
}

TEST(KnapsackExtremeTest, GreedyMatchesLp) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<long> fdist(-10, 10), pdist(1, 10), udist(1, 6), coin(0, 4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    IntVec f(n), p(n);
    UpperBounds u(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = fdist(rng);
      p[i] = pdist(rng);
      if (coin(rng) != 0) u[i] = Integer(udist(rng));
    }
    Integer l = std::uniform_int_distribution<long>(-2, 30)(rng);
    for (Sense s : {Sense::kMax, Sense::kMin}) {
      EXPECT_EQ(knapsack_extreme(f, p, l, u, s), knapsack_extreme_lp(f, p, l, u, s));
    }
  }
}

TEST(KpeqClosedFormTest, TwoVariableExample) {
  KpeqWidths w = kpeq_width_closed_form(make_intvec({1, 1}), make_intvec({-11, 5}), 29, 35);
  EXPECT_EQ(w.width_p, Rational(140, 153));
  EXPECT_EQ(w.width_e, (RatVec{Rational(35, 18), Rational(35, 34)}));
}

TEST(KpeqClosedFormTest, ParallelGivesZero) {
  KpeqWidths w = kpeq_width_closed_form(make_intvec({1, 2}), make_intvec({3, 6}), 10, 50);
  EXPECT_EQ(w.width_p, 0);
}

TEST(KpeqClosedFormTest, OrderViolationRejected) {
  EXPECT_THROW(kpeq_width_closed_form(make_intvec({1, 1}), make_intvec({5, -11}), 29, 35), Error);
}

TEST(KpeqClosedFormTest, SeventeenVariablesMatchLp) {
  IntVec p(17, Integer(1)), r(17);
  for (long i = 0; i < 17; ++i) r[i] = -11 + i;
  KpeqWidths w = kpeq_width_closed_form(p, r, 29, 35);
  IntVec a(17);
  for (std::size_t i = 0; i < 17; ++i) a[i] = 29 + r[i];
  IpInstance inst = knapsack(a, 35, 35, std::vector<std::optional<long>>(17));
  for (std::size_t i = 0; i < 17; ++i) {
    IntVec e(17);
    e[i] = 1;
    Rational expect(35, a[i]);
    expect.canonicalize();
    EXPECT_EQ(w.width_e[i], expect);
    EXPECT_EQ(width(inst, e).width, Extended(w.width_e[i]));
  }
  EXPECT_EQ(width(inst, p).width, Extended(w.width_p));
}

TEST(KpeqClosedFormTest, RandomInstancesMatchLp) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> pd(1, 6), rd(-10, 10), md(15, 40), bd(1, 200);
  int checked = 0;
  while (checked < 40) {
    const std::size_t n = 2 + static_cast<std::size_t>(checked % 4);
    IntVec p(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = pd(rng);
      r[i] = rd(rng);
    }
    // sort by ratio r/p to satisfy the ordering assumption
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return r[x] * p[y] < r[y] * p[x]; });
    IntVec ps(n), rs(n);
    for (std::size_t i = 0; i < n; ++i) {
      ps[i] = p[idx[i]];
      rs[i] = r[idx[i]];
    }
    Integer m = md(rng), beta = bd(rng);
    KpeqWidths w = kpeq_width_closed_form(ps, rs, m, beta);
    IntVec a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = ps[i] * m + rs[i];
    IpInstance inst = knapsack(a, beta.get_si(), beta.get_si(), std::vector<std::optional<long>>(n));
    EXPECT_EQ(width(inst, ps).width, Extended(w.width_p));
    ++checked;
  }
}

}  // namespace
}  // namespace dkplab
