#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dkplab/error.hpp"
#include "dkplab/lattice.hpp"

namespace dkplab {
namespace {

IntMat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

IntMat random_full_rank(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  for (;;) {
    IntMat m = random_matrix(rng, n, n, lo, hi);
    if (determinant(m) != 0) return m;
  }
}

// Oracle: minimum squared norm over all nonzero B x with x in [-b, b]^n.
Integer brute_min_norm(const IntMat& basis, long b) {
  const std::size_t n = basis.cols();
  IntVec x(n, Integer(-b));
  Integer best = -1;
  for (;;) {
    bool zero = std::all_of(x.begin(), x.end(), [](const Integer& e) { return e == 0; });
    if (!zero) {
      Integer nn = norm_squared(basis * x);
      if (best < 0 || nn < best) best = nn;
    }
    std::size_t i = 0;
    while (i < n && x[i] == b) x[i++] = -b;
    if (i == n) break;
    x[i] += 1;
  }
  return best;
}

std::vector<Integer> column_norms(const IntMat& m) {
  std::vector<Integer> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(norm_squared(m.column(c)));
  std::sort(out.begin(), out.end());
  return out;
}

// Projection of basis column i orthogonally to columns 0..i-1.
Rational projected_norm(const IntMat& basis, std::size_t i, const IntVec& x) {
  GramSchmidt gs = gram_schmidt(basis);
  RatVec v = to_rational(basis * x);
  for (std::size_t j = 0; j < i; ++j) {
    Rational m = dot(v, gs.ortho[j]) / gs.norms[j];
    for (std::size_t r = 0; r < v.size(); ++r) v[r] -= m * gs.ortho[j][r];
  }
  return dot(v, v);
}

TEST(GramSchmidtTest, ReconstructsBasis) {
  IntMat b{{289, 18}, {466, 29}, {273, 17}};
  GramSchmidt gs = gram_schmidt(b);
  for (std::size_t i = 0; i < b.cols(); ++i) {
    RatVec sum = gs.ortho[i];
    for (std::size_t j = 0; j < i; ++j)
      for (std::size_t r = 0; r < sum.size(); ++r) sum[r] += gs.mu[i][j] * gs.ortho[j][r];
    EXPECT_EQ(sum, to_rational(b.column(i)));
  }
}

TEST(GramSchmidtTest, DependentColumnsRejected) {
  IntMat b{{1, 2}, {2, 4}};
  EXPECT_THROW(gram_schmidt(b), Error);
}

TEST(LllTest, SmallThreeByTwoBasis) {
  IntMat b{{289, 18}, {466, 29}, {273, 17}};
  Reduction red = lll_reduce(b);
  EXPECT_EQ(column_norms(red.basis), (std::vector<Integer>{6, 14}));
  EXPECT_TRUE(is_unimodular(red.transform));
  EXPECT_EQ(b * red.transform, red.basis);
  EXPECT_EQ(lattice_hnf(b), lattice_hnf(red.basis));
  EXPECT_TRUE(is_lll_reduced(red.basis));
  EXPECT_EQ(red.transform * red.inverse, IntMat::identity(2));
}

TEST(LllTest, IdempotentOnReducedInput) {
  IntMat b{{1, 0}, {0, 1}, {0, 0}};
  Reduction red = lll_reduce(b);
  EXPECT_EQ(red.basis, b);
  EXPECT_EQ(red.transform, IntMat::identity(2));
}

TEST(LllTest, KnapsackLatticeAgainstBruteForce) {
  IntMat b{{21, 19}, {1, 0}, {0, 1}};
  Reduction red = lll_reduce(b);
  ASSERT_TRUE(is_lll_reduced(red.basis));
  // Oracle: greedy independent pair from exhaustive enumeration in [-10,10]^2.
  SuccessiveMinima sm = successive_minima_bruteforce(b, 2, 10);
  std::vector<Integer> got = column_norms(red.basis);
  const Rational cn2 = ReductionProfile::lll().cn_squared(2);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_LE(Rational(got[i]), cn2 * sm.values[i]);
  // The first transform column lies in the kernel of p = (1,1).
  EXPECT_EQ(row_times(make_intvec({1, 1}), red.transform)[0], 0);
}

TEST(LllTest, RandomBasesSatisfyConditions) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + trial % 4;
    IntMat b = random_full_rank(rng, n, -50, 50);
    Reduction red = lll_reduce(b);
    EXPECT_TRUE(is_lll_reduced(red.basis));
    EXPECT_TRUE(is_unimodular(red.transform));
    EXPECT_EQ(b * red.transform, red.basis);
    EXPECT_EQ(lattice_hnf(b), lattice_hnf(red.basis));
    EXPECT_EQ(red.transform * red.inverse, IntMat::identity(n));
  }
}

TEST(LllTest, NormsBoundedBySuccessiveMinima) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + trial % 3;
    IntMat b = random_full_rank(rng, n, -9, 9);
    Reduction red = lll_reduce(b);
    SuccessiveMinima sm = successive_minima_bruteforce(b, n, n <= 3 ? 8 : 5);
    const Rational cn2 = ReductionProfile::lll().cn_squared(n);
    Integer running = 0;
    for (std::size_t i = 0; i < n; ++i) {
      running = std::max(running, norm_squared(red.basis.column(i)));
      EXPECT_LE(Rational(running), cn2 * sm.values[i]);
    }
  }
}

TEST(LllTest, DependentColumnsRejected) {
  IntMat b{{1, 2, 3}, {4, 5, 9}, {7, 8, 15}};
  EXPECT_THROW(lll_reduce(b), Error);
}

TEST(ShortestVectorTest, AxisLattice) {
  ShortestVector sv = shortest_vector(IntMat{{3, 0}, {0, 5}});
  EXPECT_EQ(sv.vector, make_intvec({3, 0}));
  EXPECT_EQ(sv.norm_squared, 9);
}

TEST(ShortestVectorTest, IdentityHasUnitNorm) {
  EXPECT_EQ(shortest_vector(IntMat::identity(2)).norm_squared, 1);
}

TEST(ShortestVectorTest, MatchesExhaustiveSearch) {
  IntMat b{{2, 1}, {0, 2}};
  ShortestVector sv = shortest_vector(b);
  EXPECT_EQ(sv.norm_squared, brute_min_norm(b, 4));
  EXPECT_EQ(sv.norm_squared, 4);
  EXPECT_EQ(b * sv.coefficients, sv.vector);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 3;
    IntMat r = random_full_rank(rng, n, -9, 9);
    ShortestVector s = shortest_vector(r);
    // Coefficient range derived from the reduced basis would be tighter; a
    // reduced copy keeps the oracle box small.
    EXPECT_EQ(s.norm_squared, brute_min_norm(lll_reduce(r).basis, 3));
    EXPECT_EQ(r * s.coefficients, s.vector);
  }
}

TEST(ShortestVectorTest, CapEnforced) {
  EXPECT_THROW(shortest_vector(IntMat::identity(4), 3), Error);
}

TEST(KzTest, SingleColumn) {
  IntMat b{{-4}, {3}};
  Reduction red = kz_reduce(b);
  EXPECT_EQ(red.basis, (IntMat{{4}, {-3}}));
}

TEST(KzTest, ShortestFirst) {
  Reduction red = kz_reduce(IntMat{{5, 0}, {0, 3}});
  EXPECT_EQ(norm_squared(red.basis.column(0)), 9);
}

TEST(KzTest, ProjectionsAreShortest) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 3 + trial % 2;
    IntMat b = random_full_rank(rng, n, -9, 9);
    Reduction red = kz_reduce(b);
    EXPECT_TRUE(is_unimodular(red.transform));
    EXPECT_EQ(b * red.transform, red.basis);
    EXPECT_TRUE(is_size_reduced(red.basis));
    SuccessiveMinima sm = successive_minima_bruteforce(lll_reduce(b).basis, 1, 6);
    EXPECT_EQ(Rational(norm_squared(red.basis.column(0))), sm.values[0]);
    // Oracle: exhaustive search of projected lattices over a coefficient box.
    for (std::size_t i = 0; i < n; ++i) {
      Rational own = projected_norm(red.basis, i, [&] {
        IntVec e(n);
        e[i] = 1;
        return e;
      }());
      const std::size_t free = n - i;
      IntVec x(n);
      std::vector<long> c(free, -4);
      for (;;) {
        bool zero = true;
        for (std::size_t t = 0; t < free; ++t) {
          x[i + t] = c[t];
          if (c[t] != 0) zero = false;
        }
        if (!zero) {
          EXPECT_GE(projected_norm(red.basis, i, x), own);
        }
        std::size_t t = 0;
        while (t < free && c[t] == 4) c[t++] = -4;
        if (t == free) break;
        ++c[t];
      }
    }
  }
}

TEST(KzTest, CapEnforced) {
  EXPECT_THROW(kz_reduce(IntMat::identity(5), 4), Error);
}

TEST(BabaiTest, LatticeMemberIsExact) {
  IntMat b{{2, 1}, {0, 3}};
  IntVec x = make_intvec({4, -7});
  EXPECT_EQ(babai_nearest(b, b * x), x);
}

TEST(BabaiTest, IdentityBasis) {
  EXPECT_EQ(babai_nearest(IntMat::identity(3), make_intvec({5, -2, 9})), make_intvec({5, -2, 9}));
}

TEST(BabaiTest, HalfRoundsUp) {
  EXPECT_EQ(babai_nearest(IntMat{{2}}, make_intvec({3})), make_intvec({2}));
  EXPECT_EQ(babai_nearest(IntMat{{2}}, make_intvec({-3})), make_intvec({-1}));
}

TEST(BabaiTest, ResidualWithinHalfOnEveryDirection) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> dist(-100, 100);
  for (int trial = 0; trial < 30; ++trial) {
    IntMat b = random_full_rank(rng, 3, -9, 9);
    IntVec t{dist(rng), dist(rng), dist(rng)};
    IntVec x = babai_nearest(b, t);
    IntVec bx = b * x;
    RatVec res(3);
    for (int r = 0; r < 3; ++r) res[r] = Rational(t[r] - bx[r]);
    GramSchmidt gs = gram_schmidt(b);
    for (std::size_t j = 0; j < 3; ++j) {
      Rational c = dot(res, gs.ortho[j]) / gs.norms[j];
      EXPECT_LE(abs(c), Rational(1, 2));
    }
  }
}

TEST(HnfTest, AllTwos) {
  IntMat a{{2, 2, 2}};
  Hnf h = hnf(a);
  EXPECT_EQ(h.h, (IntMat{{2}}));
  ASSERT_EQ(h.v.cols(), 2u);
  EXPECT_EQ(a * h.v, IntMat(1, 2));
  EXPECT_EQ(a * h.u, (IntMat{{2, 0, 0}}));
}

TEST(HnfTest, IdentityHasEmptyKernel) {
  Hnf h = hnf(IntMat::identity(3));
  EXPECT_EQ(h.h, IntMat::identity(3));
  EXPECT_EQ(h.v.cols(), 0u);
  EXPECT_EQ(dual_basis(IntMat::identity(3)).rows(), 0u);
}

TEST(HnfTest, TwoColumnKnapsack) {
  IntMat a{{18, 34}};
  Hnf h = hnf(a);
  EXPECT_EQ(h.h, (IntMat{{2}}));
  ASSERT_EQ(h.v.cols(), 1u);
  IntVec v = h.v.column(0);
  EXPECT_TRUE(v == make_intvec({17, -9}) || v == make_intvec({-17, 9}));
  IntMat vs = dual_basis(a);
  EXPECT_EQ(vs * h.v, IntMat::identity(1));
}

TEST(HnfTest, CoordinateDual) {
  IntMat a{{1, 0}};
  EXPECT_EQ(kernel_basis(a), (IntMat{{0}, {1}}));
  EXPECT_EQ(dual_basis(a), (IntMat{{0, 1}}));
}

TEST(HnfTest, RankDeficientRejected) {
  EXPECT_THROW(hnf(IntMat{{1, 2, 3}, {2, 4, 6}}), Error);
}

TEST(HnfTest, RandomShapesAndCompleteness) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const std::size_t m = 1 + trial % (n - 1);
    IntMat a = random_matrix(rng, m, n, -6, 6);
    Hnf h;
    try {
      h = hnf(a);
    } catch (const Error&) {
      continue;
    }
    EXPECT_TRUE(is_unimodular(h.u));
    EXPECT_EQ(h.u * h.u_inverse, IntMat::identity(n));
    for (std::size_t i = 0; i < m; ++i) {
      EXPECT_GT(h.h(i, i), 0);
      for (std::size_t j = 0; j < m; ++j) {
        if (j > i) {
          EXPECT_EQ(h.h(i, j), 0);
        } else if (j < i) {
          EXPECT_GE(h.h(i, j), 0);
          EXPECT_LT(h.h(i, j), h.h(i, i));
        }
      }
    }
    IntMat vs = h.u_inverse.row_range(m, n);
    EXPECT_EQ(vs * h.v, IntMat::identity(n - m));
    if (n > 5) continue;
    // Oracle: every kernel vector in [-5,5]^n is an integer combination of V.
    IntVec y(n, Integer(-5));
    for (;;) {
      if (a * y == IntVec(m)) {
        IntVec lam = vs * y;
        EXPECT_EQ(h.v * lam, y);
      }
      std::size_t i = 0;
      while (i < n && y[i] == 5) y[i++] = -5;
      if (i == n) break;
      y[i] += 1;
    }
  }
}

TEST(SuccessiveMinimaTest, Trivial) {
  EXPECT_EQ(successive_minima_bruteforce(IntMat{{3, 0}, {0, 5}}, 2, 3).values,
            (RatVec{Rational(9), Rational(25)}));
  EXPECT_EQ(successive_minima_bruteforce(IntMat::identity(3), 3, 2).values,
            (RatVec{Rational(1), Rational(1), Rational(1)}));
}

TEST(SuccessiveMinimaTest, KernelOfOneOneThree) {
  // Oracle: scan all y in [-6,6]^3 with y1 + y2 + 3 y3 = 0 directly.
  Integer first = -1;
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b)
      for (long c = -6; c <= 6; ++c) {
        if (a + b + 3 * c != 0 || (a == 0 && b == 0 && c == 0)) continue;
        Integer nn = a * a + b * b + c * c;
        if (first < 0 || nn < first) first = nn;
      }
  // The second minimum is the least norm among vectors independent of (1,-1,0).
  Integer second = -1;
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b)
      for (long c = -6; c <= 6; ++c) {
        if (a + b + 3 * c != 0 || (a + b == 0 && c == 0)) continue;
        Integer nn = a * a + b * b + c * c;
        if (second < 0 || nn < second) second = nn;
      }
  IntMat v = lll_reduce(kernel_basis(IntMat{{1, 1, 3}})).basis;
  SuccessiveMinima sm = successive_minima_bruteforce(v, 2, 6);
  EXPECT_EQ(sm.values[0], Rational(first));
  EXPECT_EQ(sm.values[1], Rational(second));
  EXPECT_EQ(first, 2);
  EXPECT_EQ(second, 6);  // e.g. (1,2,-1)
}

TEST(SuccessiveMinimaTest, GuardEnforced) {
  EXPECT_THROW(successive_minima_bruteforce(IntMat::identity(9), 1, 1), Error);
  EXPECT_THROW(successive_minima_bruteforce(IntMat::identity(2), 1, 21), Error);
}

TEST(RadicalsTest, ExactComparison) {
  // 3 > sqrt(8), 3 < sqrt(10)
  EXPECT_TRUE(exceeds_radicals(3, 1, 8));
  EXPECT_FALSE(exceeds_radicals(3, 1, 9));
  EXPECT_FALSE(exceeds_radicals(3, 1, 10));
  // sqrt(2) + sqrt(3) = 3.146...
  EXPECT_EQ(smallest_integer_above(1, 2, 1, 3), 4);
  EXPECT_FALSE(exceeds_radicals(3, 1, 2, 1, 3));
  // 2 sqrt(4) + 3 sqrt(9) = 13 exactly
  EXPECT_EQ(smallest_integer_above(2, 4, 3, 9), 14);
  EXPECT_EQ(smallest_integer_above(0, 0), 1);
}

TEST(ProfileTest, ReductionFactors) {
  EXPECT_EQ(ReductionProfile::lll().cn_squared(4), 8);
  EXPECT_EQ(ReductionProfile::kz().cn_squared(4), 4);
}

}  // namespace
}  // namespace dkplab
