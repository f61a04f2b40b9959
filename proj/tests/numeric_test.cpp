#include <gtest/gtest.h>

#include "dkplab/error.hpp"
#include "dkplab/int_matrix.hpp"
#include "dkplab/numeric.hpp"

namespace dkplab {
namespace {

TEST(NumericTest, FloorCeilRound) {
  EXPECT_EQ(floor_of(Rational(7, 2)), 3);
  EXPECT_EQ(floor_of(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil_of(Rational(7, 2)), 4);
  EXPECT_EQ(ceil_of(Rational(-7, 2)), -3);
  EXPECT_EQ(floor_of(Rational(5)), 5);
  EXPECT_EQ(ceil_of(Rational(-5)), -5);
  EXPECT_EQ(round_half_up(Rational(1, 2)), 1);
  EXPECT_EQ(round_half_up(Rational(-1, 2)), 0);
  EXPECT_EQ(round_half_up(Rational(-3, 2)), -1);
  EXPECT_EQ(round_half_up(Rational(5, 3)), 2);
  for (long num = -40; num <= 40; ++num) {
    for (long den = 1; den <= 7; ++den) {
      Rational q(num, den);
      q.canonicalize();
      EXPECT_LE(Rational(floor_of(q)), q);
      EXPECT_GT(Rational(floor_of(q) + 1), q);
      EXPECT_GE(Rational(ceil_of(q)), q);
      EXPECT_EQ(is_integral(q), floor_of(q) == ceil_of(q));
    }
  }
}

TEST(NumericTest, Dots) {
  EXPECT_EQ(dot(make_intvec({1, 2, 3}), make_intvec({4, -5, 6})), 12);
  EXPECT_EQ(dot(make_intvec({2, 2}), RatVec{Rational(1, 2), Rational(1, 3)}), Rational(5, 3));
  EXPECT_EQ(norm_squared(make_intvec({3, 4})), 25);
  EXPECT_EQ(gcd_of(make_intvec({18, 34})), 2);
  EXPECT_EQ(gcd_of(make_intvec({0, -9, 6})), 3);
}

TEST(NumericTest, ExtendedOrder) {
  Extended lo = Extended::neg_inf(), hi = Extended::pos_inf(), mid(Rational(1, 3));
  EXPECT_LT(lo, mid);
  EXPECT_LT(mid, hi);
  EXPECT_LT(lo, hi);
  EXPECT_EQ(hi, Extended::pos_inf());
  EXPECT_FALSE(hi < hi);
  EXPECT_EQ(mid + Rational(2, 3), Extended(Rational(1)));
  EXPECT_EQ((hi + Rational(5)).kind(), Extended::Kind::kPosInf);
  EXPECT_EQ(lo.str(), "-inf");
  EXPECT_EQ(hi.str(), "inf");
  EXPECT_EQ(mid.str(), "1/3");
}

TEST(NumericTest, ParseAndPrint) {
  EXPECT_EQ(parse_integer("-123456789012345678901234567890"),
            Integer("-123456789012345678901234567890"));
  EXPECT_EQ(parse_integer("+7"), 7);
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(to_string(parse_rational("10/5")), "2");
  for (const char* bad : {"", "-", "1.5", "1/0", "1/-2", "x", "1/", "/2", "1 2"}) {
    try {
      parse_rational(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse) << bad;
    }
  }
  EXPECT_EQ(join(make_intvec({1, -2, 3}), ","), "1,-2,3");
  EXPECT_EQ(join(RatVec{Rational(1, 2), Rational(4)}), "1/2 4");
}

TEST(IntMatTest, ProductsAndShapes) {
  IntMat a{{1, 2}, {3, 4}, {5, 6}};
  EXPECT_EQ(a.transpose().rows(), 2u);
  EXPECT_EQ(a * make_intvec({1, -1}), make_intvec({-1, -1, -1}));
  EXPECT_EQ(row_times(make_intvec({1, 0, 1}), a), make_intvec({6, 8}));
  EXPECT_EQ(a.transpose() * a, (IntMat{{35, 44}, {44, 56}}));
  EXPECT_EQ(a.with_row_on_top(make_intvec({9, 9})).row(0), make_intvec({9, 9}));
  EXPECT_EQ(a.row_range(1, 3), (IntMat{{3, 4}, {5, 6}}));
  EXPECT_EQ(a.column_range(1, 2).column(0), make_intvec({2, 4, 6}));
  EXPECT_EQ(IntMat::from_columns(a.column_list(), 3), a);
}

TEST(IntMatTest, Determinant) {
  EXPECT_EQ(determinant(IntMat{{2, 1}, {7, 4}}), 1);
  EXPECT_EQ(determinant(IntMat{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMat{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}), 0);
  EXPECT_EQ(determinant(IntMat{{2, 0, 0}, {1, 3, 0}, {4, 5, 6}}), 36);
  EXPECT_TRUE(is_unimodular(IntMat{{2, 1}, {7, 4}}));
  EXPECT_FALSE(is_unimodular(IntMat{{2, 0}, {0, 1}}));
}

TEST(IntMatTest, TextRoundTrip) {
  IntMat a{{1, -2}, {30, 4}};
  EXPECT_EQ(parse_matrix(format_matrix(a)), a);
  EXPECT_THROW(parse_matrix("2 2\n1 2 3"), Error);
}

}  // namespace
}  // namespace dkplab
