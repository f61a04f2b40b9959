#include <gtest/gtest.h>

#include <random>

#include "dkplab/bnb.hpp"
#include "dkplab/instances.hpp"
#include "dkplab/reformulate.hpp"
#include "suites.hpp"

namespace dkplab {
namespace {

std::string notes(const suites::SuiteResult& r) {
  std::string s;
  for (const auto& n : r.notes) s += n + "\n";
  return s;
}

TEST(PropertyTest, KernelMinimumOracle) {
  // Kernel of (1,1,1) is the A2 root lattice: two independent vectors of norm^2 2.
  EXPECT_EQ(suites::kernel_minimum_squared(make_intvec({1, 1, 1}), 1), 2);
  EXPECT_EQ(suites::kernel_minimum_squared(make_intvec({1, 1, 1}), 2), 2);
  // Kernel of (1,2): spanned by (2,-1).
  EXPECT_EQ(suites::kernel_minimum_squared(make_intvec({1, 2}), 1), 5);
}

TEST(PropertyTest, WidthCorrespondence) {
  suites::SuiteResult r = suites::width_correspondence(101, 60);
  EXPECT_TRUE(r.ok()) << notes(r);
}

TEST(PropertyTest, RangeZeroPatternLll) {
  suites::SuiteResult r = suites::range_zero_pattern(7, 15, ReductionProfile::lll());
  EXPECT_TRUE(r.ok()) << notes(r);
}

TEST(PropertyTest, RangeZeroPatternKz) {
  suites::SuiteResult r = suites::range_zero_pattern(8, 15, ReductionProfile::kz());
  EXPECT_TRUE(r.ok()) << notes(r);
}

TEST(PropertyTest, NullZeroPatternKz) {
  suites::SuiteResult r = suites::null_zero_pattern(9, 15, ReductionProfile::kz());
  EXPECT_TRUE(r.ok()) << notes(r);
}

TEST(PropertyTest, StatusInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> p_dist(1, 3), r_dist(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + trial % 2;
    IntVec p(n), r(n);
    for (std::size_t j = 0; j < n; ++j) {
      p[j] = p_dist(rng);
      r[j] = r_dist(rng);
    }
    DkpParams d;
    d.p = p;
    d.r = r;
    d.m = 15;
    d.k = 0;
    d.u = UpperBounds(n, Integer(2));
    IntVec a = d.a();
    bool positive = true;
    for (const auto& v : a) positive = positive && v > 0;
    if (!positive) continue;
    d.beta1 = std::uniform_int_distribution<long>(0, 40)(rng);
    d.beta2 = d.beta1 + 3;
    IpInstance inst = to_instance(d);
    const bool feasible = solve(inst, BranchStrategy::ascending()).status == BnbStatus::kFeasible;
    RangespaceReform rf = rangespace(inst);
    EXPECT_EQ(solve(rf.inst_new, BranchStrategy::ascending()).status == BnbStatus::kFeasible, feasible);
    RangespaceReform kz = rangespace(inst, ReductionProfile::kz());
    EXPECT_EQ(solve(kz.inst_new, BranchStrategy::descending(n)).status == BnbStatus::kFeasible, feasible);
  }
}

}  // namespace
}  // namespace dkplab
