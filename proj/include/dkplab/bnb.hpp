#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dkplab/lp.hpp"
#include "dkplab/numeric.hpp"

namespace dkplab {

enum class BranchKind { kVariable, kConstraint };
enum class OrderKind { kFixed, kMostFractional, kRandom };

struct BranchStrategy {
  BranchKind kind = BranchKind::kVariable;
  OrderKind order = OrderKind::kFixed;
  // Priority list for kFixed; empty means ascending index. Variables missing
  // from the list are tried afterwards in ascending order.
  std::vector<std::size_t> fixed_order;
  std::uint64_t seed = 0;
  IntVec direction;  // kConstraint only; used at the root
  std::uint64_t node_limit = 1000000;
  std::uint64_t depth_limit = std::numeric_limits<std::uint64_t>::max();
  bool record_trace = false;

  static BranchStrategy ascending();
  static BranchStrategy descending(std::size_t n);
  static BranchStrategy most_fractional();
  static BranchStrategy random(std::uint64_t seed);
  static BranchStrategy constraint(const IntVec& d);
};

enum class BnbStatus { kInfeasible, kFeasible, kOptimal, kNodeLimit, kUnbounded };
const char* to_string(BnbStatus s);

struct TraceLine {
  std::uint64_t node = 0;
  std::uint64_t depth = 0;
  std::string fixing;  // bound changes along the path, e.g. "x1<=0,x3>=1"
  LpStatus lp = LpStatus::kInfeasible;
  std::string decision;  // "x2" / "d=t" children, "integral", "pruned", "-"
};

struct BnbReport {
  BnbStatus status = BnbStatus::kInfeasible;
  IntVec point;                   // Feasible / Optimal / best incumbent on NodeLimit
  std::optional<Rational> value;  // objective value of point
  std::uint64_t nodes_total = 0;
  std::uint64_t nodes_lp_feasible = 0;
  std::uint64_t max_depth = 0;
  std::vector<TraceLine> trace;
};

// Depth-first exact branch-and-bound, down child first. Without an
// objective it stops at the first integral point.
BnbReport solve(const IpInstance& inst, const BranchStrategy& strategy,
                const std::optional<Objective>& objective = std::nullopt);

// Exact check that x integral satisfies lo <= Ax <= hi.
bool satisfies(const IpInstance& inst, const IntVec& x);

// max(a,p,k,u) < beta1 <= beta2 < min(a,p,k+1,u).
bool split_condition(const IntVec& a, const Integer& beta1, const Integer& beta2,
                     const UpperBounds& u, const IntVec& p, const Integer& k);
// inst must be knapsack form: row 0 = a with both bounds, then rows e_i with
// lo = 0 and hi = u_i or infinite. Throws ShapeMismatch otherwise.
bool check_split_certificate(const IpInstance& inst, const IntVec& p, const Integer& k);

struct KnapsackForm {
  IntVec a;
  Integer beta1, beta2;
  UpperBounds u;
};
KnapsackForm knapsack_form(const IpInstance& inst);

// k = floor(max px) when no integer lies in the LP range of px.
std::optional<Integer> prove_by_constraint(const IpInstance& inst, const IntVec& p);

std::string format_trace(const std::vector<TraceLine>& trace);

}  // namespace dkplab
