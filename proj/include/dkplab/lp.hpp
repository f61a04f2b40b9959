#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dkplab/int_matrix.hpp"
#include "dkplab/numeric.hpp"

namespace dkplab {

enum class Sense { kMax, kMin };

struct Objective {
  IntVec c;
  Sense sense = Sense::kMin;
  bool operator==(const Objective&) const = default;
};

// Generator data recorded for instances built as a = pM + r.
struct Provenance {
  IntVec p;
  IntVec r;
  Integer m;
  Integer k;
  bool operator==(const Provenance&) const = default;
};

// lo <= A x <= hi over integer x; nullopt bounds are infinite. Variable
// bounds are ordinary rows.
struct IpInstance {
  IntMat a;
  std::vector<OptRational> lo;
  std::vector<OptRational> hi;
  std::optional<Objective> objective;
  std::string name;
  std::optional<Provenance> provenance;

  std::size_t rows() const { return a.rows(); }
  std::size_t cols() const { return a.cols(); }
  // Throws ShapeMismatch or BadDimension when the invariants fail.
  void validate() const;
  bool operator==(const IpInstance&) const = default;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
const char* to_string(LpStatus s);

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  RatVec point;
};

// Solver-level model. Rows with a single nonzero are folded into variable
// bounds by from_instance; branch-and-bound tightens those bounds and may
// append equality rows.
struct LpModel {
  std::size_t num_vars = 0;
  std::vector<IntVec> rows;
  std::vector<OptRational> row_lo, row_hi;
  std::vector<OptRational> var_lo, var_hi;
  bool trivially_infeasible = false;

  static LpModel from_instance(const IpInstance& inst);
  void tighten_upper(std::size_t j, const Rational& v);
  void tighten_lower(std::size_t j, const Rational& v);
  void add_row(const IntVec& row, const OptRational& lo, const OptRational& hi);
};

// Two-phase bounded-variable primal simplex with Bland's rule, exact.
// A null objective returns the first feasible vertex.
LpOutcome solve_lp(const LpModel& model, const IntVec& c, Sense sense);
LpOutcome lp_optimize(const IpInstance& inst, const IntVec& c, Sense sense);

struct WidthReport {
  IntVec direction;
  bool feasible = true;  // false when the LP relaxation is empty
  Extended max;
  Extended min;
  Extended width;
  std::optional<Integer> iwidth;  // nullopt means +infinity

  bool bounded() const { return max.finite() && min.finite(); }
};

WidthReport width(const IpInstance& inst, const IntVec& c);
WidthReport width(const LpModel& model, const IntVec& c);
// Throws UnboundedWidth if either extreme is infinite.
Integer iwidth(const IpInstance& inst, const IntVec& c);
// floor(max) - ceil(min) + 1, clamped at 0.
Integer integer_width(const Rational& max, const Rational& min);

// Upper bounds u_i; nullopt means +infinity.
using UpperBounds = std::vector<std::optional<Integer>>;

// max{fx | px <= l, 0 <= x <= u} or min{fx | px >= l, 0 <= x <= u};
// an empty feasible set gives -inf for max and +inf for min.
Extended knapsack_extreme(const IntVec& f, const IntVec& p, const Integer& l, const UpperBounds& u,
                          Sense sense);
// Same value through the general LP, used to cross-check the greedy path.
Extended knapsack_extreme_lp(const IntVec& f, const IntVec& p, const Integer& l,
                             const UpperBounds& u, Sense sense);

struct KpeqWidths {
  Rational width_p;
  RatVec width_e;
};

KpeqWidths kpeq_width_closed_form(const IntVec& p, const IntVec& r, const Integer& m,
                                  const Integer& beta);

// Checks that r_i/p_i is nondecreasing. Throws AssumptionViolated if not.
void require_ratio_order(const IntVec& p, const IntVec& r);

}  // namespace dkplab
