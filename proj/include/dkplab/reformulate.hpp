#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "dkplab/int_matrix.hpp"
#include "dkplab/lattice.hpp"
#include "dkplab/lp.hpp"

namespace dkplab {

// x = U y. inst_new has rows A U with the original bounds.
struct RangespaceReform {
  IntMat u;
  IntMat u_inverse;
  IpInstance inst_new;
  ReductionProfile profile;
};

RangespaceReform rangespace(const IpInstance& inst,
                            const ReductionProfile& profile = ReductionProfile::lll());

// x = V lambda + x_b over the equality rows; inst_new holds the remaining
// rows as (a_i V) lambda within [lo_i - a_i x_b, hi_i - a_i x_b].
struct AhlReform {
  IntMat v;       // n x (n - m), columns reduced
  IntMat v_star;  // (n - m) x n with V* V = I
  IntVec x_b;
  std::vector<std::size_t> eq_rows;
  std::vector<std::size_t> kept_rows;  // original index of each row of inst_new
  IpInstance inst_new;
  ReductionProfile profile;

  // Same reform with another particular solution of the equality block.
  AhlReform rebase(const IpInstance& original, const IntVec& new_xb) const;
  IntVec lift(const IntVec& lambda) const;  // V lambda + x_b
};

// The equality block has no integer solution: y A_1 is integral while
// y b_1 is not.
struct NoIntegerSolution {
  RatVec multiplier;  // one entry per equality row
  Rational value;     // y b_1
  bool verify(const IpInstance& inst, const std::vector<std::size_t>& eq_rows) const;
};

using AhlResult = std::variant<AhlReform, NoIntegerSolution>;

// Rows whose bounds are equal and finite.
std::vector<std::size_t> equality_rows(const IpInstance& inst);

AhlResult ahl(const IpInstance& inst, const std::vector<std::size_t>& eq_rows,
              const ReductionProfile& profile = ReductionProfile::lll());
AhlResult ahl(const IpInstance& inst, const ReductionProfile& profile = ReductionProfile::lll());

// Shifted instance: y feasible for inst_new iff y + x_r feasible for the input.
struct RhsShift {
  IpInstance inst_new;
  IntVec x_r;
};

RhsShift rhs_reduce(const IpInstance& inst, const ReductionProfile& profile = ReductionProfile::lll());

struct OptReform {
  IntVec c_new;  // c U
  RangespaceReform reform;
};

// Reduces the columns of (c; A) and carries c along as the new objective.
OptReform direct_opt_reform(const IntVec& c, const IpInstance& inst, Sense sense = Sense::kMax,
                            const ReductionProfile& profile = ReductionProfile::lll());

enum class MapWhich { kForward, kReverse };

// Forward: c -> c U. Reverse is not defined for rangespace reforms.
IntVec map_direction(const RangespaceReform& reform, const IntVec& c, MapWhich which = MapWhich::kForward);
// Forward: c -> c V; reverse: d -> d V*.
IntVec map_direction(const AhlReform& reform, const IntVec& c, MapWhich which);

}  // namespace dkplab
