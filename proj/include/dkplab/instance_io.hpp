#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dkplab/lattice.hpp"
#include "dkplab/lp.hpp"

namespace dkplab {

// Text formats, one keyword per line, base-10 exact numbers:
//
//   dkp-instance v1            ip-instance v1
//   name <rest of line>        name <rest of line>
//   form ineq|eq               n <cols>
//   n <cols>                   m <rows>
//   a <n ints>                 A
//   beta <int>  (eq)           <m rows of n ints>
//   beta1 <int> (ineq)         lo <m rationals or -inf>
//   beta2 <int> (ineq)         hi <m rationals or inf>
//   u <n ints or inf>
//
// Both may end with `objective min|max <n ints>` and the provenance lines
// `p`, `r`, `M`, `k`. Knapsack-form instances are written as dkp-instance.
std::string write_instance(const IpInstance& inst);
IpInstance read_instance(const std::string& text);

IpInstance load_instance(const std::string& path);
void save_instance(const std::string& path, const IpInstance& inst);

enum class ReformMethod { kRangespace, kAhl };

struct ReformBundle {
  ReformMethod method = ReformMethod::kRangespace;
  ReductionMethod reduction = ReductionMethod::kLll;
  IntMat u;  // rangespace
  IntMat v;  // ahl
  IntMat v_star;
  IntVec x_b;
  std::vector<std::size_t> eq_rows;
  std::vector<std::size_t> kept_rows;
  std::optional<IntVec> x_r;  // set when the rhs was reduced afterwards
  IpInstance instance;        // reformulated
};

// reform-bundle v1 header, method/reduction lines, matrix blocks, then the
// reformulated instance after an `instance` line.
std::string write_bundle(const ReformBundle& b);
ReformBundle read_bundle(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace dkplab
