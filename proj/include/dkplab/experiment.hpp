#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dkplab/bnb.hpp"
#include "dkplab/lattice.hpp"
#include "dkplab/numeric.hpp"

namespace dkplab {

// t1: bounded DKPs with u = e; t2: the same with u = 10e; t3: KP-EQ with
// rhs beta* and Frob(a).
enum class Table { kT1, kT2, kT3 };

std::optional<Table> parse_table(const std::string& s);
const char* to_string(Table t);

struct ExperimentOptions {
  Table table = Table::kT1;
  long n = 10;
  int count = 5;
  std::uint64_t seed = 1;
  std::uint64_t node_limit = 200000;
  Integer m = 10000;
  bool allow_large = false;  // original-formulation runs above n = 24
  ReductionProfile profile;
};

// One B&B run in a table cell.
struct RunCount {
  std::uint64_t nodes = 0;
  std::uint64_t lp_feasible = 0;
  BnbStatus status = BnbStatus::kInfeasible;
  bool ran = false;

  bool limited() const { return status == BnbStatus::kNodeLimit; }
};

struct ExperimentRow {
  int index = 0;
  IntVec p, r, a;
  Integer k;
  Integer ell;  // t1/t2 only

  // t1/t2
  Integer beta1, beta2, beta_a;
  RunCount infeas_r, infeas_orig, infeas_px;
  RunCount opt_r, opt_orig;
  RunCount feasmax_r, feasmax_n, feasmax_orig;
  RunCount infmin_r, infmin_n, infmin_orig;

  // t3
  Integer beta_star;
  std::optional<Integer> frob;  // unset when gcd(a) > 1
  std::optional<Integer> iwidth_p;
  RunCount star_r, star_n, star_px, star_orig;
  RunCount frob_r, frob_n, frob_px, frob_orig;
};

struct ExperimentResult {
  ExperimentOptions options;
  std::vector<ExperimentRow> rows;
};

// Throws TooLarge for n > 24 unless allow_large is set.
ExperimentResult run_experiment(const ExperimentOptions& opts);

std::string csv_header(Table t);
std::string to_csv(const ExperimentResult& res);

}  // namespace dkplab
