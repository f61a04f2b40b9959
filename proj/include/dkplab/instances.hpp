#pragma once

#include <optional>
#include <string>
#include <utility>

#include "dkplab/int_matrix.hpp"
#include "dkplab/lp.hpp"
#include "dkplab/numeric.hpp"

namespace dkplab {

// Decomposable knapsack a = pM + r with rhs interval [beta1, beta2].
// Equality form has beta1 == beta2 and u all infinite.
struct DkpParams {
  IntVec p;
  IntVec r;
  Integer m;
  Integer k;
  UpperBounds u;
  Integer beta1;
  Integer beta2;
  bool equality = false;

  IntVec a() const;
  RatVec ratios() const;  // r_i / p_i
};

struct SplitCertificate {
  IntVec p;
  Integer k;
};

// Knapsack-form instance: row 0 is a with [beta1, beta2], then one row per
// variable with 0 <= x_i <= u_i.
IpInstance to_instance(const DkpParams& params, const std::string& name = "dkp");

Integer ell(const IntVec& p, const Integer& k);

enum class BetaPolicy { kWidest, kTightLow, kExplicit };

struct RecipeOptions {
  std::optional<Integer> m;
  // Unset means widest for recipe1 and tight-low for recipe2.
  std::optional<BetaPolicy> policy;
  std::optional<Integer> beta1;  // kExplicit only
  std::optional<Integer> beta2;
};

// Open interval for beta for a given M.
std::pair<Extended, Extended> recipe1_interval(const IntVec& p, const IntVec& r,
                                               const UpperBounds& u, const Integer& k,
                                               const Integer& m);
std::pair<Rational, Rational> recipe2_interval(const IntVec& p, const IntVec& r, const Integer& k,
                                               const Integer& m);

DkpParams recipe1(const IntVec& p, const IntVec& r, const UpperBounds& u, const Integer& k,
                  const RecipeOptions& opts = {});
DkpParams recipe2(const IntVec& p, const IntVec& r, const Integer& k,
                  const RecipeOptions& opts = {});

enum class Family { kJeroslow, kTodd, kAvis, kReverseAvis, kExample1, kExample2, kNtFamily };

std::optional<Family> parse_family(const std::string& s);
const char* to_string(Family f);

struct FamilyArgs {
  long n = 0;
  long t = 2;          // nt_family exponent
  bool slack = false;  // example2: add x_{n+1} in [-1/2, 1/2]
};

IpInstance named_instance(Family family, const FamilyArgs& args);
// DKP view of the families built by Recipe 1 or 2 (not example2 with slack).
DkpParams named_params(Family family, const FamilyArgs& args);

Integer f_m_delta(const IntVec& p, const IntVec& r, const Integer& m, const Integer& delta);
std::pair<Rational, Rational> frob_branching_range(const IntVec& p, const IntVec& r,
                                                   const Integer& m);
std::pair<Rational, Rational> frob_p_bounds(const IntVec& p, const IntVec& r, const Integer& m);
// j and k are 0-based indices of the largest and smallest ratio r_i/p_i.
Rational al_frob_lower(const IntVec& p, const IntVec& r, const Integer& m, std::size_t j,
                       std::size_t k);
Integer frobenius_bruteforce(const IntVec& a);

Integer binomial(const Integer& n, unsigned long k);
Integer node_lower_bound(const DkpParams& params);

struct AlExample1 {
  IntVec p, r, a, v;
  Integer m;
  IntMat b;
  bool b_lll_reduced = false;
  bool bv_unimodular = false;
  bool ab_zero = false;
  IntVec pb;
};

AlExample1 al_example1();

struct AlExample2 {
  Rational rho;
  std::size_t n = 0;
  Integer scale;
  IntMat b;        // integral, column i is scale * b_i (rounded if a scale was given)
  IpInstance q;    // 0 <= B lambda <= scale * e_n
  bool exact = true;
};

// Exact integral scaling when scale is omitted; otherwise entries are rounded.
AlExample2 al_example2(const Rational& rho, std::size_t n,
                       const std::optional<Integer>& scale = std::nullopt);

}  // namespace dkplab
