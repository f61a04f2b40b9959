#pragma once

#include <cstddef>
#include <vector>

#include "dkplab/int_matrix.hpp"
#include "dkplab/numeric.hpp"

namespace dkplab {

// Gram-Schmidt data of the columns b_1..b_n of a basis.
// mu(i, j) is defined for j < i; norms[i] is |b_i*|^2.
struct GramSchmidt {
  std::vector<RatVec> ortho;  // b_i* as rational vectors
  std::vector<RatVec> mu;     // mu[i][j], j < i
  RatVec norms;
};

GramSchmidt gram_schmidt(const IntMat& basis);

enum class ReductionMethod { kLll, kKz };

std::size_t default_enum_cap();  // 12 unless DKPLAB_ENUM_CAP is set

struct ReductionProfile {
  ReductionMethod method = ReductionMethod::kLll;
  Rational delta = Rational(3, 4);
  std::size_t enum_cap = default_enum_cap();

  static ReductionProfile lll() { return {}; }
  static ReductionProfile kz() {
    ReductionProfile p;
    p.method = ReductionMethod::kKz;
    return p;
  }

  // Square of the reduction factor c_n: 2^(n-1) for LLL, n for KZ.
  Rational cn_squared(std::size_t n) const;
};

struct Reduction {
  IntMat basis;      // B * transform
  IntMat transform;  // unimodular U
  IntMat inverse;    // U^{-1}
};

Reduction lll_reduce(const IntMat& basis, const Rational& delta = Rational(3, 4));
Reduction kz_reduce(const IntMat& basis, std::size_t cap = default_enum_cap());
Reduction reduce(const IntMat& basis, const ReductionProfile& profile);

bool is_size_reduced(const IntMat& basis);
bool is_lll_reduced(const IntMat& basis, const Rational& delta = Rational(3, 4));

struct ShortestVector {
  IntVec vector;
  IntVec coefficients;  // with respect to the input basis
  Integer norm_squared;
};

ShortestVector shortest_vector(const IntMat& basis, std::size_t cap = default_enum_cap());

// Coefficients x of the Babai nearest-plane vector Bx for the target.
IntVec babai_nearest(const IntMat& basis, const RatVec& target);
IntVec babai_nearest(const IntMat& basis, const IntVec& target);

struct Hnf {
  IntMat h;  // m x m lower triangular, positive diagonal, reduced left of it
  IntMat u;  // n x n unimodular, A u = [h, 0]
  IntMat u_inverse;
  IntMat w;  // first m columns of u
  IntMat v;  // last n - m columns of u: a basis of the kernel
};

Hnf hnf(const IntMat& a);
IntMat kernel_basis(const IntMat& a);
// Canonical (Hermite) generator matrix of the lattice spanned by the columns;
// two bases span the same lattice iff these agree.
IntMat lattice_hnf(const IntMat& basis);
// Rows V* with V* V = I for the kernel basis V returned by hnf.
IntMat dual_basis(const IntMat& a);

struct SuccessiveMinima {
  RatVec values;  // squared norms Lambda_1^2 .. Lambda_k^2
  std::vector<IntVec> witnesses;
};

// Exhaustive search over coefficient vectors in [-bound, bound]^n. The values
// are certified only relative to that box.
SuccessiveMinima successive_minima_bruteforce(const IntMat& basis, std::size_t k,
                                              long coeff_bound);

// Exact test of M > a*sqrt(u) + b*sqrt(v) for nonnegative a, u, b, v.
bool exceeds_radicals(const Integer& m, const Rational& a, const Rational& u,
                      const Rational& b = 0, const Rational& v = 0);
// Smallest integer M with M > a*sqrt(u) + b*sqrt(v).
Integer smallest_integer_above(const Rational& a, const Rational& u, const Rational& b = 0,
                               const Rational& v = 0);

}  // namespace dkplab
