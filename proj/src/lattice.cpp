#include "dkplab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <utility>

#include "dkplab/error.hpp"

namespace dkplab {

namespace {

// Columns under unimodular column operations, with the transform U kept as
// columns and U^{-1} kept as rows so that each operation is O(n).
class Workspace {
 public:
  Workspace(const IntMat& basis)  // NOLINT
      : cols_(basis.column_list()), dim_(basis.rows()) {
    const std::size_t n = basis.cols();
    u_.assign(n, IntVec(n));
    uinv_.assign(n, IntVec(n));
    for (std::size_t i = 0; i < n; ++i) {
      u_[i][i] = 1;
      uinv_[i][i] = 1;
    }
  }

  std::size_t size() const { return cols_.size(); }
  const IntVec& col(std::size_t i) const { return cols_[i]; }

  // col[dst] += q * col[src]
  void addmul(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < dim_; ++r) cols_[dst][r] += q * cols_[src][r];
    for (std::size_t r = 0; r < u_[dst].size(); ++r) u_[dst][r] += q * u_[src][r];
    for (std::size_t c = 0; c < uinv_[src].size(); ++c) uinv_[src][c] -= q * uinv_[dst][c];
  }

  void swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(cols_[i], cols_[j]);
    std::swap(u_[i], u_[j]);
    std::swap(uinv_[i], uinv_[j]);
  }

  void negate(std::size_t i) {
    for (auto& x : cols_[i]) x = -x;
    for (auto& x : u_[i]) x = -x;
    for (auto& x : uinv_[i]) x = -x;
  }

  void normalize_signs() {
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      for (const auto& x : cols_[j]) {
        if (x == 0) continue;
        if (x < 0) negate(j);
        break;
      }
    }
  }

  IntMat basis() const { return IntMat::from_columns(cols_, dim_); }
  IntMat transform() const { return IntMat::from_columns(u_, cols_.size()); }
  IntMat inverse() const { return IntMat::from_rows(uinv_, cols_.size()); }
  Reduction result() const { return {basis(), transform(), inverse()}; }

 private:
  std::vector<IntVec> cols_;
  std::size_t dim_;
  std::vector<IntVec> u_;
  std::vector<IntVec> uinv_;
};

Integer exact_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Integral LLL in the style of de Weger / Cohen: all Gram-Schmidt data is
// kept as integers d_i and lambda_ij. Positions below `frozen` are never
// swapped; with frozen == n this is plain size reduction.
void lll_integral(Workspace& ws, const Rational& delta, std::size_t frozen) {
  const std::size_t n = ws.size();
  if (n == 0) return;
  const Integer& dp = delta.get_num();
  const Integer& dq = delta.get_den();

  std::vector<Integer> d(n + 1);
  std::vector<IntVec> lam(n + 1, IntVec(n + 1));
  d[0] = 1;
  d[1] = dot(ws.col(0), ws.col(0));
  if (d[1] == 0) throw Error(ErrorKind::kDependentColumns, "zero basis vector");

  auto red = [&](std::size_t k, std::size_t l) {
    Integer twice = 2 * lam[k][l];
    if (abs(twice) <= d[l]) return;
    Integer num = twice + d[l];
    Integer den = 2 * d[l];
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    ws.addmul(k - 1, l - 1, -q);
    lam[k][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
  };

  auto swap_k = [&](std::size_t k, std::size_t kmax) {
    ws.swap(k - 1, k - 2);
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
    Integer l = lam[k][k - 1];
    Integer b = exact_div(d[k - 2] * d[k] + l * l, d[k - 1]);
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      Integer t = lam[i][k];
      lam[i][k] = exact_div(d[k] * lam[i][k - 1] - l * t, d[k - 1]);
      lam[i][k - 1] = exact_div(b * t + l * lam[i][k], d[k]);
    }
    d[k - 1] = b;
  };

  std::size_t k = 2;
  std::size_t kmax = 1;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = dot(ws.col(k - 1), ws.col(j - 1));
        for (std::size_t i = 1; i < j; ++i) {
          u = exact_div(d[i] * u - lam[k][i] * lam[j][i], d[i - 1]);
        }
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k] = u;
        }
      }
      if (d[k] == 0) throw Error(ErrorKind::kDependentColumns, "basis columns are dependent");
    }
    red(k, k - 1);
    bool may_swap = k >= frozen + 2;
    if (may_swap && dq * d[k] * d[k - 2] < dp * d[k - 1] * d[k - 1] - dq * lam[k][k - 1] * lam[k][k - 1]) {
      swap_k(k, kmax);
      k = std::max<std::size_t>(2, k - 1);
    } else {
      for (std::size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
    }
  }
}

using LeafFn = std::function<void(const IntVec& x, const Rational& norm, Rational& radius)>;

// Fincke-Pohst enumeration of sum_{j>=lo} x_j b_j projected away from
// b_0..b_{lo-1}, over all x with last nonzero entry positive and projected
// squared norm <= radius. The leaf callback may shrink the radius.
class Enumerator {
 public:
  Enumerator(const GramSchmidt& gs, std::size_t lo, Rational radius, LeafFn leaf)
      : gs_(gs), lo_(lo), radius_(std::move(radius)), leaf_(std::move(leaf)),
        x_(gs.norms.size()) {}

  void run() {
    if (x_.empty() || lo_ >= x_.size()) return;
    level(x_.size() - 1, Rational(0), true);
  }

 private:
  void level(std::size_t j, const Rational& partial, bool zero_above) {
    Rational center = 0;
    for (std::size_t l = j + 1; l < x_.size(); ++l) {
      if (x_[l] != 0) center -= gs_.mu[l][j] * Rational(x_[l]);
    }
    const Rational& bj = gs_.norms[j];
    Integer start = round_half_up(center);
    for (int dir = 0; dir < 2; ++dir) {
      Integer x = dir == 0 ? start : Integer(start - 1);
      for (;; x += (dir == 0 ? 1 : -1)) {
        if (zero_above && x < 0) break;
        Rational diff = Rational(x) - center;
        Rational val = diff * diff * bj;
        if (val > radius_ - partial) break;
        x_[j] = x;
        Rational next = partial + val;
        if (j == lo_) {
          if (!(zero_above && x == 0)) leaf_(x_, next, radius_);
        } else {
          level(j - 1, next, zero_above && x == 0);
        }
      }
    }
    x_[j] = 0;
  }

  const GramSchmidt& gs_;
  std::size_t lo_;
  Rational radius_;
  LeafFn leaf_;
  IntVec x_;
};

GramSchmidt gram_schmidt_cols(const std::vector<IntVec>& cols) {
  GramSchmidt gs;
  const std::size_t n = cols.size();
  gs.ortho.resize(n);
  gs.mu.assign(n, RatVec(n));
  gs.norms.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    RatVec v = to_rational(cols[i]);
    for (std::size_t j = 0; j < i; ++j) {
      Rational m = dot(cols[i], gs.ortho[j]) / gs.norms[j];
      gs.mu[i][j] = m;
      if (m != 0) {
        for (std::size_t r = 0; r < v.size(); ++r) v[r] -= m * gs.ortho[j][r];
      }
    }
    gs.norms[i] = dot(v, v);
    if (gs.norms[i] == 0) throw Error(ErrorKind::kDependentColumns, "basis columns are dependent");
    gs.ortho[i] = std::move(v);
  }
  return gs;
}

void check_delta(const Rational& delta) {
  if (delta <= Rational(1, 4) || delta > 1) {
    throw Error(ErrorKind::kUnsupported, "LLL delta must lie in (1/4, 1]");
  }
}

// Replaces the columns lo..n-1 by a basis of the same lattice whose first
// vector is sum_j x_j col_j. Requires gcd(x_lo..x_{n-1}) = 1.
void insert_primitive(Workspace& ws, std::size_t lo, IntVec x) {
  const std::size_t n = ws.size();
  for (;;) {
    std::size_t piv = n;
    std::size_t nonzero = 0;
    for (std::size_t j = lo; j < n; ++j) {
      if (x[j] == 0) continue;
      ++nonzero;
      if (piv == n || abs(x[j]) < abs(x[piv])) piv = j;
    }
    if (piv == n) throw Error(ErrorKind::kDependentColumns, "zero coefficient vector");
    if (nonzero == 1) {
      if (x[piv] == -1) {
        ws.negate(piv);
        x[piv] = 1;
      }
      if (x[piv] != 1) throw Error(ErrorKind::kDependentColumns, "coefficient vector not primitive");
      ws.swap(piv, lo);
      return;
    }
    for (std::size_t j = lo; j < n; ++j) {
      if (j == piv || x[j] == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), x[j].get_mpz_t(), x[piv].get_mpz_t());
      x[j] -= q * x[piv];
      ws.addmul(piv, j, q);
    }
  }
}

std::vector<IntVec> cols_of(const Workspace& ws) {
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < ws.size(); ++i) out.push_back(ws.col(i));
  return out;
}

}  // namespace

GramSchmidt gram_schmidt(const IntMat& basis) { return gram_schmidt_cols(basis.column_list()); }

std::size_t default_enum_cap() {
  const char* env = std::getenv("DKPLAB_ENUM_CAP");
  if (env != nullptr) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 12;
}

Rational ReductionProfile::cn_squared(std::size_t n) const {
  if (method == ReductionMethod::kKz) return Rational(static_cast<long>(n));
  Integer p = 1;
  for (std::size_t i = 1; i < n; ++i) p *= 2;
  return Rational(p);
}

Reduction lll_reduce(const IntMat& basis, const Rational& delta) {
  check_delta(delta);
  Workspace ws(basis);
  lll_integral(ws, delta, 0);
  ws.normalize_signs();
  return ws.result();
}

Reduction kz_reduce(const IntMat& basis, std::size_t cap) {
  const std::size_t n = basis.cols();
  if (n > cap) {
    throw Error(ErrorKind::kDimensionCap,
                "KZ reduction limited to " + std::to_string(cap) + " columns");
  }
  Workspace ws(basis);
  const Rational delta(3, 4);
  lll_integral(ws, delta, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (i > 0) lll_integral(ws, delta, i);
    GramSchmidt gs = gram_schmidt_cols(cols_of(ws));
    IntVec best;
    Rational best_norm;
    Enumerator en(gs, i, gs.norms[i], [&](const IntVec& x, const Rational& norm, Rational& radius) {
      if (best.empty() || norm < best_norm) {
        best = x;
        best_norm = norm;
        radius = norm;
      }
    });
    en.run();
    if (best.empty() || best_norm >= gs.norms[i]) continue;
    insert_primitive(ws, i, best);
  }
  lll_integral(ws, delta, n);  // size reduction only
  ws.normalize_signs();
  return ws.result();
}

Reduction reduce(const IntMat& basis, const ReductionProfile& profile) {
  if (profile.method == ReductionMethod::kKz) return kz_reduce(basis, profile.enum_cap);
  return lll_reduce(basis, profile.delta);
}

bool is_size_reduced(const IntMat& basis) {
  GramSchmidt gs = gram_schmidt(basis);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < gs.mu.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(gs.mu[i][j]) > half) return false;
    }
  return true;
}

bool is_lll_reduced(const IntMat& basis, const Rational& delta) {
  if (!is_size_reduced(basis)) return false;
  GramSchmidt gs = gram_schmidt(basis);
  for (std::size_t i = 1; i < gs.norms.size(); ++i) {
    const Rational& m = gs.mu[i][i - 1];
    // |mu b*_{i-1} + b*_i|^2 = mu^2 |b*_{i-1}|^2 + |b*_i|^2
    if (m * m * gs.norms[i - 1] + gs.norms[i] < delta * gs.norms[i - 1]) return false;
  }
  return true;
}

ShortestVector shortest_vector(const IntMat& basis, std::size_t cap) {
  const std::size_t n = basis.cols();
  if (n > cap) {
    throw Error(ErrorKind::kDimensionCap,
                "enumeration limited to " + std::to_string(cap) + " columns");
  }
  Reduction red = lll_reduce(basis);
  GramSchmidt gs = gram_schmidt(red.basis);
  ShortestVector best;
  bool have = false;
  Enumerator en(gs, 0, gs.norms[0], [&](const IntVec& x, const Rational& norm, Rational& radius) {
    Integer nz = norm.get_num();
    if (have && nz > best.norm_squared) return;
    IntVec v = red.basis * x;
    IntVec coeff = red.transform * x;
    for (const auto& e : v) {
      if (e == 0) continue;
      if (e < 0) {
        for (auto& t : v) t = -t;
        for (auto& t : coeff) t = -t;
      }
      break;
    }
    if (have && nz == best.norm_squared && !(coeff < best.coefficients)) return;
    best = {v, coeff, nz};
    have = true;
    radius = norm;
  });
  en.run();
  return best;
}

IntVec babai_nearest(const IntMat& basis, const RatVec& target) {
  if (target.size() != basis.rows()) throw Error(ErrorKind::kShapeMismatch, "Babai target length");
  GramSchmidt gs = gram_schmidt(basis);
  const std::size_t n = basis.cols();
  RatVec t = target;
  IntVec x(n);
  for (std::size_t j = n; j-- > 0;) {
    Rational c = dot(t, gs.ortho[j]) / gs.norms[j];
    x[j] = round_half_up(c);
    if (x[j] == 0) continue;
    for (std::size_t r = 0; r < t.size(); ++r) t[r] -= Rational(x[j] * basis(r, j));
  }
  return x;
}

IntVec babai_nearest(const IntMat& basis, const IntVec& target) {
  return babai_nearest(basis, to_rational(target));
}

namespace {

// Column-style Hermite reduction. Each pivot row gets a positive entry in
// the next pivot column, zeros to its right, and entries to its left reduced
// modulo the pivot. Returns the pivot rows.
std::vector<std::size_t> column_echelon(Workspace& ws, std::size_t rows, bool full_row_rank) {
  const std::size_t n = ws.size();
  std::vector<std::size_t> pivot_rows;
  std::size_t i = 0;
  for (std::size_t r = 0; r < rows && i < n; ++r) {
    bool skipped = false;
    for (;;) {
      std::size_t piv = n;
      for (std::size_t c = i; c < n; ++c) {
        const Integer& e = ws.col(c)[r];
        if (e != 0 && (piv == n || abs(e) < abs(ws.col(piv)[r]))) piv = c;
      }
      if (piv == n) {
        if (full_row_rank) throw Error(ErrorKind::kRankDeficient, "rows are linearly dependent");
        skipped = true;
        break;
      }
      ws.swap(i, piv);
      bool done = true;
      for (std::size_t c = i + 1; c < n; ++c) {
        if (ws.col(c)[r] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), ws.col(c)[r].get_mpz_t(), ws.col(i)[r].get_mpz_t());
        ws.addmul(c, i, -q);
        if (ws.col(c)[r] != 0) done = false;
      }
      if (done) break;
    }
    if (skipped) continue;
    if (ws.col(i)[r] < 0) ws.negate(i);
    for (std::size_t j = 0; j < i; ++j) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), ws.col(j)[r].get_mpz_t(), ws.col(i)[r].get_mpz_t());
      ws.addmul(j, i, -q);
    }
    pivot_rows.push_back(r);
    ++i;
  }
  if (full_row_rank && i < rows) throw Error(ErrorKind::kRankDeficient, "more rows than columns");
  return pivot_rows;
}

}  // namespace

Hnf hnf(const IntMat& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m > n) throw Error(ErrorKind::kRankDeficient, "more rows than columns");
  Workspace ws(a);
  column_echelon(ws, m, true);
  Hnf out;
  IntMat au = ws.basis();
  out.h = au.column_range(0, m);
  out.u = ws.transform();
  out.u_inverse = ws.inverse();
  out.w = out.u.column_range(0, m);
  out.v = out.u.column_range(m, n);
  return out;
}

IntMat lattice_hnf(const IntMat& basis) {
  Workspace ws(basis);
  std::size_t rank = column_echelon(ws, basis.rows(), false).size();
  return ws.basis().column_range(0, rank);
}

IntMat kernel_basis(const IntMat& a) { return hnf(a).v; }

IntMat dual_basis(const IntMat& a) {
  Hnf h = hnf(a);
  return h.u_inverse.row_range(a.rows(), a.cols());
}

SuccessiveMinima successive_minima_bruteforce(const IntMat& basis, std::size_t k,
                                              long coeff_bound) {
  const std::size_t n = basis.cols();
  if (n > 8 || coeff_bound > 20 || coeff_bound < 1) {
    throw Error(ErrorKind::kDimensionCap, "brute force needs cols <= 8 and 1 <= bound <= 20");
  }
  double boxes = std::pow(2.0 * static_cast<double>(coeff_bound) + 1.0, static_cast<double>(n));
  if (boxes > 2e6) throw Error(ErrorKind::kDimensionCap, "coefficient box too large");
  if (k > n) throw Error(ErrorKind::kBadDimension, "k exceeds the lattice rank");

  struct Cand {
    Integer norm;
    IntVec x;
  };
  std::vector<Cand> cands;
  IntVec x(n, Integer(-coeff_bound));
  for (;;) {
    // keep one of each +/- pair: first nonzero coefficient positive
    std::size_t f = 0;
    while (f < n && x[f] == 0) ++f;
    if (f < n && x[f] > 0) cands.push_back({norm_squared(basis * x), x});
    std::size_t i = 0;
    while (i < n && x[i] == coeff_bound) {
      x[i] = -coeff_bound;
      ++i;
    }
    if (i == n) break;
    x[i] += 1;
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.x < b.x;
  });

  SuccessiveMinima out;
  std::vector<RatVec> echelon;  // rows in reduced form with pivot columns
  std::vector<std::size_t> pivots;
  for (const auto& c : cands) {
    if (out.values.size() == k) break;
    RatVec v = to_rational(basis * c.x);
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Rational f = v[pivots[e]];
      if (f == 0) continue;
      for (std::size_t r = 0; r < v.size(); ++r) v[r] -= f * echelon[e][r];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) continue;
    Rational s = v[p];
    for (auto& t : v) t /= s;
    for (auto& row : echelon) {
      Rational f = row[p];
      if (f == 0) continue;
      for (std::size_t r = 0; r < v.size(); ++r) row[r] -= f * v[r];
    }
    echelon.push_back(std::move(v));
    pivots.push_back(p);
    out.values.emplace_back(c.norm);
    out.witnesses.push_back(basis * c.x);
  }
  if (out.values.size() < k) {
    throw Error(ErrorKind::kDimensionCap, "box too small to find k independent vectors");
  }
  return out;
}

bool exceeds_radicals(const Integer& m, const Rational& a, const Rational& u, const Rational& b,
                      const Rational& v) {
  const Rational mq(m);
  // m > a sqrt(u)
  if (mq <= 0) return false;
  const Rational a2u = a * a * u;
  if (mq * mq <= a2u) return false;
  // (m - a sqrt u)^2 > b^2 v  <=>  m^2 + a^2 u - b^2 v > 2 m a sqrt(u)
  const Rational lhs = mq * mq + a2u - b * b * v;
  if (lhs <= 0) return false;
  return lhs * lhs > 4 * mq * mq * a2u;
}

Integer smallest_integer_above(const Rational& a, const Rational& u, const Rational& b,
                               const Rational& v) {
  const double approx = a.get_d() * std::sqrt(u.get_d()) + b.get_d() * std::sqrt(v.get_d());
  Integer m(std::floor(approx));
  m -= 2;
  while (exceeds_radicals(m, a, u, b, v)) m -= 1;
  while (!exceeds_radicals(m, a, u, b, v)) m += 1;
  return m;
}

}  // namespace dkplab
