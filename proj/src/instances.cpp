#include "dkplab/instances.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dkplab/bnb.hpp"
#include "dkplab/error.hpp"
#include "dkplab/lattice.hpp"

namespace dkplab {

IntVec DkpParams::a() const {
  IntVec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] * m + r[i];
  return out;
}

RatVec DkpParams::ratios() const {
  RatVec q;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational v(r[i], p[i]);
    v.canonicalize();
    q.push_back(v);
  }
  return q;
}

IpInstance to_instance(const DkpParams& params, const std::string& name) {
  const std::size_t n = params.p.size();
  IpInstance inst;
  inst.name = name;
  inst.a = IntMat(n + 1, n);
  inst.a.set_row(0, params.a());
  inst.lo.emplace_back(Rational(params.beta1));
  inst.hi.emplace_back(Rational(params.beta2));
  for (std::size_t i = 0; i < n; ++i) {
    inst.a(i + 1, i) = 1;
    inst.lo.emplace_back(Rational(0));
    const bool bounded = i < params.u.size() && params.u[i];
    inst.hi.push_back(bounded ? OptRational(Rational(*params.u[i])) : std::nullopt);
  }
  inst.provenance = Provenance{params.p, params.r, params.m, params.k};
  return inst;
}

Integer ell(const IntVec& p, const Integer& k) {
  for (const auto& x : p) {
    if (x <= 0) throw Error(ErrorKind::kAssumptionViolated, "p must be positive");
  }
  IntVec sorted = p;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const Integer total = std::accumulate(sorted.begin(), sorted.end(), Integer(0));
  if (k <= 0 || k >= total) return 0;
  Integer prefix = 0;
  long best = 0;
  for (std::size_t l = 1; l <= sorted.size(); ++l) {
    prefix += sorted[l - 1];
    if (prefix > k || total - prefix < k + 1) break;
    best = static_cast<long>(l);
  }
  return best;
}

namespace {

void require_positive_p(const IntVec& p, const IntVec& r) {
  if (p.empty() || p.size() != r.size()) throw Error(ErrorKind::kShapeMismatch, "p and r lengths");
  for (const auto& x : p) {
    if (x <= 0) throw Error(ErrorKind::kAssumptionViolated, "p must be positive");
  }
}

// Smallest M >= 1 with pM + r > 0.
Integer min_positive_m(const IntVec& p, const IntVec& r) {
  Integer m = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Integer need = floor_of(Rational(-r[i], p[i])) + 1;
    if (need > m) m = need;
  }
  return m;
}

bool a_positive(const IntVec& p, const IntVec& r, const Integer& m) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] * m + r[i] <= 0) return false;
  }
  return true;
}

// Integers strictly inside (lo, hi) as [first, last]; empty when first > last.
std::pair<Integer, Integer> open_integers(const Rational& lo, const Rational& hi) {
  return {floor_of(lo) + 1, ceil_of(hi) - 1};
}

void pick_betas(DkpParams& out, const Rational& lo, const Rational& hi, const RecipeOptions& opts,
                BetaPolicy fallback, bool widest_means_pair) {
  auto [first, last] = open_integers(lo, hi);
  if (first > last) {
    throw Error(ErrorKind::kEmptyInterval,
                "no integer strictly inside (" + to_string(lo) + ", " + to_string(hi) + ")");
  }
  switch (opts.policy.value_or(fallback)) {
    case BetaPolicy::kWidest:
      if (widest_means_pair) {
        out.beta1 = first;
        out.beta2 = last;
      } else {
        out.beta1 = out.beta2 = last;
      }
      break;
    case BetaPolicy::kTightLow:
      out.beta1 = out.beta2 = first;
      break;
    case BetaPolicy::kExplicit: {
      if (!opts.beta1) throw Error(ErrorKind::kEmptyInterval, "explicit policy needs beta");
      out.beta1 = *opts.beta1;
      out.beta2 = opts.beta2 ? *opts.beta2 : *opts.beta1;
      if (out.beta1 < first || out.beta2 > last || out.beta1 > out.beta2) {
        throw Error(ErrorKind::kEmptyInterval, "beta outside (" + to_string(lo) + ", " +
                                                   to_string(hi) + ") or beta1 > beta2");
      }
      break;
    }
  }
}

}  // namespace

std::pair<Extended, Extended> recipe1_interval(const IntVec& p, const IntVec& r,
                                               const UpperBounds& u, const Integer& k,
                                               const Integer& m) {
  Extended hi = knapsack_extreme(r, p, k, u, Sense::kMax);
  Extended lo = knapsack_extreme(r, p, k + 1, u, Sense::kMin);
  return {hi + Rational(k * m), lo + Rational((k + 1) * m)};
}

DkpParams recipe1(const IntVec& p, const IntVec& r, const UpperBounds& u, const Integer& k,
                  const RecipeOptions& opts) {
  require_positive_p(p, r);
  if (u.size() != p.size()) throw Error(ErrorKind::kShapeMismatch, "u length");
  bool pu_finite = true;
  Integer pu = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!u[i]) {
      pu_finite = false;
    } else {
      if (*u[i] <= 0) throw Error(ErrorKind::kAssumptionViolated, "u must be positive");
      pu += p[i] * *u[i];
    }
  }
  if (k < 0 || (pu_finite && k >= pu)) {
    throw Error(ErrorKind::kInvalidK, "need 0 <= k < pu, got k = " + to_string(k));
  }

  Extended rmax = knapsack_extreme(r, p, k, u, Sense::kMax);
  Extended rmin = knapsack_extreme(r, p, k + 1, u, Sense::kMin);
  if (!rmax.finite() || !rmin.finite()) {
    throw Error(ErrorKind::kEmptyInterval, "max(r,p,k,u) or min(r,p,k+1,u) is infinite");
  }

  DkpParams out;
  out.p = p;
  out.r = r;
  out.k = k;
  out.u = u;
  if (opts.m) {
    out.m = *opts.m;
    if (!a_positive(p, r, out.m)) throw Error(ErrorKind::kAssumptionViolated, "pM + r must be positive");
  } else {
    // The interval length grows by one per unit of M.
    Integer m = min_positive_m(p, r);
    Integer gap = floor_of(rmax.value() - rmin.value());
    if (gap > m) m = gap;
    for (;; ++m) {
      auto [first, last] = open_integers(rmax.value() + Rational(k * m),
                                         rmin.value() + Rational((k + 1) * m));
      if (first <= last) break;
    }
    out.m = m;
  }
  const Rational lo = rmax.value() + Rational(k * out.m);
  const Rational hi = rmin.value() + Rational((k + 1) * out.m);
  pick_betas(out, lo, hi, opts, BetaPolicy::kWidest, true);
  if (!split_condition(out.a(), out.beta1, out.beta2, u, p, k)) {
    throw std::logic_error("recipe 1 output fails the split certificate");
  }
  return out;
}

std::pair<Rational, Rational> recipe2_interval(const IntVec& p, const IntVec& r, const Integer& k,
                                               const Integer& m) {
  const std::size_t n = p.size();
  return {Rational(k) * (Rational(m) + Rational(r[n - 1], p[n - 1])),
          Rational(k + 1) * (Rational(m) + Rational(r[0], p[0]))};
}

DkpParams recipe2(const IntVec& p, const IntVec& r, const Integer& k, const RecipeOptions& opts) {
  require_ratio_order(p, r);
  const std::size_t n = p.size();
  bool r_zero = std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
  if (!r_zero && r[0] * p[n - 1] == r[n - 1] * p[0]) {
    throw Error(ErrorKind::kAssumptionViolated, "p is a multiple of r");
  }
  if (k < 0) throw Error(ErrorKind::kInvalidK, "k must be nonnegative");

  DkpParams out;
  out.p = p;
  out.r = r;
  out.k = k;
  out.u.assign(n, std::nullopt);
  out.equality = true;
  auto admissible = [&](const Integer& m) {
    if (!a_positive(p, r, m)) return false;
    auto [lo, hi] = recipe2_interval(p, r, k, m);
    if (lo < 0) return false;
    auto [first, last] = open_integers(lo, hi);
    if (first < 1) first = 1;
    return first <= last;
  };
  if (opts.m) {
    out.m = *opts.m;
    if (!a_positive(p, r, out.m)) throw Error(ErrorKind::kAssumptionViolated, "pM + r must be positive");
  } else {
    Integer m = min_positive_m(p, r);
    // Length is M + (k+1)q_1 - k q_n; start near where it exceeds 1.
    Rational q1(r[0], p[0]), qn(r[n - 1], p[n - 1]);
    Integer start = floor_of(Rational(k) * qn - Rational(k + 1) * q1);
    if (start > m) m = start;
    while (!admissible(m)) ++m;
    out.m = m;
  }
  auto [lo, hi] = recipe2_interval(p, r, k, out.m);
  if (lo < 0) throw Error(ErrorKind::kEmptyInterval, "k(M + q_n) must be nonnegative");
  pick_betas(out, lo, hi, opts, BetaPolicy::kTightLow, false);
  if (out.beta1 <= 0) throw Error(ErrorKind::kEmptyInterval, "beta must be positive");
  if (!split_condition(out.a(), out.beta1, out.beta2, out.u, p, k)) {
    throw std::logic_error("recipe 2 output fails the split certificate");
  }
  return out;
}

std::optional<Family> parse_family(const std::string& s) {
  if (s == "jeroslow") return Family::kJeroslow;
  if (s == "todd") return Family::kTodd;
  if (s == "avis") return Family::kAvis;
  if (s == "reverse_avis") return Family::kReverseAvis;
  if (s == "example1") return Family::kExample1;
  if (s == "example2") return Family::kExample2;
  if (s == "nt_family") return Family::kNtFamily;
  return std::nullopt;
}

const char* to_string(Family f) {
  switch (f) {
    case Family::kJeroslow: return "jeroslow";
    case Family::kTodd: return "todd";
    case Family::kAvis: return "avis";
    case Family::kReverseAvis: return "reverse_avis";
    case Family::kExample1: return "example1";
    case Family::kExample2: return "example2";
    case Family::kNtFamily: return "nt_family";
  }
  return "?";
}

namespace {

Integer pow_int(long base, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), e);
  return out;
}

void require_odd(long n) {
  if (n < 1 || n % 2 == 0) throw Error(ErrorKind::kBadDimension, "n must be a positive odd integer");
}

// p = u = e, k = floor(n/2), beta = floor(sum(a)/2).
DkpParams half_sum_params(const IntVec& r, const Integer& m) {
  const std::size_t n = r.size();
  DkpParams d;
  d.p.assign(n, 1);
  d.r = r;
  d.m = m;
  d.k = static_cast<long>(n / 2);
  d.u.assign(n, Integer(1));
  IntVec a = d.a();
  Integer sum = std::accumulate(a.begin(), a.end(), Integer(0));
  d.beta1 = d.beta2 = floor_of(Rational(sum, 2));
  d.equality = true;
  return d;
}

}  // namespace

DkpParams named_params(Family family, const FamilyArgs& args) {
  const long n = args.n;
  switch (family) {
    case Family::kExample1: {
      RecipeOptions o;
      o.m = 20;
      return recipe1(make_intvec({1, 1}), make_intvec({1, -1}), {Integer(6), Integer(6)}, 5, o);
    }
    case Family::kJeroslow:
    case Family::kExample2: {
      require_odd(n);
      DkpParams d;
      d.p.assign(n, 1);
      d.r.assign(n, 0);
      d.u.assign(n, Integer(1));
      d.m = 2;
      d.k = (n - 1) / 2;
      d.beta1 = d.beta2 = n;
      d.equality = true;
      return d;
    }
    case Family::kTodd: {
      require_odd(n);
      // l = floor(log2(2n))
      unsigned long l = 0;
      while ((2UL << l) <= static_cast<unsigned long>(2 * n)) ++l;
      IntVec r;
      for (long i = 1; i <= n; ++i) r.push_back(pow_int(2, l + static_cast<unsigned long>(i)) + 1);
      return half_sum_params(r, pow_int(2, static_cast<unsigned long>(n) + l + 1));
    }
    case Family::kAvis: {
      require_odd(n);
      IntVec r;
      for (long i = 1; i <= n; ++i) r.push_back(i);
      return half_sum_params(r, Integer(n * (n + 1)));
    }
    case Family::kReverseAvis: {
      if (n < 4 || n % 4 != 0) throw Error(ErrorKind::kBadDimension, "n must be a positive multiple of 4");
      DkpParams d;
      for (long i = 1; i <= n; ++i) d.p.push_back(i);
      d.r.assign(n, 1);
      d.u.assign(n, Integer(1));
      d.k = n * (n + 1) / 4;
      d.m = n / 2 + 2;
      d.beta1 = d.beta2 = Integer(3 * n / 4) + d.k * d.m + 1;
      d.equality = true;
      return d;
    }
    case Family::kNtFamily: {
      if (n < 2 || args.t < 2) throw Error(ErrorKind::kBadDimension, "need n, t >= 2");
      const auto t = static_cast<unsigned long>(args.t);
      DkpParams d;
      d.p.assign(n, 1);
      for (long i = 1; i <= n; ++i) d.r.push_back(i);
      d.u.assign(n, std::nullopt);
      d.k = pow_int(n, t);
      d.m = pow_int(n, t + 1);
      d.beta1 = d.beta2 = pow_int(n, 2 * t + 1) + pow_int(n, t + 1) + 1;
      d.equality = true;
      return d;
    }
  }
  throw Error(ErrorKind::kUnsupported, "unknown family");
}

IpInstance named_instance(Family family, const FamilyArgs& args) {
  const long n = args.n;
  if (family == Family::kJeroslow) {
    require_odd(n);
    const std::size_t cols = static_cast<std::size_t>(n) + 1;
    IpInstance inst;
    inst.name = "jeroslow";
    inst.a = IntMat(cols + 1, cols);
    for (std::size_t j = 0; j < cols; ++j) inst.a(0, j) = j + 1 < cols ? 2 : 1;
    inst.lo.emplace_back(Rational(n));
    inst.hi.emplace_back(Rational(n));
    for (std::size_t j = 0; j < cols; ++j) {
      inst.a(j + 1, j) = 1;
      inst.lo.emplace_back(Rational(0));
      inst.hi.emplace_back(Rational(1));
    }
    IntVec c(cols, 0);
    c[cols - 1] = 1;
    inst.objective = Objective{c, Sense::kMin};
    return inst;
  }
  if (family == Family::kExample2 && args.slack) {
    require_odd(n);
    const std::size_t cols = static_cast<std::size_t>(n) + 1;
    IpInstance inst;
    inst.name = "example2_slack";
    inst.a = IntMat(cols + 1, cols);
    for (std::size_t j = 0; j < cols; ++j) inst.a(0, j) = j + 1 < cols ? 2 : 1;
    inst.lo.emplace_back(Rational(n));
    inst.hi.emplace_back(Rational(n));
    for (std::size_t j = 0; j < cols; ++j) {
      inst.a(j + 1, j) = 1;
      const bool last = j + 1 == cols;
      inst.lo.emplace_back(last ? Rational(-1, 2) : Rational(0));
      inst.hi.emplace_back(last ? Rational(1, 2) : Rational(1));
    }
    return inst;
  }
  return to_instance(named_params(family, args), to_string(family));
}

namespace {

std::pair<Rational, Rational> extreme_ratios(const IntVec& p, const IntVec& r) {
  require_ratio_order(p, r);
  Rational q1(r.front(), p.front()), qn(r.back(), p.back());
  q1.canonicalize();
  qn.canonicalize();
  if (qn == q1) throw Error(ErrorKind::kParallelVectors, "q_n must exceed q_1");
  return {q1, qn};
}

}  // namespace

Integer f_m_delta(const IntVec& p, const IntVec& r, const Integer& m, const Integer& delta) {
  auto [q1, qn] = extreme_ratios(p, r);
  return ceil_of((Rational(m) + q1 - Rational(delta)) / (qn - q1)) - 1;
}

std::pair<Rational, Rational> frob_branching_range(const IntVec& p, const IntVec& r,
                                                   const Integer& m) {
  auto [q1, qn] = extreme_ratios(p, r);
  Integer f1 = f_m_delta(p, r, m, 1);
  if (f1 < 0) throw Error(ErrorKind::kAssumptionViolated, "f(M,1) must be nonnegative");
  if (!a_positive(p, r, m)) throw Error(ErrorKind::kAssumptionViolated, "pM + r must be positive");
  return {Rational(f1) * (Rational(m) + qn), Rational(f1 + 1) * (Rational(m) + q1)};
}

std::pair<Rational, Rational> frob_p_bounds(const IntVec& p, const IntVec& r, const Integer& m) {
  auto [q1, qn] = extreme_ratios(p, r);
  Integer f1 = f_m_delta(p, r, m, 1);
  Integer f0 = f_m_delta(p, r, m, 0);
  if (f1 < 0) throw Error(ErrorKind::kAssumptionViolated, "f(M,1) must be nonnegative");
  if (!a_positive(p, r, m)) throw Error(ErrorKind::kAssumptionViolated, "pM + r must be positive");
  return {Rational(f1) * (Rational(m) + qn), Rational(f0 + 1) * (Rational(m) + q1)};
}

Rational al_frob_lower(const IntVec& p, const IntVec& r, const Integer& m, std::size_t j,
                       std::size_t k) {
  if (p.size() != r.size() || j >= p.size() || k >= p.size()) {
    throw Error(ErrorKind::kShapeMismatch, "index out of range");
  }
  const Integer denom = p[k] * r[j] - p[j] * r[k];
  if (denom == 0) throw Error(ErrorKind::kDivisionByZero, "p_k r_j = p_j r_k");
  const Rational mj = Rational(m) + Rational(r[j], p[j]);
  const Rational head(m * m * p[j] * p[k] + m * (p[j] * r[k] + p[k] * r[j]) + r[j] * r[k]);
  return head * (Rational(1) - Rational(2) / mj) / Rational(denom) - mj;
}

Integer frobenius_bruteforce(const IntVec& a) {
  if (a.empty()) throw Error(ErrorKind::kShapeMismatch, "empty weight vector");
  for (const auto& x : a) {
    if (x <= 0) throw Error(ErrorKind::kAssumptionViolated, "weights must be positive");
  }
  if (gcd_of(a) != 1) throw Error(ErrorKind::kGcdNotOne, "gcd(a) must be 1");
  const Integer amin = *std::min_element(a.begin(), a.end());
  const Integer amax = *std::max_element(a.begin(), a.end());
  if (amin > 1000000) throw Error(ErrorKind::kTooLarge, "min(a) exceeds 10^6");
  // Every residue is reached below amin * amax, so that must fit in int64.
  if (amax * amin > Integer(std::numeric_limits<std::int64_t>::max() / 4)) {
    throw Error(ErrorKind::kTooLarge, "weights too large for the residue table");
  }
  const std::int64_t m = amin.get_si();
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max();
  // dist[r]: smallest representable number congruent to r mod m.
  std::vector<std::int64_t> dist(static_cast<std::size_t>(m), inf);
  dist[0] = 0;
  for (const auto& w : a) {
    const std::int64_t ai = w.get_si();
    if (ai == m) continue;
    const std::int64_t g = std::gcd(m, ai);
    for (std::int64_t cls = 0; cls < g; ++cls) {
      // Start the cycle at its current minimum, then go round twice.
      std::int64_t start = -1;
      for (std::int64_t rr = cls; rr < m; rr += g) {
        if (dist[rr] != inf && (start < 0 || dist[rr] < dist[start])) start = rr;
      }
      if (start < 0) continue;
      std::int64_t cur = dist[start];
      std::int64_t res = start;
      for (std::int64_t step = 0; step < m / g; ++step) {
        cur += ai;
        res = (res + ai) % m;
        if (dist[res] < cur) cur = dist[res];
        dist[res] = cur;
      }
    }
  }
  const std::int64_t worst = *std::max_element(dist.begin(), dist.end());
  return Integer(static_cast<long>(worst)) - amin;
}

Integer binomial(const Integer& n, unsigned long k) {
  Integer out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

Integer node_lower_bound(const DkpParams& params) {
  if (!split_condition(params.a(), params.beta1, params.beta2, params.u, params.p, params.k)) {
    throw Error(ErrorKind::kNotCertified, "px <= k or px >= k+1 does not prove infeasibility");
  }
  const bool all_one = std::all_of(params.u.begin(), params.u.end(),
                                   [](const auto& v) { return v && *v == 1; });
  const bool all_inf = std::all_of(params.u.begin(), params.u.end(), [](const auto& v) { return !v; });
  if (all_one) {
    Integer l = ell(params.p, params.k);
    return pow_int(2, l.get_ui());
  }
  if (all_inf) {
    const Integer pmax = *std::max_element(params.p.begin(), params.p.end());
    const auto n = static_cast<unsigned long>(params.p.size());
    return binomial(floor_of(Rational(params.k, pmax)) + Integer(n - 1), n - 1);
  }
  throw Error(ErrorKind::kUnsupported, "node bound needs u = e or u = infinity");
}

AlExample1 al_example1() {
  AlExample1 ex;
  ex.p = make_intvec({1, 1, 3, 3, 3, 3});
  ex.r = make_intvec({-7, -4, -11, -6, -5, -1});
  ex.m = 24;
  ex.a = make_intvec({17, 20, 61, 66, 67, 71});
  ex.b = IntMat{{1, 0, -3, 1, 0},  {2, -1, -1, -1, 0}, {-1, -2, 0, 0, -1},
                {0, 0, 0, 1, 2},   {-1, 0, 0, -2, 0},  {1, 2, 1, 1, -1}};
  ex.v = make_intvec({0, -3, 1, 0, 0, 0});

  ex.b_lll_reduced = is_lll_reduced(ex.b);
  std::vector<IntVec> cols = ex.b.column_list();
  cols.push_back(ex.v);
  IntMat bv = IntMat::from_columns(cols, 6);
  ex.bv_unimodular = is_unimodular(bv);
  IntVec ab = row_times(ex.a, ex.b);
  ex.ab_zero = std::all_of(ab.begin(), ab.end(), [](const Integer& x) { return x == 0; });
  ex.pb = row_times(ex.p, ex.b);
  return ex;
}

AlExample2 al_example2(const Rational& rho, std::size_t n, const std::optional<Integer>& scale) {
  if (!(rho > 0 && rho < 1 && rho * rho > Rational(3, 4))) {
    throw Error(ErrorKind::kBadRho, "rho must lie in (sqrt(3)/2, 1)");
  }
  if (n < 2) throw Error(ErrorKind::kBadDimension, "n must be at least 2");
  AlExample2 ex;
  ex.rho = rho;
  ex.n = n;
  ex.exact = !scale;
  if (scale) {
    if (*scale <= 0) throw Error(ErrorKind::kBadDimension, "scale must be positive");
    ex.scale = *scale;
  } else {
    Integer den = rho.get_den();
    Integer s;
    mpz_pow_ui(s.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n - 1));
    ex.scale = 2 * s;
  }
  RatVec powers(n);
  powers[0] = 1;
  for (std::size_t i = 1; i < n; ++i) powers[i] = powers[i - 1] * rho;
  ex.b = IntMat(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row <= col; ++row) {
      Rational entry = row == col ? powers[row] : powers[row] / 2;
      Rational scaled = entry * Rational(ex.scale);
      ex.b(row, col) = ex.exact ? scaled.get_num() : round_half_up(scaled);
      if (ex.exact && !is_integral(scaled)) throw std::logic_error("scaling left a fraction");
    }
  }
  ex.q.name = "al_example2";
  ex.q.a = ex.b;
  for (std::size_t row = 0; row < n; ++row) {
    ex.q.lo.emplace_back(Rational(0));
    ex.q.hi.emplace_back(row + 1 == n ? Rational(ex.scale) : Rational(0));
  }
  return ex;
}

}  // namespace dkplab
