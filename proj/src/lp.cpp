#include "dkplab/lp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dkplab/error.hpp"

namespace dkplab {

void IpInstance::validate() const {
  if (lo.size() != a.rows() || hi.size() != a.rows()) {
    throw Error(ErrorKind::kShapeMismatch, "bound vectors must have one entry per row");
  }
  if (objective && objective->c.size() != a.cols()) {
    throw Error(ErrorKind::kShapeMismatch, "objective length differs from column count");
  }
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

namespace {

bool crosses(const OptRational& lo, const OptRational& hi) { return lo && hi && *lo > *hi; }

}  // namespace

LpModel LpModel::from_instance(const IpInstance& inst) {
  inst.validate();
  LpModel m;
  m.num_vars = inst.cols();
  m.var_lo.assign(m.num_vars, std::nullopt);
  m.var_hi.assign(m.num_vars, std::nullopt);
  for (std::size_t i = 0; i < inst.rows(); ++i) {
    IntVec row = inst.a.row(i);
    std::size_t nnz = 0, at = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) {
        ++nnz;
        at = j;
      }
    }
    const OptRational& lo = inst.lo[i];
    const OptRational& hi = inst.hi[i];
    if (crosses(lo, hi)) m.trivially_infeasible = true;
    if (nnz == 0) {
      if ((lo && *lo > 0) || (hi && *hi < 0)) m.trivially_infeasible = true;
      continue;
    }
    if (nnz == 1) {
      const Rational c(row[at]);
      OptRational l = lo ? OptRational(*lo / c) : std::nullopt;
      OptRational h = hi ? OptRational(*hi / c) : std::nullopt;
      if (c < 0) std::swap(l, h);
      if (l) m.tighten_lower(at, *l);
      if (h) m.tighten_upper(at, *h);
      continue;
    }
    m.add_row(row, lo, hi);
  }
  return m;
}

void LpModel::tighten_upper(std::size_t j, const Rational& v) {
  if (!var_hi[j] || v < *var_hi[j]) var_hi[j] = v;
  if (crosses(var_lo[j], var_hi[j])) trivially_infeasible = true;
}

void LpModel::tighten_lower(std::size_t j, const Rational& v) {
  if (!var_lo[j] || v > *var_lo[j]) var_lo[j] = v;
  if (crosses(var_lo[j], var_hi[j])) trivially_infeasible = true;
}

void LpModel::add_row(const IntVec& row, const OptRational& lo, const OptRational& hi) {
  if (crosses(lo, hi)) trivially_infeasible = true;
  if (!lo && !hi) return;
  rows.push_back(row);
  row_lo.push_back(lo);
  row_hi.push_back(hi);
}

namespace {

// Dense tableau over variables [x (n) | s (m) | art (m)] with constraints
// a_i x - s_i + sigma_i art_i = 0. Nonbasic variables may rest anywhere in
// their bounds; the pricing rule only moves them toward improvement.
class Simplex {
 public:
  explicit Simplex(const LpModel& model)
      : n_(model.num_vars), m_(model.rows.size()), total_(n_ + 2 * m_) {
    lb_.resize(total_);
    ub_.resize(total_);
    x_.assign(total_, Rational(0));
    where_.assign(total_, -1);
    basis_.resize(m_);
    t_.assign(m_, RatVec(total_));

    for (std::size_t j = 0; j < n_; ++j) {
      lb_[j] = model.var_lo[j];
      ub_[j] = model.var_hi[j];
      if (lb_[j]) {
        x_[j] = *lb_[j];
      } else if (ub_[j]) {
        x_[j] = *ub_[j];
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t s = n_ + i;
      const std::size_t art = n_ + m_ + i;
      lb_[s] = model.row_lo[i];
      ub_[s] = model.row_hi[i];
      lb_[art] = Rational(0);
      Rational act = dot(model.rows[i], RatVec(x_.begin(), x_.begin() + n_));
      Rational sv = act;
      if (lb_[s] && sv < *lb_[s]) sv = *lb_[s];
      if (ub_[s] && sv > *ub_[s]) sv = *ub_[s];
      x_[s] = sv;
      Rational resid = act - sv;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = Rational(model.rows[i][j]);
      t_[i][s] = -1;
      if (resid == 0) {
        // s_i itself is feasible as the basic variable of this row.
        ub_[art] = Rational(0);
        scale_row(i, Rational(-1));
        set_basic(i, s);
      } else {
        const int sigma = resid > 0 ? -1 : 1;
        t_[i][art] = sigma;
        scale_row(i, Rational(sigma));
        x_[art] = abs(resid);
        set_basic(i, art);
        has_artificial_ = true;
      }
    }
  }

  LpOutcome solve(const IntVec& c, Sense sense) {
    LpOutcome out;
    if (has_artificial_) {
      RatVec cost(total_);
      for (std::size_t i = 0; i < m_; ++i) cost[n_ + m_ + i] = 1;
      run(cost);
      Rational infeas = 0;
      for (std::size_t i = 0; i < m_; ++i) infeas += x_[n_ + m_ + i];
      if (infeas > 0) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) ub_[n_ + m_ + i] = Rational(0);
    RatVec cost(total_);
    for (std::size_t j = 0; j < n_ && j < c.size(); ++j) {
      cost[j] = sense == Sense::kMax ? Rational(-c[j]) : Rational(c[j]);
    }
    bool bounded = run(cost);
    out.point.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
    out.value = c.empty() ? Rational(0) : dot(c, out.point);
    out.status = bounded ? LpStatus::kOptimal : LpStatus::kUnbounded;
    return out;
  }

 private:
  void scale_row(std::size_t i, const Rational& f) {
    if (f == 1) return;
    for (auto& e : t_[i]) {
      if (e != 0) e /= f;
    }
  }

  void set_basic(std::size_t row, std::size_t var) {
    basis_[row] = var;
    where_[var] = static_cast<long>(row);
  }

  void compute_reduced_costs(const RatVec& cost) {
    d_ = cost;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < total_; ++j) {
        if (t_[i][j] != 0) d_[j] -= cb * t_[i][j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t j) {
    Rational piv = t_[r][j];
    scale_row(r, piv);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      Rational f = t_[i][j];
      if (f == 0) continue;
      for (std::size_t k = 0; k < total_; ++k) {
        if (t_[r][k] != 0) t_[i][k] -= f * t_[r][k];
      }
    }
    Rational f = d_[j];
    if (f != 0) {
      for (std::size_t k = 0; k < total_; ++k) {
        if (t_[r][k] != 0) d_[k] -= f * t_[r][k];
      }
    }
    where_[basis_[r]] = -1;
    set_basic(r, j);
  }

  // Returns false when the objective is unbounded below.
  bool run(const RatVec& cost) {
    compute_reduced_costs(cost);
    for (long iter = 0;; ++iter) {
      if (iter > 200000) throw std::logic_error("simplex iteration limit");
      // Bland: lowest-index improving nonbasic variable enters.
      std::size_t enter = total_;
      int dir = 0;
      for (std::size_t j = 0; j < total_; ++j) {
        if (where_[j] >= 0 || d_[j] == 0) continue;
        if (d_[j] < 0 && (!ub_[j] || x_[j] < *ub_[j])) {
          enter = j;
          dir = 1;
          break;
        }
        if (d_[j] > 0 && (!lb_[j] || x_[j] > *lb_[j])) {
          enter = j;
          dir = -1;
          break;
        }
      }
      if (enter == total_) return true;

      // Ratio test; ties go to the lowest variable index.
      std::optional<Rational> theta;
      std::size_t leave_var = enter;
      long leave_row = -1;
      if (dir > 0 && ub_[enter]) theta = *ub_[enter] - x_[enter];
      if (dir < 0 && lb_[enter]) theta = x_[enter] - *lb_[enter];
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& a = t_[i][enter];
        if (a == 0) continue;
        const std::size_t b = basis_[i];
        // basic value moves by rate * step
        const bool decreasing = dir > 0 ? a > 0 : a < 0;
        std::optional<Rational> th;
        if (decreasing && lb_[b]) th = (x_[b] - *lb_[b]) / abs(a);
        if (!decreasing && ub_[b]) th = (*ub_[b] - x_[b]) / abs(a);
        if (!th) continue;
        if (!theta || *th < *theta || (*th == *theta && b < leave_var)) {
          theta = th;
          leave_var = b;
          leave_row = static_cast<long>(i);
        }
      }
      if (!theta) return false;

      const Rational step = *theta;
      if (step != 0) {
        x_[enter] += dir > 0 ? step : Rational(-step);
        for (std::size_t i = 0; i < m_; ++i) {
          const Rational& a = t_[i][enter];
          if (a == 0) continue;
          // basic = -sum_N t_ij x_j, so moving x_j by delta moves it by -a delta
          x_[basis_[i]] -= a * (dir > 0 ? step : Rational(-step));
        }
      }
      if (leave_row >= 0) {
        const bool decreasing = dir > 0 ? t_[leave_row][enter] > 0 : t_[leave_row][enter] < 0;
        x_[leave_var] = decreasing ? *lb_[leave_var] : *ub_[leave_var];
        pivot(static_cast<std::size_t>(leave_row), enter);
      }
    }
  }

  std::size_t n_, m_, total_;
  std::vector<RatVec> t_;
  RatVec x_;
  RatVec d_;
  std::vector<OptRational> lb_, ub_;
  std::vector<std::size_t> basis_;
  std::vector<long> where_;
  bool has_artificial_ = false;
};

void check_point(const LpModel& model, const RatVec& x) {
  for (std::size_t j = 0; j < model.num_vars; ++j) {
    if ((model.var_lo[j] && x[j] < *model.var_lo[j]) || (model.var_hi[j] && x[j] > *model.var_hi[j])) {
      throw std::logic_error("simplex point violates a variable bound");
    }
  }
  for (std::size_t i = 0; i < model.rows.size(); ++i) {
    Rational v = dot(model.rows[i], x);
    if ((model.row_lo[i] && v < *model.row_lo[i]) || (model.row_hi[i] && v > *model.row_hi[i])) {
      throw std::logic_error("simplex point violates a row");
    }
  }
}

}  // namespace

LpOutcome solve_lp(const LpModel& model, const IntVec& c, Sense sense) {
  if (model.trivially_infeasible) return {};
  Simplex simplex(model);
  LpOutcome out = simplex.solve(c, sense);
  if (out.status != LpStatus::kInfeasible) check_point(model, out.point);
  return out;
}

LpOutcome lp_optimize(const IpInstance& inst, const IntVec& c, Sense sense) {
  if (c.size() != inst.cols()) throw Error(ErrorKind::kShapeMismatch, "objective length");
  return solve_lp(LpModel::from_instance(inst), c, sense);
}

Integer integer_width(const Rational& max, const Rational& min) {
  Integer w = floor_of(max) - ceil_of(min) + 1;
  return w < 0 ? Integer(0) : w;
}

WidthReport width(const LpModel& model, const IntVec& c) {
  WidthReport rep;
  rep.direction = c;
  LpOutcome hi = solve_lp(model, c, Sense::kMax);
  if (hi.status == LpStatus::kInfeasible) {
    rep.feasible = false;
    rep.max = Extended::neg_inf();
    rep.min = Extended::pos_inf();
    rep.width = Rational(0);
    rep.iwidth = Integer(0);
    return rep;
  }
  LpOutcome lo = solve_lp(model, c, Sense::kMin);
  rep.max = hi.status == LpStatus::kUnbounded ? Extended::pos_inf() : Extended(hi.value);
  rep.min = lo.status == LpStatus::kUnbounded ? Extended::neg_inf() : Extended(lo.value);
  if (rep.bounded()) {
    rep.width = Rational(rep.max.value() - rep.min.value());
    rep.iwidth = integer_width(rep.max.value(), rep.min.value());
  } else {
    rep.width = Extended::pos_inf();
  }
  return rep;
}

WidthReport width(const IpInstance& inst, const IntVec& c) {
  if (c.size() != inst.cols()) throw Error(ErrorKind::kShapeMismatch, "direction length");
  return width(LpModel::from_instance(inst), c);
}

Integer iwidth(const IpInstance& inst, const IntVec& c) {
  WidthReport rep = width(inst, c);
  if (!rep.iwidth) throw Error(ErrorKind::kUnboundedWidth, "direction is unbounded on the relaxation");
  return *rep.iwidth;
}

namespace {

void check_knapsack_args(const IntVec& f, const IntVec& p, const UpperBounds& u) {
  if (f.size() != p.size() || p.size() != u.size()) {
    throw Error(ErrorKind::kShapeMismatch, "knapsack vectors differ in length");
  }
  for (const auto& x : p) {
    if (x <= 0) throw Error(ErrorKind::kAssumptionViolated, "p must be positive");
  }
}

}  // namespace

Extended knapsack_extreme(const IntVec& f, const IntVec& p, const Integer& l, const UpperBounds& u,
                          Sense sense) {
  check_knapsack_args(f, p, u);
  const std::size_t n = f.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto ratio_less = [&](std::size_t i, std::size_t j) {
    // f_i/p_i < f_j/p_j
    Integer lhs = f[i] * p[j];
    Integer rhs = f[j] * p[i];
    if (lhs != rhs) return lhs < rhs;
    return i < j;
  };

  if (sense == Sense::kMax) {
    if (l < 0) return Extended::neg_inf();
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      if (f[i] * p[j] != f[j] * p[i]) return f[i] * p[j] > f[j] * p[i];
      return i < j;
    });
    Rational cap(l);
    Rational value = 0;
    for (std::size_t i : order) {
      if (f[i] <= 0 || cap == 0) break;
      Rational take = cap / Rational(p[i]);
      if (u[i] && Rational(*u[i]) < take) take = Rational(*u[i]);
      value += Rational(f[i]) * take;
      cap -= Rational(p[i]) * take;
    }
    return value;
  }

  Rational value = 0;
  Rational need(l);
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i] >= 0) continue;
    if (!u[i]) return Extended::neg_inf();
    value += Rational(f[i] * *u[i]);
    need -= Rational(p[i] * *u[i]);
  }
  std::sort(order.begin(), order.end(), ratio_less);
  for (std::size_t i : order) {
    if (need <= 0) break;
    if (f[i] < 0) continue;
    Rational take = need / Rational(p[i]);
    if (u[i] && Rational(*u[i]) < take) take = Rational(*u[i]);
    value += Rational(f[i]) * take;
    need -= Rational(p[i]) * take;
  }
  if (need > 0) return Extended::pos_inf();
  return value;
}

Extended knapsack_extreme_lp(const IntVec& f, const IntVec& p, const Integer& l,
                             const UpperBounds& u, Sense sense) {
  check_knapsack_args(f, p, u);
  const std::size_t n = f.size();
  IpInstance inst;
  inst.a = IntMat(n + 1, n);
  inst.a.set_row(0, p);
  inst.lo.push_back(sense == Sense::kMax ? OptRational() : OptRational(Rational(l)));
  inst.hi.push_back(sense == Sense::kMax ? OptRational(Rational(l)) : OptRational());
  for (std::size_t i = 0; i < n; ++i) {
    inst.a(i + 1, i) = 1;
    inst.lo.emplace_back(Rational(0));
    inst.hi.push_back(u[i] ? OptRational(Rational(*u[i])) : OptRational());
  }
  LpOutcome out = lp_optimize(inst, f, sense);
  if (out.status == LpStatus::kInfeasible) {
    return sense == Sense::kMax ? Extended::neg_inf() : Extended::pos_inf();
  }
  if (out.status == LpStatus::kUnbounded) {
    return sense == Sense::kMax ? Extended::pos_inf() : Extended::neg_inf();
  }
  return out.value;
}

void require_ratio_order(const IntVec& p, const IntVec& r) {
  if (p.size() != r.size() || p.empty()) throw Error(ErrorKind::kShapeMismatch, "p and r lengths");
  for (const auto& x : p) {
    if (x <= 0) throw Error(ErrorKind::kAssumptionViolated, "p must be positive");
  }
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (r[i] * p[i + 1] > r[i + 1] * p[i]) {
      throw Error(ErrorKind::kAssumptionViolated, "ratios r_i/p_i must be nondecreasing");
    }
  }
}

KpeqWidths kpeq_width_closed_form(const IntVec& p, const IntVec& r, const Integer& m,
                                  const Integer& beta) {
  require_ratio_order(p, r);
  const std::size_t n = p.size();
  IntVec a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = p[i] * m + r[i];
    if (a[i] <= 0) throw Error(ErrorKind::kAssumptionViolated, "a = pM + r must be positive");
  }
  KpeqWidths out;
  out.width_p = Rational(beta * (p[0] * r[n - 1] - p[n - 1] * r[0]), a[0] * a[n - 1]);
  out.width_p.canonicalize();
  for (std::size_t i = 0; i < n; ++i) {
    Rational w(beta, a[i]);
    w.canonicalize();
    out.width_e.push_back(w);
  }
  return out;
}

}  // namespace dkplab
